//! Probability-based local search with self-tuning geometric cooling.
//!
//! Improving and sideways moves are always taken. A move that adds `delta > 0`
//! components is taken with probability `exp(-delta / T)`. The temperature
//! starts at `T0 = |best|` and cools by `alpha = 1 / |best|` per move, where
//! `|best|` is the label count of the best solution found so far; the state is
//! rebuilt whenever that count changes.

use rand::seq::IteratorRandom;
use rand::Rng;

use crate::instance::{Instance, Solution};

/// Temperatures at or below this are treated as frozen.
pub const FROZEN_TEMPERATURE: f64 = 1e-9;

/// Temperature schedule driven by the best solution's label count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoolingState {
    temperature: f64,
    alpha: f64,
    best_label_count: usize,
}

impl CoolingState {
    /// Fresh schedule with `T0 = best_label_count` and `alpha = 1 / best_label_count`.
    ///
    /// An empty best solution is treated as a one-label one.
    pub fn new(best_label_count: usize) -> Self {
        let count = best_label_count.max(1);
        CoolingState {
            temperature: count as f64,
            alpha: 1.0 / count as f64,
            best_label_count: count,
        }
    }

    pub fn for_best(best: &Solution) -> Self {
        CoolingState::new(best.labels().len())
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn best_label_count(&self) -> usize {
        self.best_label_count
    }

    pub fn initial_temperature(&self) -> f64 {
        self.best_label_count as f64
    }
}

/// One geometric cooling step, `T <- alpha * T`.
pub fn cool(state: CoolingState) -> CoolingState {
    CoolingState {
        temperature: state.alpha * state.temperature,
        ..state
    }
}

/// Restarts the schedule when the best solution's label count has changed.
pub fn rebase(state: CoolingState, new_best: &Solution) -> CoolingState {
    let count = new_best.labels().len().max(1);
    if count == state.best_label_count {
        state
    } else {
        CoolingState::new(count)
    }
}

/// Boltzmann acceptance test for a change of `delta` components.
///
/// Non-positive deltas are accepted without consuming randomness.
pub fn accept_move<R: Rng + ?Sized>(delta: i64, temperature: f64, rng: &mut R) -> bool {
    if delta <= 0 {
        return true;
    }
    if temperature <= FROZEN_TEMPERATURE {
        return false;
    }
    rng.gen::<f64>() < (-(delta as f64) / temperature).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MoveKind {
    Add,
    Drop,
    Swap,
}

/// Runs `move_budget` random single-label moves from `start` and returns the
/// best solution encountered.
///
/// Each step picks uniformly among the applicable move kinds: add an absent
/// label (only below the budget), drop a present label, or swap a present
/// label for an absent one. The schedule cools once per step and is rebased
/// whenever a new best is found.
pub fn prob_search<R: Rng + ?Sized>(
    instance: &Instance,
    start: &Solution,
    state: CoolingState,
    rng: &mut R,
    move_budget: usize,
) -> Solution {
    let graph = instance.graph();
    let mut state = state;
    let mut current = start.clone();
    let mut best = start.clone();
    let mut kinds = Vec::with_capacity(3);

    for _ in 0..move_budget {
        let present = current.labels().len();
        let absent = instance.ell() - present;
        kinds.clear();
        if absent > 0 && present < instance.k_bar() {
            kinds.push(MoveKind::Add);
        }
        if present > 0 {
            kinds.push(MoveKind::Drop);
        }
        if present > 0 && absent > 0 {
            kinds.push(MoveKind::Swap);
        }
        let kind = kinds[rng.gen_range(0..kinds.len())];

        let mut labels = current.labels().clone();
        let complement = labels.complement();
        match kind {
            MoveKind::Add => {
                let add = complement.iter().choose(rng).expect("absent label");
                labels.insert(add);
            }
            MoveKind::Drop => {
                let drop = labels.iter().choose(rng).expect("present label");
                labels.remove(drop);
            }
            MoveKind::Swap => {
                let drop = labels.iter().choose(rng).expect("present label");
                let add = complement.iter().choose(rng).expect("absent label");
                labels.remove(drop);
                labels.insert(add);
            }
        }
        let components = graph.components(&labels);
        let delta = components as i64 - current.components() as i64;
        if accept_move(delta, state.temperature, rng) {
            current = Solution::from_parts(labels, components);
            debug_assert!(instance.is_feasible(&current));
            if current.is_better_than(&best) {
                best = current.clone();
                state = rebase(state, &best);
            }
        }
        state = cool(state);
    }
    best
}
