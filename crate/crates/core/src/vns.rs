//! Shaking, basic VNS, Co-VNS and the intelligent VNS driver.
//!
//! The q-th neighbourhood of a solution holds the label sets obtained by
//! deleting q of its labels. Shaking samples one such set at random and
//! repairs it with greedy completion. Co-VNS wraps basic VNS in an outer loop
//! that restarts from the labels the incumbent does not use; the intelligent
//! variant additionally swaps the inner descent for [`prob_search`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::anneal::{prob_search, CoolingState};
use crate::construction::{co_space_construct, greedy_complete, CandidateRestriction};
use crate::error::Result;
use crate::instance::{Instance, Solution};
use crate::label_set::LabelSet;

/// Which solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// One greedy construction over all labels.
    GreedyOnly,
    /// Basic VNS with swap descent from the greedy solution.
    BasicVns,
    /// Complementary-space restarts around basic VNS.
    CoVns,
    /// Co-VNS with the Boltzmann local search as the inner improvement step.
    IntVns,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::GreedyOnly,
        Variant::BasicVns,
        Variant::CoVns,
        Variant::IntVns,
    ];

    /// Short name used by the CLI and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Variant::GreedyOnly => "greedy",
            Variant::BasicVns => "vns",
            Variant::CoVns => "covns",
            Variant::IntVns => "intvns",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant `{s}` (expected greedy, vns, covns or intvns)"))
    }
}

/// Solver configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub variant: Variant,
    pub seed: u64,
    /// Largest neighbourhood index. `None` picks [`default_q_max`] per instance.
    pub q_max: Option<usize>,
    /// Consecutive non-improving VNS iterations before a VNS run stops.
    pub max_no_improve: usize,
    /// Consecutive non-improving complementary restarts before Co-VNS stops.
    pub max_restarts: usize,
    /// Moves per call of the Boltzmann local search.
    pub move_budget: usize,
    /// Wall-clock cap for the whole run.
    pub time_budget: Option<Duration>,
}

impl SearchParams {
    pub fn new(variant: Variant, seed: u64) -> Self {
        SearchParams {
            variant,
            seed,
            q_max: None,
            max_no_improve: 50,
            max_restarts: 5,
            move_budget: 100,
            time_budget: None,
        }
    }

    /// Effective q_max for `instance`, clamped to `1..=ell`.
    pub fn q_max_for(&self, instance: &Instance) -> usize {
        self.q_max
            .unwrap_or_else(|| default_q_max(instance))
            .clamp(1, instance.ell())
    }
}

/// `min(ell, max(3, ceil(k_bar / 2) + 1))`.
pub fn default_q_max(instance: &Instance) -> usize {
    instance.ell().min(3.max(instance.k_bar().div_ceil(2) + 1))
}

/// One point of a search trace: the best solution after `iteration` VNS steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub iteration: usize,
    pub components: usize,
    pub labels: usize,
    pub elapsed: Duration,
}

/// Result of one solver run.
#[derive(Clone, Debug)]
pub struct SearchTrace {
    steps: Vec<TraceStep>,
    best: Solution,
    seed: u64,
    iterations: usize,
}

impl SearchTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn best(&self) -> &Solution {
        &self.best
    }

    pub fn into_best(self) -> Solution {
        self.best
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Total VNS iterations (shake + improve) performed.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// `(iteration, components, labels)` per step, without timings.
    pub fn fingerprint(&self) -> Vec<(usize, usize, usize)> {
        self.steps
            .iter()
            .map(|s| (s.iteration, s.components, s.labels))
            .collect()
    }
}

/// Removes `min(q, |labels|)` labels chosen uniformly at random.
pub fn remove_random_labels<R: Rng + ?Sized>(labels: &LabelSet, q: usize, rng: &mut R) -> LabelSet {
    let present: Vec<usize> = labels.iter().collect();
    let mut reduced = labels.clone();
    for &label in present.choose_multiple(rng, q.min(present.len())) {
        reduced.remove(label);
    }
    reduced
}

/// Jumps to a random point of the q-th neighbourhood of `current` and
/// repairs it by greedy completion over all labels.
///
/// # Panics
///
/// Panics if `q == 0`.
pub fn shake<R: Rng + ?Sized>(
    instance: &Instance,
    current: &Solution,
    q: usize,
    rng: &mut R,
) -> Result<Solution> {
    assert!(q >= 1, "neighbourhood index must be positive");
    let reduced = remove_random_labels(current.labels(), q, rng);
    greedy_complete(
        instance,
        &reduced,
        &CandidateRestriction::full(instance.ell()),
        rng,
    )
}

/// First-improvement single-label swap descent, iterated to a local optimum.
pub fn local_descent(instance: &Instance, start: Solution) -> Solution {
    let graph = instance.graph();
    let mut current = start;
    'descend: while current.components() > graph.floor() {
        let absent = current.labels().complement();
        for drop in current.labels().iter() {
            let mut without = current.labels().clone();
            without.remove(drop);
            let base = graph.union_find(&without);
            for add in absent.iter() {
                let mut uf = base.clone();
                graph.merge_label(&mut uf, add);
                if uf.count() < current.components() {
                    let mut labels = without;
                    labels.insert(add);
                    current = Solution::from_parts(labels, uf.count());
                    continue 'descend;
                }
            }
        }
        break;
    }
    current
}

struct Search<'a, R: ?Sized> {
    instance: &'a Instance,
    params: &'a SearchParams,
    q_max: usize,
    rng: &'a mut R,
    deadline: Option<Instant>,
    started: Instant,
    iterations: usize,
    best: Solution,
    steps: Vec<TraceStep>,
}

impl<'a, R: Rng + ?Sized> Search<'a, R> {
    fn new(
        instance: &'a Instance,
        params: &'a SearchParams,
        rng: &'a mut R,
        deadline: Option<Instant>,
        init: Solution,
    ) -> Self {
        debug_assert!(instance.is_feasible(&init));
        let mut search = Search {
            instance,
            params,
            q_max: params.q_max_for(instance),
            rng,
            deadline,
            started: Instant::now(),
            iterations: 0,
            best: init,
            steps: Vec::new(),
        };
        search.record();
        search
    }

    fn record(&mut self) {
        self.steps.push(TraceStep {
            iteration: self.iterations,
            components: self.best.components(),
            labels: self.best.labels().len(),
            elapsed: self.started.elapsed(),
        });
    }

    fn offer(&mut self, candidate: &Solution) {
        if candidate.is_better_than(&self.best) {
            debug_assert!(self.instance.is_feasible(candidate));
            self.best = candidate.clone();
        }
    }

    fn done(&self) -> bool {
        self.best.components() == self.instance.graph().floor()
            || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn improve(&mut self, candidate: Solution) -> Solution {
        match self.params.variant {
            Variant::IntVns => prob_search(
                self.instance,
                &candidate,
                CoolingState::for_best(&self.best),
                self.rng,
                self.params.move_budget,
            ),
            _ => local_descent(self.instance, candidate),
        }
    }

    /// Basic VNS from `init`; returns the best solution of this run.
    fn vns(&mut self, init: Solution) -> Result<Solution> {
        self.offer(&init);
        let mut local = init;
        let mut q = 1;
        let mut stale = 0;
        while stale < self.params.max_no_improve && !self.done() {
            self.iterations += 1;
            let shaken = shake(self.instance, &local, q, self.rng)?;
            let candidate = self.improve(shaken);
            if candidate.is_better_than(&local) {
                local = candidate;
                self.offer(&local);
                q = 1;
                stale = 0;
            } else {
                q = if q >= self.q_max { 1 } else { q + 1 };
                stale += 1;
            }
            self.record();
        }
        Ok(local)
    }

    fn co_vns(&mut self) -> Result<()> {
        let mut incumbent = self.best.clone();
        let mut stale = 0;
        while stale < self.params.max_restarts && !self.done() {
            let before = self.best.key();
            let (restart, _) = co_space_construct(self.instance, &incumbent, self.rng)?;
            incumbent = self.vns(restart)?;
            if self.best.key() < before {
                stale = 0;
            } else {
                stale += 1;
            }
        }
        Ok(())
    }

    fn finish(self) -> SearchTrace {
        SearchTrace {
            steps: self.steps,
            best: self.best,
            seed: self.params.seed,
            iterations: self.iterations,
        }
    }
}

fn greedy_start<R: Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Result<Solution> {
    greedy_complete(
        instance,
        &LabelSet::empty(instance.ell()),
        &CandidateRestriction::full(instance.ell()),
        rng,
    )
}

/// Basic VNS from `init` until `max_no_improve` consecutive failures, the
/// deadline, or the `floor(graph)` lower bound is reached.
///
/// The inner improvement step is the Boltzmann local search when
/// `params.variant` is [`Variant::IntVns`] and swap descent otherwise.
pub fn basic_vns<R: Rng + ?Sized>(
    instance: &Instance,
    init: Solution,
    params: &SearchParams,
    rng: &mut R,
    deadline: Option<Instant>,
) -> Result<SearchTrace> {
    init.labels().check_width(instance.ell())?;
    let mut search = Search::new(instance, params, rng, deadline, init.clone());
    search.vns(init)?;
    Ok(search.finish())
}

/// Co-VNS: greedy start, then repeated complementary restarts each improved by
/// basic VNS, until `max_restarts` consecutive restarts fail to improve.
pub fn co_vns<R: Rng + ?Sized>(
    instance: &Instance,
    params: &SearchParams,
    rng: &mut R,
) -> Result<SearchTrace> {
    let deadline = params.time_budget.map(|b| Instant::now() + b);
    let init = greedy_start(instance, rng)?;
    let mut search = Search::new(instance, params, rng, deadline, init);
    search.co_vns()?;
    Ok(search.finish())
}

/// Runs `params.variant` with a ChaCha8 generator seeded from `params.seed`.
pub fn solve(instance: &Instance, params: &SearchParams) -> Result<SearchTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let deadline = params.time_budget.map(|b| Instant::now() + b);
    match params.variant {
        Variant::GreedyOnly => {
            let init = greedy_start(instance, &mut rng)?;
            Ok(Search::new(instance, params, &mut rng, deadline, init).finish())
        }
        Variant::BasicVns => {
            let init = greedy_start(instance, &mut rng)?;
            basic_vns(instance, init, params, &mut rng, deadline)
        }
        Variant::CoVns | Variant::IntVns => co_vns(instance, params, &mut rng),
    }
}
