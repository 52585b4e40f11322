//! Greedy constructive heuristics.
//!
//! [`greedy_complete`] is the MVCA-style completion: repeatedly add the
//! candidate label that removes the most components. [`co_space_construct`]
//! runs the same completion restricted to the labels the incumbent does not
//! use.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::label_set::LabelSet;

/// The pool of labels a constructor may draw from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRestriction {
    allowed: LabelSet,
}

impl CandidateRestriction {
    pub fn new(allowed: LabelSet) -> Self {
        CandidateRestriction { allowed }
    }

    /// Every label of an `ell`-label universe.
    pub fn full(ell: usize) -> Self {
        CandidateRestriction {
            allowed: LabelSet::full(ell),
        }
    }

    pub fn allowed(&self) -> &LabelSet {
        &self.allowed
    }
}

/// Extends `start` with labels from `allowed` until the budget is spent or no
/// candidate strictly reduces the component count.
///
/// Each step adds the label with the largest reduction; ties are broken
/// uniformly at random through `rng`. Stops early once `floor(graph)` is hit.
pub fn greedy_complete<R: Rng + ?Sized>(
    instance: &Instance,
    start: &LabelSet,
    allowed: &CandidateRestriction,
    rng: &mut R,
) -> Result<Solution> {
    let graph = instance.graph();
    start.check_width(instance.ell())?;
    allowed.allowed.check_width(instance.ell())?;
    if start.len() > instance.k_bar() {
        return Err(Error::OverBudget {
            len: start.len(),
            k_bar: instance.k_bar(),
        });
    }
    if let Some(label) = start.iter().find(|&l| !allowed.allowed.contains(l)) {
        return Err(Error::StartOutsidePool { label });
    }

    let mut labels = start.clone();
    let mut uf = graph.union_find(&labels);
    let mut best = Vec::new();
    while labels.len() < instance.k_bar() && uf.count() > graph.floor() {
        best.clear();
        let mut best_count = uf.count();
        for label in allowed.allowed.iter().filter(|&l| !labels.contains(l)) {
            let mut trial = uf.clone();
            graph.merge_label(&mut trial, label);
            let count = trial.count();
            if count < best_count {
                best_count = count;
                best.clear();
            }
            if count == best_count && count < uf.count() {
                best.push(label);
            }
        }
        let Some(&pick) = best.choose(rng) else {
            break;
        };
        labels.insert(pick);
        graph.merge_label(&mut uf, pick);
    }
    Ok(Solution::from_parts(labels, uf.count()))
}

/// Which pool produced a complementary-space construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoSpacePool {
    /// Built only from labels absent from the incumbent.
    Complement,
    /// The complementary pool was empty or useless; rebuilt over all labels.
    Fallback,
}

/// Greedy construction inside the complementary space of `incumbent`.
///
/// Falls back to a full-universe greedy build when the incumbent uses every
/// label or when no complementary label removes any component.
pub fn co_space_construct<R: Rng + ?Sized>(
    instance: &Instance,
    incumbent: &Solution,
    rng: &mut R,
) -> Result<(Solution, CoSpacePool)> {
    let pool = incumbent.labels().complement();
    let empty = LabelSet::empty(instance.ell());
    if !pool.is_empty() {
        let built = greedy_complete(instance, &empty, &CandidateRestriction::new(pool), rng)?;
        if built.components() < instance.n() || instance.graph().floor() == instance.n() {
            return Ok((built, CoSpacePool::Complement));
        }
    }
    let built = greedy_complete(
        instance,
        &empty,
        &CandidateRestriction::full(instance.ell()),
        rng,
    )?;
    Ok((built, CoSpacePool::Fallback))
}
