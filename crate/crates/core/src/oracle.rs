//! Brute-force exact solver for small instances.
//!
//! Adding labels never increases the component count, so only subsets of size
//! exactly `min(k_bar, ell)` need to be examined.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::label_set::LabelSet;

/// Default limit on the number of subsets the oracle will examine.
pub const DEFAULT_CAP: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum_components: usize,
    /// Lexicographically first optimal label set.
    pub witness: LabelSet,
    pub subsets_examined: u64,
}

/// Subset enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Forward,
    Reverse,
}

/// `C(n, k)` without overflow for any realistic input.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exact minimum component count over all label sets of size `k_bar`.
pub fn exact_optimum(instance: &Instance, safety_cap: u64) -> Result<OracleResult> {
    exact_optimum_ordered(instance, safety_cap, Order::Forward)
}

/// [`exact_optimum`] with an explicit enumeration order. The witness is the
/// lexicographically first optimum either way.
pub fn exact_optimum_ordered(
    instance: &Instance,
    safety_cap: u64,
    order: Order,
) -> Result<OracleResult> {
    let ell = instance.ell();
    let k = instance.k_bar().min(ell);
    let subsets = binomial(ell, k);
    if subsets > safety_cap as u128 {
        return Err(Error::OracleTooLarge {
            ell,
            k,
            subsets,
            cap: safety_cap,
        });
    }

    let graph = instance.graph();
    let mut best: Option<(usize, LabelSet)> = None;
    let mut examined = 0u64;
    let mut visit = |combo: &[usize]| {
        examined += 1;
        let labels = LabelSet::from_labels(ell, combo.iter().copied());
        let components = graph.components(&labels);
        // Reverse order visits the lexicographic first optimum last, so ties replace.
        let replace = match (&best, order) {
            (None, _) => true,
            (Some((c, _)), Order::Forward) => components < *c,
            (Some((c, _)), Order::Reverse) => components <= *c,
        };
        if replace {
            best = Some((components, labels));
        }
    };
    match order {
        Order::Forward => for_each_combination(ell, k, &mut visit),
        Order::Reverse => for_each_combination_rev(ell, k, &mut visit),
    }
    let (optimum_components, witness) = best.expect("at least one subset");
    Ok(OracleResult {
        optimum_components,
        witness,
        subsets_examined: examined,
    })
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        f(&combo);
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
            return;
        };
        combo[i] += 1;
        let base = combo[i];
        for (offset, slot) in combo[i + 1..].iter_mut().enumerate() {
            *slot = base + offset + 1;
        }
    }
}

/// Calls `f` on every k-subset of `0..n` in reverse lexicographic order.
pub fn for_each_combination_rev(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut combo: Vec<usize> = (n - k..n).collect();
    loop {
        f(&combo);
        // rightmost position that can still move back
        let Some(i) = (0..k)
            .rev()
            .find(|&i| combo[i] > if i == 0 { 0 } else { combo[i - 1] + 1 })
        else {
            return;
        };
        combo[i] -= 1;
        for (j, slot) in combo.iter_mut().enumerate().skip(i + 1) {
            *slot = n - k + j;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::LabeledGraph;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn combinations_in_both_orders() {
        let mut fwd = Vec::new();
        for_each_combination(4, 2, |c| fwd.push(c.to_vec()));
        assert_eq!(
            fwd,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut rev = Vec::new();
        for_each_combination_rev(4, 2, |c| rev.push(c.to_vec()));
        fwd.reverse();
        assert_eq!(rev, fwd);

        let mut empty = Vec::new();
        for_each_combination(3, 0, |c| empty.push(c.to_vec()));
        assert_eq!(empty, vec![Vec::<usize>::new()]);
        for k in 0..=6 {
            let mut count = 0;
            for_each_combination_rev(6, k, |_| count += 1);
            assert_eq!(count as u128, binomial(6, k));
        }
    }

    #[test]
    fn edgeless_graph() {
        let inst = Instance::new(LabeledGraph::new(5, 4, []).unwrap(), 2).unwrap();
        let r = exact_optimum(&inst, DEFAULT_CAP).unwrap();
        assert_eq!(r.optimum_components, 5);
        assert_eq!(r.witness, LabelSet::from_labels(4, [0, 1]));
        assert_eq!(r.subsets_examined, 6);
    }

    #[test]
    fn triangle_single_label() {
        let g = LabeledGraph::new(3, 2, [(0, 1, 0), (1, 2, 0), (0, 2, 1)]).unwrap();
        let inst = Instance::new(g, 1).unwrap();
        let r = exact_optimum(&inst, DEFAULT_CAP).unwrap();
        assert_eq!(r.optimum_components, 1);
        assert_eq!(r.witness, LabelSet::from_labels(2, [0]));
        let rev = exact_optimum_ordered(&inst, DEFAULT_CAP, Order::Reverse).unwrap();
        assert_eq!(rev, r);
    }

    #[test]
    fn refuses_oversized_instances() {
        let inst = Instance::new(LabeledGraph::new(2, 30, []).unwrap(), 15).unwrap();
        let err = exact_optimum(&inst, DEFAULT_CAP).unwrap_err();
        assert!(
            matches!(err, Error::OracleTooLarge { subsets, .. } if subsets == binomial(30, 15))
        );
        assert!(err.to_string().contains("instance too large for oracle"));
    }
}
