//! Seeded random instance generation.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, LabeledGraph};

/// Probability that an intra-cluster edge gets its cluster's own label.
pub const CLUSTER_BIAS: f64 = 0.8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelModel {
    /// Every edge gets a label drawn uniformly from `0..ell`.
    UniformPerEdge,
    /// Vertices are split into `ceil(ell / 2)` clusters; cluster `c` owns label `c`.
    /// Intra-cluster edges take the owned label with probability [`CLUSTER_BIAS`],
    /// otherwise another label uniformly. Inter-cluster edges are uniform.
    ClusteredLabels,
}

impl fmt::Display for LabelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelModel::UniformPerEdge => "uniform",
            LabelModel::ClusteredLabels => "clustered",
        })
    }
}

impl FromStr for LabelModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uniform" => Ok(LabelModel::UniformPerEdge),
            "clustered" => Ok(LabelModel::ClusteredLabels),
            _ => Err(format!(
                "unknown label model `{s}` (expected uniform or clustered)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    /// Probability of an edge between each vertex pair, in `(0, 1]`.
    pub density: f64,
    pub ell: usize,
    pub k_bar: usize,
    pub label_model: LabelModel,
    pub seed: u64,
}

impl GeneratorSpec {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.ell == 0 {
            return bad("ell must be positive".into());
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad(format!("density {} outside (0, 1]", self.density));
        }
        if self.k_bar == 0 || self.k_bar > self.ell {
            return bad(format!("k_bar {} outside 1..={}", self.k_bar, self.ell));
        }
        Ok(())
    }
}

/// Samples an instance. Each vertex pair is visited once, so `(edge, label)`
/// pairs are unique by construction.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let clusters = spec.ell.div_ceil(2);
    let mut cluster_of: Vec<usize> = (0..spec.n).map(|v| v % clusters).collect();
    if spec.label_model == LabelModel::ClusteredLabels {
        cluster_of.shuffle(&mut rng);
    }

    let mut edges = Vec::new();
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if !rng.gen_bool(spec.density) {
                continue;
            }
            let label = match spec.label_model {
                LabelModel::UniformPerEdge => rng.gen_range(0..spec.ell),
                LabelModel::ClusteredLabels => {
                    let own = cluster_of[u];
                    if own != cluster_of[v] || spec.ell == 1 {
                        rng.gen_range(0..spec.ell)
                    } else if rng.gen_bool(CLUSTER_BIAS) {
                        own
                    } else {
                        // uniform over the other ell - 1 labels
                        let other = rng.gen_range(0..spec.ell - 1);
                        if other >= own {
                            other + 1
                        } else {
                            other
                        }
                    }
                }
            };
            edges.push((u, v, label));
        }
    }
    let graph = LabeledGraph::new(spec.n, spec.ell, edges)?;
    Ok(Instance::new(graph, spec.k_bar)?)
}
