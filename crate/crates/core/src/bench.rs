//! Benchmark matrix: every (instance, variant, seed) cell, oracle gaps where
//! the oracle is affordable, and per-variant summary statistics.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{exact_optimum, DEFAULT_CAP};
use crate::vns::{solve, SearchParams, Variant};

pub const CSV_HEADER: &str =
    "instance,variant,seed,components,labels,elapsed_ms,iterations,optimum";
pub const SUMMARY_HEADER: &str =
    "variant,runs,mean_components,mean_gap,optimum_hit_rate,mean_elapsed_ms";

/// A named instance.
#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub id: String,
    pub instance: Instance,
}

/// One solver execution.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub variant: Variant,
    pub seed: u64,
    pub components: usize,
    pub labels: usize,
    pub elapsed_ms: f64,
    pub iterations: usize,
    /// Exact optimum when the oracle ran within its cap.
    pub optimum: Option<usize>,
}

impl RunRecord {
    pub fn hit_optimum(&self) -> Option<bool> {
        self.optimum.map(|opt| self.components == opt)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariantSummary {
    pub variant: Variant,
    pub runs: usize,
    pub mean_components: f64,
    /// Mean of `components - optimum` over runs with a known optimum.
    pub mean_gap: Option<f64>,
    pub optimum_hit_rate: Option<f64>,
    pub mean_elapsed_ms: f64,
}

impl VariantSummary {
    /// Aggregates the records of `variant`.
    pub fn from_records(variant: Variant, records: &[RunRecord]) -> Self {
        let rows: Vec<&RunRecord> = records.iter().filter(|r| r.variant == variant).collect();
        let runs = rows.len();
        let mean = |xs: &mut dyn Iterator<Item = f64>| {
            let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
            (count > 0).then(|| sum / count as f64)
        };
        let mean_components = mean(&mut rows.iter().map(|r| r.components as f64)).unwrap_or(0.0);
        let mean_gap = mean(
            &mut rows
                .iter()
                .filter_map(|r| r.optimum.map(|o| (r.components - o) as f64)),
        );
        let optimum_hit_rate = mean(
            &mut rows
                .iter()
                .filter_map(|r| r.hit_optimum().map(|h| if h { 1.0 } else { 0.0 })),
        );
        let mean_elapsed_ms = mean(&mut rows.iter().map(|r| r.elapsed_ms)).unwrap_or(0.0);
        VariantSummary {
            variant,
            runs,
            mean_components,
            mean_gap,
            optimum_hit_rate,
            mean_elapsed_ms,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    /// Rows in (instance, variant, seed) input order.
    pub records: Vec<RunRecord>,
    /// One entry per requested variant, in request order.
    pub summaries: Vec<VariantSummary>,
}

impl BenchReport {
    pub fn summary(&self, variant: Variant) -> Option<&VariantSummary> {
        self.summaries.iter().find(|s| s.variant == variant)
    }

    /// Data rows under [`CSV_HEADER`], a blank line, then the summary block
    /// under [`SUMMARY_HEADER`].
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CSV_HEADER}").unwrap();
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{},{},{:.3},{},{}",
                csv_field(&r.instance),
                r.variant,
                r.seed,
                r.components,
                r.labels,
                r.elapsed_ms,
                r.iterations,
                r.optimum.map(|o| o.to_string()).unwrap_or_default()
            )
            .unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "{SUMMARY_HEADER}").unwrap();
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_default();
        for s in &self.summaries {
            writeln!(
                out,
                "{},{},{:.4},{},{},{:.3}",
                s.variant,
                s.runs,
                s.mean_components,
                opt(s.mean_gap),
                opt(s.optimum_hit_rate),
                s.mean_elapsed_ms
            )
            .unwrap();
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct MatrixOptions {
    /// Oracle subset cap; instances above it get an empty optimum column.
    pub oracle_cap: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for MatrixOptions {
    fn default() -> Self {
        MatrixOptions {
            oracle_cap: DEFAULT_CAP,
            jobs: 0,
        }
    }
}

/// Runs every (instance, variant, seed) cell with `base` as the parameter
/// template (its variant and seed are overridden per cell).
pub fn run_matrix(
    instances: &[BenchInstance],
    variants: &[Variant],
    seeds: &[u64],
    base: &SearchParams,
    options: &MatrixOptions,
) -> Result<BenchReport> {
    for (list, empty) in [
        (instances.is_empty(), "instance"),
        (variants.is_empty(), "variant"),
        (seeds.is_empty(), "seed"),
    ] {
        if list {
            return Err(Error::EmptyMatrix(empty));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .expect("thread pool");

    let records = pool.install(|| -> Result<Vec<RunRecord>> {
        let optima: Vec<Option<usize>> = instances
            .par_iter()
            .map(|b| {
                exact_optimum(&b.instance, options.oracle_cap)
                    .ok()
                    .map(|r| r.optimum_components)
            })
            .collect();

        let cells: Vec<(usize, Variant, u64)> = (0..instances.len())
            .flat_map(|i| {
                variants
                    .iter()
                    .flat_map(move |&v| seeds.iter().map(move |&s| (i, v, s)))
            })
            .collect();

        cells
            .into_par_iter()
            .map(|(i, variant, seed)| {
                let bench = &instances[i];
                let params = SearchParams {
                    variant,
                    seed,
                    ..base.clone()
                };
                let started = Instant::now();
                let trace = solve(&bench.instance, &params)?;
                let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
                let best = trace.best();
                Ok(RunRecord {
                    instance: bench.id.clone(),
                    variant,
                    seed,
                    components: best.components(),
                    labels: best.labels().len(),
                    elapsed_ms,
                    iterations: trace.iterations(),
                    optimum: optima[i],
                })
            })
            .collect()
    })?;

    let summaries = variants
        .iter()
        .map(|&v| VariantSummary::from_records(v, &records))
        .collect();
    Ok(BenchReport { records, summaries })
}
