use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use klsf::bench::{run_matrix, BenchInstance, MatrixOptions};
use klsf::generator::{generate, GeneratorSpec, LabelModel};
use klsf::instance::{read_instance, write_instance};
use klsf::oracle::{exact_optimum, DEFAULT_CAP};
use klsf::{solve, Error, Instance, SearchParams, Variant};

/// Exit code for an oracle refusal.
const EXIT_REFUSED: u8 = 2;

#[derive(Parser)]
#[command(name = "klsf", version, about = "k-labelled spanning forest solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        kbar: usize,
        #[arg(long, default_value = "uniform")]
        model: LabelModel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance; prints `components labels elapsed_ms`.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "intvns")]
        variant: Variant,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact optimum by brute force; prints `optimum witness-labels`.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Run every (instance, variant, seed) cell and write a CSV report.
    Bench {
        /// Glob pattern for instance files.
        #[arg(long)]
        instances: String,
        /// Comma-separated variants.
        #[arg(long, default_value = "greedy,vns,covns,intvns", value_delimiter = ',')]
        variants: Vec<Variant>,
        /// `a..b`, `a..=b`, `a-b` or a comma-separated list.
        #[arg(long, default_value = "0..10")]
        seeds: String,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        oracle_cap: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    qmax: Option<usize>,
    #[arg(long = "no-improve")]
    no_improve: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    moves: Option<usize>,
    #[arg(long = "time-ms")]
    time_ms: Option<u64>,
}

impl SearchArgs {
    fn params(&self, variant: Variant, seed: u64) -> Result<SearchParams> {
        let mut p = SearchParams::new(variant, seed);
        if self.qmax == Some(0) || self.no_improve == Some(0) {
            bail!("--qmax and --no-improve must be positive");
        }
        p.q_max = self.qmax;
        if let Some(v) = self.no_improve {
            p.max_no_improve = v;
        }
        if let Some(v) = self.restarts {
            p.max_restarts = v;
        }
        if let Some(v) = self.moves {
            p.move_budget = v;
        }
        p.time_budget = self.time_ms.map(Duration::from_millis);
        Ok(p)
    }
}

fn load(path: &Path) -> Result<Instance> {
    let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_instance(file).with_context(|| format!("cannot parse {}", path.display()))
}

fn parse_seeds(spec: &str) -> Result<Vec<u64>> {
    let spec = spec.trim();
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .with_context(|| format!("bad seed `{s}`"))
    };
    let seeds: Vec<u64> = if let Some((a, b)) = spec.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = spec.split_once("..") {
        (num(a)?..num(b)?).collect()
    } else if let Some((a, b)) = spec.split_once('-') {
        (num(a)?..=num(b)?).collect()
    } else {
        spec.split(',').map(num).collect::<Result<_>>()?
    };
    if seeds.is_empty() {
        bail!("seed range `{spec}` is empty");
    }
    Ok(seeds)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            n,
            density,
            ell,
            kbar,
            model,
            seed,
            out,
        } => {
            let instance = generate(&GeneratorSpec {
                n,
                density,
                ell,
                k_bar: kbar,
                label_model: model,
                seed,
            })?;
            fs::write(&out, write_instance(&instance))
                .with_context(|| format!("cannot write {}", out.display()))?;
        }
        Command::Solve {
            input,
            variant,
            seed,
            search,
        } => {
            let instance = load(&input)?;
            let params = search.params(variant, seed)?;
            let started = Instant::now();
            let trace = solve(&instance, &params)?;
            let elapsed = started.elapsed().as_secs_f64() * 1e3;
            let best = trace.best();
            println!("{} {} {elapsed:.3}", best.components(), best.labels().len());
        }
        Command::Oracle { input, cap } => {
            let instance = load(&input)?;
            match exact_optimum(&instance, cap) {
                Ok(r) => {
                    let witness: Vec<String> = r.witness.iter().map(|l| l.to_string()).collect();
                    let witness = if witness.is_empty() {
                        "-".to_string()
                    } else {
                        witness.join(",")
                    };
                    println!("{} {witness}", r.optimum_components);
                }
                Err(e @ Error::OracleTooLarge { .. }) => {
                    eprintln!("klsf: {e}");
                    return Ok(ExitCode::from(EXIT_REFUSED));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Bench {
            instances,
            variants,
            seeds,
            csv,
            jobs,
            oracle_cap,
            search,
        } => {
            let seeds = parse_seeds(&seeds)?;
            let mut paths: Vec<PathBuf> = glob::glob(&instances)
                .with_context(|| format!("bad glob `{instances}`"))?
                .collect::<Result<_, _>>()?;
            paths.sort();
            if paths.is_empty() {
                bail!("no instance files match `{instances}`");
            }
            let mut loaded = Vec::new();
            let mut failures = 0;
            for path in &paths {
                match load(path) {
                    Ok(instance) => loaded.push(BenchInstance {
                        id: path.display().to_string(),
                        instance,
                    }),
                    Err(e) => {
                        eprintln!("klsf: {e:#}");
                        failures += 1;
                    }
                }
            }
            if loaded.is_empty() {
                bail!("no readable instances");
            }
            let base = search.params(Variant::GreedyOnly, 0)?;
            let options = MatrixOptions { oracle_cap, jobs };
            let report = run_matrix(&loaded, &variants, &seeds, &base, &options)?;
            fs::write(&csv, report.to_csv())
                .with_context(|| format!("cannot write {}", csv.display()))?;
            for s in &report.summaries {
                let gap = s.mean_gap.map_or("-".into(), |g| format!("{g:.3}"));
                eprintln!(
                    "{:<7} runs {:>4}  mean components {:.3}  mean gap {gap}",
                    s.variant, s.runs, s.mean_components
                );
            }
            if failures > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("klsf: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_seeds("5-6").unwrap(), vec![5, 6]);
        assert_eq!(parse_seeds("9,1").unwrap(), vec![9, 1]);
        assert_eq!(parse_seeds("7").unwrap(), vec![7]);
        assert!(parse_seeds("3..3").is_err());
        assert!(parse_seeds("x").is_err());
    }
}
