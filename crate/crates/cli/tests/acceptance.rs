//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::VecDeque;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use klsf::anneal::{accept_move, cool, CoolingState};
use klsf::bench::{run_matrix, BenchInstance, MatrixOptions};
use klsf::construction::{greedy_complete, CandidateRestriction};
use klsf::generator::{generate, GeneratorSpec, LabelModel};
use klsf::oracle::{exact_optimum, DEFAULT_CAP};
use klsf::vns::{co_vns, solve, SearchParams, Variant};
use klsf::{complement, count_components, hamming_distance, Instance, LabelSet, LabeledGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------------------
// 1. Oracle agreement

const ORACLE_HIT_RATE: f64 = 0.95;
const ORACLE_SUITE_SECONDS: f64 = 60.0;

fn oracle_instance(i: u64) -> Instance {
    let ell = 5 + (i as usize % 6); // 5..=10
    generate(&GeneratorSpec {
        n: 8 + (i as usize % 5), // 8..=12
        density: [0.2, 0.3, 0.45][i as usize % 3],
        ell,
        k_bar: 2 + (i as usize / 3) % 3, // 2, 3, 4
        label_model: if i.is_multiple_of(2) {
            LabelModel::ClusteredLabels
        } else {
            LabelModel::UniformPerEdge
        },
        seed: 500 + i,
    })
    .expect("valid spec")
}

fn oracle_agreement() -> Outcome {
    let started = Instant::now();
    let (mut hits, mut cells) = (0usize, 0usize);
    for i in 0..50 {
        let inst = oracle_instance(i);
        let opt = exact_optimum(&inst, DEFAULT_CAP)
            .map_err(|e| e.to_string())?
            .optimum_components;
        for seed in 0..10 {
            let trace = solve(&inst, &SearchParams::new(Variant::IntVns, seed))
                .map_err(|e| e.to_string())?;
            let got = trace.best().components();
            if got < opt {
                return Err(format!(
                    "instance {i} seed {seed}: {got} below oracle {opt}"
                ));
            }
            hits += usize::from(got == opt);
            cells += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let rate = hits as f64 / cells as f64;
    check(
        rate >= ORACLE_HIT_RATE && secs <= ORACLE_SUITE_SECONDS,
        format!(
            "{hits}/{cells} cells optimal ({:.1}%), {secs:.2}s",
            100.0 * rate
        ),
    )
}

// ---------------------------------------------------------------------------
// 2. Variant ordering on the desk matrix

fn desk_matrix() -> Vec<BenchInstance> {
    let mut out = Vec::new();
    let mut seed = 0;
    for n in [10, 15, 20] {
        for density in [0.2, 0.5, 0.8] {
            for ell in [5, 10] {
                seed += 1;
                let instance = generate(&GeneratorSpec {
                    n,
                    density,
                    ell,
                    k_bar: 3,
                    label_model: LabelModel::UniformPerEdge,
                    seed,
                })
                .expect("valid spec");
                out.push(BenchInstance {
                    id: format!("desk-n{n}-d{density}-l{ell}"),
                    instance,
                });
            }
        }
    }
    out
}

fn variant_ordering() -> Outcome {
    let instances = desk_matrix();
    let seeds: Vec<u64> = (0..10).collect();
    let report = run_matrix(
        &instances,
        &Variant::ALL,
        &seeds,
        &SearchParams::new(Variant::GreedyOnly, 0),
        &MatrixOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let mean = |v| report.summary(v).expect("summary").mean_components;
    let (g, b, c, i) = (
        mean(Variant::GreedyOnly),
        mean(Variant::BasicVns),
        mean(Variant::CoVns),
        mean(Variant::IntVns),
    );
    let gap = report.summary(Variant::IntVns).and_then(|s| s.mean_gap);
    let greedy_gap = report.summary(Variant::GreedyOnly).and_then(|s| s.mean_gap);
    check(
        g >= b && b >= c && i <= b && gap <= greedy_gap,
        format!(
            "mean components greedy {g:.3} >= vns {b:.3} >= covns {c:.3}; intvns {i:.3} <= vns; \
             mean gap intvns {gap:?} <= greedy {greedy_gap:?}"
        ),
    )
}

// ---------------------------------------------------------------------------
// 3. Boltzmann acceptance statistics

const ACCEPT_TRIALS: usize = 100_000;
const ACCEPT_TOLERANCE: f64 = 0.01;

fn boltzmann_statistics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut details = Vec::new();
    let mut ok = true;
    for (delta, t) in [(1i64, 1.0f64), (2, 2.0), (1, 4.0), (3, 1.0)] {
        let accepted = (0..ACCEPT_TRIALS)
            .filter(|_| accept_move(delta, t, &mut rng))
            .count();
        let empirical = accepted as f64 / ACCEPT_TRIALS as f64;
        let expected = (-(delta as f64) / t).exp();
        ok &= (empirical - expected).abs() <= ACCEPT_TOLERANCE;
        details.push(format!("({delta},{t}) {empirical:.4} vs {expected:.4}"));
    }
    for delta in [-3i64, -1, 0] {
        for t in [0.0, 0.5, 3.0] {
            ok &= (0..1000).all(|_| accept_move(delta, t, &mut rng));
        }
    }
    check(ok, details.join(", "))
}

// ---------------------------------------------------------------------------
// 4. Cooling law exactness

const COOLING_REL_TOLERANCE: f64 = 1e-12;

fn cooling_exactness() -> Outcome {
    let mut worst = 0.0f64;
    for t0 in [2usize, 3, 5, 9] {
        let alpha = 1.0 / t0 as f64;
        let mut state = CoolingState::new(t0);
        for j in 0..=50 {
            let closed = t0 as f64 * alpha.powi(j);
            worst = worst.max((state.temperature() - closed).abs() / closed);
            state = cool(state);
        }
    }
    check(
        worst <= COOLING_REL_TOLERANCE,
        format!("max relative error {worst:.3e}"),
    )
}

// ---------------------------------------------------------------------------
// 5. Structural invariants

const CASES: usize = 1000;

fn random_graph(rng: &mut ChaCha8Rng) -> (usize, usize, Vec<(usize, usize, usize)>) {
    let n = rng.gen_range(1..15);
    let ell = rng.gen_range(1..10);
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    if n > 1 {
        for _ in 0..rng.gen_range(0..40) {
            let (u, v, l) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..ell),
            );
            if u != v && seen.insert((u.min(v), u.max(v), l)) {
                edges.push((u, v, l));
            }
        }
    }
    (n, ell, edges)
}

fn random_set(rng: &mut ChaCha8Rng, width: usize) -> LabelSet {
    LabelSet::from_labels(width, (0..width).filter(|_| rng.gen_bool(0.5)))
}

fn bfs_components(n: usize, edges: &[(usize, usize, usize)], labels: &LabelSet) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, l) in edges {
        if labels.contains(l) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !seen[s] {
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !std::mem::replace(&mut seen[y], true) {
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    count
}

fn structural_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut failures = Vec::new();

    let mut monotone = true;
    let mut bfs = true;
    for _ in 0..CASES {
        let (n, ell, edges) = random_graph(&mut rng);
        let g = LabeledGraph::new(n, ell, edges.clone()).expect("valid graph");
        let sub = random_set(&mut rng, ell);
        let mut sup = sub.clone();
        for l in random_set(&mut rng, ell).iter() {
            sup.insert(l);
        }
        let (a, b) = (
            count_components(&g, &sub).unwrap(),
            count_components(&g, &sup).unwrap(),
        );
        monotone &= a >= b && b >= g.floor() && a <= n;
        bfs &= a == bfs_components(n, &edges, &sub) && b == bfs_components(n, &edges, &sup);
    }
    if !monotone {
        failures.push("monotonicity");
    }
    if !bfs {
        failures.push("bfs agreement");
    }

    let mut metric = true;
    let mut involution = true;
    for _ in 0..CASES {
        let width = rng.gen_range(0..100);
        let (a, b, c) = (
            random_set(&mut rng, width),
            random_set(&mut rng, width),
            random_set(&mut rng, width),
        );
        let d = |x: &LabelSet, y: &LabelSet| hamming_distance(x, y).unwrap();
        metric &= d(&a, &a) == 0
            && (d(&a, &b) == 0) == (a == b)
            && d(&a, &b) == d(&b, &a)
            && d(&a, &c) <= d(&a, &b) + d(&b, &c);
        involution &= complement(&complement(&a)) == a && d(&a, &complement(&a)) == width;
    }
    if !metric {
        failures.push("hamming metric");
    }
    if !involution {
        failures.push("complement");
    }

    let mut feasible = true;
    for case in 0..CASES as u64 {
        let ell = rng.gen_range(1..8);
        let inst = generate(&GeneratorSpec {
            n: rng.gen_range(1..12),
            density: rng.gen_range(0.1..0.9),
            ell,
            k_bar: rng.gen_range(1..=ell),
            label_model: LabelModel::UniformPerEdge,
            seed: case,
        })
        .expect("valid spec");
        let variant = Variant::ALL[case as usize % 4];
        let mut params = SearchParams::new(variant, case);
        params.max_no_improve = 10;
        let trace = solve(&inst, &params).map_err(|e| e.to_string())?;
        feasible &= inst.is_feasible(trace.best())
            && trace.best().components()
                == count_components(inst.graph(), trace.best().labels()).unwrap();
    }
    if !feasible {
        failures.push("solver feasibility");
    }

    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("5 properties x {CASES} cases")
        } else {
            format!("violated: {}", failures.join(", "))
        },
    )
}

// ---------------------------------------------------------------------------
// 6. Co-VNS escape witness

/// Label 0 covers the path 0..5 and is the unique best first greedy pick, after
/// which no second label reaches one component. {1, 2} and {3, 4} each span
/// all eight vertices.
fn deceptive() -> Instance {
    let edges = [
        (0, 1, 0),
        (1, 2, 0),
        (2, 3, 0),
        (3, 4, 0),
        (4, 5, 0),
        (0, 1, 1),
        (1, 2, 1),
        (2, 3, 1),
        (3, 6, 1),
        (3, 4, 2),
        (4, 5, 2),
        (5, 7, 2),
        (1, 3, 3),
        (3, 5, 3),
        (5, 6, 3),
        (6, 0, 3),
        (0, 2, 4),
        (2, 4, 4),
        (4, 7, 4),
    ];
    Instance::new(LabeledGraph::new(8, 5, edges).expect("valid graph"), 2).expect("valid budget")
}

fn co_vns_escape() -> Outcome {
    let inst = deceptive();
    for group in [[1, 2], [3, 4]] {
        let c = count_components(inst.graph(), &LabelSet::from_labels(5, group)).unwrap();
        if c != 1 {
            return Err(format!("group {group:?} gives {c} components"));
        }
    }
    for seed in 0..10 {
        let greedy = greedy_complete(
            &inst,
            &LabelSet::empty(5),
            &CandidateRestriction::full(5),
            &mut ChaCha8Rng::seed_from_u64(seed),
        )
        .map_err(|e| e.to_string())?;
        if greedy.components() == 1 {
            return Err(format!("seed {seed}: greedy was not trapped"));
        }
        let trace = co_vns(
            &inst,
            &SearchParams::new(Variant::CoVns, seed),
            &mut ChaCha8Rng::seed_from_u64(seed),
        )
        .map_err(|e| e.to_string())?;
        if trace.best().components() != 1 {
            return Err(format!(
                "seed {seed}: Co-VNS stopped at {} components",
                trace.best().components()
            ));
        }
    }
    Ok("greedy trapped at 2 components, Co-VNS reaches 1 on seeds 0..9".into())
}

// ---------------------------------------------------------------------------
// 7. CLI determinism

fn klsf(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_klsf"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "klsf {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Drops the elapsed-time columns from `solve` output or a bench CSV.
fn strip_elapsed(text: &str) -> String {
    let mut out = String::new();
    let mut column = None;
    for line in text.lines() {
        let fields: Vec<&str> = line.split([',', ' ']).collect();
        if let Some(i) = fields.iter().position(|f| f.ends_with("elapsed_ms")) {
            column = Some(i);
        }
        let kept: Vec<&str> = match column {
            Some(i) if fields.len() > i => fields
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, f)| *f)
                .collect(),
            _ => fields,
        };
        out.push_str(&kept.join(","));
        out.push('\n');
    }
    out
}

fn cli_determinism() -> Outcome {
    let dir: PathBuf = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-cli");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = |name: &str| dir.join(name).display().to_string();

    for (i, model) in ["uniform", "clustered", "clustered"].iter().enumerate() {
        klsf(&[
            "gen",
            "--n",
            "14",
            "--density",
            "0.35",
            "--ell",
            "8",
            "--kbar",
            "3",
            "--model",
            model,
            "--seed",
            &i.to_string(),
            "--out",
            &path(&format!("g{i}.txt")),
        ])?;
    }
    let again = path("again.txt");
    klsf(&[
        "gen",
        "--n",
        "14",
        "--density",
        "0.35",
        "--ell",
        "8",
        "--kbar",
        "3",
        "--model",
        "uniform",
        "--seed",
        "0",
        "--out",
        &again,
    ])?;
    let read = |p: &str| std::fs::read_to_string(p).map_err(|e| e.to_string());
    if read(&again)? != read(&path("g0.txt"))? {
        return Err("gen output differs across runs".into());
    }

    for variant in ["greedy", "vns", "covns", "intvns"] {
        let args = [
            "solve",
            "--in",
            &path("g1.txt"),
            "--variant",
            variant,
            "--seed",
            "5",
        ];
        let (a, b) = (klsf(&args)?, klsf(&args)?);
        if a.trim().split(' ').count() != 3 {
            return Err(format!("unexpected solve output `{}`", a.trim()));
        }
        // solve prints no header; its elapsed column is the last field
        let fixed = |s: &str| s.trim().rsplit_once(' ').map(|(head, _)| head.to_string());
        if fixed(&a) != fixed(&b) {
            return Err(format!(
                "solve --variant {variant} differs: `{}` vs `{}`",
                a.trim(),
                b.trim()
            ));
        }
    }

    let glob = path("g*.txt");
    let (csv_a, csv_b) = (path("a.csv"), path("b.csv"));
    for csv in [&csv_a, &csv_b] {
        klsf(&[
            "bench",
            "--instances",
            &glob,
            "--variants",
            "greedy,vns,covns,intvns",
            "--seeds",
            "0..4",
            "--csv",
            csv,
            "--jobs",
            "4",
        ])?;
    }
    let (a, b) = (read(&csv_a)?, read(&csv_b)?);
    let rows = a.lines().take_while(|l| !l.is_empty()).count() - 1;
    check(
        strip_elapsed(&a) == strip_elapsed(&b) && rows == 3 * 4 * 4,
        format!("gen/solve identical, bench {rows} rows identical modulo elapsed_ms"),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle agreement", oracle_agreement),
        ("variant ordering", variant_ordering),
        ("boltzmann acceptance", boltzmann_statistics),
        ("cooling exactness", cooling_exactness),
        ("structural invariants", structural_invariants),
        ("co-vns escape", co_vns_escape),
        ("determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let (status, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {} {name:<22} {status}  {detail} [{:.2}s]",
            i + 1,
            started.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
