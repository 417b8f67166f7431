//! Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and
//! exits nonzero if any criterion fails.

mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nse_tsp::bench::{run_campaign, Campaign, InstanceEntry, Variant};
use nse_tsp::encoding::{dc_decode, nse_decode, nse_decode_trace, DcChromosome, NseChromosome};
use nse_tsp::exact::{
    brute_force_optimum, export_mtz, parse_arc_var, tour_from_arc_solution, ConstraintKind,
    MtzModel,
};
use nse_tsp::heuristics::best_nn_tour;
use nse_tsp::{
    build_cost_matrix, canonical_tour, evolve, tour_cost, validate_tour, CostMatrix,
    EncodingAdapter, EncodingKind, GaConfig, Seeding, Tour,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::list_shift_oracle;

const C1_BUDGET: Duration = Duration::from_millis(1);
const C2_BUDGET: Duration = Duration::from_millis(1);
const C3_PAIRS: usize = 1000;
const C4_DRAWS: usize = 10_000;
const C4_BUDGET: Duration = Duration::from_secs(5);
const C6_OPTIMUM: i64 = 7542;
const C6_BUDGET: Duration = Duration::from_millis(100);
const C7_RUNS: usize = 30;
const C7_POPULATION: usize = 100;
const C7_ITERATIONS: usize = 200;
const C8_INSTANCES: usize = 20;
const C8_REQUIRED: usize = 18;
const C8_POPULATION: usize = 100;
const C8_ITERATIONS: usize = 500;
const C8_BUDGET: Duration = Duration::from_secs(60);
const C9_RUNS: usize = 10;
const C9_POPULATION: usize = 100;
const C9_ITERATIONS: usize = 1000;
const C9_BASE_SEED: u64 = 1;
const C10_INSTANCES: usize = 20;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Verdict;

fn t(labels: &[usize]) -> Tour {
    Tour::from_one_based(labels).unwrap()
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn listed<T: std::fmt::Debug>(items: &[T]) -> String {
    if items.is_empty() {
        ": none".into()
    } else {
        format!(": {items:?}")
    }
}

fn within(elapsed: Duration, budget: Duration) -> String {
    format!("{:.3} ms of {:.0} ms budget", elapsed.as_secs_f64() * 1e3, budget.as_secs_f64() * 1e3)
}

fn nse_worked_example() -> Verdict {
    let start = Instant::now();
    let reference = t(&[1, 4, 3, 5, 2]);
    let chromo = NseChromosome::new(vec![2, 1, 2, 1], 5).unwrap();
    let tour = nse_decode(&reference, &chromo).unwrap();
    let states = nse_decode_trace(&reference, &chromo).unwrap();
    let elapsed = start.elapsed();
    let expected = vec![
        t(&[1, 3, 5, 4, 2]),
        t(&[1, 5, 3, 4, 2]),
        t(&[1, 3, 4, 5, 2]),
        t(&[1, 2, 3, 4, 5]),
    ];
    check(
        tour == t(&[1, 2, 3, 4, 5]) && states == expected && elapsed < C1_BUDGET,
        format!("decoded {tour}, {}", within(elapsed, C1_BUDGET)),
    )
}

fn dc_worked_example() -> Verdict {
    let start = Instant::now();
    let map = t(&[1, 4, 3, 5, 2]);
    let guide = DcChromosome::from_one_based(&[2, 3, 1, 4], 5).unwrap();
    let tour = dc_decode(&map, &guide).unwrap();
    let elapsed = start.elapsed();
    check(
        tour == t(&[5, 3, 4, 1, 2]) && elapsed < C2_BUDGET,
        format!("decoded {tour}, {}", within(elapsed, C2_BUDGET)),
    )
}

fn wrap_property() -> Verdict {
    let reference = canonical_tour(8).unwrap();
    let seven = NseChromosome::from_raw(&[7, 0, 0, 0, 0, 0, 0], 8).unwrap();
    let zero = NseChromosome::zeros(8);
    if nse_decode(&reference, &seven).unwrap() != nse_decode(&reference, &zero).unwrap() {
        return Verdict::Fail("n=8: shift 7 differs from shift 0".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    for _ in 0..C3_PAIRS {
        let n = rng.gen_range(3..=20);
        let v = rng.gen_range(0..10 * n);
        let slot = rng.gen_range(0..n - 1);
        let mut order: Vec<usize> = (0..n).collect();
        order[1..].shuffle(&mut rng);
        let mut raw = vec![0; n - 1];
        raw[slot] = v;
        let oracle = list_shift_oracle(&order, &raw);
        let reduced = NseChromosome::from_raw(&raw, n).unwrap();
        let decoded = nse_decode(&Tour::new(order).unwrap(), &reduced).unwrap();
        if decoded.order() != oracle.as_slice() {
            mismatches += 1;
        }
    }
    check(
        mismatches == 0,
        format!("{mismatches} mismatches over {C3_PAIRS} (v, n) pairs"),
    )
}

fn decoder_closure() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut violations = 0;
    for n in [5, 8, 51] {
        for kind in EncodingKind::ALL {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let reference = Tour::new(order).unwrap();
            let adapter = EncodingAdapter::new(kind, reference.clone()).unwrap();
            for _ in 0..C4_DRAWS {
                let genes = adapter.random_genotype(&mut rng);
                match adapter.decode(&genes) {
                    Ok(tour) => {
                        let head_moved = kind == EncodingKind::Nse && tour.first() != reference.first();
                        if validate_tour(tour.order(), n).is_err() || head_moved {
                            violations += 1;
                        }
                    }
                    Err(_) => violations += 1,
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        violations == 0 && elapsed < C4_BUDGET,
        format!("{violations} violations, {}", within(elapsed, C4_BUDGET)),
    )
}

fn exhaustive_four() -> Verdict {
    let reference = canonical_tour(4).unwrap();
    let mut seen = BTreeSet::new();
    let mut mismatches = 0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let chromo = NseChromosome::new(vec![a, b, c], 4).unwrap();
                let tour = nse_decode(&reference, &chromo).unwrap();
                if tour.order() != list_shift_oracle(reference.order(), &[a, b, c]).as_slice() {
                    mismatches += 1;
                }
                seen.insert(tour.to_one_based());
            }
        }
    }
    let all_fixed_head = seen.len() == 6 && seen.iter().all(|p| p[0] == 1);
    check(
        mismatches == 0 && all_fixed_head,
        format!("{mismatches} oracle mismatches, {} distinct tours", seen.len()),
    )
}

fn berlin52_rounding() -> Verdict {
    let start = Instant::now();
    let m = support::matrix("berlin52");
    let text = std::fs::read_to_string(support::data_dir().join("berlin52.opt.tour")).unwrap();
    let labels: Vec<usize> = text
        .split("TOUR_SECTION")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map_while(|s| s.parse::<i64>().ok())
        .take_while(|&v| v > 0)
        .map(|v| v as usize)
        .collect();
    let cost = tour_cost(&m, &t(&labels)).unwrap();
    let elapsed = start.elapsed();
    check(
        cost == C6_OPTIMUM && elapsed < C6_BUDGET,
        format!("cost {cost}, {}", within(elapsed, C6_BUDGET)),
    )
}

fn elitism_and_nn_dominance() -> Verdict {
    let mut runs = 0;
    let mut violations = Vec::new();
    for name in ["eil51", "berlin52"] {
        let m = support::matrix(name);
        let nn = tour_cost(&m, &best_nn_tour(&m)).unwrap();
        for variant in Variant::ALL {
            let adapter = EncodingAdapter::canonical(variant.encoding, m.n()).unwrap();
            for run in 0..C7_RUNS {
                let cfg = GaConfig {
                    population_size: C7_POPULATION,
                    iterations: C7_ITERATIONS,
                    seeding: variant.seeding,
                    rng_seed: run as u64,
                    ..GaConfig::default()
                };
                let record = evolve(&m, &adapter, &cfg).unwrap();
                runs += 1;
                let h = &record.best_cost_per_generation;
                if h.windows(2).any(|w| w[1] > w[0]) {
                    violations.push(format!("{name} {variant} run {run} not monotone"));
                }
                if variant.seeding == Seeding::Nn && record.final_best_cost > nn {
                    violations.push(format!("{name} {variant} run {run} ends above NN {nn}"));
                }
            }
        }
    }
    check(
        violations.is_empty(),
        format!("{} violations over {runs} runs{}", violations.len(), listed(&violations)),
    )
}

fn ga_reaches_optimum() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut hits = 0;
    for k in 0..C8_INSTANCES {
        let n = rng.gen_range(5..=8);
        let inst = support::random_instance(&format!("r{k}"), n, &mut rng);
        let m = build_cost_matrix(&inst).unwrap();
        let (_, opt) = brute_force_optimum(&m).unwrap();
        let adapter = EncodingAdapter::canonical(EncodingKind::Nse, n).unwrap();
        let cfg = GaConfig {
            population_size: C8_POPULATION,
            iterations: C8_ITERATIONS,
            seeding: Seeding::Rand,
            rng_seed: k as u64,
            ..GaConfig::default()
        };
        if evolve(&m, &adapter, &cfg).unwrap().final_best_cost == opt {
            hits += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        hits >= C8_REQUIRED && elapsed < C8_BUDGET,
        format!(
            "optimum in {hits}/{C8_INSTANCES} (need {C8_REQUIRED}), {:.1} s of {} s budget",
            elapsed.as_secs_f64(),
            C8_BUDGET.as_secs()
        ),
    )
}

fn eil51_trend() -> Verdict {
    let mut campaign = Campaign::new(vec![InstanceEntry {
        path: support::data_dir().join("eil51.tsp"),
        class: None,
    }]);
    campaign.variants = vec![
        "NSE-RAND".parse().unwrap(),
        "PR-RAND".parse().unwrap(),
        "DC-RAND".parse().unwrap(),
    ];
    campaign.repetitions = C9_RUNS;
    campaign.base_seed = C9_BASE_SEED;
    campaign.ga = GaConfig {
        population_size: C9_POPULATION,
        iterations: C9_ITERATIONS,
        ..GaConfig::default()
    };
    let outcome = run_campaign(&campaign).unwrap();
    let best: BTreeMap<String, i64> = outcome
        .summaries
        .iter()
        .map(|s| (s.variant.to_string(), s.best_cost.unwrap()))
        .collect();
    let (nse, pr, dc) = (best["NSE-RAND"], best["PR-RAND"], best["DC-RAND"]);
    check(
        nse < pr && nse < dc,
        format!("best NSE-RAND {nse}, PR-RAND {pr}, DC-RAND {dc}"),
    )
}

fn mtz_cross_validation() -> Verdict {
    if !support::solver_available() {
        return Verdict::Skip("no external MIP solver (python3 with highspy)".into());
    }
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut problems = Vec::new();
    for k in 0..C10_INSTANCES {
        let n = rng.gen_range(4..=8);
        let inst = support::random_instance(&format!("mtz{k}"), n, &mut rng);
        let m = build_cost_matrix(&inst).unwrap();
        let path = dir.path().join(format!("mtz{k}.lp"));
        std::fs::write(&path, export_mtz(&inst, &m).unwrap()).unwrap();
        let Some((objective, ones)) = support::solve_lp(&path) else {
            return Verdict::Skip("solver disappeared mid-run".into());
        };
        let (_, opt) = brute_force_optimum(&m).unwrap();
        let arcs: BTreeMap<(usize, usize), u8> =
            ones.iter().filter_map(|v| parse_arc_var(v)).map(|a| (a, 1)).collect();
        let rebuilt = tour_from_arc_solution(&arcs, n).and_then(|tour| tour_cost(&m, &tour));
        if objective.round() as i64 != opt || rebuilt.as_ref().ok() != Some(&opt) {
            problems.push(format!("instance {k}: solver {objective}, brute force {opt}, tour {rebuilt:?}"));
        }
    }
    check(
        problems.is_empty(),
        format!("{} of {C10_INSTANCES} disagree{}", problems.len(), listed(&problems)),
    )
}

fn model_shape() -> Verdict {
    let mut wrong = Vec::new();
    for n in 3..=10 {
        let m = CostMatrix::from_fn(n, |i, j| (i as i64 - j as i64).abs()).unwrap();
        let model = MtzModel::build("shape", &m).unwrap();
        let degree = model.count(ConstraintKind::OutDegree) + model.count(ConstraintKind::InDegree);
        if model.binary_var_count() != n * (n - 1)
            || model.order_vars.len() != n - 1
            || degree != 2 * n
            || model.count(ConstraintKind::Subtour) != (n - 1) * (n - 2)
        {
            wrong.push(n);
        }
    }
    check(wrong.is_empty(), format!("n = 3..=10, wrong counts for{}", listed(&wrong)))
}

fn bench_reproducible() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("campaign.toml");
    let eil51 = support::data_dir().join("eil51.tsp");
    std::fs::write(
        &config,
        format!(
            "repetitions = 3\nbase_seed = 5\n\n[[instances]]\npath = {:?}\n\n[ga]\npopulation_size = 30\niterations = 50\n",
            eil51.display().to_string()
        ),
    )
    .unwrap();
    let run = |out: &Path| {
        Command::new(env!("CARGO_BIN_EXE_nse-tsp"))
            .arg("bench")
            .arg(&config)
            .arg("--out")
            .arg(out)
            .output()
            .unwrap()
            .status
            .success()
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    if !run(&a) || !run(&b) {
        return Verdict::Fail("bench exited with an error".into());
    }
    let mut differing = Vec::new();
    for name in ["runs.csv", "summary.csv", "boxplot_eil51.svg"] {
        if std::fs::read(a.join(name)).unwrap() != std::fs::read(b.join(name)).unwrap() {
            differing.push(name);
        }
    }
    check(differing.is_empty(), format!("runs.csv, summary.csv and boxplot compared, differing{}", listed(&differing)))
}

fn main() {
    let checks: [(&str, Check); 12] = [
        ("NSE worked example and trace", nse_worked_example),
        ("DC worked example", dc_worked_example),
        ("shift wrap-around", wrap_property),
        ("decoder closure", decoder_closure),
        ("exhaustive n=4 against list-shift oracle", exhaustive_four),
        ("berlin52 optimal tour costs 7542", berlin52_rounding),
        ("elitism monotonicity and NN dominance", elitism_and_nn_dominance),
        ("GA finds the optimum on small instances", ga_reaches_optimum),
        ("eil51 NSE-RAND beats PR-RAND and DC-RAND", eil51_trend),
        ("MTZ export agrees with brute force", mtz_cross_validation),
        ("MTZ model shape", model_shape),
        ("bench output is reproducible", bench_reproducible),
    ];
    let mut failed = 0;
    for (k, (name, f)) in checks.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("criterion {:>2} {tag}: {name} ({detail}; {secs:.2} s)", k + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
