//! Acceptance suite: ten end-to-end checks combining exact-oracle
//! equivalence, closed-form spot checks, and statistically banded Monte
//! Carlo. One test per criterion; each prints a PASS/FAIL line. Seeds are
//! fixed so every number here is reproducible; statistical bands are
//! 3 standard errors unless a remainder allowance is stated inline.

use std::fs;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use ral_core::asymptotics::{
    fernique_upper, gumbel_norming, normal_tail_lower, parisi_sum, EULER_GAMMA, ZETA2,
};
use ral_core::experiments::{
    clt_experiment, parisi_experiment, ratio_experiment, run_trials, uniform_experiment,
    ExperimentConfig, Objective,
};
use ral_core::greedy::greedy_assign;
use ral_core::sampling::gen_matrix;
use ral_core::solver::{brute_force_max, hungarian_max, hungarian_min};
use ral_core::stats::{
    cumulative_moments, exact_max_moments, gumbel_moments_quadrature, lyapunov_fraction, phi_tail,
    summarize,
};
use ral_core::{CostMatrix, DistributionKind, RunSeed};

fn criterion(tag: &str, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("[{tag}] {name}: PASS"),
        Err(cause) => {
            println!("[{tag}] {name}: FAIL");
            resume_unwind(cause);
        }
    }
}

fn gaussian_7x7(trial: u64) -> CostMatrix {
    gen_matrix(
        7,
        DistributionKind::Gaussian,
        RunSeed {
            master: 0xAC01,
            trial,
        },
    )
    .unwrap()
}

/// Integer matrices where greedy provably loses 8c: the [[2c, c], [9c, 0]]
/// block up front, a dominant diagonal elsewhere.
fn adversarial(k: u64) -> CostMatrix {
    let n = 2 + (k as usize % 7);
    let c = (k + 1) as f64;
    let mut entries = vec![0.0; n * n];
    entries[0] = 2.0 * c;
    entries[1] = c;
    entries[n] = 9.0 * c;
    entries[n + 1] = 0.0;
    for i in 2..n {
        entries[i * n + i] = 1000.0 * c;
    }
    CostMatrix::new(n, entries, None).unwrap()
}

fn config(
    n_values: Vec<usize>,
    trials: u64,
    master_seed: u64,
    dist: DistributionKind,
    objective: Objective,
) -> ExperimentConfig {
    ExperimentConfig {
        n_values,
        trials,
        master_seed,
        dist,
        objective,
        workers: 0,
    }
}

#[test]
fn ac01_solver_oracle_equivalence() {
    criterion(
        "AC01",
        "hungarian equals brute force on 1000 gaussian 7x7, negation exact",
        || {
            let start = Instant::now();
            for trial in 0..1000 {
                let m = gaussian_7x7(trial);
                let h = hungarian_max(&m);
                let b = brute_force_max(&m).unwrap();
                assert!(
                    (h.value - b.value).abs() <= 1e-9,
                    "trial {trial}: hungarian {} vs brute force {}",
                    h.value,
                    b.value
                );
                let neg = hungarian_min(&m.negated());
                assert_eq!(neg.value, -h.value, "trial {trial}: negation not exact");
            }
            let elapsed = start.elapsed().as_secs_f64();
            assert!(elapsed < 10.0, "took {elapsed:.1}s, budget 10s");
        },
    );
}

#[test]
fn ac02_greedy_dominance() {
    criterion(
        "AC02",
        "greedy never beats the exact max and strictly loses somewhere",
        || {
            let mut strict = 0usize;
            for trial in 0..1000 {
                let m = gaussian_7x7(trial);
                let g = greedy_assign(&m).value;
                let e = hungarian_max(&m).value;
                assert!(g <= e + 1e-9, "trial {trial}: greedy {g} > exact {e}");
                if g < e - 1e-9 {
                    strict += 1;
                }
            }
            for k in 0..100 {
                let m = adversarial(k);
                let g = greedy_assign(&m).value;
                let e = brute_force_max(&m).unwrap().value;
                assert!(g <= e + 1e-9);
                // Every member of this family costs greedy exactly 8c.
                assert!(
                    (e - g - 8.0 * (k + 1) as f64).abs() <= 1e-9,
                    "k={k}: gap {}",
                    e - g
                );
                strict += 1;
            }
            assert!(strict >= 1);
        },
    );
}

#[test]
fn ac03_ratio_convergence() {
    criterion(
        "AC03",
        "greedy means track the quadrature sums; normalized ratio increases",
        || {
            let cfg = config(
                vec![100, 1000, 10_000],
                500,
                0xAC03,
                DistributionKind::Gaussian,
                Objective::GreedyMax,
            );
            let rows = ratio_experiment(&cfg).unwrap();
            for row in &rows {
                let predicted = cumulative_moments(row.n as u64).unwrap().mean_sum;
                assert!(
                    (row.mean_value - predicted).abs() <= 3.0 * row.std_error,
                    "n={}: mean {} vs predicted {} (SE {})",
                    row.n,
                    row.mean_value,
                    predicted,
                    row.std_error
                );
            }
            assert!(
                rows[0].ratio < rows[1].ratio && rows[1].ratio < rows[2].ratio,
                "ratios not increasing: {:?}",
                rows.iter().map(|r| r.ratio).collect::<Vec<_>>()
            );
        },
    );
}

#[test]
fn ac04_exact_max_below_fernique_bound() {
    criterion(
        "AC04",
        "exact-max means stay under the fernique bound by more than 3 SE",
        || {
            let cfg = config(
                vec![50, 100, 200],
                200,
                0xAC04,
                DistributionKind::Gaussian,
                Objective::ExactMax,
            );
            let records = run_trials(&cfg).unwrap();
            for &n in &cfg.n_values {
                let values: Vec<f64> = records
                    .iter()
                    .filter(|r| r.n == n)
                    .map(|r| r.value)
                    .collect();
                let s = summarize(&values).unwrap();
                let bound = fernique_upper(n as u64);
                assert!(
                    bound - s.mean > 3.0 * s.std_error,
                    "n={n}: mean {} vs bound {bound} (SE {})",
                    s.mean,
                    s.std_error
                );
            }
        },
    );
}

#[test]
fn ac05_clt_normality_and_rate() {
    criterion(
        "AC05",
        "greedy total is normal at n=2000; Lyapunov fraction scales like 1/sqrt(n)",
        || {
            let cfg = config(
                vec![2000],
                10_000,
                0xAC05,
                DistributionKind::Gaussian,
                Objective::GreedyMax,
            );
            let report = clt_experiment(&cfg).unwrap();
            assert!(
                report.ks_sample_std <= 0.02,
                "sample-standardized KS {}",
                report.ks_sample_std
            );
            let var_ratio = report.sample_var / report.predicted_bsq_exact;
            assert!(
                (0.9..=1.1).contains(&var_ratio),
                "variance ratio {var_ratio}"
            );
            for n in [100u64, 1000, 10_000] {
                let scaled = lyapunov_fraction(n).unwrap() * (n as f64).sqrt();
                assert!(
                    (0.1..=10.0).contains(&scaled),
                    "n={n}: sqrt(n)-scaled Lyapunov fraction {scaled}"
                );
            }
        },
    );
}

#[test]
fn ac06_gumbel_norming_consistency() {
    criterion(
        "AC06",
        "quadrature means match a_m + gamma b_m; Gumbel moments exact",
        || {
            for m in [1_000u64, 10_000, 100_000, 1_000_000] {
                let g = gumbel_norming(m).unwrap();
                let moments = exact_max_moments(m).unwrap();
                let gap = (moments.mean - (g.a_m + EULER_GAMMA * g.b_m)).abs();
                let allowance = 5.0 * g.b_m * g.b_m * (m as f64).ln().ln();
                assert!(gap <= allowance, "m={m}: gap {gap} > allowance {allowance}");
            }
            let (mean, var) = gumbel_moments_quadrature().unwrap();
            assert!((mean - EULER_GAMMA).abs() <= 1e-8, "gumbel mean {mean}");
            assert!((var - ZETA2).abs() <= 1e-8, "gumbel variance {var}");
        },
    );
}

#[test]
fn ac07_parisi_partial_sums() {
    criterion(
        "AC07",
        "exponential min-assignment means match the 1/k^2 partial sums",
        || {
            let start = Instant::now();
            let cfg = config(
                vec![2, 5, 10],
                10_000,
                0xAC07,
                DistributionKind::Exponential,
                Objective::ExactMin,
            );
            let rows = parisi_experiment(&cfg).unwrap();
            let quoted = [1.25, 1.4636, 1.5498];
            for (row, q) in rows.iter().zip(quoted) {
                assert!(
                    (row.parisi_value - q).abs() < 5e-5,
                    "n={}: partial sum {} vs quoted {q}",
                    row.n,
                    row.parisi_value
                );
                assert_eq!(row.parisi_value, parisi_sum(row.n as u64).unwrap());
                assert!(
                    (row.mc_min_mean - row.parisi_value).abs() <= 3.0 * row.std_error,
                    "n={}: mean {} vs {} (SE {})",
                    row.n,
                    row.mc_min_mean,
                    row.parisi_value,
                    row.std_error
                );
            }
            let elapsed = start.elapsed().as_secs_f64();
            assert!(elapsed < 60.0, "took {elapsed:.1}s, budget 60s");
        },
    );
}

#[test]
fn ac08_steele_uniform_expansion() {
    criterion(
        "AC08",
        "uniform min-assignment mean matches the 1/n expansion at n=100",
        || {
            let cfg = config(
                vec![100],
                10_000,
                0xAC08,
                DistributionKind::Uniform,
                Objective::ExactMin,
            );
            let rows = uniform_experiment(&cfg).unwrap();
            let row = &rows[0];
            // 0.01 covers the expansion's O(1/n^2) remainder at n=100.
            let allowance = 3.0 * row.std_error + 0.01;
            assert!(
                (row.mc_min_mean - 1.604444).abs() <= allowance,
                "mean {} vs 1.604444 (allowance {allowance})",
                row.mc_min_mean
            );
        },
    );
}

#[test]
fn ac09_cli_determinism() {
    criterion(
        "AC09",
        "simulate-class reports are byte-identical across reruns and worker counts",
        || {
            let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
            let run = |args: &[&str]| {
                let status = Command::new(env!("CARGO_BIN_EXE_ral"))
                    .args(args)
                    .status()
                    .expect("spawn ral");
                assert!(status.success(), "ral {args:?} failed");
            };
            let path = |name: &str| dir.join(name);
            let as_str = |p: &PathBuf| p.to_str().unwrap().to_string();

            let report_a = path("ac09_a.csv");
            let report_b = path("ac09_b.csv");
            let report_w8 = path("ac09_w8.csv");
            let rec_a = path("ac09_a.json");
            let rec_b = path("ac09_b.json");
            let rec_w8 = path("ac09_w8.json");
            for (workers, report, rec) in [
                ("1", &report_a, &rec_a),
                ("1", &report_b, &rec_b),
                ("8", &report_w8, &rec_w8),
            ] {
                run(&[
                    "simulate",
                    "--n",
                    "20,40",
                    "--trials",
                    "30",
                    "--seed",
                    "99",
                    "--workers",
                    workers,
                    "--out",
                    &as_str(report),
                    "--records",
                    &as_str(rec),
                ]);
            }
            let bytes_a = fs::read(&report_a).unwrap();
            assert_eq!(bytes_a, fs::read(&report_b).unwrap(), "rerun differs");
            assert_eq!(bytes_a, fs::read(&report_w8).unwrap(), "workers=8 differs");

            // Per-trial values (not timings) must agree bit-for-bit.
            let values = |p: &PathBuf| -> Vec<(u64, u64, f64)> {
                let v: serde_json::Value =
                    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
                v.as_array()
                    .unwrap()
                    .iter()
                    .map(|r| {
                        (
                            r["n"].as_u64().unwrap(),
                            r["trial"].as_u64().unwrap(),
                            r["value"].as_f64().unwrap(),
                        )
                    })
                    .collect()
            };
            let va = values(&rec_a);
            assert_eq!(va, values(&rec_b));
            assert_eq!(va, values(&rec_w8));

            // A second simulate-class subcommand, same contract.
            let pa = path("ac09_parisi_a.csv");
            let pb = path("ac09_parisi_b.csv");
            for (workers, report) in [("1", &pa), ("8", &pb)] {
                run(&[
                    "parisi",
                    "--n",
                    "5",
                    "--trials",
                    "60",
                    "--seed",
                    "7",
                    "--workers",
                    workers,
                    "--out",
                    &as_str(report),
                ]);
            }
            assert_eq!(fs::read(&pa).unwrap(), fs::read(&pb).unwrap());
        },
    );
}

#[test]
fn ac10_tail_lower_bound() {
    criterion(
        "AC10",
        "closed-form tail lower bound stays below the true tail",
        || {
            for k in 1..=900 {
                let r = 1.0 + 0.01 * k as f64;
                let lower = normal_tail_lower(r).unwrap();
                let tail = phi_tail(r);
                assert!(lower <= tail, "r={r}: {lower} > {tail}");
            }
            let ratio = normal_tail_lower(10.0).unwrap() / phi_tail(10.0);
            assert!(ratio >= 0.99, "ratio at r=10: {ratio}");
        },
    );
}
