//! Seeded Monte Carlo experiments over the assignment process.
//!
//! Every experiment is a pure function of its [`ExperimentConfig`]: trial
//! `t` of the `k`-th requested size draws from the stream derived from
//! `(master_seed, pairing_index(k, t))`, so results are bit-identical
//! across runs and worker counts. Reports are reduced sequentially from
//! the sorted records.

use std::time::Instant;

use rayon::prelude::*;

use crate::asymptotics::{leading_order, parisi_sum, steele_expansion};
use crate::error::Error;
use crate::greedy::{greedy_assign, greedy_with};
use crate::sampling::{gen_matrix, DistributionKind, RunSeed, Sampler};
use crate::solver::{hungarian_max, hungarian_min};
use crate::stats::{cumulative_moments, ks_distance, phi_cdf, summarize};

/// Largest n accepted for the exact (Hungarian) objectives; greedy has no
/// such cap because it is O(n²) per trial and streams its rows.
pub const MAX_EXACT_N: usize = 5000;

/// Trials per n are capped so the per-size stream blocks cannot collide.
pub const MAX_TRIALS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Row-by-row greedy maximum.
    GreedyMax,
    /// Exact maximum assignment (Hungarian on the negated matrix).
    ExactMax,
    /// Exact minimum assignment.
    ExactMin,
}

impl Objective {
    pub fn label(&self) -> &'static str {
        match self {
            Objective::GreedyMax => "greedy",
            Objective::ExactMax => "max",
            Objective::ExactMin => "min",
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "greedy" => Ok(Objective::GreedyMax),
            "max" => Ok(Objective::ExactMax),
            "min" => Ok(Objective::ExactMin),
            _ => Err(Error::InvalidConfig(format!("unknown objective {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_values: Vec<usize>,
    /// Trials per n.
    pub trials: u64,
    pub master_seed: u64,
    pub dist: DistributionKind,
    pub objective: Objective,
    /// Worker threads; 0 picks the machine default.
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_values.is_empty() {
            return Err(Error::InvalidConfig("need at least one n".into()));
        }
        if self.n_values.iter().any(|&n| n == 0) {
            return Err(Error::InvalidConfig("every n must be >= 1".into()));
        }
        let mut seen = self.n_values.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig(
                "duplicate n values make the (n, trial) record key ambiguous".into(),
            ));
        }
        if self.trials < 2 {
            return Err(Error::InvalidConfig("trials must be >= 2".into()));
        }
        if self.trials > MAX_TRIALS {
            return Err(Error::InvalidConfig(format!(
                "trials must be <= 2^32, got {}",
                self.trials
            )));
        }
        if matches!(self.objective, Objective::ExactMax | Objective::ExactMin) {
            if let Some(&n) = self.n_values.iter().find(|&&n| n > MAX_EXACT_N) {
                return Err(Error::InvalidConfig(format!(
                    "exact objectives are O(n^3) per trial; n = {n} exceeds the {MAX_EXACT_N} guard"
                )));
            }
        }
        Ok(())
    }
}

/// Injective (size slot, trial) encoding: trial-major, one 2³² block per
/// position in `n_values`.
pub fn pairing_index(n_slot: usize, trial: u64) -> u64 {
    ((n_slot as u64) << 32) | trial
}

/// One trial's outcome. `trial` counts within the record's n; `seed`
/// carries the derived stream id so any record can be replayed alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRecord {
    pub n: usize,
    pub trial: u64,
    pub value: f64,
    pub elapsed_ms: f64,
    pub seed: RunSeed,
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))
}

fn job_seeds(cfg: &ExperimentConfig) -> Vec<(usize, u64, RunSeed)> {
    let mut jobs = Vec::with_capacity(cfg.n_values.len() * cfg.trials as usize);
    for (slot, &n) in cfg.n_values.iter().enumerate() {
        for trial in 0..cfg.trials {
            let seed = RunSeed {
                master: cfg.master_seed,
                trial: pairing_index(slot, trial),
            };
            jobs.push((n, trial, seed));
        }
    }
    jobs
}

fn run_one(
    n: usize,
    trial: u64,
    dist: DistributionKind,
    objective: Objective,
    seed: RunSeed,
) -> Result<ExperimentRecord, Error> {
    let start = Instant::now();
    let value = match objective {
        Objective::GreedyMax => {
            // Streamed row by row: n = 10^4 never materializes the matrix.
            let mut sampler = Sampler::new(dist, seed);
            let (result, _) = greedy_with(n, |_, row| sampler.fill(row));
            result.value
        }
        Objective::ExactMax => hungarian_max(&gen_matrix(n, dist, seed)?).value,
        Objective::ExactMin => hungarian_min(&gen_matrix(n, dist, seed)?).value,
    };
    Ok(ExperimentRecord {
        n,
        trial,
        value,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        seed,
    })
}

/// Run every (n, trial) job in the worker pool and return the records
/// sorted by (n, trial). Values depend only on the config, never on the
/// schedule.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, Error> {
    cfg.validate()?;
    let jobs = job_seeds(cfg);
    let (dist, objective) = (cfg.dist, cfg.objective);
    let pool = build_pool(cfg.workers)?;
    let mut records = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, trial, seed)| run_one(n, trial, dist, objective, seed))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    records.sort_by(|a, b| (a.n, a.trial).cmp(&(b.n, b.trial)));
    Ok(records)
}

/// Group sorted records into per-n value vectors, preserving n order.
fn grouped(records: &[ExperimentRecord]) -> Vec<(usize, Vec<f64>)> {
    let mut out: Vec<(usize, Vec<f64>)> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some((n, values)) if *n == r.n => values.push(r.value),
            _ => out.push((r.n, vec![r.value])),
        }
    }
    out
}

fn require(ok: bool, msg: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidConfig(msg.into()))
    }
}

/// Monte Carlo mean against the n√(2 log n) normalization, with the
/// quadrature-predicted counterpart Σ_{m≤n} E max of m normals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    pub n: usize,
    pub mean_value: f64,
    pub std_error: f64,
    pub ratio: f64,
    pub predicted_ratio: f64,
}

/// Cheap precondition check, usable before launching trials.
pub fn check_ratio_config(cfg: &ExperimentConfig) -> Result<(), Error> {
    cfg.validate()?;
    require(
        matches!(cfg.objective, Objective::GreedyMax | Objective::ExactMax),
        "ratio experiment needs objective greedy or max",
    )?;
    require(
        cfg.dist == DistributionKind::Gaussian,
        "ratio experiment needs gaussian costs",
    )?;
    require(
        cfg.n_values.iter().all(|&n| n >= 2),
        "the n sqrt(2 log n) normalization needs n >= 2",
    )
}

pub fn ratio_experiment(cfg: &ExperimentConfig) -> Result<Vec<RatioReport>, Error> {
    check_ratio_config(cfg)?;
    let records = run_trials(cfg)?;
    ratio_from_records(cfg, &records)
}

pub fn ratio_from_records(
    cfg: &ExperimentConfig,
    records: &[ExperimentRecord],
) -> Result<Vec<RatioReport>, Error> {
    check_ratio_config(cfg)?;
    grouped(records)
        .iter()
        .map(|(n, values)| {
            let s = summarize(values)?;
            let lead = leading_order(*n as u64)?;
            let predicted_mean = cumulative_moments(*n as u64)?.mean_sum;
            Ok(RatioReport {
                n: *n,
                mean_value: s.mean,
                std_error: s.std_error,
                ratio: s.mean / lead,
                predicted_ratio: predicted_mean / lead,
            })
        })
        .collect()
}

/// Normality check of the greedy total at one n: KS distance of the
/// standardized sample to Φ under both the exact-moment standardization
/// (predicted_a, √predicted_bsq_exact) and the sample one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltReport {
    pub n: usize,
    pub ks_to_phi: f64,
    pub ks_sample_std: f64,
    pub sample_mean: f64,
    pub sample_var: f64,
    pub predicted_a: f64,
    pub predicted_bsq_exact: f64,
}

pub fn check_clt_config(cfg: &ExperimentConfig) -> Result<(), Error> {
    cfg.validate()?;
    require(
        cfg.objective == Objective::GreedyMax,
        "clt experiment needs objective greedy",
    )?;
    require(
        cfg.dist == DistributionKind::Gaussian,
        "clt experiment needs gaussian costs",
    )?;
    require(cfg.n_values.len() == 1, "clt experiment takes a single n")?;
    require(cfg.trials >= 1000, "clt experiment needs trials >= 1000")
}

pub fn clt_experiment(cfg: &ExperimentConfig) -> Result<CltReport, Error> {
    check_clt_config(cfg)?;
    let records = run_trials(cfg)?;
    clt_from_records(cfg, &records)
}

pub fn clt_from_records(
    cfg: &ExperimentConfig,
    records: &[ExperimentRecord],
) -> Result<CltReport, Error> {
    check_clt_config(cfg)?;
    let n = cfg.n_values[0];
    let values: Vec<f64> = records.iter().map(|r| r.value).collect();
    let s = summarize(&values)?;
    let c = cumulative_moments(n as u64)?;
    let b = c.var_sum.sqrt();
    let mut standardized: Vec<f64> = values.iter().map(|v| (v - c.mean_sum) / b).collect();
    standardized.sort_by(f64::total_cmp);
    let ks_to_phi = ks_distance(&standardized, phi_cdf)?;
    let sd = s.variance.sqrt();
    let mut sample_std: Vec<f64> = values.iter().map(|v| (v - s.mean) / sd).collect();
    sample_std.sort_by(f64::total_cmp);
    let ks_sample_std = ks_distance(&sample_std, phi_cdf)?;
    Ok(CltReport {
        n,
        ks_to_phi,
        ks_sample_std,
        sample_mean: s.mean,
        sample_var: s.variance,
        predicted_a: c.mean_sum,
        predicted_bsq_exact: c.var_sum,
    })
}

/// Exponential min-assignment mean against the partial sum Σ_{k≤n} 1/k².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParisiRow {
    pub n: usize,
    pub mc_min_mean: f64,
    pub std_error: f64,
    pub parisi_value: f64,
}

pub fn check_parisi_config(cfg: &ExperimentConfig) -> Result<(), Error> {
    cfg.validate()?;
    require(
        cfg.objective == Objective::ExactMin,
        "parisi experiment needs objective min",
    )?;
    require(
        cfg.dist == DistributionKind::Exponential,
        "parisi experiment needs exponential costs",
    )
}

pub fn parisi_experiment(cfg: &ExperimentConfig) -> Result<Vec<ParisiRow>, Error> {
    check_parisi_config(cfg)?;
    let records = run_trials(cfg)?;
    parisi_from_records(cfg, &records)
}

pub fn parisi_from_records(
    cfg: &ExperimentConfig,
    records: &[ExperimentRecord],
) -> Result<Vec<ParisiRow>, Error> {
    check_parisi_config(cfg)?;
    grouped(records)
        .iter()
        .map(|(n, values)| {
            let s = summarize(values)?;
            Ok(ParisiRow {
                n: *n,
                mc_min_mean: s.mean,
                std_error: s.std_error,
                parisi_value: parisi_sum(*n as u64)?,
            })
        })
        .collect()
}

/// Uniform min-assignment mean against the ζ(2) − (ζ(2)+2ζ(3))/n expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformRow {
    pub n: usize,
    pub mc_min_mean: f64,
    pub std_error: f64,
    pub steele_value: f64,
}

pub fn check_uniform_config(cfg: &ExperimentConfig) -> Result<(), Error> {
    cfg.validate()?;
    require(
        cfg.objective == Objective::ExactMin,
        "uniform experiment needs objective min",
    )?;
    require(
        cfg.dist == DistributionKind::Uniform,
        "uniform experiment needs uniform costs",
    )?;
    require(
        cfg.n_values.iter().all(|&n| n >= 2),
        "the expansion being checked needs n >= 2",
    )
}

pub fn uniform_experiment(cfg: &ExperimentConfig) -> Result<Vec<UniformRow>, Error> {
    check_uniform_config(cfg)?;
    let records = run_trials(cfg)?;
    uniform_from_records(cfg, &records)
}

pub fn uniform_from_records(
    cfg: &ExperimentConfig,
    records: &[ExperimentRecord],
) -> Result<Vec<UniformRow>, Error> {
    check_uniform_config(cfg)?;
    grouped(records)
        .iter()
        .map(|(n, values)| {
            let s = summarize(values)?;
            Ok(UniformRow {
                n: *n,
                mc_min_mean: s.mean,
                std_error: s.std_error,
                steele_value: steele_expansion(*n as u64)?,
            })
        })
        .collect()
}

/// Greedy and exact maxima of the same matrix, so the per-trial gap is a
/// definitional inequality rather than a statistical one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapTrialRecord {
    pub n: usize,
    pub trial: u64,
    pub greedy_value: f64,
    pub exact_value: f64,
    pub elapsed_ms: f64,
    pub seed: RunSeed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRow {
    pub n: usize,
    pub greedy_mean: f64,
    pub exact_mean: f64,
    pub gap: f64,
}

pub fn check_gap_config(cfg: &ExperimentConfig) -> Result<(), Error> {
    cfg.validate()?;
    require(
        cfg.dist == DistributionKind::Gaussian,
        "gap experiment needs gaussian costs",
    )?;
    require(
        cfg.n_values.iter().all(|&n| n <= 2000),
        "gap experiment runs the exact solver; n must be <= 2000",
    )
}

/// Paired trials: one generated matrix, both methods.
pub fn optimality_gap_trials(cfg: &ExperimentConfig) -> Result<Vec<GapTrialRecord>, Error> {
    check_gap_config(cfg)?;
    let jobs = job_seeds(cfg);
    let dist = cfg.dist;
    let pool = build_pool(cfg.workers)?;
    let mut records = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, trial, seed)| {
                let start = Instant::now();
                let matrix = gen_matrix(n, dist, seed)?;
                let greedy_value = greedy_assign(&matrix).value;
                let exact_value = hungarian_max(&matrix).value;
                Ok(GapTrialRecord {
                    n,
                    trial,
                    greedy_value,
                    exact_value,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                    seed,
                })
            })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    records.sort_by(|a, b| (a.n, a.trial).cmp(&(b.n, b.trial)));
    Ok(records)
}

pub fn optimality_gap(cfg: &ExperimentConfig) -> Result<Vec<GapRow>, Error> {
    let records = optimality_gap_trials(cfg)?;
    gap_from_records(cfg, &records)
}

pub fn gap_from_records(
    cfg: &ExperimentConfig,
    records: &[GapTrialRecord],
) -> Result<Vec<GapRow>, Error> {
    check_gap_config(cfg)?;
    let mut out: Vec<(usize, Vec<f64>, Vec<f64>)> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some((n, greedy, exact)) if *n == r.n => {
                greedy.push(r.greedy_value);
                exact.push(r.exact_value);
            }
            _ => out.push((r.n, vec![r.greedy_value], vec![r.exact_value])),
        }
    }
    out.iter()
        .map(|(n, greedy, exact)| {
            let g = summarize(greedy)?;
            let e = summarize(exact)?;
            Ok(GapRow {
                n: *n,
                greedy_mean: g.mean,
                exact_mean: e.mean,
                gap: e.mean - g.mean,
            })
        })
        .collect()
}
