//! `ral`: assignment-process experiments from the command line.
//!
//! Exit statuses: 0 success, 1 runtime/IO failure, 2 usage error.

mod emit;
mod plot;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ral_core::asymptotics;
use ral_core::experiments::{self, ExperimentConfig, Objective};
use ral_core::greedy::greedy_assign;
use ral_core::solver::{hungarian_max, hungarian_min};
use ral_core::stats::exact_max_moments;
use ral_core::{AssignmentResult, CostMatrix, DistributionKind, Error};

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values or parameter domains: exit 2.
    Usage(String),
    /// IO, schema, or numerical failure at run time: exit 1.
    Runtime(String),
}

fn app_err(e: Error) -> CliError {
    match e {
        Error::InvalidConfig(_) | Error::Domain { .. } => CliError::Usage(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_dist(s: &str) -> Result<DistributionKind, String> {
    DistributionKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    Objective::from_str(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "ral",
    version,
    about = "Random-assignment experiments: greedy vs exact solvers, \
             asymptotic constants, and seeded Monte Carlo checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy max assignment of a CSV cost matrix.
    Greedy(MatrixArgs),
    /// Exact assignment of a CSV cost matrix (Hungarian algorithm).
    Solve(SolveArgs),
    /// Closed-form constants table over a grid of sizes.
    Asymptotics(GridArgs),
    /// Quadrature moments of the max of m i.i.d. standard normals.
    Oracle(GridArgs),
    /// Monte Carlo mean of the assignment total against n*sqrt(2 log n).
    Simulate(SimulateArgs),
    /// Normality check of the greedy total at a single size.
    Clt(CltArgs),
    /// Exponential min-assignment against the zeta(2) partial sums.
    Parisi(McArgs),
    /// Uniform min-assignment against the 1/n expansion of zeta(2).
    Uniform(McArgs),
    /// Paired greedy vs exact maxima on identical matrices.
    Gap(McArgs),
    /// Render a report CSV as an SVG convergence chart.
    Plot(PlotArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    /// Cost-matrix CSV (one row per line); reads stdin when omitted.
    input: Option<PathBuf>,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveObjective {
    Max,
    Min,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Optimize the total up or down.
    #[arg(long, value_enum, default_value_t = SolveObjective::Max)]
    objective: SolveObjective,
}

#[derive(Args)]
struct GridArgs {
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads, 0 for auto; RAL_WORKERS is the fallback.
    #[arg(long, env = "RAL_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Also write the per-trial records as JSON to this path.
    #[arg(long)]
    records: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Comma-separated matrix sizes (each >= 2).
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Trials per size.
    #[arg(long, required = true)]
    trials: u64,
    /// Master seed; results are a pure function of the flags.
    #[arg(long, required = true)]
    seed: u64,
    /// Cost distribution (the ratio normalization assumes gaussian).
    #[arg(long, default_value = "gaussian", value_parser = parse_dist)]
    dist: DistributionKind,
    /// greedy or max; minimization has no ratio normalization here,
    /// see the parisi and uniform subcommands.
    #[arg(long, default_value = "greedy", value_parser = parse_objective)]
    objective: Objective,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct CltArgs {
    /// Single matrix size.
    #[arg(long, required = true)]
    n: usize,
    /// Trials (>= 1000).
    #[arg(long, required = true)]
    trials: u64,
    /// Master seed.
    #[arg(long, required = true)]
    seed: u64,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct McArgs {
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Trials per size.
    #[arg(long, required = true)]
    trials: u64,
    /// Master seed.
    #[arg(long, required = true)]
    seed: u64,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct PlotArgs {
    /// Report CSV with an n column.
    input: PathBuf,
    /// Output SVG path.
    #[arg(long, required = true)]
    out: PathBuf,
    /// Column to plot against n.
    #[arg(long, default_value = "ratio")]
    column: String,
}

fn load_matrix(path: Option<&Path>) -> Result<CostMatrix, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Runtime(format!("reading {}: {e}", p.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Runtime(format!("reading stdin: {e}")))?;
            buf
        }
    };
    CostMatrix::from_csv(&text).map_err(|e| CliError::Runtime(e.to_string()))
}

fn write_result(m: &CostMatrix, r: &AssignmentResult, out: Option<&Path>) -> Result<(), CliError> {
    let value = serde_json::json!({
        "method": r.method.to_string(),
        "n": m.n(),
        "value": r.value,
        "permutation": r.perm.to_one_based(),
    });
    let mut text =
        serde_json::to_string_pretty(&value).map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    emit::write_out(&text, out)
}

fn mc_config(args: &McArgs, dist: DistributionKind, objective: Objective) -> ExperimentConfig {
    ExperimentConfig {
        n_values: args.n.clone(),
        trials: args.trials,
        master_seed: args.seed,
        dist,
        objective,
        workers: args.run.workers,
    }
}

/// Run records + optional records file + report table, shared by the
/// single-objective experiment subcommands.
fn run_experiment<T>(
    name: &str,
    cfg: &ExperimentConfig,
    run: &RunArgs,
    check: impl Fn(&ExperimentConfig) -> Result<(), Error>,
    report: impl Fn(&[experiments::ExperimentRecord]) -> Result<T, Error>,
    table: impl Fn(&T) -> emit::Table,
) -> Result<(), CliError> {
    check(cfg).map_err(app_err)?;
    let start = Instant::now();
    eprintln!(
        "{name}: {} size(s) x {} trials",
        cfg.n_values.len(),
        cfg.trials
    );
    let records = experiments::run_trials(cfg).map_err(app_err)?;
    eprintln!(
        "{name}: {} records in {:.1}s",
        records.len(),
        start.elapsed().as_secs_f64()
    );
    if let Some(path) = &run.records {
        emit::write_out(&emit::records_json(&records)?, Some(path))?;
    }
    let rep = report(&records).map_err(app_err)?;
    emit::write_out(&table(&rep).render(run.output.format)?, run.output.out.as_deref())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Greedy(args) => {
            let m = load_matrix(args.input.as_deref())?;
            write_result(&m, &greedy_assign(&m), args.out.as_deref())
        }
        Command::Solve(args) => {
            let m = load_matrix(args.matrix.input.as_deref())?;
            let result = match args.objective {
                SolveObjective::Max => hungarian_max(&m),
                SolveObjective::Min => hungarian_min(&m),
            };
            write_result(&m, &result, args.matrix.out.as_deref())
        }
        Command::Asymptotics(args) => {
            let mut rows = Vec::new();
            for &n in &args.n {
                let clt = asymptotics::clt_constants(n).map_err(app_err)?;
                rows.push(vec![
                    emit::Field::U64(n),
                    emit::Field::F64(asymptotics::leading_order(n).map_err(app_err)?),
                    emit::Field::F64(asymptotics::fernique_upper(n)),
                    emit::Field::F64(clt.a_n),
                    emit::Field::F64(clt.b_n_sq),
                    emit::Field::F64(asymptotics::parisi_sum(n).map_err(app_err)?),
                    emit::Field::F64(asymptotics::steele_expansion(n).map_err(app_err)?),
                ]);
            }
            let table = emit::Table {
                headers: vec![
                    "n",
                    "leading_order",
                    "fernique_upper",
                    "A_n",
                    "B_n_sq",
                    "parisi_sum",
                    "steele_expansion",
                ],
                rows,
            };
            emit::write_out(&table.render(args.output.format)?, args.output.out.as_deref())
        }
        Command::Oracle(args) => {
            let mut rows = Vec::new();
            for &m in &args.n {
                rows.push(exact_max_moments(m).map_err(app_err)?);
            }
            let table = emit::oracle_table(&rows);
            emit::write_out(&table.render(args.output.format)?, args.output.out.as_deref())
        }
        Command::Simulate(args) => {
            let cfg = ExperimentConfig {
                n_values: args.n.clone(),
                trials: args.trials,
                master_seed: args.seed,
                dist: args.dist,
                objective: args.objective,
                workers: args.run.workers,
            };
            run_experiment(
                "simulate",
                &cfg,
                &args.run,
                experiments::check_ratio_config,
                |records| experiments::ratio_from_records(&cfg, records),
                |rows| emit::ratio_table(rows),
            )
        }
        Command::Clt(args) => {
            let cfg = ExperimentConfig {
                n_values: vec![args.n],
                trials: args.trials,
                master_seed: args.seed,
                dist: DistributionKind::Gaussian,
                objective: Objective::GreedyMax,
                workers: args.run.workers,
            };
            run_experiment(
                "clt",
                &cfg,
                &args.run,
                experiments::check_clt_config,
                |records| experiments::clt_from_records(&cfg, records),
                emit::clt_table,
            )
        }
        Command::Parisi(args) => {
            let cfg = mc_config(&args, DistributionKind::Exponential, Objective::ExactMin);
            run_experiment(
                "parisi",
                &cfg,
                &args.run,
                experiments::check_parisi_config,
                |records| experiments::parisi_from_records(&cfg, records),
                |rows| emit::parisi_table(rows),
            )
        }
        Command::Uniform(args) => {
            let cfg = mc_config(&args, DistributionKind::Uniform, Objective::ExactMin);
            run_experiment(
                "uniform",
                &cfg,
                &args.run,
                experiments::check_uniform_config,
                |records| experiments::uniform_from_records(&cfg, records),
                |rows| emit::uniform_table(rows),
            )
        }
        Command::Gap(args) => {
            let cfg = mc_config(&args, DistributionKind::Gaussian, Objective::ExactMax);
            experiments::check_gap_config(&cfg).map_err(app_err)?;
            let start = Instant::now();
            eprintln!("gap: {} size(s) x {} trials", cfg.n_values.len(), cfg.trials);
            let records = experiments::optimality_gap_trials(&cfg).map_err(app_err)?;
            eprintln!(
                "gap: {} paired records in {:.1}s",
                records.len(),
                start.elapsed().as_secs_f64()
            );
            if let Some(path) = &args.run.records {
                emit::write_out(&emit::gap_records_json(&records)?, Some(path))?;
            }
            let rows = experiments::gap_from_records(&cfg, &records).map_err(app_err)?;
            emit::write_out(
                &emit::gap_table(&rows).render(args.run.output.format)?,
                args.run.output.out.as_deref(),
            )
        }
        Command::Plot(args) => plot::plot_convergence(&args.input, &args.out, &args.column),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        match e {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                std::process::exit(2);
            }
            CliError::Runtime(msg) => {
                eprintln!("error: {msg}");
                std::process::exit(1);
            }
        }
    }
}
