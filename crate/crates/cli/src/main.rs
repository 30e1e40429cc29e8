use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use csamn::harness::csv::{run_rows, table_rows, write_csv, CsvRow};
use csamn::harness::svg::plot_metric;
use csamn::harness::{mean_std, run_compare, run_experiment_with, run_sweep, ExperimentResult, Metrics, PointSummary, SweepTable};
use csamn::model::StorageState;
use csamn::oracle::{grid_joint, JointGrid};
use csamn::solver::{solve_slot_jcorm, JcormSettings, SolverMode};
use csamn::{generate_scenario, Algorithm, Error, Result, ScenarioConfig};

const EXIT_CONFIG: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "csamn", version, about = "Satellite-UAV maritime IoT offloading simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one algorithm over the horizon of one seed.
    Run(RunArgs),
    /// Sweep one parameter over several values and seeds.
    Sweep(SweepArgs),
    /// Compare algorithms on the same seeds.
    Compare(CompareArgs),
    /// Compare one slot's solver output with the exhaustive grid search.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// TOML scenario file; omitted keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Constraint handling of the start-time block.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output formats; CSV is always written.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv")]
    format: Vec<Format>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    algo: Option<AlgoArg>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Parameter to sweep (b_leo, ds_size, storage, k0, omega, beta, pmax, ...).
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    values: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    /// Algorithms to run (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    algo: Vec<AlgoArg>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long, value_enum, value_delimiter = ',')]
    algo: Vec<AlgoArg>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    slot: usize,
    /// Grid points per axis.
    #[arg(long, default_value_t = 12)]
    points: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Jcorm,
    Atsm,
    Ga,
    NoOffload,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Jcorm => Algorithm::Jcorm,
            AlgoArg::Atsm => Algorithm::Atsm,
            AlgoArg::Ga => Algorithm::Ga,
            AlgoArg::NoOffload => Algorithm::NoOffload,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    PaperRelaxed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

fn load_config(path: Option<&Path>, mode: Option<ModeArg>) -> Result<ScenarioConfig> {
    let mut cfg = match path {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    if let Some(m) = mode {
        cfg.mode = match m {
            ModeArg::Strict => SolverMode::Strict,
            ModeArg::PaperRelaxed => SolverMode::PaperRelaxed,
        };
    }
    Ok(cfg)
}

fn algos_or_all(list: &[AlgoArg]) -> Vec<Algorithm> {
    if list.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        let mut out: Vec<Algorithm> = Vec::new();
        for a in list {
            let a = Algorithm::from(*a);
            if !out.contains(&a) {
                out.push(a);
            }
        }
        out
    }
}

fn seeds_or_default(list: &[u64], cfg: &ScenarioConfig) -> Vec<u64> {
    if !list.is_empty() {
        list.to_vec()
    } else if !cfg.sweep_seeds.is_empty() {
        cfg.sweep_seeds.clone()
    } else {
        (1..=5).collect()
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn write_rows_to(path: &Path, rows: &[CsvRow]) -> Result<()> {
    write_csv(path, rows)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Per-slot cumulative utility of each algorithm, averaged over seeds.
fn cumulative_summaries(runs: &[&ExperimentResult]) -> Vec<PointSummary> {
    let mut algos: Vec<Algorithm> = runs.iter().map(|r| r.algo).collect();
    algos.dedup();
    let mut out = Vec::new();
    for algo in algos {
        let curves: Vec<Vec<f64>> = runs.iter().filter(|r| r.algo == algo).map(|r| r.cumulative_utility()).collect();
        let slots = curves.iter().map(Vec::len).min().unwrap_or(0);
        for t in 0..slots {
            let samples: Vec<Metrics> =
                curves.iter().map(|c| Metrics { utility: c[t], ..Metrics::default() }).collect();
            let (mean, std) = mean_std(&samples);
            out.push(PointSummary { algo, value: (t + 1) as f64, seeds: samples.len(), mean, std });
        }
    }
    out
}

fn print_summary(table: &SweepTable) {
    println!("{:<11} {:>14} {:>16} {:>16} {:>14} {:>12} {:>6}", "algo", "value", "utility", "data_bits", "energy_j", "ds_delay_s", "infeas");
    for s in table.summaries() {
        println!(
            "{:<11} {:>14.6e} {:>16.6e} {:>16.6e} {:>14.6e} {:>12.6} {:>6}",
            s.algo.name(),
            s.value,
            s.mean.utility,
            s.mean.data_bits,
            s.mean.energy_j,
            s.mean.ds_delay_s,
            s.mean.infeasible_slots * s.seeds as f64
        );
    }
}

fn cmd_run(args: &RunArgs) -> Result<usize> {
    let cfg = load_config(args.common.config.as_deref(), args.common.mode)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let algo = args.algo.map(Algorithm::from).unwrap_or(cfg.algo);
    let result = run_experiment_with(&cfg, seed, algo)?;
    std::fs::create_dir_all(&args.common.out)?;
    write_rows_to(&args.common.out.join("run.csv"), &run_rows(&result, "none", 0.0))?;
    if args.common.format.contains(&Format::Svg) {
        let svg = plot_metric(&cumulative_summaries(&[&result]), "slot", "utility");
        write_text(&args.common.out.join("run_cumulative_utility.svg"), &svg)?;
    }
    println!(
        "algo={} seed={} utility={:.6e} data_bits={:.6e} energy_j={:.6e} ds_delay_s={:.6} infeasible_slots={} wall_clock_s={:.3}",
        algo.name(),
        seed,
        result.utility(),
        result.data_bits(),
        result.energy_j(),
        result.avg_ds_delay_s(),
        result.infeasible_slots(),
        result.wall_clock_s
    );
    Ok(result.infeasible_slots())
}

fn cmd_sweep(args: &SweepArgs) -> Result<usize> {
    let cfg = load_config(args.common.config.as_deref(), args.common.mode)?;
    let axis = args
        .axis
        .clone()
        .or_else(|| cfg.sweep_axis.clone())
        .ok_or_else(|| Error::config("sweep needs --axis (or sweep_axis in the config)"))?;
    let values = if args.values.is_empty() { cfg.sweep_values.clone() } else { args.values.clone() };
    let seeds = seeds_or_default(&args.seeds, &cfg);
    let table = run_sweep(&cfg, &axis, &values, &seeds, &algos_or_all(&args.algo))?;
    std::fs::create_dir_all(&args.common.out)?;
    write_rows_to(&args.common.out.join("sweep.csv"), &table_rows(&table))?;
    if args.common.format.contains(&Format::Svg) {
        let summaries = table.summaries();
        for metric in ["utility", "data_bits", "energy_j", "ds_delay_s"] {
            let svg = plot_metric(&summaries, &axis, metric);
            write_text(&args.common.out.join(format!("sweep_{metric}.svg")), &svg)?;
        }
    }
    print_summary(&table);
    Ok(table.infeasible_slots())
}

fn cmd_compare(args: &CompareArgs) -> Result<usize> {
    let cfg = load_config(args.common.config.as_deref(), args.common.mode)?;
    let seeds = seeds_or_default(&args.seeds, &cfg);
    let table = run_compare(&cfg, &seeds, &algos_or_all(&args.algo))?;
    std::fs::create_dir_all(&args.common.out)?;
    write_rows_to(&args.common.out.join("compare.csv"), &table_rows(&table))?;
    if args.common.format.contains(&Format::Svg) {
        let runs: Vec<&ExperimentResult> = table.cells.iter().map(|c| &c.result).collect();
        let svg = plot_metric(&cumulative_summaries(&runs), "slot", "utility");
        write_text(&args.common.out.join("compare_cumulative_utility.svg"), &svg)?;
    }
    print_summary(&table);
    Ok(table.infeasible_slots())
}

fn cmd_oracle(args: &OracleArgs) -> Result<usize> {
    let cfg = load_config(args.config.as_deref(), Some(ModeArg::Strict))?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let net = generate_scenario(&cfg, seed)?;
    if args.slot >= net.num_slots() {
        return Err(Error::config(format!("slot {} is outside the {}-slot horizon", args.slot, net.num_slots())));
    }
    let storage = StorageState::new(cfg.storage_capacity_bits, cfg.initial_remaining_bits, cfg.num_uavs);
    let ctx = net.slot_context(&cfg, args.slot, &storage)?;
    let settings = JcormSettings { tolerances: cfg.tolerances(), mode: SolverMode::Strict, init: cfg.init };
    let solved = solve_slot_jcorm(&ctx, &settings)?;
    let grid = grid_joint(&ctx, &JointGrid::full(&ctx, args.points)?)?;
    println!("jcorm  utility={:.9e} decision={:?}", solved.evaluation.utility, solved.decision.uavs);
    match (grid.objective(), grid.arg()) {
        (Some(best), Some(arg)) => {
            println!("oracle utility={best:.9e} decision={:?}", arg.uavs);
            println!("ratio  {:.6}", solved.evaluation.utility / best);
        }
        _ => println!("oracle found no feasible grid point"),
    }
    Ok(usize::from(solved.infeasible))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match outcome {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => {
            eprintln!("{n} slot(s) flagged infeasible; results were written");
            ExitCode::from(EXIT_INFEASIBLE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { EXIT_CONFIG } else { 1 })
        }
    }
}
