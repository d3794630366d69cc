use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ffent_cli::config::{BaseTag, DistTag, ExperimentConfig};
use ffent_cli::emit::{open_output, write_entropy_rows, write_rows, OutputMode};
use ffent_cli::error::{CliError, Result};
use ffent_cli::rows::fmt_f;
use ffent_cli::{config, runner};

/// Entanglement entropy of free fermions with random-matrix one-body
/// Hamiltonians: seeded ensemble runs, limit-law tables, and Page-curve
/// experiments, emitted as CSV.
#[derive(Parser)]
#[command(name = "ffent", version, about)]
struct Cli {
    /// JSON config file; command-line flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed; mandatory for randomized experiments
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for ensemble fan-out (0 = automatic)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Entropy base: 2 (bits) or e (nats)
    #[arg(long, global = true, value_enum)]
    base: Option<BaseTag>,

    /// Emit (x, y, series) triples instead of the per-experiment schema
    #[arg(long, global = true)]
    plot_data: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct BlockArgs {
    /// System size N
    #[arg(long)]
    n: Option<usize>,
    /// Occupied levels K (exclusive with --kappa)
    #[arg(long)]
    k: Option<usize>,
    /// Filling fraction kappa, mapped to K = floor(kappa N)
    #[arg(long, conflicts_with = "k")]
    kappa: Option<f64>,
    /// Block size L (exclusive with --lambda)
    #[arg(long)]
    l: Option<usize>,
    /// Block fraction lambda, mapped to L = floor(lambda N)
    #[arg(long, conflicts_with = "l")]
    lambda: Option<f64>,
    /// Limiting spectral radius of the Hamiltonian
    #[arg(long)]
    eps0: Option<f64>,
    /// Number of realizations
    #[arg(long)]
    realizations: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Block entropy of the GUE pipeline (sample, diagonalize, project)
    GueEntropy(BlockArgs),
    /// Block entropy straight from Haar eigenvectors (no diagonalization)
    HaarEntropy(BlockArgs),
    /// Coefficient surfaces c_minus, s, c_plus, c_sqrt on a (kappa, lambda) grid
    Surface {
        /// Grid step over each parameter, at most 0.05
        #[arg(long)]
        grid_step: Option<f64>,
    },
    /// Maximal coefficient distances, nine rows per fixed parameter
    Table1 {
        /// Grid step over the free parameter, at most 0.01
        #[arg(long)]
        grid_step: Option<f64>,
    },
    /// Random-pure-state entropies against Page's formulas
    Page {
        /// Radiation dimension L
        #[arg(long)]
        l: Option<usize>,
        /// Environment dimension K
        #[arg(long)]
        k: Option<usize>,
        /// Entry distribution of the raw state amplitudes
        #[arg(long, value_enum)]
        dist: Option<DistTag>,
        /// Number of samples
        #[arg(long)]
        realizations: Option<usize>,
        /// Also write the deficit curve (lambda, deficit) to this file
        #[arg(long)]
        deficit_out: Option<PathBuf>,
        /// Lambda step of the deficit curve
        #[arg(long, default_value_t = 0.05)]
        deficit_step: f64,
        /// Largest lambda of the deficit curve
        #[arg(long, default_value_t = 4.0)]
        deficit_max: f64,
    },
    /// Deterministic Kac-model entropy next to its closed form
    Kac {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        eps0: Option<f64>,
    },
    /// L = N - 1 identity: direct block entropy vs the rank-one shortcut
    RankOne {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, conflicts_with = "k")]
        kappa: Option<f64>,
        #[arg(long)]
        realizations: Option<usize>,
    },
    /// Gram spectrum of an i.i.d. matrix against the Marchenko-Pastur law
    MpHist {
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        dist: Option<DistTag>,
    },
    /// Haar block spectrum against the Wachter law
    WachterHist {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, conflicts_with = "k")]
        kappa: Option<f64>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, conflicts_with = "l")]
        lambda: Option<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GueEntropy(_) => "gue-entropy",
            Command::HaarEntropy(_) => "haar-entropy",
            Command::Surface { .. } => "surface",
            Command::Table1 { .. } => "table1",
            Command::Page { .. } => "page",
            Command::Kac { .. } => "kac",
            Command::RankOne { .. } => "rank-one",
            Command::MpHist { .. } => "mp-hist",
            Command::WachterHist { .. } => "wachter-hist",
        }
    }
}

fn overlay<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}

fn overlay_block(cfg: &mut ExperimentConfig, args: &BlockArgs) {
    overlay(&mut cfg.n, args.n);
    overlay(&mut cfg.k, args.k);
    overlay(&mut cfg.kappa, args.kappa);
    overlay(&mut cfg.l, args.l);
    overlay(&mut cfg.lambda, args.lambda);
    overlay(&mut cfg.eps0, args.eps0);
    overlay(&mut cfg.realizations, args.realizations);
    // a flagged ratio supersedes a count from the config file and vice versa
    if args.kappa.is_some() {
        cfg.k = None;
    }
    if args.k.is_some() {
        cfg.kappa = None;
    }
    if args.lambda.is_some() {
        cfg.l = None;
    }
    if args.l.is_some() {
        cfg.lambda = None;
    }
}

#[cfg(feature = "parallel")]
fn init_workers(workers: Option<usize>) -> Result<()> {
    if let Some(w) = workers {
        if w > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build_global()
                .map_err(|e| CliError::config(format!("field `workers`: {e}")))?;
        }
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn init_workers(_workers: Option<usize>) -> Result<()> {
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    cfg.check_experiment_tag(cli.command.name())?;
    overlay(&mut cfg.master_seed, cli.seed);
    overlay(&mut cfg.output_path, cli.out.clone());
    overlay(&mut cfg.base, cli.base);
    overlay(&mut cfg.workers, cli.workers);
    init_workers(cfg.workers)?;
    let mode = if cli.plot_data {
        OutputMode::PlotData
    } else {
        OutputMode::Csv
    };

    match &cli.command {
        Command::GueEntropy(args) | Command::HaarEntropy(args) => {
            overlay_block(&mut cfg, args);
            let params = config::resolve_entropy_run(&cfg)?;
            let rows = match &cli.command {
                Command::GueEntropy(_) => runner::run_gue_entropy(&params)?,
                _ => runner::run_haar_entropy(&params)?,
            };
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_entropy_rows(&rows, mode, &mut out)?;
            let s: Vec<f64> = rows.iter().map(|r| r.s).collect();
            let per_l: Vec<f64> = rows.iter().map(|r| r.s_per_l).collect();
            let (mean_s, se) = runner::summarize(&s);
            let (mean_per_l, _) = runner::summarize(&per_l);
            eprintln!(
                "{}: N={} K={} L={} realizations={} mean S = {} +- {} ({} per mode); theory s = {}",
                cli.command.name(),
                params.n,
                params.k,
                params.l,
                params.realizations,
                fmt_f(mean_s),
                fmt_f(se),
                fmt_f(mean_per_l),
                fmt_f(rows.first().map(|r| r.s_theory).unwrap_or(f64::NAN)),
            );
        }
        Command::Surface { grid_step } => {
            let step = grid_step.or(cfg.grid_step).unwrap_or(0.05);
            let rows = runner::run_surface(step)?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&rows, mode, &mut out)?;
        }
        Command::Table1 { grid_step } => {
            let step = grid_step.or(cfg.grid_step).unwrap_or(0.01);
            let rows = runner::run_table1(step)?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&rows, mode, &mut out)?;
        }
        Command::Page {
            l,
            k,
            dist,
            realizations,
            deficit_out,
            deficit_step,
            deficit_max,
        } => {
            overlay(&mut cfg.l, *l);
            overlay(&mut cfg.k, *k);
            overlay(&mut cfg.dist, *dist);
            overlay(&mut cfg.realizations, *realizations);
            let params = config::resolve_page_run(&cfg)?;
            let (rows, exp) = runner::run_page(&params)?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&rows, mode, &mut out)?;
            eprintln!(
                "page: L={} K={} dist={} samples={} mean S = {} +- {}; exact = {}, asymptotic = {}",
                params.l,
                params.k,
                rows.first().map(|r| r.dist).unwrap_or("?"),
                params.samples,
                fmt_f(exp.mean),
                fmt_f(exp.std_error),
                fmt_f(rows.first().map(|r| r.page_exact).unwrap_or(f64::NAN)),
                fmt_f(rows.first().map(|r| r.page_asymptotic).unwrap_or(f64::NAN)),
            );
            if let Some(path) = deficit_out {
                let curve = runner::deficit_curve(*deficit_step, *deficit_max)?;
                let mut out = open_output(Some(path))?;
                write_rows(&curve, mode, &mut out)?;
            }
        }
        Command::Kac { n, l, eps0 } => {
            overlay(&mut cfg.n, *n);
            overlay(&mut cfg.l, *l);
            overlay(&mut cfg.eps0, *eps0);
            let n = cfg
                .n
                .ok_or_else(|| CliError::config("field `n`: missing system size"))?;
            let l = cfg.resolve_l(n)?;
            let row = runner::run_kac(n, l, cfg.eps0()?, cfg.base())?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&[row], mode, &mut out)?;
        }
        Command::RankOne {
            n,
            k,
            kappa,
            realizations,
        } => {
            overlay(&mut cfg.n, *n);
            overlay(&mut cfg.k, *k);
            overlay(&mut cfg.kappa, *kappa);
            overlay(&mut cfg.realizations, *realizations);
            if k.is_some() {
                cfg.kappa = None;
            }
            if kappa.is_some() {
                cfg.k = None;
            }
            let n = cfg
                .n
                .ok_or_else(|| CliError::config("field `n`: missing system size"))?;
            let k = cfg.resolve_k(n)?;
            let rows = runner::run_rank_one(
                n,
                k,
                cfg.realizations()?,
                cfg.require_seed()?,
                cfg.base(),
            )?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&rows, mode, &mut out)?;
            let max_diff = rows.iter().map(|r| r.abs_diff).fold(0.0f64, f64::max);
            eprintln!(
                "rank-one: N={n} K={k} realizations={} max |direct - rank-one| = {}",
                rows.len(),
                fmt_f(max_diff)
            );
        }
        Command::MpHist { l, k, dist } => {
            overlay(&mut cfg.l, *l);
            overlay(&mut cfg.k, *k);
            overlay(&mut cfg.dist, *dist);
            let l = cfg
                .l
                .ok_or_else(|| CliError::config("field `l`: missing Gram dimension"))?;
            let k = cfg
                .k
                .ok_or_else(|| CliError::config("field `k`: missing sample dimension"))?;
            let (rows, ks) = runner::run_mp_hist(l, k, cfg.dist(), cfg.require_seed()?)?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&rows, mode, &mut out)?;
            eprintln!(
                "mp-hist: L={l} K={k} lambda={} KS distance = {}",
                fmt_f(l as f64 / k as f64),
                fmt_f(ks)
            );
        }
        Command::WachterHist { n, k, kappa, l, lambda } => {
            overlay(&mut cfg.n, *n);
            overlay(&mut cfg.k, *k);
            overlay(&mut cfg.kappa, *kappa);
            overlay(&mut cfg.l, *l);
            overlay(&mut cfg.lambda, *lambda);
            if k.is_some() {
                cfg.kappa = None;
            }
            if kappa.is_some() {
                cfg.k = None;
            }
            if l.is_some() {
                cfg.lambda = None;
            }
            if lambda.is_some() {
                cfg.l = None;
            }
            let n = cfg
                .n
                .ok_or_else(|| CliError::config("field `n`: missing system size"))?;
            let k = cfg.resolve_k(n)?;
            let l = cfg.resolve_l(n)?;
            let (rows, ks) = runner::run_wachter_hist(n, k, l, cfg.require_seed()?)?;
            let mut out = open_output(cfg.output_path.as_deref())?;
            write_rows(&rows, mode, &mut out)?;
            eprintln!(
                "wachter-hist: N={n} K={k} L={l} KS distance = {}",
                fmt_f(ks)
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
