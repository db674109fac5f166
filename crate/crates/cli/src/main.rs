use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;

use config::ExperimentConfig;
use error::CliError;
use output::Format;

/// Experiments on Euclidean Jordan algebras: axiom probes, entropies,
/// embeddings and finite-n Stein scans.
#[derive(Parser, Debug)]
#[command(name = "eja", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Randomized J1/J2/J3 probe; composites are reported, never failed.
    Axioms,
    /// H, D, pinched D, Petz and sandwiched Rényi over an s-grid.
    Entropy,
    /// Pinched-measurement exponents, converse bounds and gap bounds per n.
    Stein,
    /// Verify the canonical matrix embedding of the algebra.
    EmbedCheck,
    /// Pinched state, pinched measurement and the representation residual.
    PinchDemo,
}

#[derive(Args, Debug)]
struct Flags {
    /// Algebra spec, e.g. `spin:2`, `qherm:2`, `sum(classical:2,spin:3)`.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// TOML experiment file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Report entropies in bits instead of nats.
    #[arg(long, global = true)]
    bits: bool,
    /// Largest composite dimension (coefficients) a run may build.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Random trials for `axioms` and `embed-check`.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Type-I error level for `stein`.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Block lengths for `stein`: `1..6`, `1..=6` or `1,2,4`.
    #[arg(long, global = true, value_parser = parse_n_list)]
    n: Option<NList>,
    /// Composite realization for `stein`: auto, literal or quantum.
    #[arg(long, global = true)]
    mode: Option<String>,
}

#[derive(Clone, Debug)]
struct NList(Vec<usize>);

fn parse_n_list(s: &str) -> Result<NList, String> {
    parse_n_values(s).map(NList)
}

fn parse_n_values(s: &str) -> Result<Vec<usize>, String> {
    let bad = |_| format!("bad n list `{s}`");
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(bad)?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(bad)?;
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(bad)).collect()
}

fn effective_config(cmd: Command, f: &Flags) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &f.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if f.algebra.is_some() {
        cfg.algebra = f.algebra.clone();
    }
    cfg.seed = f.seed.or(cfg.seed);
    cfg.tol = f.tol.or(cfg.tol);
    cfg.budget = f.budget.or(cfg.budget);
    if let Some(o) = &f.out {
        cfg.out = Some(o.display().to_string());
    }
    if f.format.is_some() {
        cfg.format = f.format.clone();
    }
    if f.bits {
        cfg.bits = Some(true);
    }
    if f.trials.is_some() {
        cfg.axioms.trials = f.trials;
        cfg.embed.trials = f.trials;
    }
    cfg.stein.epsilon = f.epsilon.or(cfg.stein.epsilon);
    if f.n.is_some() {
        cfg.stein.n = f.n.clone().map(|l| l.0);
    }
    if f.mode.is_some() {
        cfg.stein.mode = f.mode.clone();
    }
    if cfg.format.is_none() {
        cfg.format = Some(if matches!(cmd, Command::Stein) { "csv" } else { "json" }.into());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = effective_config(cli.command, &cli.flags)?;
    let format = Format::parse(cfg.format.as_deref().unwrap_or("json"))?;
    let done = match cli.command {
        Command::Axioms => commands::axioms(&cfg)?,
        Command::Entropy => commands::entropy(&cfg)?,
        Command::Stein => commands::stein(&cfg)?,
        Command::EmbedCheck => commands::embed_check(&cfg)?,
        Command::PinchDemo => commands::pinch_demo(&cfg)?,
    };
    let out = cfg.out.as_ref().map(PathBuf::from);
    output::emit(&done.report, &done.meta, format, out.as_deref())?;
    match done.failure {
        Some(msg) => Err(CliError::Invariant(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
