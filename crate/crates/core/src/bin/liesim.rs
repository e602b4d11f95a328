//! Command-line front end. All results are JSON on stdout.
//!
//! Exit codes: 0 success, 1 domain error (validation, convergence, bad values),
//! 2 usage or parse error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use liesim::bench::{run_bench, BenchOptions};
use liesim::commands;
use liesim::config::{RunConfig, Threads};
use liesim::crosscheck::oracle_check;
use liesim::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "liesim", version, about = "Lie-algebraic simulation and mean-field spectra")]
struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true, env = "LIESIM_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "LIESIM_TOLERANCE")]
    tolerance: Option<f64>,
    /// Positive integer or "auto".
    #[arg(long, global = true, env = "LIESIM_THREADS")]
    threads: Option<String>,
    #[arg(long, global = true, env = "LIESIM_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true, env = "LIESIM_MAX_SWEEPS")]
    max_sweeps: Option<usize>,
    /// Print the bench table as CSV instead of JSON.
    #[arg(long, global = true)]
    emit_csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an algebra file for bracket consistency.
    Validate { spec: PathBuf },
    /// Expectation, |<e^H>|^2 or correlator of a circuit file.
    Expect { circuit: PathBuf },
    /// Spectrum of a model file.
    Solve { model: PathBuf },
    /// Gate sequence preparing the ground state of a model file.
    Prepare { model: PathBuf },
    /// Randomized comparison against dense matrices.
    OracleCheck {
        /// "su(2)" or "so(2N)".
        #[arg(long, default_value = "so(4)")]
        algebra: String,
        /// Twice the spin for su(2).
        #[arg(long, default_value_t = 1)]
        two_j: usize,
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Engine and oracle wall times over a range of mode counts.
    Bench {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 0.2)]
        min_seconds: f64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::from_json(&read(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.tolerance {
        c.tolerance = t;
    }
    if let Some(t) = &cli.threads {
        c.threads = t.parse::<Threads>()?;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(m) = cli.max_sweeps {
        c.max_sweeps = m;
    }
    c.check()?;
    Ok(c)
}

/// Writes to stdout; a closed pipe (`liesim ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print<T: Serialize>(v: &T) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?));
    Ok(())
}

fn validate(path: &Path) -> Result<ExitCode> {
    let out = commands::validate(&read(path)?)?;
    print(&out)?;
    Ok(if out.clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: &Cli) -> Result<ExitCode> {
    // A bad configuration is a usage error.
    let cfg = config(cli).map_err(|e| match e {
        Error::InvalidInput(m) => Error::Parse(m),
        e => e,
    })?;
    match &cli.command {
        Command::Validate { spec } => validate(spec),
        Command::Expect { circuit } => print(&commands::expect(&read(circuit)?, &cfg)?).map(|_| ExitCode::SUCCESS),
        Command::Solve { model } => print(&commands::solve(&read(model)?, &cfg)?).map(|_| ExitCode::SUCCESS),
        Command::Prepare { model } => print(&commands::prepare(&read(model)?, &cfg)?).map(|_| ExitCode::SUCCESS),
        Command::OracleCheck { algebra, two_j, cases } => {
            let r = oracle_check(algebra, *two_j, *cases, &cfg)?;
            print(&json!({"passed": r.passed(), "report": r}))?;
            Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Bench { n_min, n_max, depth, min_seconds } => {
            let opts =
                BenchOptions { ns: (*n_min..=*n_max).collect(), depth: *depth, seed: cfg.seed, min_seconds: *min_seconds };
            let r = run_bench(&opts)?;
            if cli.emit_csv {
                emit(&r.to_csv());
            } else {
                print(&r)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let code = e.exit_code();
            let body = json!({"error": {"message": e.to_string(), "exit_code": code}});
            emit(&format!("{}\n", serde_json::to_string_pretty(&body).unwrap_or_default()));
            eprintln!("liesim: {e}");
            ExitCode::from(code as u8)
        }
    }
}
