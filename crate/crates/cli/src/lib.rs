//! Command-line front end: `check`, `repro-example`, `export`, `gen` and `proptest`.

mod check;
mod config;
mod export;
mod gen;
mod harness;
mod repro;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{GridOpts, RunConfig};
pub use harness::Suite;

/// Process exit statuses.
pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dwshell",
    version,
    about = "Numerical ranges, Davis-Wielandt shells and orthogonality to the identity"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GridOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an orthogonality relation; prints verdict JSON.
    Check {
        #[command(subcommand)]
        relation: Relation,
    },
    /// Recompute the norms of the built-in 4x4 example and refute orthogonality.
    ReproExample,
    /// Write numerical-range or shell samples as CSV.
    Export { kind: ExportKind, path: PathBuf },
    /// Emit a seeded random matrix (or pair) as JSON.
    Gen {
        /// ginibre, hermitian, unitary, normal_with_spectrum, trace_zero_2x2,
        /// symmetric_spectrum_normal or orthogonal_pair
        class: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated `re:im` values, e.g. `1:1,0.5:0`.
        #[arg(long)]
        spectrum: Option<String>,
        /// Block split for orthogonal_pair.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a randomized property battery.
    Proptest {
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Relation {
    /// Roberts orthogonality of A to the identity.
    Identity { path: PathBuf },
    /// Search for a λ refuting Roberts orthogonality of A and B.
    Pair { a: PathBuf, b: PathBuf },
    /// Birkhoff-James orthogonality of A to B (or to the identity when B is omitted).
    Bj { a: PathBuf, b: Option<PathBuf> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Nr,
    Shell,
}

/// Parses `args` (including the program name), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn configure_threads() {
    let threads = std::env::var("DWSHELL_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<i32> {
    let cfg = RunConfig::from_opts(&cli.opts)?;
    match cli.command {
        Command::Check { relation } => check::run(&cfg, relation),
        Command::ReproExample => repro::run(&cfg),
        Command::Export { kind, path } => export::run(&cfg, kind, &path),
        Command::Gen {
            class,
            n,
            spectrum,
            k,
        } => gen::run(&cfg, &class, n, spectrum.as_deref(), k),
        Command::Proptest { suite, trials } => harness::run(&cfg, suite, trials),
    }
}
