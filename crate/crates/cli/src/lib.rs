//! Command-line front end: argument parsing, dispatch and exit codes.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

mod curve;
mod lattice;
pub mod report;

use report::{canonical_json, render_markdown, RunReport, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "k3five", version, about = "Overlattices of S0 and A4 sextics in characteristic 5")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Coefficient field, `5` or `5^k`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = k3five::ffpoly::DEFAULT_MAX_EXT)]
    pub max_ext: usize,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Discriminant form of S0 and its isotropic subgroups.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Sextics y^5 = f(x) and their singular points.
    #[command(subcommand)]
    Curve(CurveCmd),
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Isotropic delta-classes with the root type of their overlattice.
    Table1,
    /// Orbit representatives of isotropic subgroups satisfying (II).
    Classify,
    /// Consistency checks, or re-checks a saved classification.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// Full pipeline: membership, singular points, polar, Wall count.
    Check(PolyArg),
    /// Singular points with their A4 certificates.
    Sing(PolyArg),
    /// Wall count 30 - sum of polar multiplicities.
    Wall(PolyArg),
    /// Gram model of the Neron-Severi lattice.
    Ns(PolyArg),
    /// Seeded random sextics with squarefree derivative, each checked.
    Random {
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
}

#[derive(Args, Debug)]
pub struct PolyArg {
    /// `[c0,...,c6]@5^k`; the `@` part may be left to `--field`.
    #[arg(long)]
    pub poly: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

/// What a command hands back for rendering.
pub struct Outcome {
    pub results: Value,
    pub markdown: String,
    pub checks: BTreeMap<String, bool>,
    pub seed: Option<u64>,
}

pub(crate) struct Timer {
    stages: BTreeMap<String, u64>,
}

impl Timer {
    fn new() -> Self {
        Timer {
            stages: BTreeMap::new(),
        }
    }

    pub(crate) fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.insert(stage.to_string(), start.elapsed().as_millis() as u64);
        out
    }
}

/// Parses `args` (without the program name), runs the command and writes
/// the report. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv = std::iter::once(OsString::from("k3five")).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let command: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, command) {
        Ok((report, text)) => {
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, &text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            } else if stdout.write_all(text.as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            for (name, ok) in &report.checks {
                if !ok {
                    let _ = writeln!(stderr, "check failed: {name}");
                }
            }
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn execute(cli: &Cli, command: Vec<String>) -> Result<(RunReport, String), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.opts.jobs as usize)
        .build()
        .map_err(|e| CliError::Failure(format!("thread pool: {e}")))?;
    let mut timer = Timer::new();
    let outcome = pool.install(|| match &cli.command {
        Command::Lattice(c) => lattice::run(c, &cli.opts, &mut timer),
        Command::Curve(c) => curve::run(c, &cli.opts, &mut timer),
    })?;
    let report = RunReport {
        command,
        version: VERSION.to_string(),
        seed: outcome.seed,
        results: outcome.results,
        checks: outcome.checks,
        timings_ms: cli.opts.timings.then_some(timer.stages),
    };
    let text = match cli.opts.format {
        Format::Json => canonical_json(&report),
        Format::Md => render_markdown(&report, &outcome.markdown),
    };
    Ok((report, text))
}

pub(crate) fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload is serializable")
}
