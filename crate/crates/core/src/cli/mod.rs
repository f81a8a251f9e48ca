//! Command-line front end.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 input error.

mod demos;
mod dto;

pub use demos::{demo_cvp, demo_svp, CvpReport, SplitBound, SvpReport};
pub use dto::{BodySpec, CutFile, ForbiddenSpec, InstanceFile, Provenance};

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::QcutError;
use crate::linalg::Mat;
use crate::model::eval_cut;
use crate::verify::{check_validity, compare_to_oracle, SampleConfig};

pub const SEED_ENV: &str = "QCUT_SEED";

#[derive(Parser, Debug)]
#[command(name = "qcut", version, about = "Closed-form split and intersection cuts for convex quadratic sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Read an instance and write its cut.
    Cut {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample the instance and check the cut for validity.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        cut: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'n', long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Compare a planar cut against the brute-force hull.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        cut: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 300)]
        grid: usize,
        /// Excluded band around both boundaries, in grid cells.
        #[arg(long, default_value_t = 2.0)]
        band: f64,
    },
    /// Lattice demonstrations.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Closest vector: min ‖B(x − c)‖² over integer x.
    Cvp {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Target c as a JSON array.
        #[arg(long)]
        target: Option<String>,
    },
    /// Shortest vector: min ‖Bx‖² over nonzero integer x.
    Svp {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Lower bound on the shortest vector length.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
}

#[derive(Args, Debug)]
struct LatticeArgs {
    /// Basis B as a JSON array of rows.
    #[arg(long)]
    basis: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Rejected,
}

impl From<QcutError> for Failure {
    fn from(e: QcutError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

fn seed(flag: Option<u64>) -> Result<u64, Failure> {
    match flag {
        Some(s) => Ok(s),
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("{SEED_ENV} is not a u64: {v}"))),
            Err(_) => Ok(0),
        },
    }
}

fn basis(arg: &Option<String>, default_n: usize) -> Result<Mat, Failure> {
    match arg {
        Some(text) => parse_json(text, "basis"),
        None => Ok(Mat::identity(default_n)),
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Cut { input, output } => {
            let inst = InstanceFile::parse(&read(&input)?)?;
            emit(&inst.generate()?, output.as_deref())
        }
        Command::Verify { input, cut, output, seed: flag, samples, tol } => {
            let inst = InstanceFile::parse(&read(&input)?)?;
            let file = CutFile::parse(&read(&cut)?)?;
            let body = inst.body.build()?;
            let forbidden = inst.forbidden_region(&body)?;
            // dimension check before sampling
            eval_cut(&file.cut, &vec![0.0; body.point_dim()])?;
            let cfg = SampleConfig::for_body(&body, seed(flag)?, samples)?;
            let report = check_validity(&body, &forbidden, &file.cut, &cfg, tol)?;
            emit(&report, output.as_deref())?;
            if report.pass { Ok(()) } else { Err(Failure::Rejected) }
        }
        Command::Oracle { input, cut, output, grid, band } => {
            let inst = InstanceFile::parse(&read(&input)?)?;
            let file = CutFile::parse(&read(&cut)?)?;
            let body = inst.body.build()?;
            let forbidden = inst.forbidden_region(&body)?;
            let report = compare_to_oracle(&body, &forbidden, &file.cut, grid, band)?;
            emit(&report, output.as_deref())?;
            if report.mismatches() == 0 { Ok(()) } else { Err(Failure::Rejected) }
        }
        Command::Demo { which: Demo::Cvp { lattice, target } } => {
            let c: Vec<f64> = match &target {
                Some(t) => parse_json(t, "target")?,
                None => vec![0.5; 2],
            };
            let b = basis(&lattice.basis, c.len())?;
            emit(&demo_cvp(&b, &c)?, lattice.output.as_deref())
        }
        Command::Demo { which: Demo::Svp { lattice, radius } } => {
            let b = basis(&lattice.basis, 2)?;
            emit(&demo_svp(&b, radius)?, lattice.output.as_deref())
        }
    }
}

/// Runs the command line with `argv[0]` as program name; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(Failure::Rejected) => 1,
        Err(Failure::Input(msg)) => {
            eprintln!("qcut: {}", msg.lines().next().unwrap_or_default());
            2
        }
    }
}
