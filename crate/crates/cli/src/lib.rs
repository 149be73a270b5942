//! Command-line front end for `mra-core`.
//!
//! Every command writes its result to the supplied writer and returns the
//! process exit code; errors carry their own code via [`CliError::exit_code`].

mod repro;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mra_core::arrays::{ParseError, TruncateError};
use mra_core::constructors::{nnc_pda, ConstructError};
use mra_core::mapreduce::{choose_iv_bits, DecodeReport, MapReduceError};
use mra_core::metrics::{load_from_array, sweep_csv, LoadPoint, MetricsError, SweepSpec};
use mra_core::{
    algorithm1, algorithm2, compute_stats, parse_array, run_job, truncate_columns,
    validate_l_cyclic, validate_mra, validate_pda, ArrayStats, CodedArray, GcParameters, JobSpec,
    Rational, ValidationReport,
};

pub use repro::{repro_rows, ReproRow, Status};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_REPRO_FAILED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_DECODE_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mra", version, about = "Coded Map-Reduce arrays: construct, validate, simulate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an array from one of the deterministic families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Check an array file against the MRA and PDA conditions.
    Validate {
        path: PathBuf,
        /// Also check the l-cyclic layout for this shift.
        #[arg(long)]
        l_cyclic: Option<usize>,
    },
    /// Keep a subset of columns and drop symbols left with one occurrence.
    Truncate {
        path: PathBuf,
        /// Columns to keep, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run Map, Shuffle and Reduce driven by an array and check every reducer.
    Simulate(SimulateArgs),
    /// Closed-form load and lower bound at one parameter point.
    Loads {
        #[command(subcommand)]
        point: LoadArgs,
    },
    /// CSV of loads and bounds along one curve.
    Sweep {
        #[command(subcommand)]
        curve: SweepArgs,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Rebuild and check every reference example.
    Repro,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Combinatorial array, one reducer per alpha-subset.
    Alg1 {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized combinatorial array with K_alpha reducers per alpha-subset.
    Alg2 {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        r: usize,
        /// K_1,K_2,... comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        kvec: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclic PDA for the nearest-neighbour topology.
    Nnc {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub path: PathBuf,
    /// N, number of input files.
    #[arg(long)]
    pub files: usize,
    /// Q, number of output functions.
    #[arg(long)]
    pub functions: usize,
    /// Bits per intermediate value, or `auto` for the smallest valid width.
    #[arg(long, default_value = "auto")]
    pub iv_bits: IvBits,
    #[arg(long, env = "MRA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Write the broadcast transcript here.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IvBits {
    Auto,
    Fixed(usize),
}

impl FromStr for IvBits {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(IvBits::Auto);
        }
        s.parse()
            .map(IvBits::Fixed)
            .map_err(|_| format!("expected a bit count or `auto`, got `{s}`"))
    }
}

#[derive(Debug, Subcommand)]
pub enum LoadArgs {
    /// Corner-interpolated curve with the matching lower bound.
    Be {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        alpha: usize,
        /// Computation load, integer or `n/d`.
        #[arg(long)]
        r: Rational,
    },
    Ct {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alpha: usize,
    },
    Gc {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        kvec: Vec<usize>,
    },
    Nnc {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alpha: usize,
    },
    /// Load of the shuffle driven by an array file.
    Array { path: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SweepArgs {
    Be {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        alpha: usize,
    },
    Ct {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        alpha: usize,
    },
    Gc {
        #[arg(long)]
        lambda: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        kvec: Vec<usize>,
    },
    Nnc {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        alpha: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Truncate(#[from] TruncateError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    MapReduce(#[from] MapReduceError),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} reproduction check(s) failed")]
    Repro { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::MapReduce(e) if e.is_decode_failure() => EXIT_DECODE_FAILED,
            CliError::Repro { .. } => EXIT_REPRO_FAILED,
            _ => EXIT_PRECONDITION,
        }
    }
}

/// Runs one parsed invocation.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Construct { family } => construct(family, out, err),
        Command::Validate { path, l_cyclic } => validate(&path, l_cyclic, out),
        Command::Truncate { path, keep, out: dest } => truncate(&path, keep, dest, out, err),
        Command::Simulate(args) => simulate(args, out),
        Command::Loads { point } => loads(point, out),
        Command::Sweep { curve, out: dest } => sweep(curve, dest, out),
        Command::Repro => repro::run(out),
    }
}

fn read_array(path: &Path) -> Result<CodedArray, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_array(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string(value).expect("report types serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

/// `F=.. K=.. S=.. g=..`, plus `Z=..` for the PDA family.
pub fn summary(array: &CodedArray, with_z: bool) -> String {
    let stats = compute_stats(array);
    let mut line = format!(
        "F={} K={} S={}",
        array.rows(),
        array.cols(),
        array.symbol_count()
    );
    if let Some(g) = stats.common_g {
        line += &format!(" g={g}");
    }
    if with_z {
        if let Some(z) = stats.uniform_stars() {
            line += &format!(" Z={z}");
        }
    }
    line
}

fn construct(family: Family, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let (array, dest, with_z) = match family {
        Family::Alg1 {
            lambda,
            r,
            alpha,
            out,
        } => (algorithm1(lambda, r, alpha)?, out, false),
        Family::Alg2 {
            lambda,
            r,
            kvec,
            out,
        } => (algorithm2(&GcParameters::new(lambda, r, kvec)?)?, out, false),
        Family::Nnc {
            lambda,
            r,
            alpha,
            out,
        } => (nnc_pda(lambda, r, alpha)?, out, true),
    };
    emit_array(&array, dest, &summary(&array, with_z), out, err)
}

/// Array text to `dest` with the summary on stdout, or array text to stdout
/// with the summary on stderr.
fn emit_array(
    array: &CodedArray,
    dest: Option<PathBuf>,
    summary: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    match dest {
        Some(path) => {
            write_file(&path, &array.to_text())?;
            writeln!(out, "{summary}")?;
        }
        None => {
            write!(out, "{}", array.to_text())?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ValidateOutput {
    #[serde(rename = "F")]
    rows: usize,
    #[serde(rename = "K")]
    cols: usize,
    #[serde(rename = "S")]
    symbols: usize,
    is_mra: bool,
    is_pda: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_l_cyclic: Option<bool>,
    mra: ValidationReport,
    pda: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    l_cyclic: Option<ValidationReport>,
    stats: ArrayStats,
}

fn validate(path: &Path, l: Option<usize>, out: &mut dyn Write) -> Result<i32, CliError> {
    let array = read_array(path)?;
    let mra = validate_mra(&array);
    let pda = validate_pda(&array);
    let cyclic = l.map(|l| validate_l_cyclic(&array, l));
    json_line(
        out,
        &ValidateOutput {
            rows: array.rows(),
            cols: array.cols(),
            symbols: array.symbol_count(),
            is_mra: mra.passed(),
            is_pda: pda.passed(),
            is_l_cyclic: cyclic.as_ref().map(ValidationReport::passed),
            mra,
            pda,
            l_cyclic: cyclic,
            stats: compute_stats(&array),
        },
    )?;
    Ok(EXIT_OK)
}

fn truncate(
    path: &Path,
    keep: Vec<usize>,
    dest: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let array = read_array(path)?;
    let keep: BTreeSet<usize> = keep.into_iter().collect();
    let t = truncate_columns(&array, &keep)?;
    emit_array(&t, dest, &summary(&t, false), out, err)
}

#[derive(Serialize)]
struct SimulateOutput {
    #[serde(flatten)]
    report: DecodeReport,
    /// `total_bits / normalizer_bits` before reduction.
    measured_load_raw: String,
    seed: u64,
}

fn simulate(args: SimulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let array = read_array(&args.path)?;
    let iv_bits = match args.iv_bits {
        IvBits::Fixed(t) => t,
        IvBits::Auto => {
            let spec = JobSpec {
                files: args.files,
                functions: args.functions,
                iv_bits: 1,
                seed: args.seed,
            };
            let eta1 = spec
                .files_per_batch(array.rows())
                .filter(|&e| e > 0)
                .ok_or(MapReduceError::FilesNotDivisible {
                    files: args.files,
                    batches: array.rows(),
                })?;
            let eta2 = spec
                .functions_per_reducer(array.cols())
                .filter(|&e| e > 0)
                .ok_or(MapReduceError::FunctionsNotDivisible {
                    functions: args.functions,
                    reducers: array.cols(),
                })?;
            choose_iv_bits(&array, 1, eta1, eta2)
        }
    };
    let spec = JobSpec {
        files: args.files,
        functions: args.functions,
        iv_bits,
        seed: args.seed,
    };
    let (transcript, report) = run_job(&array, &spec)?;
    if let Some(path) = &args.transcript {
        write_file(path, &transcript.dump())?;
    }
    let ok = report.all_decoded;
    json_line(
        out,
        &SimulateOutput {
            measured_load_raw: format!("{}/{}", report.total_bits, report.normalizer_bits),
            report,
            seed: args.seed,
        },
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_DECODE_FAILED })
}

#[derive(Serialize)]
struct ArrayLoad {
    #[serde(rename = "F")]
    rows: usize,
    #[serde(rename = "K")]
    cols: usize,
    achievable: Rational,
}

fn loads(point: LoadArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let point = match point {
        LoadArgs::Be { lambda, alpha, r } => LoadPoint::Be { lambda, alpha, r },
        LoadArgs::Ct { lambda, r, alpha } => LoadPoint::Ct { lambda, r, alpha },
        LoadArgs::Gc { lambda, r, kvec } => LoadPoint::Gc(GcParameters::new(lambda, r, kvec)?),
        LoadArgs::Nnc { lambda, r, alpha } => LoadPoint::Nnc { lambda, r, alpha },
        LoadArgs::Array { path } => {
            let array = read_array(&path)?;
            let achievable = load_from_array(&array)?;
            json_line(
                out,
                &ArrayLoad {
                    rows: array.rows(),
                    cols: array.cols(),
                    achievable,
                },
            )?;
            return Ok(EXIT_OK);
        }
    };
    json_line(out, &point.report()?)?;
    Ok(EXIT_OK)
}

fn sweep(curve: SweepArgs, dest: Option<PathBuf>, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = match curve {
        SweepArgs::Be { lambda, alpha } => SweepSpec::Be { lambda, alpha },
        SweepArgs::Ct { lambda, alpha } => SweepSpec::Ct { lambda, alpha },
        SweepArgs::Gc { lambda, kvec } => SweepSpec::Gc { lambda, kvec },
        SweepArgs::Nnc { lambda, alpha } => SweepSpec::Nnc { lambda, alpha },
    };
    let csv = sweep_csv(&spec.run()?);
    match dest {
        Some(path) => write_file(&path, &csv)?,
        None => write!(out, "{csv}")?,
    }
    Ok(EXIT_OK)
}
