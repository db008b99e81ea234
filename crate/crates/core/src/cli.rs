//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input or a library error, 3 a check that ran
//! and failed. JSON goes out compact on one line; floats carry 12 significant
//! digits.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::arith::is_prime;
use crate::asymptotics::{
    remainder_experiment_with_budget, sweep_bounds, weyl_ratio_series_with_budget,
};
use crate::error::{Error, Result};
use crate::genfunc::{closed_vs_series, sample_points};
use crate::invariant::{dim_invariant_bruteforce, dim_invariant_dp, dim_invariant_recurrence};
use crate::isospectral::{
    c_matrix, classify_all, condition4_witness, span_dimension, symmetric_dimension,
};
use crate::lens::{gcd_invariant, Bidegree, LensSpace};
use crate::spectrum::build_spectrum_with_budget;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kohn-lens",
    version,
    about = "Kohn Laplacian spectra on lens spaces"
)]
pub struct Cli {
    /// Cap on enumeration and grid work.
    #[arg(
        long,
        global = true,
        env = "KOHN_LENS_BUDGET",
        default_value_t = 10_000_000
    )]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DimMethod {
    Dp,
    Bruteforce,
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim H^G_{p,q}.
    Dim {
        #[arg(long, value_parser = parse_lens)]
        lens: LensSpace,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = DimMethod::Dp)]
        method: DimMethod,
    },
    /// Eigenvalue multiplicities as CSV.
    Spectrum {
        #[arg(long, value_parser = parse_lens)]
        lens: LensSpace,
        #[arg(long)]
        lambda_max: u64,
        /// Also write the contributing bidegrees as JSON to this file.
        #[arg(long)]
        contributors: Option<PathBuf>,
    },
    /// Eigenvalue counting function N_L(lambda).
    Count {
        #[arg(long, value_parser = parse_lens)]
        lens: LensSpace,
        #[arg(long)]
        lambda_max: u64,
    },
    /// N_L / N at every stride up to lambda-max.
    Weyl {
        #[arg(long, value_parser = parse_lens)]
        lens: LensSpace,
        #[arg(long)]
        lambda_max: u64,
        #[arg(long, default_value_t = 100)]
        stride: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        out: OutputFormat,
    },
    /// Sweeps the lower and upper counting bounds in exact arithmetic.
    BoundsCheck {
        #[arg(long, default_value_t = 30)]
        limit_max: u64,
        #[arg(long, default_value_t = 6)]
        md_max: u64,
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        dims: Vec<usize>,
    },
    /// Compares two lens spaces.
    Isospec {
        #[arg(long = "lens", value_parser = parse_lens, num_args = 1, required = true)]
        lenses: Vec<LensSpace>,
        #[arg(long, default_value_t = 500)]
        lambda_max: u64,
    },
    /// Isometry classes of 3-dimensional lens spaces of order k.
    Classify {
        #[arg(long)]
        k: u64,
    },
    /// The residue-class matrix C^lambda.
    Cmatrix {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda: u64,
    },
    /// Rank of {C^lambda : lambda <= lambda-max}.
    Span {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda_max: u64,
    },
    /// Closed-form generating function against its truncated series.
    GenfuncCheck {
        #[arg(long, value_parser = parse_lens)]
        lens: LensSpace,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 60)]
        cutoff: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
    },
    /// Residual of N_L against the leading Weyl term.
    Remainder {
        #[arg(long, value_parser = parse_lens)]
        lens: LensSpace,
        #[arg(long)]
        lambda_max: u64,
        #[arg(long, default_value_t = 10)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        out: OutputFormat,
    },
}

fn parse_lens(s: &str) -> std::result::Result<LensSpace, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Compact JSON with floats rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("output types serialize");
    round_floats(&mut v);
    v.to_string()
}

fn float_cell(x: f64) -> String {
    if x.is_finite() {
        round_sig(x).to_string()
    } else {
        String::new()
    }
}

enum Failure {
    Invalid(String),
    Check(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn even_positive(name: &str, lambda: u64) -> Result<()> {
    if lambda < 2 || lambda % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "--{name} must be a positive even integer, got {lambda}"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct IsospecReport {
    witness: Option<crate::isospectral::IsometryWitness>,
    spectra_equal: bool,
    d_equal: Option<bool>,
    first_difference: Option<crate::spectrum::SpectralDifference>,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_CHECK_FAILED
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let budget = cli.budget;
    match &cli.command {
        Command::Dim { lens, p, q, method } => {
            let b = Bidegree::new(*p, *q);
            let dim = match method {
                DimMethod::Dp => dim_invariant_dp(lens, b),
                DimMethod::Bruteforce => dim_invariant_bruteforce(lens, b, budget)?,
                DimMethod::Recurrence => dim_invariant_recurrence(lens, b)?,
            };
            writeln!(out, "{dim}")?;
        }
        Command::Spectrum {
            lens,
            lambda_max,
            contributors,
        } => {
            even_positive("lambda-max", *lambda_max)?;
            let table = build_spectrum_with_budget(lens, *lambda_max, budget)?;
            if let Some(path) = contributors {
                std::fs::write(path, format!("{}\n", table.contributors_json()))?;
            }
            write!(out, "{}", table.to_csv())?;
        }
        Command::Count { lens, lambda_max } => {
            let table = build_spectrum_with_budget(lens, *lambda_max, budget)?;
            writeln!(out, "{}", table.counting(*lambda_max))?;
        }
        Command::Weyl {
            lens,
            lambda_max,
            stride,
            out: format,
        } => {
            even_positive("lambda-max", *lambda_max)?;
            let series = weyl_ratio_series_with_budget(lens, *lambda_max, *stride, budget)?;
            match format {
                OutputFormat::Json => writeln!(out, "{}", to_json(&series))?,
                OutputFormat::Csv => {
                    writeln!(out, "lambda,n_lens,n_sphere,ratio,inverse_order")?;
                    let inv = 1.0 / lens.k() as f64;
                    for s in &series {
                        writeln!(
                            out,
                            "{},{},{},{},{}",
                            s.lambda,
                            s.n_lens,
                            s.n_sphere,
                            float_cell(s.ratio_f64),
                            float_cell(inv)
                        )?;
                    }
                }
            }
        }
        Command::BoundsCheck {
            limit_max,
            md_max,
            dims,
        } => {
            let sweep = sweep_bounds(*limit_max, *md_max, dims)?;
            writeln!(out, "{}", to_json(&sweep))?;
            if !sweep.violations.is_empty() {
                return Err(Failure::Check(format!(
                    "{} of {} bound checks violated",
                    sweep.violations.len(),
                    sweep.checked
                )));
            }
        }
        Command::Isospec { lenses, lambda_max } => {
            let [a, b] = lenses.as_slice() else {
                return Err(Failure::Invalid(format!(
                    "isospec takes exactly two --lens flags, got {}",
                    lenses.len()
                )));
            };
            even_positive("lambda-max", *lambda_max)?;
            if a.n() != b.n() {
                return Err(Error::MismatchedSpaces("dimension").into());
            }
            let witness = if a.k() == b.k() {
                condition4_witness(a, b)?
            } else {
                None
            };
            let left = build_spectrum_with_budget(a, *lambda_max, budget)?;
            let right = build_spectrum_with_budget(b, *lambda_max, budget)?;
            let first_difference = left.first_difference(&right);
            let d_equal = match (gcd_invariant(a), gcd_invariant(b)) {
                (Ok(x), Ok(y)) => Some(x == y),
                _ => None,
            };
            let report = IsospecReport {
                witness,
                spectra_equal: first_difference.is_none(),
                d_equal,
                first_difference,
            };
            writeln!(out, "{}", to_json(&report))?;
        }
        Command::Classify { k } => {
            writeln!(out, "{}", to_json(&classify_all(*k)?))?;
        }
        Command::Cmatrix { k, lambda } => {
            writeln!(out, "{}", to_json(&c_matrix(*k, *lambda)?.entries))?;
        }
        Command::Span { k, lambda_max } => {
            even_positive("lambda-max", *lambda_max)?;
            let lambdas: Vec<u64> = (2..=*lambda_max).step_by(2).collect();
            let rank = span_dimension(*k, &lambdas)?;
            writeln!(out, "{rank}")?;
            let predicted = symmetric_dimension(*k);
            if is_prime(*k) && rank < predicted {
                return Err(Failure::Check(format!(
                    "rank {rank} below k(k+1)/2 = {predicted} for prime k = {k}"
                )));
            }
        }
        Command::GenfuncCheck {
            lens,
            points,
            cutoff,
            seed,
            radius,
        } => {
            let pts = sample_points(*points, *radius, *seed);
            let needed = (*cutoff as u128 + 1).pow(2) * pts.len() as u128;
            if needed > budget as u128 {
                return Err(Error::ResourceLimit { needed, budget }.into());
            }
            writeln!(out, "{}", to_json(&closed_vs_series(lens, &pts, *cutoff)?))?;
        }
        Command::Remainder {
            lens,
            lambda_max,
            samples,
            out: format,
        } => {
            let rows = remainder_experiment_with_budget(lens, *lambda_max, *samples, budget)?;
            match format {
                OutputFormat::Json => writeln!(out, "{}", to_json(&rows))?,
                OutputFormat::Csv => {
                    writeln!(out, "lambda,n_lens,residual,relative,scaled,scaled_log")?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            r.lambda,
                            r.n_lens,
                            float_cell(r.residual),
                            float_cell(r.relative),
                            float_cell(r.scaled),
                            float_cell(r.scaled_log)
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}
