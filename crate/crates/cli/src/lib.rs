//! File formats, report rendering and the `hmfdef` command-line tool built
//! on `hmfdef-core`.

pub mod format;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hmfdef_core::audit::{run_audit, AuditConfig, AuditReport};
use hmfdef_core::image::InertConstExponent;
use hmfdef_core::{FormSet, NewformRecord};
use thiserror::Error;

pub use format::{parse_newform, parse_overrides, serialize_newform, FormatError};
pub use report::{emit_report, parse_report_json, OutputFormat};

pub const EXIT_COMPLETE: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hmfdef",
    version,
    about = "Audit unobstructedness of deformation problems for a Hilbert newform"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every gate for each prime of the coefficient field over [lmin, lmax].
    Audit(AuditArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InertExponentArg {
    #[value(name = "k0")]
    K0,
    #[value(name = "k0-1")]
    K0Minus1,
    #[value(name = "2k0-2")]
    TwoK0Minus2,
}

impl From<InertExponentArg> for InertConstExponent {
    fn from(a: InertExponentArg) -> Self {
        match a {
            InertExponentArg::K0 => InertConstExponent::K0,
            InertExponentArg::K0Minus1 => InertConstExponent::K0Minus1,
            InertExponentArg::TwoK0Minus2 => InertConstExponent::TwoK0Minus2,
        }
    }
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Newform file of the form under audit.
    #[arg(long)]
    pub form: PathBuf,
    /// Other newforms of the same weight, level and character.
    #[arg(long)]
    pub companion: Vec<PathBuf>,
    /// Newforms of level properly dividing the level.
    #[arg(long = "lower-level")]
    pub lower_level: Vec<PathBuf>,
    /// Manual certificates (exceptional image, principal-series places).
    #[arg(long)]
    pub overrides: Option<PathBuf>,
    #[arg(long)]
    pub lmin: u64,
    #[arg(long)]
    pub lmax: u64,
    /// Multipliers m of the unit exponent in u^(m·e) − 1.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 4, 5])]
    pub multipliers: Vec<u64>,
    /// Exponent of p in the constant term at inert primes.
    #[arg(long = "inert-const-exponent", value_enum, default_value = "k0")]
    pub inert_const_exponent: InertExponentArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Trial-division bound for integer factorization.
    #[arg(long = "trial-bound", default_value_t = hmfdef_core::arith::DEFAULT_TRIAL_BOUND)]
    pub trial_bound: u64,
    /// Flag every uncertified λ ∤ n at or above this ℓ as a discrepancy.
    #[arg(long = "claimed-bound")]
    pub claimed_bound: Option<u64>,
    /// Override the non-induced weight flag (default: the weights differ).
    #[arg(long = "non-induced")]
    pub non_induced: Option<bool>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Audit(#[from] hmfdef_core::Error),
    #[error("empty range: lmin = {lmin} exceeds lmax = {lmax}")]
    Range { lmin: u64, lmax: u64 },
    #[error("multipliers must be positive")]
    Multipliers,
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_newform(path: &Path) -> Result<NewformRecord, CliError> {
    let bytes = read(path)?;
    parse_newform(&bytes)
        .map(|f| f.with_label(path.display().to_string()))
        .map_err(|source| CliError::Format {
            path: path.to_path_buf(),
            source,
        })
}

/// Parse every input and run the audit.
pub fn audit(args: &AuditArgs) -> Result<AuditReport, CliError> {
    if args.lmin > args.lmax {
        return Err(CliError::Range {
            lmin: args.lmin,
            lmax: args.lmax,
        });
    }
    if args.multipliers.is_empty() || args.multipliers.contains(&0) {
        return Err(CliError::Multipliers);
    }
    let mut forms = FormSet::new(load_newform(&args.form)?);
    for p in &args.companion {
        forms.companions.push(load_newform(p)?);
    }
    for p in &args.lower_level {
        forms.lower_level.push(load_newform(p)?);
    }
    let overrides = match &args.overrides {
        Some(p) => parse_overrides(&forms.primary.coeff_field, &read(p)?).map_err(|source| CliError::Format {
            path: p.clone(),
            source,
        })?,
        None => Vec::new(),
    };
    let config = AuditConfig {
        multipliers: args.multipliers.clone(),
        inert_const_exponent: args.inert_const_exponent.into(),
        overrides,
        trial_bound: args.trial_bound,
        non_induced: args.non_induced,
        claimed_bound: args.claimed_bound,
    };
    Ok(run_audit(&forms, &config, args.lmin, args.lmax)?)
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32 {
    let Command::Audit(args) = &cli.command;
    let report = match audit(args) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let text = emit_report(&report, args.format);
    let written = match &args.out {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT_ERROR;
    }
    if report.has_inconclusive() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_COMPLETE
    }
}
