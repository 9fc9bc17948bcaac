//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmtorsion::cmclass::{self, CmInvariants};
use cmtorsion::cubicgrowth::{self, EngineOptions};
use cmtorsion::ellcurve::EllipticCurve;
use cmtorsion::exactnum::parse_rational;
use cmtorsion::{Error, Result};
use num_bigint::BigInt;

use crate::document::{InputDoc, ReportDocument};
use crate::{tables, verify};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_CM: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cmtorsion",
    version,
    about = "Torsion of CM elliptic curves over Q and its growth over cubic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one curve: CM invariants, torsion over Q, cubic growth.
    Classify(ClassifyArgs),
    /// Cross-check the engine against the growth table over a range of twists.
    Verify(VerifyArgs),
    /// Regenerate a table from engine runs (1: cubic growth, 2: CM classes).
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum TableFormat {
    #[default]
    Markdown,
    Json,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["curve", "cm"]))]
struct ClassifyArgs {
    /// Curve y^2 = x^3 + A x + B given as `A,B`; rationals as `p/q`.
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    curve: Option<String>,
    /// CM discriminant (absolute value) of the class.
    #[arg(long, value_name = "N", requires = "k")]
    cm: Option<u32>,
    /// Twist parameter; reduced modulo the class's twisting powers.
    #[arg(long, value_name = "K", allow_hyphen_values = true, requires = "cm")]
    k: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: ReportFormat,
    /// Compare with the closed-form growth table.
    #[arg(long)]
    cross_check: bool,
    /// Also count points of order 5, 6 and 8 as a consistency check.
    #[arg(long)]
    paranoid: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Classes to sweep, e.g. `7,28`; all thirteen by default.
    #[arg(long, value_name = "CM,...", value_delimiter = ',')]
    cm_list: Option<Vec<u32>>,
    /// Inclusive range of k, e.g. `-50,50`; by default 200 for cm 3 and 4,
    /// 100 otherwise.
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    k_range: Option<String>,
    /// Worker threads; curves run in parallel, each one sequentially.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    which: u8,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotCm(_) => EXIT_NOT_CM,
        Error::Singular => EXIT_SINGULAR,
        _ => EXIT_INVALID,
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(String, String)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("{what} must be two comma-separated values, got {s:?}")))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn classify(args: &ClassifyArgs) -> Result<String> {
    let (input, curve) = match (&args.curve, args.cm, &args.k) {
        (Some(c), _, _) => {
            let (a, b) = parse_pair(c, "--curve")?;
            let curve = EllipticCurve::new(parse_rational(&a)?, parse_rational(&b)?)?;
            (InputDoc::Curve { a, b }, curve)
        }
        (None, Some(cm), Some(k)) => {
            let k = parse_int(k)?;
            let reduced = cmclass::canonical_k(cm, &k)?;
            let curve = cmclass::normal_form(&CmInvariants::new(cm, reduced)?)?;
            (InputDoc::Invariants { cm, k: k.to_string() }, curve)
        }
        _ => return Err(Error::InvalidInput("give --curve A,B or --cm N --k K".into())),
    };
    let report = cubicgrowth::growth_engine_with(
        &curve,
        EngineOptions {
            paranoid: args.paranoid,
        },
    )?;
    let cross = args
        .cross_check
        .then(|| cubicgrowth::cross_check_report(report.clone()));
    let doc = ReportDocument::new(input, &report, cross.as_ref());
    Ok(match args.format {
        ReportFormat::Text => doc.to_text(),
        ReportFormat::Json => to_json(&doc),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let mut sweep = verify::Sweep::default();
    if let Some(list) = &args.cm_list {
        sweep.cm_list = list.clone();
    }
    if let Some(r) = &args.k_range {
        let (lo, hi) = parse_pair(r, "--k-range")?;
        let bound = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("k bound is not an integer: {s:?}")))
        };
        sweep.k_range = Some((bound(&lo)?, bound(&hi)?));
    }
    let doc = match args.jobs {
        Some(0) => return Err(Error::InvalidInput("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| verify::run(&sweep))?,
        None => verify::run(&sweep)?,
    };
    let out = match args.format {
        ReportFormat::Text => doc.to_text(),
        ReportFormat::Json => to_json(&doc),
    };
    Ok((out, doc.all_match()))
}

fn run_tables(args: &TablesArgs) -> Result<String> {
    Ok(match (args.which, args.format) {
        (1, TableFormat::Markdown) => tables::growth_table_markdown(&tables::growth_table()?),
        (1, TableFormat::Json) => to_json(&tables::growth_table()?),
        (_, TableFormat::Markdown) => tables::class_table_markdown(&tables::class_table()?),
        (_, TableFormat::Json) => to_json(&tables::class_table()?),
    })
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => classify(a).map(|s| (s, true)),
        Command::Verify(a) => run_verify(a),
        Command::Tables(a) => run_tables(a).map(|s| (s, true)),
    };
    match result {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                EXIT_OK
            } else {
                EXIT_INVALID
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
