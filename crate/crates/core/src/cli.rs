//! The `bifib` command line.
//!
//! Exit codes: 0 success, 1 verification failure (an identity that should
//! hold did not, or an expected failure unexpectedly held), 2 usage or
//! argument error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::derivatives::{derivative, DerivMethod, Wrt};
use crate::error::Error;
use crate::poly::LaurentBiPoly;
use crate::rational::RationalValue;
use crate::sequences::{fib, general_term, lucas, SeqSpec};
use crate::verifier::{self, format_table, Interval, SweepOptions};

/// Indices beyond this need `--force`.
pub const LARGE_INDEX: i64 = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "bifib",
    version,
    about = "Bivariate Fibonacci and Lucas polynomials: generation, derivatives and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print F_n, L_n or H_n.
    Gen(SeqArgs),
    /// Evaluate a sequence term at a rational point.
    Eval(EvalArgs),
    /// Partial derivative of a sequence term.
    Diff(DiffArgs),
    /// Check a catalogued identity (or `all`) over index ranges.
    Verify(VerifyArgs),
    /// Show the misprinted corollaries, their counterexamples and corrections.
    Errata(ErrataArgs),
    /// Like `gen`, with an explicit output format.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqLabel {
    #[value(name = "F")]
    F,
    #[value(name = "L")]
    L,
    #[value(name = "H")]
    H,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

#[derive(Args, Debug)]
pub struct SeqSelect {
    /// Sequence: F (Fibonacci), L (Lucas) or H (custom initial terms).
    #[arg(value_enum)]
    pub seq: SeqLabel,
    /// Index; negative values are allowed.
    #[arg(allow_hyphen_values = true)]
    pub n: i64,
    /// H_0 as polynomial JSON (required for H).
    #[arg(long)]
    pub a0: Option<String>,
    /// H_1 as polynomial JSON (required for H).
    #[arg(long)]
    pub a1: Option<String>,
    /// Allow |n| above 10000.
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[command(flatten)]
    pub select: SeqSelect,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub select: SeqSelect,
    #[arg(long, value_enum)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub select: SeqSelect,
    /// Value of x, `p` or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Value of y, `p` or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WrtArg {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Closed,
    Conv,
    Altsum,
    Rational,
    Recurrence,
}

impl From<MethodArg> for DerivMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => DerivMethod::Direct,
            MethodArg::Closed => DerivMethod::ClosedForm,
            MethodArg::Conv => DerivMethod::Convolution,
            MethodArg::Altsum => DerivMethod::AltSum,
            MethodArg::Rational => DerivMethod::Rational,
            MethodArg::Recurrence => DerivMethod::RthRecurrence,
        }
    }
}

#[derive(Args, Debug)]
pub struct DiffArgs {
    #[command(flatten)]
    pub select: SeqSelect,
    #[arg(long, value_enum, default_value_t = WrtArg::X)]
    pub wrt: WrtArg,
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity id from the catalog, or `all`.
    pub id: String,
    /// Index range `a..b`, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    /// Derivative-order range `a..b` for order-indexed identities (default 1..1).
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Record every counterexample instead of stopping at the first.
    #[arg(long)]
    pub all_counterexamples: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ErrataArgs {
    #[arg(long)]
    pub all_counterexamples: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InexactDivision { .. } | Error::NonDivisible { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Gen(a) => {
            let p = sequence_term(&a.select)?;
            emit(out, &render(&p, a.format))
        }
        Command::Export(a) => {
            let p = sequence_term(&a.select)?;
            emit(out, &render(&p, a.format))
        }
        Command::Eval(a) => {
            let x: RationalValue = a.x.parse()?;
            let y: RationalValue = a.y.parse()?;
            let p = sequence_term(&a.select)?;
            let v = p.eval(&x, &y)?;
            let text = match a.format {
                Format::Json => serde_json::json!({
                    "numerator": v.numerator().to_string(),
                    "denominator": v.denominator().to_string(),
                })
                .to_string(),
                Format::Latex if !v.is_integer() => {
                    let sign = if v.numerator() < &0.into() { "-" } else { "" };
                    format!("{sign}\\frac{{{}}}{{{}}}", v.abs().numerator(), v.denominator())
                }
                _ => v.to_string(),
            };
            emit(out, &text)
        }
        Command::Diff(a) => {
            check_index(&a.select)?;
            let wrt = match a.wrt {
                WrtArg::X => Wrt::X,
                WrtArg::Y => Wrt::Y,
            };
            let method: DerivMethod = a.method.into();
            let p = match a.select.seq {
                SeqLabel::F => derivative(a.select.n, a.order, wrt, method)?,
                _ if method != DerivMethod::Direct => {
                    return Err(usage(format!(
                        "method {method} applies to F only; use --method direct for {:?}",
                        a.select.seq
                    )))
                }
                _ => {
                    let base = sequence_term(&a.select)?;
                    match wrt {
                        Wrt::X => base.diff_x_n(a.order),
                        Wrt::Y => base.diff_y_n(a.order),
                    }
                }
            };
            emit(out, &render(&p, a.format))
        }
        Command::Verify(a) => {
            let n: Interval = a.n.parse()?;
            let r: Option<Interval> = a.r.as_deref().map(str::parse).transpose()?;
            let opts = SweepOptions {
                all_counterexamples: a.all_counterexamples,
            };
            let reports = if a.id == "all" {
                if n.is_empty() {
                    return Err(Error::EmptyRange(format!("n = {n}")).into());
                }
                verifier::verify_all(n, r, opts)
            } else {
                vec![verifier::verify(&a.id, n, r, opts)?]
            };
            let text = match a.format {
                Format::Json if a.id == "all" => serde_json::to_string(&reports).expect("serializable"),
                Format::Json => reports[0].to_json(),
                _ => format_table(&reports),
            };
            emit(out, text.trim_end())?;
            Ok(if reports.iter().all(|r| r.ci_ok()) { 0 } else { 1 })
        }
        Command::Errata(a) => {
            let report = verifier::errata_report(SweepOptions {
                all_counterexamples: a.all_counterexamples,
            });
            let text = match a.format {
                Format::Json => report.to_json(),
                _ => report.to_text(),
            };
            emit(out, text.trim_end())?;
            Ok(if report.confirmed() { 0 } else { 1 })
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<i32, Failure> {
    writeln!(out, "{text}").map_err(|e| Failure {
        code: 1,
        message: format!("write failed: {e}"),
    })?;
    Ok(0)
}

fn render(p: &LaurentBiPoly, format: Format) -> String {
    match format {
        Format::Text => p.to_text(),
        Format::Latex => p.to_latex(),
        Format::Json => p.to_json(),
    }
}

fn check_index(sel: &SeqSelect) -> Result<(), Failure> {
    if sel.n.unsigned_abs() > LARGE_INDEX as u64 && !sel.force {
        return Err(usage(format!(
            "index {} exceeds {LARGE_INDEX}; pass --force to compute it anyway",
            sel.n
        )));
    }
    Ok(())
}

fn sequence_term(sel: &SeqSelect) -> Result<LaurentBiPoly, Failure> {
    check_index(sel)?;
    match sel.seq {
        SeqLabel::F => Ok(fib(sel.n)),
        SeqLabel::L => Ok(lucas(sel.n)),
        SeqLabel::H => {
            let (Some(a0), Some(a1)) = (&sel.a0, &sel.a1) else {
                return Err(usage("sequence H needs --a0 and --a1 (polynomial JSON)"));
            };
            let spec = SeqSpec::new("H", LaurentBiPoly::from_json(a0)?, LaurentBiPoly::from_json(a1)?);
            Ok(general_term(&spec, sel.n))
        }
    }
}
