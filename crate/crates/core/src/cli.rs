//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for input errors (parse failures, poles,
//! divergent inputs, bad ranges), 1 for internal failures, including a
//! result whose digits could not all be certified.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::constants::{eb, EbMethod};
use crate::curves::{eval_curve, sample_grid, Variant};
use crate::error::Error;
use crate::eureka::{cube_trigonal, VerificationReport};
use crate::precision::{certify, parse_rational, render_rational, Certified, Rational};
use crate::series::{eval_series, is_arithmetic_progression, Coefficients, ExponentSequence, LacunarySeries};

/// Number of leading exponents inspected for an arithmetic progression.
const PROGRESSION_PROBE: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "lacunary", version, about = "Certified evaluation of lacunary series and related constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Named constants.
    #[command(subcommand)]
    Constant(ConstantCommand),
    /// General lacunary series Σ A_n x^(α_n).
    #[command(subcommand)]
    Series(SeriesCommand),
    /// The curve family Σ 1/(a^k + x).
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Sums of three triangular numbers.
    #[command(subcommand)]
    Eureka(EurekaCommand),
}

#[derive(Debug, Subcommand)]
enum ConstantCommand {
    /// Σ_{n≥1} 1/(2^n - 1).
    Eb {
        #[arg(long)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Debug, Subcommand)]
enum SeriesCommand {
    Eval {
        /// trigonal | squares | geometric:A | polygonal:S | explicit:e0,e1,...
        #[arg(long)]
        exponents: String,
        /// Comma-separated coefficients, repeated cyclically (default all 1).
        #[arg(long, allow_hyphen_values = true)]
        coefficients: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        digits: u32,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Debug, Subcommand)]
enum CurveCommand {
    Eval {
        #[arg(long)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "plus")]
        variant: String,
        #[arg(long)]
        digits: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    Sample {
        #[arg(long)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        digits: u32,
        #[arg(long, default_value = "plus")]
        variant: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Debug, Subcommand)]
enum EurekaCommand {
    Verify {
        #[arg(long)]
        upto: usize,
        /// Write n, r3(n) for every checked n.
        #[arg(long)]
        report_csv: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    Coeff {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Theta,
    Divisor,
    All,
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub value: EnvelopeValue,
    /// Decimal places pinned by the enclosure; `None` for integer results.
    pub digits_certified: Option<u32>,
    pub method: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EnvelopeValue {
    /// `digits` is the correctly rounded value; the underlying enclosure has
    /// radius at most `10^-error_exponent` (`None` when exact).
    Decimal {
        digits: String,
        error_exponent: Option<i64>,
    },
    Report(VerificationReport),
    Coefficient {
        n: u64,
        r3: String,
    },
    Samples(Vec<SampleEntry>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub x: String,
    pub y: Option<String>,
    pub flag: String,
}

impl EnvelopeValue {
    fn decimal(c: &Certified) -> Self {
        EnvelopeValue::Decimal {
            digits: c.text.clone(),
            error_exponent: c.enclosure.error_exponent(),
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::internal(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::internal(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::internal(format!("json error: {e}"))
    }
}

/// Run the command line `args` (including the program name) and return the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let started = Instant::now();
    match command {
        Command::Constant(ConstantCommand::Eb { digits, method, format }) => {
            constant_eb(digits, method, format.format, started, out)
        }
        Command::Series(SeriesCommand::Eval { exponents, coefficients, x, digits, format }) => {
            series_eval(&exponents, coefficients.as_deref(), &x, digits, format.format, started, out, err)
        }
        Command::Curve(CurveCommand::Eval { a, x, variant, digits, format }) => {
            curve_eval(a, &x, &variant, digits, format.format, started, out)
        }
        Command::Curve(CurveCommand::Sample { a, from, to, steps, digits, variant, format }) => {
            curve_sample(a, &from, &to, steps, digits, &variant, format, started, out)
        }
        Command::Eureka(EurekaCommand::Verify { upto, report_csv, format }) => {
            eureka_verify(upto, report_csv, format.format, started, out)
        }
        Command::Eureka(EurekaCommand::Coeff { n, format }) => eureka_coeff(n, format.format, started, out),
    }
}

fn elapsed_ms(started: Instant) -> u64 {
    started.elapsed().as_millis() as u64
}

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn uncertified(requested: u32, c: &Certified) -> Failure {
    Failure::internal(format!(
        "only {} of {requested} digits could be certified",
        c.digits_certified
    ))
}

fn constant_eb(
    digits: u32,
    method: MethodArg,
    format: OutputFormat,
    started: Instant,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let methods: Vec<EbMethod> = match method {
        MethodArg::Direct => vec![EbMethod::Direct],
        MethodArg::Theta => vec![EbMethod::Theta],
        MethodArg::Divisor => vec![EbMethod::Divisor],
        MethodArg::All => EbMethod::ALL.to_vec(),
    };

    let mut rows: Vec<(String, Certified)> = Vec::new();
    for m in &methods {
        let c = certify(digits, |d| Ok(eb(*m, d)))?;
        rows.push((m.name().to_string(), c));
    }
    if methods.len() > 1 {
        let enclosures: Vec<_> = rows.iter().map(|(_, c)| c.enclosure.clone()).collect();
        let (lo, hi) = crate::CertifiedDecimal::intersection(&enclosures)
            .ok_or_else(|| Failure::internal("the three methods do not agree"))?;
        let scale = enclosures.iter().map(|e| e.scale()).max().unwrap_or(digits);
        let joint = crate::CertifiedDecimal::from_interval(&lo, &hi, scale);
        let c = certify(digits, |_| Ok(joint.clone()))?;
        rows.push(("intersection".to_string(), c));
    }

    let elapsed = elapsed_ms(started);
    match format {
        OutputFormat::Plain => {
            for (name, c) in &rows {
                if rows.len() == 1 {
                    writeln!(out, "{}", c.text)?;
                } else {
                    writeln!(out, "{name} {}", c.text)?;
                }
            }
        }
        OutputFormat::Json => {
            let envelopes: Vec<OutputEnvelope> = rows
                .iter()
                .map(|(name, c)| OutputEnvelope {
                    command: "constant eb".into(),
                    inputs: inputs([("digits", digits.to_string())]),
                    value: EnvelopeValue::decimal(c),
                    digits_certified: Some(c.digits_certified),
                    method: name.clone(),
                    elapsed_ms: elapsed,
                })
                .collect();
            if envelopes.len() == 1 {
                write_json(out, &envelopes[0])?;
            } else {
                write_json(out, &envelopes)?;
            }
        }
    }
    match rows.iter().find(|(_, c)| !c.is_complete(digits)) {
        Some((_, c)) => Err(uncertified(digits, c)),
        None => Ok(()),
    }
}

#[allow(clippy::too_many_arguments)]
fn series_eval(
    exponents: &str,
    coefficients: Option<&str>,
    x: &str,
    digits: u32,
    format: OutputFormat,
    started: Instant,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let sequence: ExponentSequence = exponents.parse()?;
    let coefficient_rule = match coefficients {
        Some(list) => Coefficients::parse_list(list)?,
        None => Coefficients::Ones,
    };
    let x_value = parse_rational(x)?;
    if is_arithmetic_progression(&sequence, PROGRESSION_PROBE) {
        writeln!(
            err,
            "warning: exponents {sequence} form an arithmetic progression; the series is a rational function of x"
        )?;
    }
    let series = LacunarySeries::new(coefficient_rule, sequence);
    let c = certify(digits, |d| eval_series(&series, &x_value, d))?;
    emit_decimal(
        out,
        format,
        OutputEnvelope {
            command: "series eval".into(),
            inputs: inputs([
                ("exponents", series.exponents().to_string()),
                ("coefficients", coefficients.unwrap_or("ones").to_string()),
                ("x", render_rational(&x_value)),
                ("digits", digits.to_string()),
            ]),
            value: EnvelopeValue::decimal(&c),
            digits_certified: Some(c.digits_certified),
            method: "truncated-sum".into(),
            elapsed_ms: elapsed_ms(started),
        },
        &c,
    )?;
    if c.is_complete(digits) {
        Ok(())
    } else {
        Err(uncertified(digits, &c))
    }
}

fn emit_decimal(out: &mut dyn Write, format: OutputFormat, envelope: OutputEnvelope, c: &Certified) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => writeln!(out, "{}", c.text)?,
        OutputFormat::Json => write_json(out, &envelope)?,
    }
    Ok(())
}

fn curve_eval(
    a: i64,
    x: &str,
    variant: &str,
    digits: u32,
    format: OutputFormat,
    started: Instant,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let variant: Variant = variant.parse()?;
    let spec = variant.spec(a)?;
    let x_value = parse_rational(x)?;
    let c = certify(digits, |d| eval_curve(&spec, &x_value, d))?;
    emit_decimal(
        out,
        format,
        OutputEnvelope {
            command: "curve eval".into(),
            inputs: inputs([
                ("a", a.to_string()),
                ("x", render_rational(&x_value)),
                ("variant", variant.to_string()),
                ("digits", digits.to_string()),
            ]),
            value: EnvelopeValue::decimal(&c),
            digits_certified: Some(c.digits_certified),
            method: variant.to_string(),
            elapsed_ms: elapsed_ms(started),
        },
        &c,
    )?;
    if c.is_complete(digits) {
        Ok(())
    } else {
        Err(uncertified(digits, &c))
    }
}

#[allow(clippy::too_many_arguments)]
fn curve_sample(
    a: i64,
    from: &str,
    to: &str,
    steps: usize,
    digits: u32,
    variant: &str,
    format: TableFormat,
    started: Instant,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let variant: Variant = variant.parse()?;
    let spec = variant.spec(a)?;
    let from_value = parse_rational(from)?;
    let to_value = parse_rational(to)?;
    let grid: Vec<Rational> = sample_grid(&from_value, &to_value, steps)?;

    let mut entries = Vec::with_capacity(grid.len());
    let mut incomplete = None;
    for x in &grid {
        let entry = match spec.pole_index(x) {
            Some(_) => SampleEntry {
                x: render_rational(x),
                y: None,
                flag: "pole".into(),
            },
            None => {
                let c = certify(digits, |d| eval_curve(&spec, x, d))?;
                if !c.is_complete(digits) {
                    incomplete = Some(c.clone());
                }
                SampleEntry {
                    x: render_rational(x),
                    y: Some(c.text),
                    flag: "ok".into(),
                }
            }
        };
        entries.push(entry);
    }

    match format {
        TableFormat::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            writer.write_record(["x", "y", "flag"])?;
            for e in &entries {
                writer.write_record([e.x.as_str(), e.y.as_deref().unwrap_or(""), e.flag.as_str()])?;
            }
            writer.flush()?;
        }
        TableFormat::Json => write_json(
            out,
            &OutputEnvelope {
                command: "curve sample".into(),
                inputs: inputs([
                    ("a", a.to_string()),
                    ("from", render_rational(&from_value)),
                    ("to", render_rational(&to_value)),
                    ("steps", steps.to_string()),
                    ("variant", variant.to_string()),
                    ("digits", digits.to_string()),
                ]),
                value: EnvelopeValue::Samples(entries),
                digits_certified: Some(incomplete.as_ref().map_or(digits, |c| c.digits_certified)),
                method: variant.to_string(),
                elapsed_ms: elapsed_ms(started),
            },
        )?,
    }
    match incomplete {
        Some(c) => Err(uncertified(digits, &c)),
        None => Ok(()),
    }
}

fn eureka_verify(
    upto: usize,
    report_csv: Option<PathBuf>,
    format: OutputFormat,
    started: Instant,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let cube = cube_trigonal(upto);
    let report = VerificationReport::from_cube(&cube);
    if let Some(path) = &report_csv {
        let mut writer = csv::Writer::from_path(path)?;
        writer.write_record(["n", "r3"])?;
        for (n, c) in cube.coefficients().iter().enumerate() {
            writer.write_record([n.to_string(), c.to_string()])?;
        }
        writer.flush()?;
    }
    match format {
        OutputFormat::Plain => {
            writeln!(out, "checked {} values (n = 0..={upto}), {} failures", report.checked, report.failures.len())?;
            for n in &report.failures {
                writeln!(out, "no representation: {n}")?;
            }
        }
        OutputFormat::Json => {
            let mut echo = inputs([("upto", upto.to_string())]);
            if let Some(path) = &report_csv {
                echo.insert("report_csv".into(), path.display().to_string());
            }
            write_json(
                out,
                &OutputEnvelope {
                    command: "eureka verify".into(),
                    inputs: echo,
                    value: EnvelopeValue::Report(report),
                    digits_certified: None,
                    method: "schoolbook-cube".into(),
                    elapsed_ms: elapsed_ms(started),
                },
            )?;
        }
    }
    Ok(())
}

fn eureka_coeff(n: usize, format: OutputFormat, started: Instant, out: &mut dyn Write) -> Result<(), Failure> {
    let value = cube_trigonal(n).coeff(n).to_string();
    match format {
        OutputFormat::Plain => writeln!(out, "{value}")?,
        OutputFormat::Json => write_json(
            out,
            &OutputEnvelope {
                command: "eureka coeff".into(),
                inputs: inputs([("n", n.to_string())]),
                value: EnvelopeValue::Coefficient { n: n as u64, r3: value },
                digits_certified: None,
                method: "schoolbook-cube".into(),
                elapsed_ms: elapsed_ms(started),
            },
        )?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lacunary").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eb_all_methods() {
        let (code, out, _) = run_args(&["constant", "eb", "--digits", "9", "--method", "all"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines,
            [
                "direct 1.606695152",
                "theta 1.606695152",
                "divisor 1.606695152",
                "intersection 1.606695152"
            ]
        );
    }

    #[test]
    fn single_method_prints_bare_value() {
        let (code, out, _) = run_args(&["constant", "eb", "--digits", "9", "--method", "theta"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1.606695152\n");
    }

    #[test]
    fn series_at_half() {
        let (code, out, _) = run_args(&["series", "eval", "--exponents", "trigonal", "--x", "1/2", "--digits", "11"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1.64163256066");
    }

    #[test]
    fn series_decimal_input_and_warning() {
        let (code, out, err) = run_args(&["series", "eval", "--exponents", "explicit:0,1,2,3", "--x", "0.5", "--digits", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1.8750");
        assert!(err.contains("arithmetic progression"));
    }

    #[test]
    fn series_divergence_exits_two() {
        let (code, _, err) = run_args(&["series", "eval", "--exponents", "trigonal", "--x", "1", "--digits", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("divergent input"));
        let (code, _, _) = run_args(&["series", "eval", "--exponents", "trigonal", "--x", "-3/2", "--digits", "5"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn pole_exits_two_with_index() {
        let (code, _, err) = run_args(&["curve", "eval", "--a", "2", "--x", "-2", "--variant", "plus", "--digits", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("pole at k=1"), "{err}");
    }

    #[test]
    fn parse_errors_exit_two() {
        assert_eq!(run_args(&["curve", "eval", "--a", "2", "--x", "1/0", "--digits", "5"]).0, 2);
        assert_eq!(run_args(&["curve", "eval", "--a", "1", "--x", "1", "--digits", "5"]).0, 2);
        assert_eq!(run_args(&["series", "eval", "--exponents", "cubes", "--x", "1/2", "--digits", "5"]).0, 2);
        assert_eq!(run_args(&["constant", "eb", "--digits", "nine"]).0, 2);
        assert_eq!(run_args(&["bogus"]).0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("constant"));
    }

    #[test]
    fn curve_value_plain() {
        let (code, out, _) = run_args(&["curve", "eval", "--a", "3", "--x", "0", "--variant", "alt", "--digits", "6"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "0.750000");
    }

    #[test]
    fn json_envelope_round_trips() {
        let (code, out, _) = run_args(&["series", "eval", "--exponents", "trigonal", "--x", "1/10", "--digits", "28", "--format", "json"]);
        assert_eq!(code, 0);
        let envelope: OutputEnvelope = serde_json::from_str(&out).unwrap();
        assert_eq!(envelope.command, "series eval");
        assert_eq!(envelope.digits_certified, Some(28));
        match &envelope.value {
            EnvelopeValue::Decimal { digits, error_exponent } => {
                assert_eq!(digits, "1.1010010001000010000010000001");
                assert!(error_exponent.unwrap() >= 28);
            }
            other => panic!("unexpected value {other:?}"),
        }
        let again: OutputEnvelope = serde_json::from_str(&serde_json::to_string(&envelope).unwrap()).unwrap();
        assert_eq!(again, envelope);
    }

    #[test]
    fn sample_csv() {
        let (code, out, _) = run_args(&["curve", "sample", "--a", "2", "--from", "-3", "--to", "0", "--steps", "7", "--digits", "4"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "x,y,flag");
        assert_eq!(lines.len(), 8);
        assert!(lines.contains(&"-2,,pole"));
        assert!(lines.contains(&"-1,,pole"));
        assert_eq!(*lines.last().unwrap(), "0,2.0000,ok");
        // y(-1/2) = Σ 2/(2^(k+1) - 1) = 2 · 1.6066951524...
        assert!(lines.contains(&"-1/2,3.2134,ok"));
    }

    #[test]
    fn sample_rejects_empty_range() {
        let (code, _, err) = run_args(&["curve", "sample", "--a", "2", "--from", "-1", "--to", "-1", "--steps", "4", "--digits", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("invalid range"));
    }

    #[test]
    fn eureka_commands() {
        let (code, out, _) = run_args(&["eureka", "verify", "--upto", "100"]);
        assert_eq!(code, 0);
        assert!(out.contains("checked 101 values"));
        assert!(out.contains("0 failures"));
        let (code, out, _) = run_args(&["eureka", "coeff", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "4");
    }
}
