//! Command-line front end.
//!
//! Exit codes: 0 when every requested check passes (or the command only
//! prints data), 1 when some check fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffseq::{default_cap, prefix_sums, CoefficientFamily};
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::expansion::{expand, Certificate, DEFAULT_TERMS};
use crate::measure::io::{self as measure_io};
use crate::measure::DiscreteMeasure;
use crate::scalar::{ModeKind, Scalar, DEFAULT_FLOAT_TOLERANCE};
use crate::series::report::{verdicts_to_human, verdicts_to_json, SCHEMA_VERSION};
use crate::series::{
    integer_tail_series, lower_series, overall, verify_chung, verify_proposition, verify_theorem1, Outcome,
    SeriesConfig, SeriesReport, SeriesValue,
};

#[derive(Parser, Debug)]
#[command(
    name = "tailseries",
    version,
    about = "Greedy series expansions and certified tail-series bounds for discrete measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Greedy expansion of a single number.
    Expand {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number to expand (`p/q` or decimal).
        #[arg(long)]
        x: String,
        /// Number of bits.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate every series for a measure and check all inequalities.
    Report {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Output format (batch runs default to csv, single runs to json).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check the integer-tail sandwich `T <= E X <= M + T`.
    Chung {
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// For measures on the positive integers, check `E X = T >= L`.
    Proposition {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print coefficients and prefix sums `H_1 .. H_n`.
    Sequence {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rewrite a measure in canonical form (sorted, merged atoms).
    Normalize {
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// natural | power | logweighted | primes | file:PATH
    #[arg(long, default_value = "natural")]
    pub family: String,
    /// Exponent for the power family, strictly between 0 and 1.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Arithmetic; defaults to exact when the family allows it.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Unit mass at this point.
    #[arg(long)]
    pub dirac: Option<String>,
    /// Measure file (JSON or CSV), or a directory of them for a batch run.
    #[arg(long)]
    pub measure: Option<PathBuf>,
    /// File with one sample per line.
    #[arg(long)]
    pub samples: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct LimitArgs {
    /// Search cap for prefix-index lookups.
    #[arg(long, env = "TAILSERIES_CAP")]
    pub cap: Option<u64>,
    /// Expansion length for the representation sum.
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub n: u64,
    /// Relative tolerance for float comparisons.
    #[arg(long, default_value_t = DEFAULT_FLOAT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String, code: i32) -> Self {
        RunOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                RunOutput::usage(text)
            } else {
                RunOutput::ok(text, 0)
            }
        }
    }
}

pub fn execute(command: Command) -> RunOutput {
    match dispatch(command) {
        Ok(out) => out,
        Err(e) => RunOutput::usage(format!("error: {e}\n")),
    }
}

fn parse_family(args: &FamilyArgs) -> Result<(CoefficientFamily, ModeKind)> {
    let name = args.family.trim();
    let family = match name.to_ascii_lowercase().as_str() {
        "natural" => CoefficientFamily::natural(),
        "logweighted" => CoefficientFamily::log_weighted(),
        "primes" => CoefficientFamily::primes(),
        "power" => {
            let delta = args
                .delta
                .ok_or_else(|| Error::Invalid("--family power needs --delta".into()))?;
            CoefficientFamily::power(delta)?
        }
        _ => match name.strip_prefix("file:") {
            Some(path) if !path.is_empty() => CoefficientFamily::from_file(path)?,
            _ => {
                return Err(Error::Invalid(format!(
                    "unknown family {name:?}; expected natural, power, logweighted, primes or file:PATH"
                )))
            }
        },
    };
    if args.delta.is_some() && !matches!(family.kind(), crate::coeffseq::FamilyKind::Power { .. }) {
        return Err(Error::Invalid("--delta only applies to --family power".into()));
    }
    let mode = resolve_mode(args.mode, Some(&family))?;
    Ok((family, mode))
}

fn resolve_mode(mode: Option<Mode>, family: Option<&CoefficientFamily>) -> Result<ModeKind> {
    let exact_ok = family.is_none_or(|f| f.is_exact());
    match mode {
        Some(Mode::Exact) if !exact_ok => Err(Error::UnsupportedMode {
            family: family.expect("checked").label(),
        }),
        Some(Mode::Exact) => Ok(ModeKind::ExactRational),
        Some(Mode::Float) => Ok(ModeKind::Float),
        None if exact_ok => Ok(ModeKind::ExactRational),
        None => Ok(ModeKind::Float),
    }
}

fn dispatch(command: Command) -> Result<RunOutput> {
    match command {
        Command::Expand { family, x, n, format } => {
            let (fam, mode) = parse_family(&family)?;
            match mode {
                ModeKind::ExactRational => cmd_expand::<Exact>(&fam, &x, n, format),
                ModeKind::Float => cmd_expand::<f64>(&fam, &x, n, format),
            }
        }
        Command::Report { family, source, limits, format } => {
            let (fam, mode) = parse_family(&family)?;
            match mode {
                ModeKind::ExactRational => cmd_report::<Exact>(&fam, &source, &limits, format),
                ModeKind::Float => cmd_report::<f64>(&fam, &source, &limits, format),
            }
        }
        Command::Chung { mode, source, tolerance, format } => match resolve_mode(mode, None)? {
            ModeKind::ExactRational => cmd_chung::<Exact>(&source, tolerance, format),
            ModeKind::Float => cmd_chung::<f64>(&source, tolerance, format),
        },
        Command::Proposition { family, source, limits, format } => {
            let (fam, mode) = parse_family(&family)?;
            match mode {
                ModeKind::ExactRational => cmd_proposition::<Exact>(&fam, &source, &limits, format),
                ModeKind::Float => cmd_proposition::<f64>(&fam, &source, &limits, format),
            }
        }
        Command::Sequence { family, n, format } => {
            let (fam, mode) = parse_family(&family)?;
            match mode {
                ModeKind::ExactRational => cmd_sequence::<Exact>(&fam, n, format),
                ModeKind::Float => cmd_sequence::<f64>(&fam, n, format),
            }
        }
        Command::Normalize { mode, source, format } => match resolve_mode(mode, None)? {
            ModeKind::ExactRational => cmd_normalize::<Exact>(&source, format),
            ModeKind::Float => cmd_normalize::<f64>(&source, format),
        },
    }
}

fn parse_point<S: Scalar>(flag: &str, text: &str) -> Result<S> {
    let v = S::parse_scalar(text).ok_or_else(|| Error::Invalid(format!("{flag}: not a number: {text:?}")))?;
    if v.is_negative() {
        return Err(Error::Domain(format!("{flag} must be nonnegative, got {text}")));
    }
    Ok(v)
}

/// A measure together with a label naming where it came from.
struct Loaded<S> {
    label: String,
    measure: DiscreteMeasure<S>,
}

/// Loads the single measure named by `source`; `None` for a batch directory.
fn load_single<S: Scalar>(source: &SourceArgs) -> Result<Option<Loaded<S>>> {
    if let Some(text) = &source.dirac {
        let x = parse_point::<S>("--dirac", text)?;
        return Ok(Some(Loaded {
            label: format!("dirac:{}", text.trim()),
            measure: DiscreteMeasure::dirac(x)?,
        }));
    }
    if let Some(path) = &source.samples {
        return Ok(Some(Loaded {
            label: path.display().to_string(),
            measure: measure_io::load_samples(path)?,
        }));
    }
    let path = source.measure.as_ref().expect("clap requires one source");
    if path.is_dir() {
        return Ok(None);
    }
    Ok(Some(Loaded {
        label: path.display().to_string(),
        measure: measure_io::load_measure(path)?,
    }))
}

/// Regular files of a batch directory, sorted by file name.
fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn code_for(outcome: Outcome) -> i32 {
    if outcome == Outcome::Fail {
        1
    } else {
        0
    }
}

fn cmd_expand<S: Scalar>(family: &CoefficientFamily, x: &str, n: u64, format: Format) -> Result<RunOutput> {
    let x = parse_point::<S>("--x", x)?;
    let e = expand(&x, family, n)?;
    let certificate = e.certificate()?;
    let cert_text = match &certificate {
        Certificate::Uncertified => None,
        c => Some(c.to_string()),
    };
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                schema_version: &'static str,
                family: String,
                mode: &'static str,
                x: String,
                n: u64,
                bits: String,
                ones: u64,
                partial_sum: String,
                remainder: String,
                last_zero_bit: Option<u64>,
                certificate: Option<String>,
                certified: bool,
                notes: Vec<String>,
            }
            let doc = Doc {
                schema_version: SCHEMA_VERSION,
                family: family.label(),
                mode: S::KIND.label(),
                x: x.to_string(),
                n: e.len(),
                bits: e.bit_string(),
                ones: e.count_ones(),
                partial_sum: e.partial_sum().to_string(),
                remainder: e.remainder().to_string(),
                last_zero_bit: e.last_zero_bit(),
                certificate: cert_text,
                certified: certificate.is_certified(),
                notes: family.notes(),
            };
            to_json_line(&doc)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "bit", "partial_sum", "remainder"]).expect("in-memory write");
            let remainders = e.remainders()?;
            for (i, r) in remainders.iter().enumerate() {
                let n = i as u64 + 1;
                w.write_record([
                    n.to_string(),
                    u8::from(e.bit(n)).to_string(),
                    x.sub(r).to_string(),
                    r.to_string(),
                ])
                .expect("in-memory write");
            }
            csv_text(w)
        }
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "x = {x}  family {}  mode {}  N = {}", family.label(), S::KIND, e.len());
            let _ = writeln!(out, "bits:      {}", e.bit_string());
            let _ = writeln!(out, "ones:      {}", e.count_ones());
            let _ = writeln!(out, "S_N:       {}", e.partial_sum());
            let _ = writeln!(out, "r_N:       {}", e.remainder());
            match e.last_zero_bit() {
                Some(z) => {
                    let _ = writeln!(out, "last zero: {z}");
                }
                None => {
                    let _ = writeln!(out, "last zero: none");
                }
            }
            let _ = writeln!(out, "r_N <=     {certificate}");
            for note in family.notes() {
                let _ = writeln!(out, "note: {note}");
            }
            out
        }
    };
    Ok(RunOutput::ok(text, 0))
}

fn check_tolerance(tolerance: f64) -> Result<f64> {
    if tolerance.is_finite() && tolerance >= 0.0 {
        Ok(tolerance)
    } else {
        Err(Error::Invalid(format!("--tolerance must be finite and nonnegative, got {tolerance}")))
    }
}

fn series_config(limits: &LimitArgs, mode: ModeKind) -> Result<SeriesConfig> {
    Ok(SeriesConfig {
        cap: limits.cap.unwrap_or_else(|| default_cap(mode)),
        terms: limits.n,
        tolerance: check_tolerance(limits.tolerance)?,
    })
}

fn cmd_report<S: Scalar>(
    family: &CoefficientFamily,
    source: &SourceArgs,
    limits: &LimitArgs,
    format: Option<Format>,
) -> Result<RunOutput> {
    let config = series_config(limits, S::KIND)?;
    match load_single::<S>(source)? {
        Some(loaded) => {
            let report = verify_theorem1(&loaded.measure, family, &config)?;
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => report.to_json(),
                Format::Human => report.to_human(),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(SeriesReport::<S>::csv_header()).expect("in-memory write");
                    w.write_record(report.csv_record(&loaded.label)).expect("in-memory write");
                    csv_text(w)
                }
            };
            Ok(RunOutput::ok(text, code_for(report.overall())))
        }
        None => {
            let dir = source.measure.as_ref().expect("batch needs a directory");
            batch_report::<S>(family, dir, &config, format.unwrap_or(Format::Csv))
        }
    }
}

fn batch_report<S: Scalar>(
    family: &CoefficientFamily,
    dir: &Path,
    config: &SeriesConfig,
    format: Format,
) -> Result<RunOutput> {
    let files = batch_files(dir)?;
    let results: Vec<(String, Result<SeriesReport<S>>)> = files
        .par_iter()
        .map(|path| {
            let label = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let report = measure_io::load_measure::<S>(path)
                .and_then(|m| verify_theorem1(&m, family, config));
            (label, report)
        })
        .collect();
    let mut stderr = String::new();
    let mut worst = Outcome::Pass;
    let mut failed_input = false;
    let mut good = Vec::new();
    for (label, result) in results {
        match result {
            Ok(report) => {
                if report.overall() == Outcome::Fail {
                    worst = Outcome::Fail;
                }
                good.push((label, report));
            }
            Err(e) => {
                failed_input = true;
                let _ = writeln!(stderr, "error: {e}");
            }
        }
    }
    let stdout = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SeriesReport::<S>::csv_header()).expect("in-memory write");
            for (label, report) in &good {
                w.write_record(report.csv_record(label)).expect("in-memory write");
            }
            csv_text(w)
        }
        Format::Json => {
            let docs: Vec<serde_json::Value> = good
                .iter()
                .map(|(label, report)| {
                    let mut v: serde_json::Value =
                        serde_json::from_str(&report.to_json()).expect("report is valid JSON");
                    v["source"] = serde_json::Value::String(label.clone());
                    v
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&docs).expect("reports serialize");
            text.push('\n');
            text
        }
        Format::Human => good
            .iter()
            .map(|(label, report)| format!("== {label} ==\n{}", report.to_human()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let code = if failed_input { 2 } else { code_for(worst) };
    Ok(RunOutput { code, stdout, stderr })
}

fn require_single<S: Scalar>(source: &SourceArgs, command: &str) -> Result<Loaded<S>> {
    load_single(source)?.ok_or_else(|| {
        Error::Invalid(format!("{command} takes a single measure file, not a directory"))
    })
}

fn cmd_chung<S: Scalar>(source: &SourceArgs, tolerance: f64, format: Option<Format>) -> Result<RunOutput> {
    let tolerance = check_tolerance(tolerance)?;
    let loaded = require_single::<S>(source, "chung")?;
    let m = &loaded.measure;
    let verdicts = verify_chung(m, tolerance);
    let tail = integer_tail_series(m);
    let mass_tail = SeriesValue::finite(
        m.total_mass().add(tail.as_finite().expect("finite")),
        tail.terms_used,
    );
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => verdicts_to_json(
            "integer_tail_sandwich",
            S::KIND,
            m,
            &verdicts,
            &[("integer_tail", &tail), ("mass_plus_integer_tail", &mass_tail)],
        ),
        Format::Human => verdicts_to_human(&verdicts),
        Format::Csv => verdicts_csv(&loaded.label, m, &verdicts),
    };
    Ok(RunOutput::ok(text, code_for(overall(&verdicts))))
}

fn cmd_proposition<S: Scalar>(
    family: &CoefficientFamily,
    source: &SourceArgs,
    limits: &LimitArgs,
    format: Option<Format>,
) -> Result<RunOutput> {
    let loaded = require_single::<S>(source, "proposition")?;
    let m = &loaded.measure;
    let config = series_config(limits, S::KIND)?;
    let verdicts = verify_proposition(m, family, config.cap, config.tolerance)?;
    let tail = integer_tail_series(m);
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => {
            let lower = if m.is_integer_supported() {
                Some(lower_series(m, family, config.cap)?)
            } else {
                None
            };
            let mut values: Vec<(&str, &SeriesValue<S>)> = vec![("integer_tail", &tail)];
            if let Some(l) = &lower {
                values.push(("lower_series", l));
            }
            verdicts_to_json("integer_support", S::KIND, m, &verdicts, &values)
        }
        Format::Human => verdicts_to_human(&verdicts),
        Format::Csv => verdicts_csv(&loaded.label, m, &verdicts),
    };
    Ok(RunOutput::ok(text, code_for(overall(&verdicts))))
}

fn verdicts_csv<S: Scalar>(label: &str, m: &DiscreteMeasure<S>, verdicts: &[crate::series::Verdict<S>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["source".to_string(), "expectation".to_string()];
    header.extend(verdicts.iter().map(|v| v.id.to_string()));
    header.push("overall".into());
    w.write_record(&header).expect("in-memory write");
    let mut row = vec![label.to_string(), m.expectation().to_string()];
    row.extend(verdicts.iter().map(|v| v.outcome.label().to_string()));
    row.push(overall(verdicts).label().to_string());
    w.write_record(&row).expect("in-memory write");
    csv_text(w)
}

fn cmd_sequence<S: Scalar>(family: &CoefficientFamily, n: u64, format: Format) -> Result<RunOutput> {
    let sums = prefix_sums::<S>(family, n)?;
    let terms = (1..=n)
        .map(|k| S::coefficient(family, k))
        .collect::<Result<Vec<S>>>()?;
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                schema_version: &'static str,
                family: String,
                mode: &'static str,
                n: u64,
                terms: Vec<String>,
                prefix_sums: Vec<String>,
                notes: Vec<String>,
            }
            to_json_line(&Doc {
                schema_version: SCHEMA_VERSION,
                family: family.label(),
                mode: S::KIND.label(),
                n,
                terms: terms.iter().map(|t| t.to_string()).collect(),
                prefix_sums: sums.values.iter().map(|h| h.to_string()).collect(),
                notes: family.notes(),
            })
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "term", "prefix_sum"]).expect("in-memory write");
            for (i, (t, h)) in terms.iter().zip(&sums.values).enumerate() {
                w.write_record([(i + 1).to_string(), t.to_string(), h.to_string()])
                    .expect("in-memory write");
            }
            csv_text(w)
        }
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "{:>8}  {:>24}  H_n", "n", "a_n");
            for (i, (t, h)) in terms.iter().zip(&sums.values).enumerate() {
                let _ = writeln!(out, "{:>8}  {:>24}  {}", i + 1, t.to_string(), h);
            }
            out
        }
    };
    Ok(RunOutput::ok(text, 0))
}

fn cmd_normalize<S: Scalar>(source: &SourceArgs, format: Format) -> Result<RunOutput> {
    let loaded = require_single::<S>(source, "normalize")?;
    let text = match format {
        Format::Json => measure_io::to_json(&loaded.measure),
        Format::Csv => measure_io::to_csv(&loaded.measure),
        Format::Human => {
            let mut out = String::new();
            for a in loaded.measure.atoms() {
                let _ = writeln!(out, "{}  {}", a.value, a.mass);
            }
            out
        }
    };
    Ok(RunOutput::ok(text, 0))
}

fn to_json_line<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    text
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> RunOutput {
        run(std::iter::once("tailseries").chain(args.iter().copied()))
    }

    #[test]
    fn family_and_mode_resolution() {
        let out = call(&["sequence", "--family", "power", "--n", "3"]);
        assert_eq!(out.code, 2, "{out:?}");
        let out = call(&["sequence", "--family", "power", "--delta", "0.5", "--n", "3", "--mode", "exact"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("exact"), "{}", out.stderr);
        let out = call(&["sequence", "--family", "natural", "--delta", "0.5", "--n", "3"]);
        assert_eq!(out.code, 2);
        let out = call(&["sequence", "--family", "power", "--delta", "0.5", "--n", "2"]);
        assert_eq!(out.code, 0, "{out:?}");
        assert!(out.stdout.contains("\"float\""));
        let out = call(&["sequence", "--family", "bogus", "--n", "2"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn sequence_prints_prime_prefix_sums() {
        let out = call(&["sequence", "--family", "primes", "--n", "3", "--mode", "exact"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("\"1/2\"") && out.stdout.contains("\"5/6\"") && out.stdout.contains("\"31/30\""));
    }

    #[test]
    fn expand_bits() {
        let out = call(&["expand", "--family", "natural", "--mode", "exact", "--x", "3/4", "--n", "6"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("\"bits\": \"010100\""), "{}", out.stdout);
        assert!(out.stdout.contains("\"remainder\": \"0\""));
    }

    #[test]
    fn only_failing_checks_exit_nonzero() {
        assert_eq!(code_for(Outcome::Pass), 0);
        assert_eq!(code_for(Outcome::Inconclusive), 0);
        assert_eq!(code_for(Outcome::NotApplicable), 0);
        assert_eq!(code_for(Outcome::Fail), 1);
    }

    #[test]
    fn negative_tolerance_is_rejected() {
        let out = call(&["chung", "--dirac", "1", "--tolerance=-1"]);
        assert_eq!(out.code, 2);
        let out = call(&["report", "--mode", "float", "--dirac", "1", "--tolerance=-1e-9"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("tolerance"), "{}", out.stderr);
    }

    #[test]
    fn missing_source_is_usage_error() {
        let out = call(&["report"]);
        assert_eq!(out.code, 2);
        let out = call(&["report", "--dirac", "1", "--samples", "x"]);
        assert_eq!(out.code, 2);
    }
}
