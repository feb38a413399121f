//! Reading and writing measures.
//!
//! JSON: `{"atoms": [{"value": "3/2", "mass": "1/2"}, ...]}`; scalars are
//! `p/q` or decimal strings (bare JSON numbers are accepted too).
//! CSV: header `value,mass`, one atom per row. Samples: one value per line.
//! In all formats blank lines and lines starting with `#` are ignored where the
//! format allows it, and errors carry the offending line number.

use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use super::DiscreteMeasure;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureFormat {
    Json,
    Csv,
}

impl MeasureFormat {
    /// Guesses from the extension, then from the first non-blank character.
    pub fn detect(path: &Path, text: &str) -> MeasureFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => MeasureFormat::Json,
            Some(ext) if ext.eq_ignore_ascii_case("csv") => MeasureFormat::Csv,
            _ if text.trim_start().starts_with('{') => MeasureFormat::Json,
            _ => MeasureFormat::Csv,
        }
    }
}

/// Loads a measure file in either format.
pub fn load_measure<S: Scalar>(path: impl AsRef<Path>) -> Result<DiscreteMeasure<S>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let source = path.display().to_string();
    match MeasureFormat::detect(path, &text) {
        MeasureFormat::Json => parse_json(&text, &source),
        MeasureFormat::Csv => parse_csv(&text, &source),
    }
}

/// Loads a sample file into its empirical measure.
pub fn load_samples<S: Scalar>(path: impl AsRef<Path>) -> Result<DiscreteMeasure<S>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_samples(&text, &path.display().to_string())
}

struct Nonnegative<S>(S);
struct Positive<S>(S);

struct ScalarVisitor<S> {
    positive: bool,
    _marker: PhantomData<S>,
}

impl<S: Scalar> ScalarVisitor<S> {
    fn check<E: de::Error>(&self, text: &str) -> std::result::Result<S, E> {
        let v = S::parse_scalar(text)
            .ok_or_else(|| E::custom(format!("not a number: {text:?}")))?;
        if v.is_negative() {
            return Err(E::custom(format!("negative value: {text}")));
        }
        if self.positive && v.is_zero() {
            return Err(E::custom(format!("mass must be positive, got {text}")));
        }
        Ok(v)
    }
}

impl<'de, S: Scalar> Visitor<'de> for ScalarVisitor<S> {
    type Value = S;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or a string such as \"3/2\" or \"0.25\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<S, E> {
        self.check(v)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<S, E> {
        self.check(&v.to_string())
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<S, E> {
        self.check(&v.to_string())
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<S, E> {
        self.check(&v.to_string())
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Nonnegative<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor {
            positive: false,
            _marker: PhantomData,
        })
        .map(Nonnegative)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Positive<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor {
            positive: true,
            _marker: PhantomData,
        })
        .map(Positive)
    }
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar")]
struct AtomEntry<S> {
    value: Nonnegative<S>,
    mass: Positive<S>,
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar")]
struct MeasureEntry<S> {
    atoms: Vec<AtomEntry<S>>,
}

fn json_error(source: &str, err: serde_json::Error) -> Error {
    let text = err.to_string();
    let message = match text.rsplit_once(" at line ") {
        Some((head, _)) => head.to_string(),
        None => text,
    };
    Error::parse(source, err.line().max(1), message)
}

pub fn parse_json<S: Scalar>(text: &str, source: &str) -> Result<DiscreteMeasure<S>> {
    let entry: MeasureEntry<S> = serde_json::from_str(text).map_err(|e| json_error(source, e))?;
    if entry.atoms.is_empty() {
        return Err(Error::parse(source, 1, "\"atoms\" is empty"));
    }
    DiscreteMeasure::new(entry.atoms.into_iter().map(|a| (a.value.0, a.mass.0)))
        .map_err(|e| Error::parse(source, 1, e.to_string()))
}

pub fn parse_csv<S: Scalar>(text: &str, source: &str) -> Result<DiscreteMeasure<S>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let csv_error = |e: csv::Error| {
        let line = e.position().map(|p| p.line() as usize).unwrap_or(1);
        Error::parse(source, line, e.to_string())
    };
    let headers = reader.headers().map_err(csv_error)?.clone();
    let names: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    if names != ["value", "mass"] {
        return Err(Error::parse(
            source,
            1,
            format!("expected header \"value,mass\", found {:?}", headers.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut atoms = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |i: usize, what: &str, positive: bool| -> Result<S> {
            let text = &record[i];
            let v = S::parse_scalar(text)
                .ok_or_else(|| Error::parse(source, line, format!("{what} is not a number: {text:?}")))?;
            if v.is_negative() || (positive && v.is_zero()) {
                let need = if positive { "positive" } else { "nonnegative" };
                return Err(Error::parse(source, line, format!("{what} must be {need}, got {text}")));
            }
            Ok(v)
        };
        atoms.push((field(0, "value", false)?, field(1, "mass", true)?));
    }
    if atoms.is_empty() {
        return Err(Error::parse(source, 1, "no atoms found"));
    }
    DiscreteMeasure::new(atoms).map_err(|e| Error::parse(source, 1, e.to_string()))
}

pub fn parse_samples<S: Scalar>(text: &str, source: &str) -> Result<DiscreteMeasure<S>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = S::parse_scalar(line)
            .ok_or_else(|| Error::parse(source, i + 1, format!("not a number: {line:?}")))?;
        if v.is_negative() {
            return Err(Error::parse(source, i + 1, format!("sample must be nonnegative, got {line}")));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::parse(source, 1, "no samples found"));
    }
    DiscreteMeasure::from_samples(values)
}

#[derive(Serialize)]
struct AtomOut {
    value: String,
    mass: String,
}

#[derive(Serialize)]
struct MeasureOut {
    atoms: Vec<AtomOut>,
}

/// Canonical JSON: merged, sorted atoms with scalars as strings.
pub fn to_json<S: Scalar>(measure: &DiscreteMeasure<S>) -> String {
    let out = MeasureOut {
        atoms: measure
            .atoms()
            .iter()
            .map(|a| AtomOut {
                value: a.value.to_string(),
                mass: a.mass.to_string(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&out).expect("plain strings serialize");
    text.push('\n');
    text
}

pub fn to_csv<S: Scalar>(measure: &DiscreteMeasure<S>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["value", "mass"]).expect("in-memory write");
    for a in measure.atoms() {
        writer
            .write_record([a.value.to_string(), a.mass.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Exact;

    fn q(s: &str) -> Exact {
        s.parse().unwrap()
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"atoms": [{"value": "3", "mass": "1/2"}, {"value": 1, "mass": "0.5"}]}"#;
        let m: DiscreteMeasure<Exact> = parse_json(text, "m.json").unwrap();
        assert_eq!(m.expectation(), q("2"));
        let again: DiscreteMeasure<Exact> = parse_json(&to_json(&m), "again").unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn json_errors_carry_lines() {
        let text = "{\"atoms\": [\n  {\"value\": \"1\", \"mass\": \"1/2\"},\n  {\"value\": \"x\", \"mass\": \"1/2\"}\n]}";
        let err = parse_json::<Exact>(text, "m.json").unwrap_err().to_string();
        assert!(err.starts_with("m.json:3:"), "{err}");
        let text = "{\"atoms\": [\n  {\"value\": \"1\", \"mass\": \"0\"}\n]}";
        let err = parse_json::<Exact>(text, "m.json").unwrap_err().to_string();
        assert!(err.starts_with("m.json:2:") && err.contains("positive"), "{err}");
        let err = parse_json::<Exact>("{\"atoms\": [", "m.json").unwrap_err().to_string();
        assert!(err.starts_with("m.json:1:"), "{err}");
        assert!(parse_json::<Exact>("{\"atoms\": []}", "m").is_err());
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let text = "value,mass\n# comment\n1, 1/2\n3,0.5\n";
        let m: DiscreteMeasure<Exact> = parse_csv(text, "m.csv").unwrap();
        assert_eq!(m.expectation(), q("2"));
        assert_eq!(parse_csv::<Exact>(&to_csv(&m), "again").unwrap(), m);
        let err = parse_csv::<Exact>("value,mass\n1,1/2\n-3,1/2\n", "m.csv").unwrap_err().to_string();
        assert!(err.starts_with("m.csv:3:"), "{err}");
        let err = parse_csv::<Exact>("v,m\n1,1\n", "m.csv").unwrap_err().to_string();
        assert!(err.starts_with("m.csv:1:"), "{err}");
        let err = parse_csv::<Exact>("value,mass\n1,1,1\n", "m.csv").unwrap_err().to_string();
        assert!(err.starts_with("m.csv:2:"), "{err}");
    }

    #[test]
    fn samples_parse_with_line_numbers() {
        let m: DiscreteMeasure<Exact> = parse_samples("1\n\n1\n# c\n3\n", "s.txt").unwrap();
        assert_eq!(m.atoms()[0].mass, q("2/3"));
        let err = parse_samples::<f64>("1\n2\nabc\n", "s.txt").unwrap_err().to_string();
        assert!(err.starts_with("s.txt:3:"), "{err}");
        let err = parse_samples::<f64>("1\n-2\n", "s.txt").unwrap_err().to_string();
        assert!(err.starts_with("s.txt:2:"), "{err}");
    }

    #[test]
    fn float_json_round_trip_is_exact() {
        let m = DiscreteMeasure::new([(0.1f64, 0.3f64), (1.0 / 3.0, 0.7)]).unwrap();
        assert_eq!(parse_json::<f64>(&to_json(&m), "m").unwrap(), m);
    }
}
