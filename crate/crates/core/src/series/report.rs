//! Assembled results and their JSON, CSV and plain-text renderings.

use std::fmt::Write as _;

use serde::Serialize;

use super::{overall, Outcome, Representation, SeriesKind, SeriesValue, Verdict};
use crate::coeffseq::CoefficientFamily;
use crate::measure::DiscreteMeasure;
use crate::scalar::{ModeKind, Scalar};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: &str = "1.0";

/// Every evaluated series for one measure and the verdicts decided from them.
#[derive(Debug, Clone)]
pub struct SeriesReport<S> {
    pub mode: ModeKind,
    /// Relative tolerance used in comparisons (0 in exact mode).
    pub tolerance: f64,
    pub family: String,
    pub notes: Vec<String>,
    pub prefix_only: bool,
    pub cap: u64,
    pub terms: u64,
    pub atoms: usize,
    pub total_mass: S,
    pub expectation: S,
    pub lower: SeriesValue<S>,
    pub upper: SeriesValue<S>,
    pub integer_tail: SeriesValue<S>,
    pub representation: Representation<S>,
    pub integer_supported: bool,
    /// Lower/upper bounds, the integer-tail comparisons and the representation.
    pub theorem: Vec<Verdict<S>>,
    /// `T <= E X <= M + T`.
    pub chung: Vec<Verdict<S>>,
    /// Integer-support identity, or a single not-applicable verdict.
    pub proposition: Vec<Verdict<S>>,
}

pub(crate) fn notes_for<S: Scalar>(family: &CoefficientFamily, measure: &DiscreteMeasure<S>) -> Vec<String> {
    let mut notes = family.notes();
    if S::KIND == ModeKind::Float {
        notes.push(
            "float mode: ties at prefix-sum boundaries follow float comparison; use exact mode for atoms sitting exactly on a boundary"
                .into(),
        );
    }
    if measure.atoms().first().is_some_and(|a| a.value.is_zero()) {
        notes.push("integer support counts 1, 2, 3, ...; mass at 0 is not integer-supported".into());
    }
    notes
}

impl<S: Scalar> SeriesReport<S> {
    pub fn all_verdicts(&self) -> impl Iterator<Item = &Verdict<S>> {
        self.theorem.iter().chain(&self.chung).chain(&self.proposition)
    }

    /// Fail if any check fails, else inconclusive if any is, else pass.
    pub fn overall(&self) -> Outcome {
        let all: Vec<Verdict<S>> = self.all_verdicts().cloned().collect();
        overall(&all)
    }

    pub fn mass_plus_integer_tail(&self) -> S {
        self.total_mass
            .add(self.integer_tail.as_finite().expect("integer tail is finite"))
    }

    pub fn to_json(&self) -> String {
        let doc = ReportDoc {
            schema_version: SCHEMA_VERSION,
            mode: self.mode.label(),
            tolerance: render_tolerance(self.tolerance),
            family: &self.family,
            prefix_only: self.prefix_only,
            cap: self.cap,
            terms: self.terms,
            notes: &self.notes,
            measure: MeasureDoc {
                atoms: self.atoms,
                total_mass: self.total_mass.to_string(),
                integer_supported: self.integer_supported,
            },
            expectation: self.expectation.to_string(),
            series: SeriesDoc {
                lower_series: ValueDoc::from(&self.lower),
                upper_series: ValueDoc::from(&self.upper),
                integer_tail: ValueDoc::from(&self.integer_tail),
                mass_plus_integer_tail: self.mass_plus_integer_tail().to_string(),
                representation_sum: RepresentationDoc {
                    value: ValueDoc::from(&self.representation.value),
                    max_certificate: self.representation.max_certificate.as_ref().map(|c| c.to_string()),
                    uncertified_atoms: self.representation.uncertified_atoms,
                },
            },
            verdicts: VerdictsDoc {
                theorem: self.theorem.iter().map(VerdictDoc::from).collect(),
                chung: self.chung.iter().map(VerdictDoc::from).collect(),
                proposition: self.proposition.iter().map(VerdictDoc::from).collect(),
            },
            overall: self.overall().label(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn csv_header() -> Vec<&'static str> {
        let mut header = vec![
            "source",
            "family",
            "mode",
            "atoms",
            "total_mass",
            "expectation",
            "lower_lo",
            "lower_hi",
            "upper",
            "integer_tail",
            "representation_lo",
            "representation_hi",
        ];
        header.extend(VERDICT_COLUMNS);
        header.push("overall");
        header
    }

    /// One summary row; series values are decimal approximations.
    pub fn csv_record(&self, source: &str) -> Vec<String> {
        let approx = |v: Option<S>| match v {
            Some(v) => v.approx_f64().to_string(),
            None => "inf".to_string(),
        };
        let mut row = vec![
            source.to_string(),
            self.family.clone(),
            self.mode.label().to_string(),
            self.atoms.to_string(),
            self.total_mass.approx_f64().to_string(),
            self.expectation.approx_f64().to_string(),
            approx(self.lower.lower_end()),
            approx(self.lower.upper_end()),
            approx(self.upper.upper_end()),
            approx(self.integer_tail.upper_end()),
            approx(self.representation.value.lower_end()),
            approx(self.representation.value.upper_end()),
        ];
        for id in VERDICT_COLUMNS {
            let outcome = self
                .all_verdicts()
                .find(|v| v.id == id)
                .map(|v| v.outcome)
                .unwrap_or(Outcome::NotApplicable);
            row.push(outcome.label().to_string());
        }
        row.push(self.overall().label().to_string());
        row
    }

    /// Plain-text summary with the inequality chains written out.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "family {}  mode {}  cap {}  terms {}", self.family, self.mode, self.cap, self.terms);
        let _ = writeln!(
            w,
            "measure: {} atoms, total mass M = {}, E[X] = {}",
            self.atoms,
            short(&self.total_mass),
            short(&self.expectation)
        );
        let _ = writeln!(w);
        let _ = writeln!(w, "L = sum 1/a_n P(X >= H_n)    = {}", describe(&self.lower));
        let _ = writeln!(w, "U = sum 1/a_n P(X >= 1/a_n)  = {}", describe(&self.upper));
        let _ = writeln!(w, "T = sum_(n>=1) P(X >= n)     = {}", describe(&self.integer_tail));
        let _ = writeln!(w, "R = sum 1/a_n P(A_n)         = {}", describe(&self.representation.value));
        let _ = writeln!(w);
        let find = |id: &str| self.all_verdicts().find(|v| v.id == id).expect("verdict present");
        let l = range(&self.lower);
        let u = range(&self.upper);
        let e = short(&self.expectation);
        let t = range(&self.integer_tail);
        let mt = short(&self.mass_plus_integer_tail());
        let r = range(&self.representation.value);
        let chains: [(String, Vec<&Verdict<S>>); 4] = [
            (
                format!("L <= E[X] <= U      {l} <= {e} <= {u}"),
                vec![find("lower_le_expectation"), find("expectation_le_upper")],
            ),
            (format!("L <= M + T          {l} <= {mt}"), vec![find("lower_le_mass_plus_integer_tail")]),
            (format!("U >= T              {u} >= {t}"), vec![find("upper_ge_integer_tail")]),
            (format!("E[X] in R           {e} in {r}"), vec![find("representation_contains_expectation")]),
        ];
        let _ = writeln!(w, "bounds:");
        for (text, verdicts) in &chains {
            let _ = writeln!(w, "  {text}   [{}]", outcome_list(verdicts));
        }
        let _ = writeln!(w, "integer tail sandwich:");
        let chung: Vec<&Verdict<S>> = self.chung.iter().collect();
        let _ = writeln!(w, "  T <= E[X] <= M + T  {t} <= {e} <= {mt}   [{}]", outcome_list(&chung));
        let _ = writeln!(w, "integer support:");
        if self.integer_supported {
            let prop: Vec<&Verdict<S>> = self.proposition.iter().collect();
            let _ = writeln!(w, "  E[X] = T >= L       {e} = {t} >= {l}   [{}]", outcome_list(&prop));
        } else {
            let _ = writeln!(w, "  not applicable: atoms are not all positive integers");
        }
        for note in &self.notes {
            let _ = writeln!(w, "note: {note}");
        }
        let _ = writeln!(w, "overall: {}", self.overall().label());
        out
    }
}

const VERDICT_COLUMNS: [&str; 9] = [
    "lower_le_expectation",
    "expectation_le_upper",
    "lower_le_mass_plus_integer_tail",
    "upper_ge_integer_tail",
    "representation_contains_expectation",
    "integer_tail_le_expectation",
    "expectation_le_mass_plus_integer_tail",
    "expectation_eq_integer_tail",
    "integer_tail_ge_lower",
];

fn render_tolerance(tol: f64) -> String {
    if tol == 0.0 {
        "0".into()
    } else {
        format!("{tol:e}")
    }
}

/// Exact text when short, otherwise an approximation with the digit count.
pub(crate) fn short<S: Scalar>(v: &S) -> String {
    let text = v.to_string();
    if text.len() <= 40 {
        text
    } else {
        format!("~{:e} ({} chars exact)", v.approx_f64(), text.len())
    }
}

fn range<S: Scalar>(v: &SeriesValue<S>) -> String {
    match &v.kind {
        SeriesKind::Finite(x) => short(x),
        SeriesKind::Interval { lo, hi } => match hi {
            Some(h) => format!("[{}, {}]", short(lo), short(h)),
            None => format!("[{}, +inf)", short(lo)),
        },
        SeriesKind::Divergent { .. } => "+inf".into(),
    }
}

fn describe<S: Scalar>(v: &SeriesValue<S>) -> String {
    let mut text = range(v);
    match &v.kind {
        SeriesKind::Divergent { partial } => {
            text.push_str(" (divergent");
            if let Some(p) = partial {
                let _ = write!(text, "; first {} terms sum to {}", v.terms_used, short(p));
            }
            text.push(')');
        }
        _ if v.exact => {
            let _ = write!(text, "  (complete, {} terms)", v.terms_used);
        }
        _ => {
            let _ = write!(text, "  (enclosure, {} terms)", v.terms_used);
        }
    }
    text
}

fn outcome_list<S>(verdicts: &[&Verdict<S>]) -> String {
    verdicts
        .iter()
        .map(|v| {
            let mut s = v.outcome.label().to_string();
            if v.tight {
                s.push_str(", tight");
            }
            if let Some(note) = &v.note {
                let _ = write!(s, "; {note}");
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema_version: &'static str,
    mode: &'static str,
    tolerance: String,
    family: &'a str,
    prefix_only: bool,
    cap: u64,
    terms: u64,
    notes: &'a [String],
    measure: MeasureDoc,
    expectation: String,
    series: SeriesDoc,
    verdicts: VerdictsDoc,
    overall: &'static str,
}

#[derive(Serialize)]
struct MeasureDoc {
    atoms: usize,
    total_mass: String,
    integer_supported: bool,
}

#[derive(Serialize)]
struct SeriesDoc {
    lower_series: ValueDoc,
    upper_series: ValueDoc,
    integer_tail: ValueDoc,
    mass_plus_integer_tail: String,
    representation_sum: RepresentationDoc,
}

#[derive(Serialize)]
struct RepresentationDoc {
    #[serde(flatten)]
    value: ValueDoc,
    max_certificate: Option<String>,
    uncertified_atoms: usize,
}

/// A series value. `hi: null` marks an open upper end.
#[derive(Serialize)]
pub(crate) struct ValueDoc {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hi: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial: Option<String>,
    terms_used: u64,
    exact: bool,
}

impl<S: Scalar> From<&SeriesValue<S>> for ValueDoc {
    fn from(v: &SeriesValue<S>) -> Self {
        let mut doc = ValueDoc {
            kind: "finite",
            value: None,
            lo: None,
            hi: None,
            partial: None,
            terms_used: v.terms_used,
            exact: v.exact,
        };
        match &v.kind {
            SeriesKind::Finite(x) => doc.value = Some(x.to_string()),
            SeriesKind::Interval { lo, hi } => {
                doc.kind = "interval";
                doc.lo = Some(lo.to_string());
                doc.hi = Some(hi.as_ref().map(|h| h.to_string()));
            }
            SeriesKind::Divergent { partial } => {
                doc.kind = "divergent";
                doc.partial = partial.as_ref().map(|p| p.to_string());
            }
        }
        doc
    }
}

#[derive(Serialize)]
struct VerdictsDoc {
    theorem: Vec<VerdictDoc>,
    chung: Vec<VerdictDoc>,
    proposition: Vec<VerdictDoc>,
}

#[derive(Serialize)]
pub(crate) struct VerdictDoc {
    id: &'static str,
    relation: String,
    outcome: &'static str,
    tight: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl<S> From<&Verdict<S>> for VerdictDoc {
    fn from(v: &Verdict<S>) -> Self {
        VerdictDoc {
            id: v.id,
            relation: format!("{} {} {}", v.lhs_name, v.relation.symbol(), v.rhs_name),
            outcome: v.outcome.label(),
            tight: v.tight,
            note: v.note.clone(),
        }
    }
}

/// JSON document for a standalone list of verdicts (integer-tail sandwich or
/// integer-support checks).
pub fn verdicts_to_json<S: Scalar>(
    kind: &str,
    mode: ModeKind,
    measure: &DiscreteMeasure<S>,
    verdicts: &[Verdict<S>],
    values: &[(&str, &SeriesValue<S>)],
) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        schema_version: &'static str,
        check: &'a str,
        mode: &'static str,
        measure: MeasureDoc,
        expectation: String,
        values: serde_json::Map<String, serde_json::Value>,
        verdicts: Vec<VerdictDoc>,
        overall: &'static str,
    }
    let mut map = serde_json::Map::new();
    for (name, v) in values {
        map.insert(
            name.to_string(),
            serde_json::to_value(ValueDoc::from(*v)).expect("value serializes"),
        );
    }
    let doc = Doc {
        schema_version: SCHEMA_VERSION,
        check: kind,
        mode: mode.label(),
        measure: MeasureDoc {
            atoms: measure.len(),
            total_mass: measure.total_mass().to_string(),
            integer_supported: measure.is_integer_supported(),
        },
        expectation: measure.expectation().to_string(),
        values: map,
        verdicts: verdicts.iter().map(VerdictDoc::from).collect(),
        overall: overall(verdicts).label(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("verdicts serialize");
    text.push('\n');
    text
}

/// Plain-text lines for a standalone list of verdicts.
pub fn verdicts_to_human<S: Scalar>(verdicts: &[Verdict<S>]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let _ = writeln!(
            out,
            "{} {} {}   {} {} {}   [{}]",
            v.lhs_name,
            v.relation.symbol(),
            v.rhs_name,
            range(&v.lhs),
            v.relation.symbol(),
            range(&v.rhs),
            outcome_list(&[v]),
        );
    }
    let _ = writeln!(out, "overall: {}", overall(verdicts).label());
    out
}
