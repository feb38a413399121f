//! Tail-probability series of a finite measure and the inequalities linking
//! them to its expectation.
//!
//! For a measure with total mass `M` and a coefficient family `a`:
//!
//! * lower series `L = sum_n P(X >= H_n) / a_n`
//! * upper series `U = sum_n P(X >= 1/a_n) / a_n`
//! * integer tail `T = sum_{n >= 1} P(X >= n)`
//! * representation `R = sum_n P(A_n) / a_n`, with `A_n` the greedy one-bit events
//!
//! satisfy `L <= E X <= U`, `L <= M + T`, `U >= T`, `E X = R`, and
//! `T <= E X <= M + T`; when all mass sits on positive integers also
//! `E X = T >= L`.

pub mod report;

use rayon::prelude::*;

use crate::coeffseq::{default_cap, largest_index_with_h_le, CoefficientFamily, IndexLookup};
use crate::error::Result;
use crate::expansion::{expand, Certificate, DEFAULT_TERMS};
use crate::measure::DiscreteMeasure;
use crate::scalar::{ModeKind, Scalar, DEFAULT_FLOAT_TOLERANCE};

pub use report::SeriesReport;

/// Value of a series: a number, an enclosing interval, or `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesKind<S> {
    Finite(S),
    /// `hi = None` means the upper end is not certified.
    Interval { lo: S, hi: Option<S> },
    /// Diverges to `+inf`; `partial` is a partial sum kept for inspection.
    Divergent { partial: Option<S> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue<S> {
    pub kind: SeriesKind<S>,
    /// Number of series terms that entered the evaluation.
    pub terms_used: u64,
    /// True when the value is complete rather than a truncation.
    pub exact: bool,
}

impl<S: Scalar> SeriesValue<S> {
    pub fn finite(value: S, terms_used: u64) -> Self {
        SeriesValue {
            kind: SeriesKind::Finite(value),
            terms_used,
            exact: true,
        }
    }

    /// Smallest value the series may take; `None` stands for `+inf`.
    pub fn lower_end(&self) -> Option<S> {
        match &self.kind {
            SeriesKind::Finite(v) => Some(v.clone()),
            SeriesKind::Interval { lo, .. } => Some(lo.clone()),
            SeriesKind::Divergent { .. } => None,
        }
    }

    /// Largest value the series may take; `None` stands for `+inf`.
    pub fn upper_end(&self) -> Option<S> {
        match &self.kind {
            SeriesKind::Finite(v) => Some(v.clone()),
            SeriesKind::Interval { hi, .. } => hi.clone(),
            SeriesKind::Divergent { .. } => None,
        }
    }

    pub fn as_finite(&self) -> Option<&S> {
        match &self.kind {
            SeriesKind::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self.kind, SeriesKind::Divergent { .. })
    }
}

/// Evaluation limits and the float comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Search cap for prefix-index lookups.
    pub cap: u64,
    /// Expansion length for the representation sum.
    pub terms: u64,
    /// Relative tolerance for float-mode verdicts; exact mode ignores it.
    pub tolerance: f64,
}

impl SeriesConfig {
    pub fn for_mode(mode: ModeKind) -> Self {
        SeriesConfig {
            cap: default_cap(mode),
            terms: DEFAULT_TERMS,
            tolerance: DEFAULT_FLOAT_TOLERANCE,
        }
    }

    fn tolerance_for<S: Scalar>(&self) -> f64 {
        match S::KIND {
            ModeKind::ExactRational => 0.0,
            ModeKind::Float => self.tolerance,
        }
    }
}

/// `sum_n P(X >= H_n) / a_n = sum_i m_i H_{N(v_i)}` with `N(v) = max { n : H_n <= v }`.
///
/// Atoms whose lookup hits `cap` contribute the interval `[H_cap, v]`.
pub fn lower_series<S: Scalar>(
    measure: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    cap: u64,
) -> Result<SeriesValue<S>> {
    family.mode_check(S::KIND)?;
    let parts = measure
        .atoms()
        .par_iter()
        .map(|atom| {
            let lookup = largest_index_with_h_le(&atom.value, family, cap)?;
            let h = S::prefix_sum(family, lookup.index())?;
            let hi = match lookup {
                IndexLookup::Exact(_) => None,
                IndexLookup::CapHit(_) => Some(atom.mass.mul(&atom.value)),
            };
            Ok((lookup, atom.mass.mul(&h), hi))
        })
        .collect::<Result<Vec<_>>>()?;
    let terms_used = parts.iter().map(|(l, _, _)| l.index()).max().unwrap_or(0);
    let capped = parts.iter().any(|(l, _, _)| l.is_cap_hit());
    let lo = S::sum_all(parts.iter().map(|(_, h, _)| h.clone()));
    if !capped {
        return Ok(SeriesValue::finite(lo, terms_used));
    }
    let hi = S::sum_all(
        parts
            .into_iter()
            .map(|(_, h, capped_hi)| capped_hi.unwrap_or(h)),
    );
    Ok(SeriesValue {
        kind: SeriesKind::Interval { lo, hi: Some(hi) },
        terms_used,
        exact: false,
    })
}

/// `sum_n P(X >= 1/a_n) / a_n`: divergent iff some mass sits above zero,
/// otherwise exactly zero. With `partial_terms`, a divergent result also
/// carries the partial sum over that many terms.
pub fn upper_series<S: Scalar>(
    measure: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    partial_terms: Option<u64>,
) -> Result<SeriesValue<S>> {
    family.mode_check(S::KIND)?;
    if !measure.has_positive_mass_off_zero() {
        return Ok(SeriesValue::finite(S::zero(), 0));
    }
    let (partial, terms_used) = match partial_terms {
        Some(k) => {
            let k = family.clamp_len(k);
            (Some(upper_partial_sum(measure, family, k)?), k)
        }
        None => (None, 0),
    };
    Ok(SeriesValue {
        kind: SeriesKind::Divergent { partial },
        terms_used,
        exact: true,
    })
}

/// `sum_{n <= k} P(X >= 1/a_n) / a_n`.
pub fn upper_partial_sum<S: Scalar>(
    measure: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    k: u64,
) -> Result<S> {
    let h_k = S::prefix_sum(family, k)?;
    let mut parts = Vec::with_capacity(measure.len());
    for atom in measure.atoms() {
        if atom.value.is_zero() {
            continue;
        }
        let covered = if family.has_monotone_recips() {
            // 1/a_n <= v holds on a final segment j..=k
            match S::first_recip_at_most(family, &atom.value, 1, k)? {
                Some(j) => h_k.sub(&S::prefix_sum(family, j - 1)?),
                None => S::zero(),
            }
        } else {
            let mut terms = Vec::new();
            for n in 1..=k {
                let t = S::coefficient_recip(family, n)?;
                if t <= atom.value {
                    terms.push(t);
                }
            }
            S::sum_all(terms)
        };
        parts.push(atom.mass.mul(&covered));
    }
    Ok(S::sum_all(parts))
}

/// `sum_{n >= 1} P(X >= n) = sum_i m_i floor(v_i)`.
pub fn integer_tail_series<S: Scalar>(measure: &DiscreteMeasure<S>) -> SeriesValue<S> {
    let value = S::sum_all(
        measure
            .atoms()
            .iter()
            .map(|a| a.mass.mul(&a.value.floor_value())),
    );
    let terms_used = measure.max_value().floor_u64().unwrap_or(u64::MAX);
    SeriesValue::finite(value, terms_used)
}

/// `sum_{n <= N} P(A_n) / a_n` together with the truncation bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<S> {
    /// `[partial, partial + M * max certificate]`, open above when some atom
    /// is not yet certified.
    pub value: SeriesValue<S>,
    /// Largest per-atom certificate, `None` if any atom is uncertified.
    pub max_certificate: Option<S>,
    pub uncertified_atoms: usize,
}

/// Builds the representation interval from per-atom greedy expansions.
///
/// The partial sum is evaluated as `sum_i m_i S_N(v_i)`, which equals
/// `sum_{n <= N} P(A_n) / a_n` after exchanging the order of summation.
pub fn representation_sum<S: Scalar>(
    measure: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    n: u64,
) -> Result<Representation<S>> {
    family.mode_check(S::KIND)?;
    let per_atom = measure
        .atoms()
        .par_iter()
        .map(|atom| {
            let e = expand(&atom.value, family, n)?;
            Ok((atom.mass.mul(&e.partial_sum()), e.certificate()?, e.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let terms_used = per_atom.iter().map(|(_, _, len)| *len).max().unwrap_or(0);
    let uncertified_atoms = per_atom
        .iter()
        .filter(|(_, c, _)| !c.is_certified())
        .count();
    let all_zero = per_atom
        .iter()
        .all(|(_, c, _)| matches!(c, Certificate::Zero));
    let max_certificate = if uncertified_atoms > 0 {
        None
    } else {
        per_atom
            .iter()
            .filter_map(|(_, c, _)| c.value())
            .reduce(S::max_of)
    };
    let lo = S::sum_all(per_atom.into_iter().map(|(s, _, _)| s));
    let hi = max_certificate
        .as_ref()
        .map(|c| lo.add(&measure.total_mass().mul(c)));
    Ok(Representation {
        value: SeriesValue {
            kind: SeriesKind::Interval { lo, hi },
            terms_used,
            exact: all_zero,
        },
        max_certificate,
        uncertified_atoms,
    })
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// An interval straddles the comparison point.
    Inconclusive,
    NotApplicable,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
            Outcome::NotApplicable => "not_applicable",
        }
    }

    fn and(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (NotApplicable, x) | (x, NotApplicable) => x,
            (Pass, Pass) => Pass,
        }
    }
}

/// Combined outcome: any failure fails, then any inconclusive, else pass.
pub fn overall<S>(verdicts: &[Verdict<S>]) -> Outcome {
    verdicts
        .iter()
        .map(|v| v.outcome)
        .fold(Outcome::NotApplicable, Outcome::and)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
    /// The right-hand value lies inside the left-hand interval.
    Contains,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Contains => "contains",
        }
    }
}

/// One checked relation `lhs REL rhs` with the values it was decided on.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<S> {
    pub id: &'static str,
    pub lhs_name: &'static str,
    pub rhs_name: &'static str,
    pub relation: Relation,
    pub lhs: SeriesValue<S>,
    pub rhs: SeriesValue<S>,
    pub outcome: Outcome,
    /// Both sides are finite and equal (within tolerance in float mode).
    pub tight: bool,
    pub note: Option<String>,
}

/// `a <= b` over every point of both ranges.
fn le_outcome<S: Scalar>(a: &SeriesValue<S>, b: &SeriesValue<S>, tol: f64) -> Outcome {
    let holds = match (a.upper_end(), b.lower_end()) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x.le_within(&y, tol),
    };
    if holds {
        return Outcome::Pass;
    }
    let fails = match (a.lower_end(), b.upper_end()) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(x), Some(y)) => !x.le_within(&y, tol),
    };
    if fails {
        Outcome::Fail
    } else {
        Outcome::Inconclusive
    }
}

fn is_tight<S: Scalar>(a: &SeriesValue<S>, b: &SeriesValue<S>, tol: f64) -> bool {
    match (a.as_finite(), b.as_finite()) {
        (Some(x), Some(y)) => x.eq_within(y, tol),
        _ => false,
    }
}

fn infinite_note<S: Scalar>(v: &SeriesValue<S>) -> Option<String> {
    v.is_divergent()
        .then(|| "holds trivially: the series diverges to +inf".to_string())
}

fn interval_note(outcome: Outcome) -> Option<String> {
    (outcome == Outcome::Inconclusive)
        .then(|| "an enclosing interval straddles the comparison point".to_string())
}

fn check<S: Scalar>(
    id: &'static str,
    (lhs_name, lhs): (&'static str, &SeriesValue<S>),
    relation: Relation,
    (rhs_name, rhs): (&'static str, &SeriesValue<S>),
    tol: f64,
) -> Verdict<S> {
    let (outcome, tight, note) = match relation {
        Relation::Le => {
            let o = le_outcome(lhs, rhs, tol);
            (o, is_tight(lhs, rhs, tol), infinite_note(rhs).or(interval_note(o)))
        }
        Relation::Ge => {
            let o = le_outcome(rhs, lhs, tol);
            (o, is_tight(lhs, rhs, tol), infinite_note(lhs).or(interval_note(o)))
        }
        Relation::Eq => {
            let o = match (lhs.as_finite(), rhs.as_finite()) {
                (Some(x), Some(y)) if x.eq_within(y, tol) => Outcome::Pass,
                (Some(_), Some(_)) => Outcome::Fail,
                _ => le_outcome(lhs, rhs, tol).and(le_outcome(rhs, lhs, tol)),
            };
            (o, o == Outcome::Pass, None)
        }
        Relation::Contains => {
            let (lo, hi) = match &lhs.kind {
                SeriesKind::Interval { lo, hi } => (lo.clone(), hi.clone()),
                _ => (
                    lhs.lower_end().expect("finite range"),
                    lhs.upper_end(),
                ),
            };
            let lower = SeriesValue::finite(lo, 0);
            let upper = match hi {
                Some(h) => SeriesValue::finite(h, 0),
                None => SeriesValue {
                    kind: SeriesKind::Divergent { partial: None },
                    terms_used: 0,
                    exact: false,
                },
            };
            let o = le_outcome(&lower, rhs, tol).and(le_outcome(rhs, &upper, tol));
            let note = upper
                .is_divergent()
                .then(|| "upper end not yet certified: some atom has no zero bit".to_string());
            (o, lhs.exact && is_tight(&lower, rhs, tol), note)
        }
    };
    Verdict {
        id,
        lhs_name,
        rhs_name,
        relation,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        outcome,
        tight,
        note,
    }
}

/// Names of the quantities appearing in verdicts.
pub mod names {
    pub const LOWER: &str = "lower_series";
    pub const UPPER: &str = "upper_series";
    pub const EXPECTATION: &str = "expectation";
    pub const INTEGER_TAIL: &str = "integer_tail";
    pub const MASS_PLUS_INTEGER_TAIL: &str = "mass_plus_integer_tail";
    pub const REPRESENTATION: &str = "representation_sum";
}

/// The five checks linking the series to the expectation.
pub fn theorem_verdicts<S: Scalar>(
    expectation: &SeriesValue<S>,
    lower: &SeriesValue<S>,
    upper: &SeriesValue<S>,
    integer_tail: &SeriesValue<S>,
    mass_plus_tail: &SeriesValue<S>,
    representation: &SeriesValue<S>,
    tol: f64,
) -> Vec<Verdict<S>> {
    use names::*;
    vec![
        check("lower_le_expectation", (LOWER, lower), Relation::Le, (EXPECTATION, expectation), tol),
        check("expectation_le_upper", (EXPECTATION, expectation), Relation::Le, (UPPER, upper), tol),
        check(
            "lower_le_mass_plus_integer_tail",
            (LOWER, lower),
            Relation::Le,
            (MASS_PLUS_INTEGER_TAIL, mass_plus_tail),
            tol,
        ),
        check("upper_ge_integer_tail", (UPPER, upper), Relation::Ge, (INTEGER_TAIL, integer_tail), tol),
        check(
            "representation_contains_expectation",
            (REPRESENTATION, representation),
            Relation::Contains,
            (EXPECTATION, expectation),
            tol,
        ),
    ]
}

fn mass_plus<S: Scalar>(mass: S, tail: &SeriesValue<S>) -> SeriesValue<S> {
    let t = tail.as_finite().expect("integer tail is finite");
    SeriesValue::finite(mass.add(t), tail.terms_used)
}

/// `T <= E X <= M + T`.
pub fn verify_chung<S: Scalar>(measure: &DiscreteMeasure<S>, tolerance: f64) -> Vec<Verdict<S>> {
    let tol = if S::KIND == ModeKind::Float { tolerance } else { 0.0 };
    let expectation = SeriesValue::finite(measure.expectation(), 0);
    let tail = integer_tail_series(measure);
    let mass_tail = mass_plus(measure.total_mass(), &tail);
    chung_verdicts(&expectation, &tail, &mass_tail, tol)
}

fn chung_verdicts<S: Scalar>(
    expectation: &SeriesValue<S>,
    tail: &SeriesValue<S>,
    mass_tail: &SeriesValue<S>,
    tol: f64,
) -> Vec<Verdict<S>> {
    use names::*;
    vec![
        check(
            "integer_tail_le_expectation",
            (INTEGER_TAIL, tail),
            Relation::Le,
            (EXPECTATION, expectation),
            tol,
        ),
        check(
            "expectation_le_mass_plus_integer_tail",
            (EXPECTATION, expectation),
            Relation::Le,
            (MASS_PLUS_INTEGER_TAIL, mass_tail),
            tol,
        ),
    ]
}

/// For measures on the positive integers: `E X = T` and `T >= L`.
/// Otherwise a single not-applicable verdict.
pub fn verify_proposition<S: Scalar>(
    measure: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    cap: u64,
    tolerance: f64,
) -> Result<Vec<Verdict<S>>> {
    family.mode_check(S::KIND)?;
    let tol = if S::KIND == ModeKind::Float { tolerance } else { 0.0 };
    let expectation = SeriesValue::finite(measure.expectation(), 0);
    let tail = integer_tail_series(measure);
    if !measure.is_integer_supported() {
        return Ok(vec![not_applicable(&expectation, &tail)]);
    }
    let lower = lower_series(measure, family, cap)?;
    Ok(proposition_verdicts(&expectation, &tail, &lower, tol))
}

fn not_applicable<S: Scalar>(expectation: &SeriesValue<S>, tail: &SeriesValue<S>) -> Verdict<S> {
    Verdict {
        id: "integer_support",
        lhs_name: names::EXPECTATION,
        rhs_name: names::INTEGER_TAIL,
        relation: Relation::Eq,
        lhs: expectation.clone(),
        rhs: tail.clone(),
        outcome: Outcome::NotApplicable,
        tight: false,
        note: Some("not all mass sits on the positive integers 1, 2, 3, ... (0 is excluded)".into()),
    }
}

fn proposition_verdicts<S: Scalar>(
    expectation: &SeriesValue<S>,
    tail: &SeriesValue<S>,
    lower: &SeriesValue<S>,
    tol: f64,
) -> Vec<Verdict<S>> {
    use names::*;
    vec![
        check(
            "expectation_eq_integer_tail",
            (EXPECTATION, expectation),
            Relation::Eq,
            (INTEGER_TAIL, tail),
            tol,
        ),
        check("integer_tail_ge_lower", (INTEGER_TAIL, tail), Relation::Ge, (LOWER, lower), tol),
    ]
}

/// Evaluates every series and all checks for one measure.
pub fn verify_theorem1<S: Scalar>(
    measure: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    config: &SeriesConfig,
) -> Result<SeriesReport<S>> {
    family.mode_check(S::KIND)?;
    let tol = config.tolerance_for::<S>();
    let expectation = SeriesValue::finite(measure.expectation(), 0);
    let lower = lower_series(measure, family, config.cap)?;
    let upper = upper_series(measure, family, None)?;
    let integer_tail = integer_tail_series(measure);
    let mass_tail = mass_plus(measure.total_mass(), &integer_tail);
    let representation = representation_sum(measure, family, config.terms)?;
    let theorem = theorem_verdicts(
        &expectation,
        &lower,
        &upper,
        &integer_tail,
        &mass_tail,
        &representation.value,
        tol,
    );
    let chung = chung_verdicts(&expectation, &integer_tail, &mass_tail, tol);
    let integer_supported = measure.is_integer_supported();
    let proposition = if integer_supported {
        proposition_verdicts(&expectation, &integer_tail, &lower, tol)
    } else {
        vec![not_applicable(&expectation, &integer_tail)]
    };
    Ok(SeriesReport {
        mode: S::KIND,
        tolerance: tol,
        family: family.label(),
        notes: report::notes_for(family, measure),
        prefix_only: family.is_prefix_only(),
        cap: config.cap,
        terms: config.terms,
        atoms: measure.len(),
        total_mass: measure.total_mass(),
        expectation: expectation.as_finite().cloned().expect("finite"),
        lower,
        upper,
        integer_tail,
        representation,
        integer_supported,
        theorem,
        chung,
        proposition,
    })
}
