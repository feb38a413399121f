//! Coefficient sequences `a = (a_n)` with vanishing reciprocals and divergent
//! reciprocal series, and their prefix sums `H_n(a) = sum_{j <= n} 1 / a_j`.
//!
//! Built-in families: `a_n = n`, `a_n = n^delta` for `0 < delta < 1`,
//! `a_n = (n + 1) ln(n + 1)` and `a_n = p_n` (the n-th prime). A user-supplied
//! finite list of positive rationals is also accepted; only its given prefix
//! is usable and results computed with it are marked prefix-only.

pub mod primes;
mod tables;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::natural::Natural;
use malachite_q::Rational;

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::scalar::{ModeKind, Scalar};
use tables::{FamilyCache, RecipSource};

/// Default search cap for prefix-index lookups in float mode.
pub const DEFAULT_CAP_FLOAT: u64 = 10_000_000;
/// Default search cap for prefix-index lookups in exact mode.
pub const DEFAULT_CAP_EXACT: u64 = 100_000;

/// Prefix sums up to this index are returned already evaluated in exact mode.
const EAGER_PREFIX: u64 = 64;

pub fn default_cap(mode: ModeKind) -> u64 {
    match mode {
        ModeKind::Float => DEFAULT_CAP_FLOAT,
        ModeKind::ExactRational => DEFAULT_CAP_EXACT,
    }
}

/// A finite list of positive rationals loaded from the user.
#[derive(Debug, PartialEq)]
pub struct UserSequence {
    terms: Vec<Rational>,
    recips: Vec<f64>,
    source: String,
    monotone: bool,
}

impl UserSequence {
    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    Natural,
    Power { delta: f64 },
    LogWeighted,
    Primes,
    UserSupplied(Arc<UserSequence>),
}

/// A coefficient sequence together with its shared prefix-sum caches.
#[derive(Clone)]
pub struct CoefficientFamily {
    kind: FamilyKind,
    cache: Arc<FamilyCache>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum CacheKey {
    Natural,
    Power(u64),
    LogWeighted,
    Primes,
}

fn shared_cache(key: CacheKey) -> Arc<FamilyCache> {
    static CACHES: OnceLock<Mutex<HashMap<CacheKey, Arc<FamilyCache>>>> = OnceLock::new();
    let mut map = CACHES
        .get_or_init(Default::default)
        .lock()
        .expect("family cache map poisoned");
    Arc::clone(map.entry(key).or_default())
}

fn nearest_f64(r: &Rational) -> f64 {
    f64::rounding_from(r, RoundingMode::Nearest).0
}

/// Result of a prefix-index lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexLookup {
    /// `max { n : H_n(a) <= x }`, with 0 when `H_1(a) > x`.
    Exact(u64),
    /// The search stopped at the cap; `H_cap(a) <= x`.
    CapHit(u64),
}

impl IndexLookup {
    pub fn index(self) -> u64 {
        match self {
            IndexLookup::Exact(n) | IndexLookup::CapHit(n) => n,
        }
    }

    pub fn is_cap_hit(self) -> bool {
        matches!(self, IndexLookup::CapHit(_))
    }
}

impl CoefficientFamily {
    fn builtin(kind: FamilyKind, key: CacheKey) -> Self {
        CoefficientFamily {
            kind,
            cache: shared_cache(key),
        }
    }

    pub fn natural() -> Self {
        Self::builtin(FamilyKind::Natural, CacheKey::Natural)
    }

    pub fn power(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(Self::builtin(
            FamilyKind::Power { delta },
            CacheKey::Power(delta.to_bits()),
        ))
    }

    /// `a_n = (n + 1) ln(n + 1)`, shifted by one so that every term is positive.
    pub fn log_weighted() -> Self {
        Self::builtin(FamilyKind::LogWeighted, CacheKey::LogWeighted)
    }

    pub fn primes() -> Self {
        Self::builtin(FamilyKind::Primes, CacheKey::Primes)
    }

    pub fn user_supplied(terms: Vec<Rational>, source: impl Into<String>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Invalid("user-supplied sequence is empty".into()));
        }
        if let Some(pos) = terms.iter().position(|t| *t <= 0u32) {
            return Err(Error::Invalid(format!(
                "user-supplied term {} is not positive: {}",
                pos + 1,
                terms[pos]
            )));
        }
        let recips = terms.iter().map(|t| nearest_f64(&(Rational::from(1u32) / t))).collect();
        let monotone = terms.windows(2).all(|w| w[0] <= w[1]);
        Ok(CoefficientFamily {
            kind: FamilyKind::UserSupplied(Arc::new(UserSequence {
                terms,
                recips,
                source: source.into(),
                monotone,
            })),
            cache: Arc::new(FamilyCache::default()),
        })
    }

    /// Loads one positive rational per line (`p/q` or decimal). Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse_sequence(&text, &path.display().to_string())
    }

    pub fn parse_sequence(text: &str, source: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value = Exact::parse_str(line)
                .ok_or_else(|| Error::parse(source, i + 1, format!("not a rational number: {line:?}")))?
                .into_rational();
            if value <= 0u32 {
                return Err(Error::parse(source, i + 1, format!("term must be positive: {line}")));
            }
            terms.push(value);
        }
        if terms.is_empty() {
            return Err(Error::parse(source, 0, "no terms found"));
        }
        Self::user_supplied(terms, format!("file:{source}"))
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    /// True iff every term is rational, so exact arithmetic is available.
    pub fn is_exact(&self) -> bool {
        matches!(
            self.kind,
            FamilyKind::Natural | FamilyKind::Primes | FamilyKind::UserSupplied(_)
        )
    }

    /// True for finite user sequences, whose series results cover only the
    /// provided prefix.
    pub fn is_prefix_only(&self) -> bool {
        matches!(self.kind, FamilyKind::UserSupplied(_))
    }

    /// Number of available terms, `None` for infinite families.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<u64> {
        match &self.kind {
            FamilyKind::UserSupplied(seq) => Some(seq.terms.len() as u64),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            FamilyKind::Natural => "natural".into(),
            FamilyKind::Power { delta } => format!("power({delta})"),
            FamilyKind::LogWeighted => "logweighted".into(),
            FamilyKind::Primes => "primes".into(),
            FamilyKind::UserSupplied(seq) => seq.source.clone(),
        }
    }

    /// Human-readable caveats attached to results computed with this family.
    pub fn notes(&self) -> Vec<String> {
        match &self.kind {
            FamilyKind::LogWeighted => vec![
                "log-weighted family uses a_n = (n+1)*ln(n+1) (shifted so that a_1 > 0; natural log)"
                    .into(),
            ],
            FamilyKind::UserSupplied(seq) => vec![format!(
                "prefix-only: user-supplied sequence of {} terms; divergence and vanishing reciprocals are taken on trust",
                seq.terms.len()
            )],
            _ => Vec::new(),
        }
    }

    pub fn mode_check(&self, mode: ModeKind) -> Result<()> {
        if mode == ModeKind::ExactRational && !self.is_exact() {
            return Err(Error::UnsupportedMode {
                family: self.label(),
            });
        }
        Ok(())
    }

    pub(crate) fn has_monotone_recips(&self) -> bool {
        match &self.kind {
            FamilyKind::UserSupplied(seq) => seq.monotone,
            _ => true,
        }
    }

    pub(crate) fn clamp_len(&self, limit: u64) -> u64 {
        match self.len() {
            Some(len) => limit.min(len),
            None => limit,
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroIndex(n));
        }
        if let Some(len) = self.len() {
            if n > len {
                return Err(Error::IndexOutOfRange { index: n, len });
            }
        }
        Ok(())
    }

    fn check_prefix_index(&self, n: u64) -> Result<()> {
        if let Some(len) = self.len() {
            if n > len {
                return Err(Error::IndexOutOfRange { index: n, len });
            }
        }
        Ok(())
    }

    fn unsupported(&self) -> Error {
        Error::UnsupportedMode {
            family: self.label(),
        }
    }

    pub(crate) fn term_f64(&self, n: u64) -> Result<f64> {
        self.check_index(n)?;
        Ok(match &self.kind {
            FamilyKind::Natural => n as f64,
            FamilyKind::Power { delta } => (n as f64).powf(*delta),
            FamilyKind::LogWeighted => {
                let m = (n + 1) as f64;
                m * m.ln()
            }
            FamilyKind::Primes => primes::nth(n)? as f64,
            FamilyKind::UserSupplied(seq) => nearest_f64(&seq.terms[(n - 1) as usize]),
        })
    }

    pub(crate) fn recip_f64(&self, n: u64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.recips_f64_range(n, n)?[0])
    }

    fn recips_f64_range(&self, from: u64, to: u64) -> Result<Vec<f64>> {
        if matches!(self.kind, FamilyKind::Primes) {
            primes::first(to)?;
        }
        Ok(RecipSource::recips_f64(self, from, to))
    }

    pub(crate) fn term_exact(&self, n: u64) -> Result<Rational> {
        self.check_index(n)?;
        match &self.kind {
            FamilyKind::Natural => Ok(Rational::from(n)),
            FamilyKind::Primes => Ok(Rational::from(primes::nth(n)?)),
            FamilyKind::UserSupplied(seq) => Ok(seq.terms[(n - 1) as usize].clone()),
            _ => Err(self.unsupported()),
        }
    }

    pub(crate) fn recip_exact(&self, n: u64) -> Result<Rational> {
        Ok(Rational::from(1u32) / self.term_exact(n)?)
    }

    pub(crate) fn recips_f64(&self, n: u64) -> Result<Arc<Vec<f64>>> {
        let n = self.clamp_len(n);
        if matches!(self.kind, FamilyKind::Primes) {
            primes::first(n.max(1))?;
        }
        Ok(self.cache.recips(self, n))
    }

    pub(crate) fn prefix_f64(&self, n: u64) -> Result<f64> {
        self.check_prefix_index(n)?;
        if n == 0 {
            return Ok(0.0);
        }
        self.prepare(n)?;
        Ok(self.cache.float_prefix(self, n))
    }

    /// Prime-family lookups need the primes sieved before the tables read them.
    fn prepare(&self, n: u64) -> Result<()> {
        if matches!(self.kind, FamilyKind::Primes) {
            primes::first(n.div_ceil(tables::FLOAT_BLOCK) * tables::FLOAT_BLOCK)?;
        }
        Ok(())
    }

    fn check_lookup_input(x: f64) -> Result<()> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!(
                "prefix-index lookup needs a nonnegative argument, got {x}"
            )));
        }
        Ok(())
    }

    pub(crate) fn largest_index_f64(&self, x: f64, cap: u64) -> Result<IndexLookup> {
        Self::check_lookup_input(x)?;
        let cap = self.clamp_len(cap.max(1));
        if matches!(self.kind, FamilyKind::Primes) {
            // Grow the prime table in step with the float table.
            let mut want = tables::FLOAT_BLOCK;
            loop {
                let want_c = want.min(cap);
                self.prepare(want_c)?;
                let probe = self.cache.float_largest_le(self, x, want_c);
                if probe < want_c || want_c == cap {
                    return Ok(Self::finish_lookup(probe, cap));
                }
                want = want.saturating_mul(4);
            }
        }
        let n = self.cache.float_largest_le(self, x, cap);
        Ok(Self::finish_lookup(n, cap))
    }

    fn finish_lookup(n: u64, cap: u64) -> IndexLookup {
        if n >= cap {
            IndexLookup::CapHit(cap)
        } else {
            IndexLookup::Exact(n)
        }
    }

    /// Exact `H_n` as an evaluated rational.
    pub(crate) fn exact_prefix_value(&self, n: u64) -> Result<Rational> {
        if !self.is_exact() {
            return Err(self.unsupported());
        }
        self.check_prefix_index(n)?;
        if matches!(self.kind, FamilyKind::Primes) {
            primes::first(n.max(1))?;
        }
        Ok(self.cache.exact_prefix(self, n))
    }

    /// Certified float enclosure of the true `H_n` from its float value.
    ///
    /// Each reciprocal is correctly rounded and compensated summation of `n`
    /// positive terms errs by at most `(2u + O(n u^2))` times the sum, so a few
    /// ulps of slack suffice.
    fn prefix_enclosure(n: u64, approx: f64) -> (f64, f64) {
        let eps = f64::EPSILON;
        let err = (4.0 + 64.0 * n as f64 * eps) * eps * approx;
        ((approx - err).next_down().max(0.0), (approx + err).next_up())
    }

    fn deferred_prefix(&self, n: u64, approx: f64) -> Exact {
        let (lo, hi) = Self::prefix_enclosure(n, approx);
        let family = self.clone();
        Exact::deferred(lo, hi, move || {
            family
                .exact_prefix_value(n)
                .expect("validated exact prefix index")
        })
    }

    /// Exact `H_n`; large indices are evaluated only if a comparison needs it.
    pub(crate) fn prefix_exact(&self, n: u64) -> Result<Exact> {
        if !self.is_exact() {
            return Err(self.unsupported());
        }
        self.check_prefix_index(n)?;
        if n <= EAGER_PREFIX {
            return Ok(Exact::from_rational(self.exact_prefix_value(n)?));
        }
        let approx = self.prefix_f64(n)?;
        Ok(self.deferred_prefix(n, approx))
    }

    /// Exact `H_1 .. H_k`.
    pub(crate) fn prefix_exact_range(&self, k: u64) -> Result<Vec<Exact>> {
        if !self.is_exact() {
            return Err(self.unsupported());
        }
        self.check_prefix_index(k)?;
        if matches!(self.kind, FamilyKind::Primes) {
            primes::first(k.max(1))?;
        }
        let approx = self.cache.float_prefix_range(self, k);
        let mut out = Vec::with_capacity(k as usize);
        let mut running = Rational::from(0u32);
        for (i, h) in approx.into_iter().enumerate() {
            let n = i as u64 + 1;
            if n <= EAGER_PREFIX {
                running += self.recip_exact(n)?;
                out.push(Exact::from_rational(running.clone()));
            } else {
                out.push(self.deferred_prefix(n, h));
            }
        }
        Ok(out)
    }

    /// Float `H_1 .. H_k` by one compensated pass.
    pub(crate) fn prefix_f64_table(&self, k: u64) -> Result<Vec<f64>> {
        self.check_prefix_index(k)?;
        self.prepare(k)?;
        Ok(self.cache.float_prefix_range(self, k))
    }

    /// Exact, reduced `H_1 .. H_k` by incremental addition.
    pub(crate) fn prefix_exact_table(&self, k: u64) -> Result<Vec<Rational>> {
        if !self.is_exact() {
            return Err(self.unsupported());
        }
        self.check_prefix_index(k)?;
        let mut running = Rational::from(0u32);
        (1..=k)
            .map(|n| {
                running += self.recip_exact(n)?;
                Ok(running.clone())
            })
            .collect()
    }

    pub(crate) fn largest_index_exact(&self, x: &Exact, cap: u64) -> Result<IndexLookup> {
        if !self.is_exact() {
            return Err(self.unsupported());
        }
        if x.is_negative() {
            return Err(Error::Domain(format!(
                "prefix-index lookup needs a nonnegative argument, got {x}"
            )));
        }
        let cap = self.clamp_len(cap.max(1));
        let (_, upper) = x.bounds();
        let upper = if upper.is_finite() { upper } else { f64::MAX };
        let mut n = self.largest_index_f64(upper, cap)?.index();
        while n > 0 && self.prefix_exact(n)? > *x {
            n -= 1;
        }
        while n < cap && self.prefix_exact(n + 1)? <= *x {
            n += 1;
        }
        Ok(Self::finish_lookup(n, cap))
    }

    /// `1 / a_n <= r`, decided exactly.
    pub(crate) fn recip_le_exact(&self, n: u64, r: &Exact) -> Result<bool> {
        let approx = self.recip_f64(n)?;
        let (r_lo, r_hi) = r.bounds();
        if approx.next_up() <= r_lo {
            return Ok(true);
        }
        if approx.next_down() > r_hi {
            return Ok(false);
        }
        Ok(self.recip_exact(n)? <= *r.value())
    }
}

impl RecipSource for CoefficientFamily {
    fn recips_f64(&self, from: u64, to: u64) -> Vec<f64> {
        if from > to {
            return Vec::new();
        }
        match &self.kind {
            FamilyKind::Natural => (from..=to).map(|n| 1.0 / n as f64).collect(),
            FamilyKind::Power { delta } => {
                (from..=to).map(|n| 1.0 / (n as f64).powf(*delta)).collect()
            }
            FamilyKind::LogWeighted => (from..=to)
                .map(|n| {
                    let m = (n + 1) as f64;
                    1.0 / (m * m.ln())
                })
                .collect(),
            FamilyKind::Primes => {
                let table = primes::first(to).expect("prime table sized by caller");
                table[(from - 1) as usize..to as usize]
                    .iter()
                    .map(|&p| 1.0 / p as f64)
                    .collect()
            }
            FamilyKind::UserSupplied(seq) => seq.recips[(from - 1) as usize..to as usize].to_vec(),
        }
    }

    fn recip_parts(&self, n: u64) -> (Natural, Natural) {
        match &self.kind {
            FamilyKind::Natural => (Natural::from(1u32), Natural::from(n)),
            FamilyKind::Primes => (
                Natural::from(1u32),
                Natural::from(primes::nth(n).expect("prime table sized by caller")),
            ),
            FamilyKind::UserSupplied(seq) => {
                let (num, den) = seq.terms[(n - 1) as usize].to_numerator_and_denominator();
                (den, num)
            }
            _ => unreachable!("exact prefix sums requested for a non-rational family"),
        }
    }

    fn available(&self) -> u64 {
        self.len().unwrap_or(u64::MAX)
    }
}

impl fmt::Debug for CoefficientFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientFamily")
            .field("kind", &self.label())
            .finish()
    }
}

impl PartialEq for CoefficientFamily {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

/// `H_1(a) .. H_{n_max}(a)` for one family in one arithmetic mode.
#[derive(Debug, Clone)]
pub struct PrefixSums<S> {
    pub family: CoefficientFamily,
    pub values: Vec<S>,
}

impl<S> PrefixSums<S> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The coefficient `a_n` of `family` (1-based).
pub fn term<S: Scalar>(family: &CoefficientFamily, n: u64) -> Result<S> {
    family.mode_check(S::KIND)?;
    S::coefficient(family, n)
}

/// `H_1(a) .. H_{n_max}(a)`; exact mode yields reduced rationals, float mode
/// uses compensated summation.
pub fn prefix_sums<S: Scalar>(family: &CoefficientFamily, n_max: u64) -> Result<PrefixSums<S>> {
    family.mode_check(S::KIND)?;
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    family.check_prefix_index(n_max)?;
    let values = S::prefix_sum_table(family, n_max)?;
    Ok(PrefixSums {
        family: family.clone(),
        values,
    })
}

/// `max { n <= cap : H_n(a) <= x }`, or [`IndexLookup::CapHit`] when `H_cap(a) <= x`.
/// The boundary is inclusive.
pub fn largest_index_with_h_le<S: Scalar>(
    x: &S,
    family: &CoefficientFamily,
    cap: u64,
) -> Result<IndexLookup> {
    family.mode_check(S::KIND)?;
    if x.is_negative() || !x.is_finite() {
        return Err(Error::Domain(format!(
            "prefix-index lookup needs a finite nonnegative argument, got {x}"
        )));
    }
    S::largest_prefix_index(family, x, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Exact {
        s.parse().unwrap()
    }

    #[test]
    fn term_examples() {
        assert_eq!(term::<Exact>(&CoefficientFamily::natural(), 4).unwrap(), q("4"));
        assert_eq!(term::<Exact>(&CoefficientFamily::primes(), 5).unwrap(), q("11"));
        let sqrt2 = term::<f64>(&CoefficientFamily::power(0.5).unwrap(), 2).unwrap();
        assert!((sqrt2 - std::f64::consts::SQRT_2).abs() < 1e-12);
        let lw = term::<f64>(&CoefficientFamily::log_weighted(), 1).unwrap();
        assert!((lw - 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn invalid_construction_and_indices() {
        assert!(matches!(CoefficientFamily::power(1.0), Err(Error::InvalidDelta(_))));
        assert!(matches!(CoefficientFamily::power(0.0), Err(Error::InvalidDelta(_))));
        assert!(CoefficientFamily::power(f64::NAN).is_err());
        let user = CoefficientFamily::parse_sequence("2\n3/2\n", "t").unwrap();
        assert!(matches!(
            term::<Exact>(&user, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        ));
        assert!(matches!(term::<f64>(&user, 0), Err(Error::ZeroIndex(0))));
        assert!(matches!(
            term::<Exact>(&CoefficientFamily::log_weighted(), 2),
            Err(Error::UnsupportedMode { .. })
        ));
    }

    #[test]
    fn user_sequence_parsing_reports_line_numbers() {
        let err = CoefficientFamily::parse_sequence("1\n# c\n\n0\n", "seq.txt").unwrap_err();
        assert!(err.to_string().starts_with("seq.txt:4:"), "{err}");
        let err = CoefficientFamily::parse_sequence("1\nxyz\n", "seq.txt").unwrap_err();
        assert!(err.to_string().starts_with("seq.txt:2:"), "{err}");
        let fam = CoefficientFamily::parse_sequence("0.5\n4/3\n", "s").unwrap();
        assert_eq!(term::<Exact>(&fam, 2).unwrap(), q("4/3"));
        assert!(fam.is_prefix_only());
    }

    #[test]
    fn prefix_sum_examples() {
        let natural = prefix_sums::<Exact>(&CoefficientFamily::natural(), 4).unwrap();
        let expect: Vec<Exact> = ["1", "3/2", "11/6", "25/12"].iter().map(|s| q(s)).collect();
        assert_eq!(natural.values, expect);
        let primes = prefix_sums::<Exact>(&CoefficientFamily::primes(), 3).unwrap();
        let expect: Vec<Exact> = ["1/2", "5/6", "31/30"].iter().map(|s| q(s)).collect();
        assert_eq!(primes.values, expect);
        assert_eq!(
            prefix_sums::<Exact>(&CoefficientFamily::natural(), 1).unwrap().values,
            vec![q("1")]
        );
        assert!(matches!(
            prefix_sums::<Exact>(&CoefficientFamily::power(0.5).unwrap(), 3),
            Err(Error::UnsupportedMode { .. })
        ));
    }

    #[test]
    fn lookup_examples() {
        let nat = CoefficientFamily::natural();
        let cap = 1_000_000;
        assert_eq!(
            largest_index_with_h_le(&q("3/2"), &nat, cap).unwrap(),
            IndexLookup::Exact(2)
        );
        assert_eq!(largest_index_with_h_le(&q("3"), &nat, cap).unwrap(), IndexLookup::Exact(10));
        assert_eq!(largest_index_with_h_le(&q("0.9"), &nat, cap).unwrap(), IndexLookup::Exact(0));
        assert_eq!(largest_index_with_h_le(&1.5f64, &nat, cap).unwrap(), IndexLookup::Exact(2));
        assert_eq!(largest_index_with_h_le(&3.0f64, &nat, cap).unwrap(), IndexLookup::Exact(10));
        assert_eq!(largest_index_with_h_le(&q("3"), &nat, 5).unwrap(), IndexLookup::CapHit(5));
        assert!(largest_index_with_h_le(&q("-1"), &nat, 5).is_err());
    }

    #[test]
    fn lookup_near_prefix_boundaries_is_exact() {
        let nat = CoefficientFamily::natural();
        // H_2000 plus or minus a hair far below float resolution
        let h = nat.exact_prefix_value(2000).unwrap();
        let hair = Rational::from_naturals(Natural::from(1u32), Natural::from(10u32).pow(40));
        let above = Exact::from_rational(&h + &hair);
        let below = Exact::from_rational(&h - &hair);
        assert_eq!(nat.largest_index_exact(&above, 100_000).unwrap(), IndexLookup::Exact(2000));
        assert_eq!(nat.largest_index_exact(&below, 100_000).unwrap(), IndexLookup::Exact(1999));
        assert_eq!(
            nat.largest_index_exact(&Exact::from_rational(h), 100_000).unwrap(),
            IndexLookup::Exact(2000)
        );
    }

    #[test]
    fn exact_checkpoints_agree_with_direct_sum() {
        let nat = CoefficientFamily::natural();
        let direct = (1..=2500u64).fold(Rational::from(0u32), |acc, n| {
            acc + Rational::from_naturals(Natural::from(1u32), Natural::from(n))
        });
        assert_eq!(nat.exact_prefix_value(2500).unwrap(), direct);
        let user = CoefficientFamily::parse_sequence("2\n1/3\n5\n", "u").unwrap();
        assert_eq!(user.exact_prefix_value(3).unwrap().to_string(), "37/10");
    }

    #[test]
    fn deferred_prefix_enclosures_contain_exact_values() {
        for family in [CoefficientFamily::natural(), CoefficientFamily::primes()] {
            for n in [65u64, 100, 1023, 1024, 1025, 3000, 7777] {
                let h = family.exact_prefix_value(n).unwrap();
                let (lo, hi) = family.prefix_exact(n).unwrap().bounds();
                assert!(Rational::try_from(lo).unwrap() <= h, "{family:?} H_{n} below enclosure");
                assert!(Rational::try_from(hi).unwrap() >= h, "{family:?} H_{n} above enclosure");
                assert!(hi - lo < 1e-13 * hi);
            }
        }
    }

    use malachite_base::num::arithmetic::traits::Pow;
}
