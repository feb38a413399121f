//! Exact rationals with a certified floating-point enclosure.
//!
//! An [`Exact`] always denotes one rational number. Small values are stored
//! eagerly; results that would involve large numerators or denominators are
//! kept as a deferred computation together with an `f64` interval that is
//! guaranteed to contain the true value. Comparisons consult the intervals first
//! and only evaluate the rational when the intervals overlap, so decisions are
//! always exact while most of them cost a couple of float comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use malachite_base::num::arithmetic::traits::{Floor, Pow};
use malachite_base::num::conversion::traits::{IsInteger, RoundingFrom};
use malachite_base::num::logic::traits::SignificantBits;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use malachite_q::Rational;

use crate::coeffseq::{CoefficientFamily, IndexLookup};
use crate::error::Result;
use crate::scalar::{ModeKind, Scalar};

/// Operands whose combined size stays below this many bits are combined eagerly.
const EAGER_BITS: u64 = 4096;

type Thunk = Box<dyn Fn() -> Rational + Send + Sync>;

struct Known {
    value: Rational,
    lo: f64,
    hi: f64,
}

struct Deferred {
    lo: f64,
    hi: f64,
    thunk: Thunk,
    cell: OnceLock<Rational>,
}

#[derive(Clone)]
enum Node {
    Known(Arc<Known>),
    Deferred(Arc<Deferred>),
}

/// An exact rational number, possibly evaluated on demand.
#[derive(Clone)]
pub struct Exact(Node);

fn floor_f64(r: &Rational) -> f64 {
    f64::rounding_from(r, RoundingMode::Floor).0
}

fn ceil_f64(r: &Rational) -> f64 {
    f64::rounding_from(r, RoundingMode::Ceiling).0
}

fn outward((lo, hi): (f64, f64)) -> (f64, f64) {
    if lo.is_nan() || hi.is_nan() {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        (lo.next_down(), hi.next_up())
    }
}

fn span(candidates: [f64; 4]) -> (f64, f64) {
    if candidates.iter().any(|c| c.is_nan()) {
        return (f64::NAN, f64::NAN);
    }
    let lo = candidates.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = candidates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// A certified `[lo, hi]` enclosure.
type Bounds = (f64, f64);

impl Exact {
    pub fn from_rational(value: Rational) -> Self {
        let lo = floor_f64(&value);
        let hi = ceil_f64(&value);
        Exact(Node::Known(Arc::new(Known { value, lo, hi })))
    }

    pub fn from_integer(n: u64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_rational(Rational::from_naturals(Natural::from(num), Natural::from(den)))
    }

    /// The exact value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        Rational::try_from(x).ok().map(Self::from_rational)
    }

    /// A value known only through `thunk`, certified to lie in `[lo, hi]`.
    pub(crate) fn deferred<F>(lo: f64, hi: f64, thunk: F) -> Self
    where
        F: Fn() -> Rational + Send + Sync + 'static,
    {
        debug_assert!(lo.partial_cmp(&hi) != Some(Ordering::Greater), "inverted enclosure [{lo}, {hi}]");
        Exact(Node::Deferred(Arc::new(Deferred {
            lo,
            hi,
            thunk: Box::new(thunk),
            cell: OnceLock::new(),
        })))
    }

    /// Parses `p/q`, an integer, or a decimal with optional exponent.
    pub fn parse_str(text: &str) -> Option<Self> {
        parse_rational(text.trim()).map(Self::from_rational)
    }

    /// The rational value, evaluating it if necessary.
    pub fn value(&self) -> &Rational {
        match &self.0 {
            Node::Known(k) => &k.value,
            Node::Deferred(d) => d.cell.get_or_init(|| (d.thunk)()),
        }
    }

    pub fn into_rational(self) -> Rational {
        self.value().clone()
    }

    /// Certified enclosure `lo <= value <= hi`.
    pub fn bounds(&self) -> (f64, f64) {
        match &self.0 {
            Node::Known(k) => (k.lo, k.hi),
            Node::Deferred(d) => match d.cell.get() {
                Some(v) => (floor_f64(v), ceil_f64(v)),
                None => (d.lo, d.hi),
            },
        }
    }

    /// Whether the value is already available without further work.
    pub fn is_evaluated(&self) -> bool {
        match &self.0 {
            Node::Known(_) => true,
            Node::Deferred(d) => d.cell.get().is_some(),
        }
    }

    /// Midpoint of the enclosure; never forces evaluation.
    pub fn approx_f64(&self) -> f64 {
        let (lo, hi) = self.bounds();
        if lo == hi {
            lo
        } else {
            lo / 2.0 + hi / 2.0
        }
    }

    fn small_known(&self) -> Option<&Rational> {
        match &self.0 {
            Node::Known(k) if k.value.significant_bits() <= EAGER_BITS => Some(&k.value),
            _ => None,
        }
    }

    fn combine(
        &self,
        other: &Exact,
        exact: fn(&Rational, &Rational) -> Rational,
        enclose: fn(Bounds, Bounds) -> Bounds,
    ) -> Exact {
        if let (Some(a), Some(b)) = (self.small_known(), other.small_known()) {
            return Exact::from_rational(exact(a, b));
        }
        let (lo, hi) = outward(enclose(self.bounds(), other.bounds()));
        let (a, b) = (self.clone(), other.clone());
        Exact::deferred(lo, hi, move || exact(a.value(), b.value()))
    }

    pub fn add(&self, other: &Exact) -> Exact {
        self.combine(other, |a, b| a + b, |a, b| (a.0 + b.0, a.1 + b.1))
    }

    pub fn sub(&self, other: &Exact) -> Exact {
        self.combine(other, |a, b| a - b, |a, b| (a.0 - b.1, a.1 - b.0))
    }

    pub fn mul(&self, other: &Exact) -> Exact {
        self.combine(
            other,
            |a, b| a * b,
            |a, b| span([a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1]),
        )
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Exact) -> Exact {
        self.combine(
            other,
            |a, b| a / b,
            |a, b| {
                if b.0 > 0.0 || b.1 < 0.0 {
                    span([a.0 / b.0, a.0 / b.1, a.1 / b.0, a.1 / b.1])
                } else {
                    (f64::NEG_INFINITY, f64::INFINITY)
                }
            },
        )
    }

    /// Balanced pairwise sum, keeping deferred evaluation trees shallow.
    pub fn sum_balanced(mut items: Vec<Exact>) -> Exact {
        if items.is_empty() {
            return Exact::from_integer(0);
        }
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len().div_ceil(2));
            let mut it = items.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            items = next;
        }
        items.pop().expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        let (lo, hi) = self.bounds();
        if lo > 0.0 || hi < 0.0 {
            return false;
        }
        *self.value() == 0u32
    }

    pub fn is_negative(&self) -> bool {
        let (lo, hi) = self.bounds();
        if hi < 0.0 {
            return true;
        }
        if lo >= 0.0 {
            return false;
        }
        *self.value() < 0u32
    }

    /// Nearest `f64`, evaluating the value if needed.
    pub fn to_f64(&self) -> f64 {
        f64::rounding_from(self.value(), RoundingMode::Nearest).0
    }
}

fn parse_rational(text: &str) -> Option<Rational> {
    if text.is_empty() {
        return None;
    }
    if text.contains('/') {
        return Rational::from_str(text).ok();
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i64>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numerator = Natural::from_str(&all_digits).ok()?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return None;
    }
    let ten = Rational::from(10u32);
    let factor = if scale >= 0 {
        (&ten).pow(scale as u64)
    } else {
        Rational::from(1u32) / (&ten).pow((-scale) as u64)
    };
    let magnitude = Rational::from(numerator) * factor;
    Some(if negative { -magnitude } else { magnitude })
}

impl From<Rational> for Exact {
    fn from(value: Rational) -> Self {
        Exact::from_rational(value)
    }
}

impl From<u64> for Exact {
    fn from(n: u64) -> Self {
        Exact::from_integer(n)
    }
}

impl FromStr for Exact {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Exact::parse_str(s).ok_or_else(|| format!("not a rational number: {s:?}"))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a_lo, a_hi) = self.bounds();
        let (b_lo, b_hi) = other.bounds();
        if a_hi < b_lo {
            Ordering::Less
        } else if a_lo > b_hi {
            Ordering::Greater
        } else {
            self.value().cmp(other.value())
        }
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Exact {}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.value(), f)
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_evaluated() {
            write!(f, "Exact({})", self.value())
        } else {
            let (lo, hi) = self.bounds();
            write!(f, "Exact(deferred in [{lo:e}, {hi:e}])")
        }
    }
}

impl Scalar for Exact {
    const KIND: ModeKind = ModeKind::ExactRational;

    fn zero() -> Self {
        Exact::from_integer(0)
    }

    fn one() -> Self {
        Exact::from_integer(1)
    }

    fn from_u64(n: u64) -> Self {
        Exact::from_integer(n)
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        Exact::from_ratio(num, den)
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        Exact::parse_str(text)
    }

    fn add(&self, other: &Self) -> Self {
        Exact::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Exact::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Exact::mul(self, other)
    }

    fn div(&self, other: &Self) -> Self {
        Exact::div(self, other)
    }

    fn is_zero(&self) -> bool {
        Exact::is_zero(self)
    }

    fn is_negative(&self) -> bool {
        Exact::is_negative(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_integer(&self) -> bool {
        self.value().is_integer()
    }

    fn floor_u64(&self) -> Option<u64> {
        let floor: Integer = self.value().floor();
        u64::try_from(&floor).ok()
    }

    fn floor_value(&self) -> Self {
        let floor: Integer = self.value().floor();
        Exact::from_rational(Rational::from(floor))
    }

    fn to_f64(&self) -> f64 {
        Exact::to_f64(self)
    }

    fn approx_f64(&self) -> f64 {
        Exact::approx_f64(self)
    }

    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        Exact::sum_balanced(items.into_iter().collect())
    }

    fn le_within(&self, other: &Self, _tolerance: f64) -> bool {
        self <= other
    }

    fn eq_within(&self, other: &Self, _tolerance: f64) -> bool {
        self == other
    }

    fn coefficient(family: &CoefficientFamily, n: u64) -> Result<Self> {
        family.term_exact(n).map(Exact::from_rational)
    }

    fn coefficient_recip(family: &CoefficientFamily, n: u64) -> Result<Self> {
        family.recip_exact(n).map(Exact::from_rational)
    }

    fn prefix_sum(family: &CoefficientFamily, n: u64) -> Result<Self> {
        family.prefix_exact(n)
    }

    fn prefix_sum_table(family: &CoefficientFamily, k: u64) -> Result<Vec<Self>> {
        Ok(family
            .prefix_exact_table(k)?
            .into_iter()
            .map(Exact::from_rational)
            .collect())
    }

    fn largest_prefix_index(
        family: &CoefficientFamily,
        x: &Self,
        cap: u64,
    ) -> Result<IndexLookup> {
        family.largest_index_exact(x, cap)
    }

    fn leading_ones(family: &CoefficientFamily, x: &Self, limit: u64) -> Result<(u64, Self)> {
        // While every earlier bit is one the partial sum is H_{n-1}, so bit n is
        // one exactly when H_n <= x.
        let limit = family.clamp_len(limit);
        if limit == 0 {
            return Ok((0, x.clone()));
        }
        let run = match family.largest_index_exact(x, limit)? {
            IndexLookup::Exact(n) => n,
            IndexLookup::CapHit(n) => n,
        };
        let remainder = x.sub(&family.prefix_exact(run)?);
        Ok((run, remainder))
    }

    fn run_remainders(family: &CoefficientFamily, x: &Self, k: u64) -> Result<Vec<Self>> {
        family
            .prefix_exact_range(k)?
            .into_iter()
            .map(|h| Ok(x.sub(&h)))
            .collect()
    }

    fn first_recip_at_most(
        family: &CoefficientFamily,
        r: &Self,
        from: u64,
        to: u64,
    ) -> Result<Option<u64>> {
        if from > to {
            return Ok(None);
        }
        let recip_le = |n: u64| -> Result<bool> { family.recip_le_exact(n, r) };
        if family.has_monotone_recips() {
            if !recip_le(to)? {
                return Ok(None);
            }
            let (mut lo, mut hi) = (from, to);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if recip_le(mid)? {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Ok(Some(lo))
        } else {
            for n in from..=to {
                if recip_le(n)? {
                    return Ok(Some(n));
                }
            }
            Ok(None)
        }
    }
}
