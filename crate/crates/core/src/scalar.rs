//! Scalar arithmetic contract shared by the exact and floating-point modes.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two implementations
//! exist: [`Exact`](crate::Exact), an error-free rational, and `f64`, whose sums
//! go through [`CompensatedSum`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffseq::{CoefficientFamily, IndexLookup};
use crate::error::Result;

/// Which arithmetic a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    ExactRational,
    Float,
}

impl ModeKind {
    pub fn label(self) -> &'static str {
        match self {
            ModeKind::ExactRational => "exact",
            ModeKind::Float => "float",
        }
    }
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

/// Arithmetic mode plus the relative tolerance used by float-mode verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarMode {
    pub kind: ModeKind,
    /// Only consulted when `kind` is `Float`.
    pub float_tolerance: f64,
}

impl ScalarMode {
    pub fn exact() -> Self {
        ScalarMode {
            kind: ModeKind::ExactRational,
            float_tolerance: DEFAULT_FLOAT_TOLERANCE,
        }
    }

    pub fn float() -> Self {
        ScalarMode {
            kind: ModeKind::Float,
            float_tolerance: DEFAULT_FLOAT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.float_tolerance = tolerance;
        self
    }

    /// Tolerance applied in comparisons: zero in exact mode.
    pub fn tolerance(&self) -> f64 {
        match self.kind {
            ModeKind::ExactRational => 0.0,
            ModeKind::Float => self.float_tolerance,
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// Number type the library computes with.
///
/// Beyond field arithmetic the trait carries the family-dependent kernels whose
/// efficient implementation differs between exact and float arithmetic
/// (prefix-sum lookups and the greedy run/jump primitives).
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Send + Sync + 'static
{
    const KIND: ModeKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(n: u64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: u64, den: u64) -> Self;
    /// Parses `p/q`, an integer, or a decimal such as `0.75` or `2.5e-3`.
    fn parse_scalar(text: &str) -> Option<Self>;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_finite(&self) -> bool;
    /// Exact integrality; no tolerance in either mode.
    fn is_integer(&self) -> bool;
    /// Floor of a nonnegative value, `None` when it does not fit in `u64`.
    fn floor_u64(&self) -> Option<u64>;
    /// Largest integer not above the value.
    fn floor_value(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Cheap approximation for display; never forces an exact evaluation.
    fn approx_f64(&self) -> f64;

    /// Sum in the mode's preferred way (compensated for floats).
    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self;

    /// `self <= other`, exactly or up to a relative tolerance in float mode.
    fn le_within(&self, other: &Self, tolerance: f64) -> bool;
    /// `self == other`, exactly or up to a relative tolerance in float mode.
    fn eq_within(&self, other: &Self, tolerance: f64) -> bool;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    /// The n-th coefficient `a_n` (1-based).
    fn coefficient(family: &CoefficientFamily, n: u64) -> Result<Self>;
    /// The reciprocal `1 / a_n` (1-based).
    fn coefficient_recip(family: &CoefficientFamily, n: u64) -> Result<Self>;
    /// `H_n(a)`, with `H_0 = 0`.
    fn prefix_sum(family: &CoefficientFamily, n: u64) -> Result<Self>;
    /// `H_1(a) .. H_k(a)`.
    fn prefix_sum_table(family: &CoefficientFamily, k: u64) -> Result<Vec<Self>>;
    /// `max { n <= cap : H_n(a) <= x }`, or a cap hit when `H_cap(a) <= x`.
    fn largest_prefix_index(family: &CoefficientFamily, x: &Self, cap: u64)
        -> Result<IndexLookup>;

    /// Length `k <= limit` of the initial run of one-bits of the greedy expansion
    /// of `x`, together with the remainder after that run.
    #[doc(hidden)]
    fn leading_ones(family: &CoefficientFamily, x: &Self, limit: u64) -> Result<(u64, Self)>;
    /// Remainders `r_1 .. r_k` along an initial run of one-bits of length `k`.
    #[doc(hidden)]
    fn run_remainders(family: &CoefficientFamily, x: &Self, k: u64) -> Result<Vec<Self>>;
    /// Smallest `n` in `from..=to` with `1 / a_n <= r`.
    #[doc(hidden)]
    fn first_recip_at_most(
        family: &CoefficientFamily,
        r: &Self,
        from: u64,
        to: u64,
    ) -> Result<Option<u64>>;
}

fn relative_slack(a: f64, b: f64, tolerance: f64) -> f64 {
    tolerance * a.abs().max(b.abs())
}

impl Scalar for f64 {
    const KIND: ModeKind = ModeKind::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.contains('/') {
            return crate::exact::Exact::parse_str(text).map(|e| e.to_f64());
        }
        text.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn is_integer(&self) -> bool {
        f64::is_finite(*self) && self.fract() == 0.0
    }

    fn floor_u64(&self) -> Option<u64> {
        let f = self.floor();
        if f.is_finite() && f >= 0.0 && f < u64::MAX as f64 {
            Some(f as u64)
        } else {
            None
        }
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_f64(&self) -> f64 {
        *self
    }

    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        CompensatedSum::sum_iter(items)
    }

    fn le_within(&self, other: &Self, tolerance: f64) -> bool {
        *self <= *other || self - other <= relative_slack(*self, *other, tolerance)
    }

    fn eq_within(&self, other: &Self, tolerance: f64) -> bool {
        *self == *other || (self - other).abs() <= relative_slack(*self, *other, tolerance)
    }

    fn coefficient(family: &CoefficientFamily, n: u64) -> Result<Self> {
        family.term_f64(n)
    }

    fn coefficient_recip(family: &CoefficientFamily, n: u64) -> Result<Self> {
        family.recip_f64(n)
    }

    fn prefix_sum(family: &CoefficientFamily, n: u64) -> Result<Self> {
        family.prefix_f64(n)
    }

    fn prefix_sum_table(family: &CoefficientFamily, k: u64) -> Result<Vec<Self>> {
        family.prefix_f64_table(k)
    }

    fn largest_prefix_index(
        family: &CoefficientFamily,
        x: &Self,
        cap: u64,
    ) -> Result<IndexLookup> {
        family.largest_index_f64(*x, cap)
    }

    fn leading_ones(family: &CoefficientFamily, x: &Self, limit: u64) -> Result<(u64, Self)> {
        let limit = family.clamp_len(limit);
        let recips = family.recips_f64(limit)?;
        let mut r = *x;
        for (i, t) in recips[..limit as usize].iter().enumerate() {
            if r >= *t {
                r -= *t;
            } else {
                return Ok((i as u64, r));
            }
        }
        Ok((limit, r))
    }

    fn run_remainders(family: &CoefficientFamily, x: &Self, k: u64) -> Result<Vec<Self>> {
        let recips = family.recips_f64(k)?;
        let mut r = *x;
        Ok(recips[..k as usize]
            .iter()
            .map(|t| {
                r -= *t;
                r
            })
            .collect())
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
        let recips = family.recips_f64(to)?;
        let window = &recips[(from - 1) as usize..to as usize];
        let hit = if family.has_monotone_recips() {
            let idx = window.partition_point(|t| t > r);
            (idx < window.len()).then_some(idx)
        } else {
            window.iter().position(|t| t <= r)
        };
        Ok(hit.map(|i| from + i as u64))
    }
}
