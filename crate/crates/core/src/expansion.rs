//! Greedy indicator expansion of a nonnegative number over a coefficient family.
//!
//! Bit `n` is one iff `x >= 1/a_n + S_{n-1}`, where `S_{n-1}` is the sum of the
//! reciprocals already selected. Then `x = sum_n b_n / a_n`, and after any zero
//! bit `z` the remainder is below `1/a_z`.
//!
//! The walk is stored compactly: an initial run of ones, then the sparse
//! positions of later ones with the remainder after each. Both modes track the
//! remainder `r_n = x - S_n` directly and test `r_{n-1} >= 1/a_n`.

use std::fmt;

use crate::coeffseq::CoefficientFamily;
use crate::error::{Error, Result};
use crate::scalar::{ModeKind, Scalar};

/// Default expansion length.
pub const DEFAULT_TERMS: u64 = 10_000;

/// Upper bound on the final remainder `r_N`.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<S> {
    /// The expansion terminated: `r_N = 0`.
    Zero,
    /// `r_N <= r_z < 1/a_z` for the last zero bit `z`.
    Bound { index: u64, value: S },
    /// Every bit so far is one; no bound is available yet.
    Uncertified,
}

impl<S: Scalar> Certificate<S> {
    /// The bound as a number, `None` when uncertified.
    pub fn value(&self) -> Option<S> {
        match self {
            Certificate::Zero => Some(S::zero()),
            Certificate::Bound { value, .. } => Some(value.clone()),
            Certificate::Uncertified => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Certificate::Uncertified)
    }
}

impl<S: fmt::Display> fmt::Display for Certificate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Zero => f.write_str("0"),
            Certificate::Bound { value, .. } => write!(f, "{value}"),
            Certificate::Uncertified => f.write_str("not yet certified"),
        }
    }
}

/// First `N` bits of the greedy expansion of `x`.
#[derive(Debug, Clone)]
pub struct GreedyExpansion<S> {
    x: S,
    family: CoefficientFamily,
    terms: u64,
    run: u64,
    ones: Vec<(u64, S)>,
    remainder: S,
}

/// Expands `x` over `family` to `n` terms (clamped to the length of a
/// user-supplied sequence).
pub fn expand<S: Scalar>(x: &S, family: &CoefficientFamily, n: u64) -> Result<GreedyExpansion<S>> {
    family.mode_check(S::KIND)?;
    if !x.is_finite() || x.is_negative() {
        return Err(Error::Domain(format!(
            "expansion needs a finite nonnegative value, got {x}"
        )));
    }
    if n == 0 {
        return Err(Error::Invalid("expansion length must be at least 1".into()));
    }
    let terms = family.clamp_len(n);
    let (run, mut r) = S::leading_ones(family, x, terms)?;
    let mut ones = Vec::new();
    let mut next = run + 2;
    while next <= terms && !r.is_zero() {
        match S::first_recip_at_most(family, &r, next, terms)? {
            Some(m) => {
                r = r.sub(&S::coefficient_recip(family, m)?);
                ones.push((m, r.clone()));
                next = m + 1;
            }
            None => break,
        }
    }
    Ok(GreedyExpansion {
        x: x.clone(),
        family: family.clone(),
        terms,
        run,
        ones,
        remainder: r,
    })
}

/// `S_N`, the represented partial sum (`x - r_N`).
pub fn reconstruct<S: Scalar>(e: &GreedyExpansion<S>) -> S {
    e.partial_sum()
}

impl<S: Scalar> GreedyExpansion<S> {
    pub fn x(&self) -> &S {
        &self.x
    }

    pub fn family(&self) -> &CoefficientFamily {
        &self.family
    }

    pub fn mode(&self) -> ModeKind {
        S::KIND
    }

    /// Number of bits `N`.
    pub fn len(&self) -> u64 {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms == 0
    }

    /// Length of the initial run of one bits.
    pub fn leading_run(&self) -> u64 {
        self.run
    }

    /// Indices of all one bits, ascending.
    pub fn one_indices(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.run).chain(self.ones.iter().map(|(m, _)| *m))
    }

    pub fn count_ones(&self) -> u64 {
        self.run + self.ones.len() as u64
    }

    /// Bit `n` (1-based, `n <= N`).
    pub fn bit(&self, n: u64) -> bool {
        assert!(n >= 1 && n <= self.terms, "bit index {n} outside 1..={}", self.terms);
        n <= self.run || self.ones.binary_search_by_key(&n, |(m, _)| *m).is_ok()
    }

    /// All `N` bits.
    pub fn bits(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.terms as usize];
        for n in self.one_indices() {
            out[(n - 1) as usize] = 1;
        }
        out
    }

    /// Bits as a string of `0` and `1`.
    pub fn bit_string(&self) -> String {
        self.bits().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }

    /// `r_N = x - S_N`.
    pub fn remainder(&self) -> &S {
        &self.remainder
    }

    /// `S_N`.
    pub fn partial_sum(&self) -> S {
        self.x.sub(&self.remainder)
    }

    /// `r_n` for `0 <= n <= N`.
    pub fn remainder_at(&self, n: u64) -> Result<S> {
        assert!(n <= self.terms, "index {n} beyond expansion length {}", self.terms);
        if n <= self.run {
            return Ok(self.x.sub(&S::prefix_sum(&self.family, n)?));
        }
        let k = self.ones.partition_point(|(m, _)| *m <= n);
        if k > 0 {
            return Ok(self.ones[k - 1].1.clone());
        }
        Ok(self.x.sub(&S::prefix_sum(&self.family, self.run)?))
    }

    /// `S_n` for `0 <= n <= N`.
    pub fn partial_sum_at(&self, n: u64) -> Result<S> {
        Ok(self.x.sub(&self.remainder_at(n)?))
    }

    /// `r_1 .. r_N`.
    pub fn remainders(&self) -> Result<Vec<S>> {
        let mut out = S::run_remainders(&self.family, &self.x, self.run)?;
        out.reserve((self.terms - self.run) as usize);
        let mut current = match out.last() {
            Some(r) => r.clone(),
            None => self.x.clone(),
        };
        let mut ones = self.ones.iter().peekable();
        for n in self.run + 1..=self.terms {
            if let Some((_, r)) = ones.next_if(|(m, _)| *m == n) {
                current = r.clone();
            }
            out.push(current.clone());
        }
        Ok(out)
    }

    /// `S_1 .. S_N`.
    pub fn partial_sums(&self) -> Result<Vec<S>> {
        Ok(self.remainders()?.iter().map(|r| self.x.sub(r)).collect())
    }

    /// Largest `z <= N` with `b_z = 0`.
    pub fn last_zero_bit(&self) -> Option<u64> {
        let mut z = self.terms;
        for (m, _) in self.ones.iter().rev() {
            if *m == z {
                z -= 1;
            } else {
                break;
            }
        }
        (z > self.run).then_some(z)
    }

    pub fn certificate(&self) -> Result<Certificate<S>> {
        if self.remainder.is_zero() {
            return Ok(Certificate::Zero);
        }
        Ok(match self.last_zero_bit() {
            Some(z) => Certificate::Bound {
                index: z,
                value: S::coefficient_recip(&self.family, z)?,
            },
            None => Certificate::Uncertified,
        })
    }
}

/// `P(A_n) = sum_i m_i b_n(v_i)` for `n = 1..=N`, from per-atom expansions.
pub fn event_probabilities<S: Scalar>(expansions: &[(GreedyExpansion<S>, S)]) -> Vec<S> {
    let terms = expansions.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
    let mut per_index: Vec<Vec<S>> = vec![Vec::new(); terms as usize];
    for (e, mass) in expansions {
        for n in e.one_indices() {
            per_index[(n - 1) as usize].push(mass.clone());
        }
    }
    per_index.into_iter().map(S::sum_all).collect()
}
