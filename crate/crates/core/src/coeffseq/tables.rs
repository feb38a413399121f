//! Cached prefix-sum tables backing the coefficient families.
//!
//! Float prefix sums are stored as compensated-summation checkpoints every
//! [`FLOAT_BLOCK`] terms; any `H_n` is recovered bit-identically by replaying at
//! most one block. Exact prefix sums are stored as rational checkpoints every
//! [`EXACT_BLOCK`] terms, and blocks are summed by binary splitting.

use std::sync::{Arc, Mutex, RwLock};

use malachite_nz::natural::Natural;
use malachite_q::Rational;

use crate::scalar::CompensatedSum;

pub(crate) const FLOAT_BLOCK: u64 = 1024;
pub(crate) const EXACT_BLOCK: u64 = 1024;

/// Source of reciprocal terms `1 / a_n` for the tables.
pub(crate) trait RecipSource {
    /// `1 / a_n` for `n` in `from..=to`, correctly rounded where the family is exact.
    fn recips_f64(&self, from: u64, to: u64) -> Vec<f64>;
    /// `1 / a_n` as `(numerator, denominator)`; only called for exact families.
    fn recip_parts(&self, n: u64) -> (Natural, Natural);
    /// Number of available terms (`u64::MAX` for infinite families).
    fn available(&self) -> u64;
}

#[derive(Default)]
pub(crate) struct FamilyCache {
    float: RwLock<FloatTable>,
    recips: RwLock<Arc<Vec<f64>>>,
    exact: Mutex<Vec<Rational>>,
}

pub(crate) struct FloatTable {
    /// `checkpoints[k]` is the accumulator after `k * FLOAT_BLOCK` terms.
    checkpoints: Vec<CompensatedSum>,
}

impl Default for FloatTable {
    fn default() -> Self {
        FloatTable {
            checkpoints: vec![CompensatedSum::new()],
        }
    }
}

impl FloatTable {
    fn covered(&self) -> u64 {
        (self.checkpoints.len() as u64 - 1) * FLOAT_BLOCK
    }

    fn push_block(&mut self, src: &dyn RecipSource) {
        let start = self.covered();
        let mut acc = *self.checkpoints.last().expect("seeded");
        for t in src.recips_f64(start + 1, start + FLOAT_BLOCK) {
            acc.add(t);
        }
        self.checkpoints.push(acc);
    }

    fn needs_block(&self, upto: u64, src: &dyn RecipSource) -> bool {
        let next_end = self.covered() + FLOAT_BLOCK;
        next_end <= upto && next_end <= src.available()
    }

    fn state_at(&self, src: &dyn RecipSource, n: u64) -> CompensatedSum {
        let k = ((n / FLOAT_BLOCK) as usize).min(self.checkpoints.len() - 1);
        let mut acc = self.checkpoints[k];
        let start = k as u64 * FLOAT_BLOCK;
        if n > start {
            for t in src.recips_f64(start + 1, n) {
                acc.add(t);
            }
        }
        acc
    }
}

impl FamilyCache {
    fn ensure_float(&self, src: &dyn RecipSource, upto: u64) {
        if !self.float.read().expect("float table poisoned").needs_block(upto, src) {
            return;
        }
        let mut table = self.float.write().expect("float table poisoned");
        while table.needs_block(upto, src) {
            table.push_block(src);
        }
    }

    /// Float `H_n`, identical to sequential compensated accumulation.
    pub(crate) fn float_prefix(&self, src: &dyn RecipSource, n: u64) -> f64 {
        self.ensure_float(src, n);
        self.float
            .read()
            .expect("float table poisoned")
            .state_at(src, n)
            .value()
    }

    /// `H_1 .. H_k` in float, by one sequential pass.
    pub(crate) fn float_prefix_range(&self, src: &dyn RecipSource, k: u64) -> Vec<f64> {
        let mut acc = CompensatedSum::new();
        src.recips_f64(1, k)
            .into_iter()
            .map(|t| {
                acc.add(t);
                acc.value()
            })
            .collect()
    }

    /// Largest `n <= cap` with float `H_n <= x` (0 when `H_1 > x`).
    pub(crate) fn float_largest_le(&self, src: &dyn RecipSource, x: f64, cap: u64) -> u64 {
        {
            let needs_growth = {
                let table = self.float.read().expect("float table poisoned");
                table.needs_block(cap, src)
                    && table.checkpoints.last().expect("seeded").value() <= x
            };
            if needs_growth {
                let mut table = self.float.write().expect("float table poisoned");
                while table.needs_block(cap, src)
                    && table.checkpoints.last().expect("seeded").value() <= x
                {
                    table.push_block(src);
                }
            }
        }
        let table = self.float.read().expect("float table poisoned");
        let usable = table
            .checkpoints
            .len()
            .min((cap / FLOAT_BLOCK) as usize + 1);
        let ck = &table.checkpoints[..usable];
        let k = ck.partition_point(|s| s.value() <= x).saturating_sub(1);
        let mut acc = ck[k];
        let start = k as u64 * FLOAT_BLOCK;
        let end = (start + FLOAT_BLOCK).min(cap);
        let mut n = start;
        if end > start {
            for t in src.recips_f64(start + 1, end) {
                acc.add(t);
                if acc.value() > x {
                    break;
                }
                n += 1;
            }
        }
        n
    }

    /// Snapshot of `1 / a_1 .. 1 / a_m` with `m >= n`.
    pub(crate) fn recips(&self, src: &dyn RecipSource, n: u64) -> Arc<Vec<f64>> {
        {
            let current = self.recips.read().expect("recip table poisoned");
            if current.len() as u64 >= n {
                return Arc::clone(&current);
            }
        }
        let mut current = self.recips.write().expect("recip table poisoned");
        if (current.len() as u64) < n {
            let target = n.max(2 * current.len() as u64).min(src.available());
            let mut grown = Vec::with_capacity(target as usize);
            grown.extend_from_slice(&current);
            grown.extend(src.recips_f64(current.len() as u64 + 1, target));
            *current = Arc::new(grown);
        }
        Arc::clone(&current)
    }

    /// Exact, reduced `H_n`.
    pub(crate) fn exact_prefix(&self, src: &dyn RecipSource, n: u64) -> Rational {
        let k = n / EXACT_BLOCK;
        let base = {
            let mut checkpoints = self.exact.lock().expect("exact table poisoned");
            if checkpoints.is_empty() {
                checkpoints.push(Rational::from(0u32));
            }
            while (checkpoints.len() as u64) <= k {
                let j = checkpoints.len() as u64 - 1;
                let block = split_sum(src, j * EXACT_BLOCK + 1, (j + 1) * EXACT_BLOCK);
                let next = checkpoints.last().expect("seeded") + block;
                checkpoints.push(next);
            }
            checkpoints[k as usize].clone()
        };
        let start = k * EXACT_BLOCK;
        if n > start {
            base + split_sum(src, start + 1, n)
        } else {
            base
        }
    }
}

/// `sum_{j=from}^{to} 1 / a_j` by binary splitting, reduced once at the end.
pub(crate) fn split_sum(src: &dyn RecipSource, from: u64, to: u64) -> Rational {
    if from > to {
        return Rational::from(0u32);
    }
    let (p, q) = split(src, from, to);
    Rational::from_naturals(p, q)
}

fn split(src: &dyn RecipSource, from: u64, to: u64) -> (Natural, Natural) {
    if from == to {
        return src.recip_parts(from);
    }
    let mid = from + (to - from) / 2;
    let (p1, q1) = split(src, from, mid);
    let (p2, q2) = split(src, mid + 1, to);
    (&p1 * &q2 + &p2 * &q1, q1 * q2)
}
