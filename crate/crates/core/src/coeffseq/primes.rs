//! Process-wide prime table grown on demand by a segmented sieve.

use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest count of primes representable with `u32` storage (primes below 2^32).
pub const MAX_PRIME_COUNT: u64 = 203_280_221;

const SEGMENT: u64 = 1 << 18;

#[derive(Default)]
struct PrimeTable {
    primes: Arc<Vec<u32>>,
    /// Every prime below `limit` is in `primes`.
    limit: u64,
}

fn table() -> &'static RwLock<PrimeTable> {
    static TABLE: OnceLock<RwLock<PrimeTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(PrimeTable::default()))
}

/// Upper bound on the n-th prime (Rosser–Schoenfeld for n >= 6).
fn nth_prime_bound(n: u64) -> u64 {
    if n < 6 {
        return 15;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 3
}

/// Primes in `[2, limit)` by the plain sieve, used as sieving primes.
fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; limit];
    let mut out = Vec::new();
    for i in 2..limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Appends the primes in `[lo, hi)` to `out`.
fn sieve_range(lo: u64, hi: u64, out: &mut Vec<u32>) {
    let lo = lo.max(2);
    if lo >= hi {
        return;
    }
    let base = small_primes((hi as f64).sqrt() as u64 + 2);
    let mut seg_lo = lo;
    let mut composite = vec![false; SEGMENT as usize];
    while seg_lo < hi {
        let seg_hi = (seg_lo + SEGMENT).min(hi);
        let len = (seg_hi - seg_lo) as usize;
        composite[..len].iter_mut().for_each(|c| *c = false);
        for &p in &base {
            if p * p >= seg_hi {
                break;
            }
            let start = (p * p).max(seg_lo.div_ceil(p) * p);
            let mut m = start;
            while m < seg_hi {
                composite[(m - seg_lo) as usize] = true;
                m += p;
            }
        }
        for (i, &c) in composite[..len].iter().enumerate() {
            if !c {
                out.push((seg_lo + i as u64) as u32);
            }
        }
        seg_lo = seg_hi;
    }
}

/// Snapshot holding at least the first `count` primes.
pub fn first(count: u64) -> Result<Arc<Vec<u32>>> {
    if count > MAX_PRIME_COUNT {
        return Err(Error::Invalid(format!(
            "at most {MAX_PRIME_COUNT} primes are supported, requested {count}"
        )));
    }
    {
        let guard = table().read().expect("prime table poisoned");
        if guard.primes.len() as u64 >= count {
            return Ok(Arc::clone(&guard.primes));
        }
    }
    let mut guard = table().write().expect("prime table poisoned");
    while (guard.primes.len() as u64) < count {
        let target = nth_prime_bound(count)
            .max(guard.limit.saturating_mul(2))
            .min(1u64 << 32);
        let mut grown = Vec::with_capacity(count as usize);
        grown.extend_from_slice(&guard.primes);
        sieve_range(guard.limit, target, &mut grown);
        guard.primes = Arc::new(grown);
        guard.limit = target;
    }
    Ok(Arc::clone(&guard.primes))
}

/// The n-th prime, 1-based.
pub fn nth(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroIndex(0));
    }
    Ok(first(n)?[(n - 1) as usize] as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn first_ten_thousand_primes_match_trial_division() {
        let primes = first(10_000).unwrap();
        let mut expected = Vec::with_capacity(10_000);
        let mut k = 2u64;
        while expected.len() < 10_000 {
            if is_prime_trial(k) {
                expected.push(k as u32);
            }
            k += 1;
        }
        assert_eq!(&primes[..10_000], &expected[..]);
    }

    #[test]
    fn nth_prime_values() {
        assert_eq!(nth(1).unwrap(), 2);
        assert_eq!(nth(5).unwrap(), 11);
        assert_eq!(nth(1000).unwrap(), 7919);
        assert!(nth(0).is_err());
    }

    #[test]
    fn segments_straddle_boundaries() {
        let mut out = Vec::new();
        sieve_range(SEGMENT - 50, SEGMENT + 50, &mut out);
        let expected: Vec<u32> = (SEGMENT - 50..SEGMENT + 50)
            .filter(|&k| is_prime_trial(k))
            .map(|k| k as u32)
            .collect();
        assert_eq!(out, expected);
    }

    #[test]
    fn concurrent_readers_see_consistent_prefixes() {
        let handles: Vec<_> = (1..=4)
            .map(|t| std::thread::spawn(move || first(2_000 * t).unwrap()[..2_000].to_vec()))
            .collect();
        let results: Vec<Vec<u32>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
