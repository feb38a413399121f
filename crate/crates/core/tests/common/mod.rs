#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tailseries::{DiscreteMeasure, Exact};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational in `[0, hi]`: mostly small denominators, sometimes integers,
/// sometimes fine-grained.
pub fn random_value(rng: &mut ChaCha8Rng, hi: u64) -> Exact {
    let den = match rng.gen_range(0..10) {
        0..=1 => 1,
        2..=6 => rng.gen_range(2..=12),
        _ => rng.gen_range(13..=10_000),
    };
    let num = rng.gen_range(0..=hi * den);
    Exact::from_ratio(num, den)
}

/// Probability measure with up to `max_atoms` atoms and values in `[0, hi]`.
pub fn random_probability(rng: &mut ChaCha8Rng, max_atoms: usize, hi: u64) -> DiscreteMeasure<Exact> {
    let k = rng.gen_range(1..=max_atoms);
    let weights: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=100)).collect();
    let total: u64 = weights.iter().sum();
    let atoms: Vec<(Exact, Exact)> = weights
        .iter()
        .map(|&w| (random_value(rng, hi), Exact::from_ratio(w, total)))
        .collect();
    DiscreteMeasure::new(atoms).expect("valid random measure")
}

/// Finite measure with arbitrary positive rational masses.
pub fn random_finite(rng: &mut ChaCha8Rng, max_atoms: usize, hi: u64) -> DiscreteMeasure<Exact> {
    let k = rng.gen_range(1..=max_atoms);
    let atoms: Vec<(Exact, Exact)> = (0..k)
        .map(|_| {
            let mass = Exact::from_ratio(rng.gen_range(1..=1000), rng.gen_range(1..=997));
            (random_value(rng, hi), mass)
        })
        .collect();
    DiscreteMeasure::new(atoms).expect("valid random measure")
}

/// The same measure with values and masses rounded to `f64`.
pub fn to_float(m: &DiscreteMeasure<Exact>) -> DiscreteMeasure<f64> {
    DiscreteMeasure::new(m.atoms().iter().map(|a| (a.value.to_f64(), a.mass.to_f64())))
        .expect("rounding keeps values distinct and masses positive")
}

pub fn q(s: &str) -> Exact {
    s.parse().unwrap()
}

/// `H_n` of `a_n = n` by direct fraction addition.
pub fn harmonic(n: u64) -> Exact {
    (1..=n).fold(q("0"), |acc, k| acc.add(&Exact::from_ratio(1, k)))
}
