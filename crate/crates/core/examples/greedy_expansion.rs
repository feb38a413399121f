//! Greedy expansion of a number over a divergent sequence of reciprocals,
//! with its remainder certificate.

use tailseries::{event_probabilities, expand, CoefficientFamily, Exact};

fn main() -> tailseries::Result<()> {
    let natural = CoefficientFamily::natural();
    for (x, n) in [("3/4", 6), ("2", 4), ("2", 12), ("7/3", 40)] {
        let e = expand(&x.parse::<Exact>().unwrap(), &natural, n)?;
        println!(
            "x = {x:<4} N = {n:<3} bits {}  S_N = {}  r_N = {}  certificate: {}",
            e.bit_string(),
            e.partial_sum(),
            e.remainder(),
            e.certificate()?
        );
    }

    // Float mode reaches far: the remainder after 10^5 terms.
    for x in [0.1, 1.0, 2.5, 7.0] {
        let e = expand(&x, &natural, 100_000)?;
        println!("x = {x:<4} leading ones {:>5}  ones {:>5}  r_N = {:.3e}", e.leading_run(), e.count_ones(), e.remainder());
    }

    // Per-index event probabilities for a two-point law.
    let primes = CoefficientFamily::primes();
    let half: Exact = "1/2".parse().unwrap();
    let atoms = [
        (expand(&"1".parse::<Exact>().unwrap(), &primes, 8)?, half.clone()),
        (expand(&"3".parse::<Exact>().unwrap(), &primes, 8)?, half),
    ];
    let p: Vec<String> = event_probabilities(&atoms).iter().map(|v| v.to_string()).collect();
    println!("P(A_n), primes, n = 1..8: {}", p.join(", "));
    Ok(())
}
