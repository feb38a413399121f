//! Coefficients, prefix sums and the inclusive prefix-index lookup for each
//! built-in family.

use tailseries::{largest_index_with_h_le, prefix_sums, term, CoefficientFamily, Exact};

fn main() -> tailseries::Result<()> {
    for family in [CoefficientFamily::natural(), CoefficientFamily::primes()] {
        let h = prefix_sums::<Exact>(&family, 6)?;
        let terms: Vec<String> = (1..=6).map(|n| term::<Exact>(&family, n).map(|t| t.to_string())).collect::<Result<_, _>>()?;
        println!("{:<8} a = {}", family.label(), terms.join(", "));
        let values: Vec<String> = h.values.iter().map(|v| v.to_string()).collect();
        println!("{:<8} H = {}", "", values.join(", "));
    }

    for family in [CoefficientFamily::power(0.5)?, CoefficientFamily::log_weighted()] {
        let h = prefix_sums::<f64>(&family, 1000)?;
        println!("{:<12} H_1000 = {:.6}", family.label(), h.values[999]);
    }

    let natural = CoefficientFamily::natural();
    for x in ["3/2", "2", "3", "10"] {
        let lookup = largest_index_with_h_le(&x.parse::<Exact>().unwrap(), &natural, 1_000_000)?;
        println!("largest n with H_n <= {x:>4}: {}", lookup.index());
    }
    let capped = largest_index_with_h_le(&20.0f64, &natural, 1000)?;
    println!("with cap 1000, x = 20 -> {capped:?}");
    Ok(())
}
