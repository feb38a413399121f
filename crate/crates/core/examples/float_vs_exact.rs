//! The same questions answered in exact and in floating-point arithmetic,
//! including an atom sitting exactly on a prefix-sum boundary.

use tailseries::{
    largest_index_with_h_le, lower_series, prefix_sums, CoefficientFamily, DiscreteMeasure, Exact,
};

fn main() -> tailseries::Result<()> {
    let natural = CoefficientFamily::natural();
    let exact = prefix_sums::<Exact>(&natural, 10_000)?;
    let float = prefix_sums::<f64>(&natural, 10_000)?;
    let worst = exact
        .values
        .iter()
        .zip(&float.values)
        .map(|(e, f)| ((e.to_f64() - f) / f).abs())
        .fold(0.0f64, f64::max);
    println!("largest relative gap over H_1..H_10000: {worst:.2e}");

    // H_20 exactly versus its nearest double.
    let h20 = exact.values[19].clone();
    let h20_float = h20.to_f64();
    let exact_idx = largest_index_with_h_le(&h20, &natural, 1_000_000)?;
    let float_idx = largest_index_with_h_le(&h20_float, &natural, 1_000_000)?;
    println!("H_20 = {h20}");
    println!("lookup at H_20: exact {:?}, float {:?}", exact_idx, float_idx);

    let lower_exact = lower_series(&DiscreteMeasure::dirac(h20.clone())?, &natural, 1_000_000)?;
    let lower_float = lower_series(&DiscreteMeasure::dirac(h20_float)?, &natural, 1_000_000)?;
    println!(
        "lower series of dirac(H_20): exact {} (= E[X]: {}), float {:.17}",
        lower_exact.as_finite().unwrap().to_f64(),
        lower_exact.as_finite() == Some(&h20),
        lower_float.as_finite().unwrap()
    );
    Ok(())
}
