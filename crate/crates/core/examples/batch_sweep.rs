//! Random sweep: many probability measures checked in parallel, results as CSV.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tailseries::{verify_theorem1, CoefficientFamily, DiscreteMeasure, Exact, ModeKind, SeriesConfig, SeriesReport};

fn random_measure(seed: u64) -> DiscreteMeasure<Exact> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=10);
    let weights: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
    let total: u64 = weights.iter().sum();
    let atoms = weights.iter().map(|&w| {
        let den = rng.gen_range(1..=8);
        (Exact::from_ratio(rng.gen_range(0..=20 * den), den), Exact::from_ratio(w, total))
    });
    DiscreteMeasure::new(atoms.collect::<Vec<_>>()).expect("positive masses")
}

fn main() -> tailseries::Result<()> {
    let count: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let family = CoefficientFamily::primes();
    let config = SeriesConfig::for_mode(ModeKind::ExactRational);
    let rows = (0..count)
        .into_par_iter()
        .map(|seed| {
            let report = verify_theorem1(&random_measure(seed), &family, &config)?;
            Ok(report.csv_record(&format!("seed{seed}")))
        })
        .collect::<tailseries::Result<Vec<_>>>()?;

    let mut out = csv::Writer::from_writer(std::io::stdout());
    out.write_record(SeriesReport::<Exact>::csv_header()).expect("stdout");
    for row in rows {
        out.write_record(row).expect("stdout");
    }
    out.flush().expect("stdout");
    Ok(())
}
