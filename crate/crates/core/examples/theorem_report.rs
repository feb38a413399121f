//! Full report for one measure: the lower, upper, integer-tail and
//! representation series checked against the expectation.

use tailseries::{verify_theorem1, CoefficientFamily, DiscreteMeasure, Exact, ModeKind, SeriesConfig};

fn main() -> tailseries::Result<()> {
    let measure = DiscreteMeasure::new([
        ("1".parse::<Exact>().unwrap(), "1/2".parse().unwrap()),
        ("3".parse().unwrap(), "1/2".parse().unwrap()),
    ])?;
    let config = SeriesConfig::for_mode(ModeKind::ExactRational);
    let report = verify_theorem1(&measure, &CoefficientFamily::natural(), &config)?;
    println!("{}", report.to_human());

    let json = std::env::args().any(|a| a == "--json");
    if json {
        println!("{}", report.to_json());
    }

    let float = DiscreteMeasure::new([(0.25, 0.1), (4.75, 0.6), (11.5, 0.3)])?;
    let config = SeriesConfig::for_mode(ModeKind::Float);
    let report = verify_theorem1(&float, &CoefficientFamily::log_weighted(), &config)?;
    println!("{}", report.to_human());
    Ok(())
}
