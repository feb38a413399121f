//! A user-supplied coefficient sequence read from text. Results are limited
//! to the given prefix and reports are flagged accordingly.

use tailseries::{expand, verify_theorem1, CoefficientFamily, DiscreteMeasure, Exact, ModeKind, SeriesConfig};

fn main() -> tailseries::Result<()> {
    let text = "# a short, slowly growing sequence\n2\n1\n4\n4\n5\n6\n7\n8\n";
    let family = CoefficientFamily::parse_sequence(text, "inline")?;
    println!("{} with {} terms, prefix only: {}", family.label(), family.len().unwrap(), family.is_prefix_only());

    for x in ["1", "2", "5/2"] {
        let e = expand(&x.parse::<Exact>().unwrap(), &family, 100)?;
        println!("x = {x:<3} bits {} remainder {} ({})", e.bit_string(), e.remainder(), e.certificate()?);
    }

    let m = DiscreteMeasure::dirac("3/2".parse::<Exact>().unwrap())?;
    let report = verify_theorem1(&m, &family, &SeriesConfig::for_mode(ModeKind::ExactRational))?;
    for note in &report.notes {
        println!("note: {note}");
    }
    println!("overall: {}", report.overall().label());

    match CoefficientFamily::parse_sequence("1\n2\n-3\n", "bad") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
