//! The integer-tail sandwich `T <= E[X] <= M + T` and the integer-support
//! identity `E[X] = T >= L`.

use tailseries::series::report::verdicts_to_human;
use tailseries::{verify_chung, verify_proposition, CoefficientFamily, DiscreteMeasure, Exact};

fn q(s: &str) -> Exact {
    s.parse().unwrap()
}

fn main() -> tailseries::Result<()> {
    let cases = [
        ("two point", DiscreteMeasure::new([(q("1"), q("1/2")), (q("3"), q("1/2"))])?),
        ("off integers", DiscreteMeasure::dirac(q("1/2"))?),
        ("mass 3", DiscreteMeasure::new([(q("2"), q("1")), (q("5/2"), q("2"))])?),
    ];
    for (name, m) in &cases {
        println!("== {name}");
        print!("{}", verdicts_to_human(&verify_chung(m, 0.0)));
        let prop = verify_proposition(m, &CoefficientFamily::natural(), 100_000, 0.0)?;
        print!("{}", verdicts_to_human(&prop));
    }
    Ok(())
}
