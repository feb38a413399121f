//! Building discrete measures, reading and writing them, and the tail and
//! layer-cake functionals.

use tailseries::measure::io;
use tailseries::{DiscreteMeasure, Exact};

fn q(s: &str) -> Exact {
    s.parse().unwrap()
}

fn main() -> tailseries::Result<()> {
    let m = DiscreteMeasure::new([(q("3"), q("1/4")), (q("1"), q("1/2")), (q("3"), q("1/4"))])?;
    println!("{} atoms after merging, M = {}, E[X] = {}", m.len(), m.total_mass(), m.expectation());
    for t in ["0", "1", "2", "3", "7/2"] {
        println!("  P(X >= {t:>3}) = {}", m.tail(&q(t)));
    }
    println!("layer cake = {}", m.layer_cake());
    println!("integer supported: {}", m.is_integer_supported());

    let scaled = m.scaled(&q("7/2"))?;
    println!("scaled by 7/2: M = {}, E = {}", scaled.total_mass(), scaled.expectation());

    let samples = DiscreteMeasure::from_samples(["1", "2", "2", "5/2"].iter().map(|s| q(s)).collect())?;
    print!("empirical measure as csv:\n{}", io::to_csv(&samples));

    let text = io::to_json(&m);
    println!("json:\n{text}");
    let back: DiscreteMeasure<Exact> = io::parse_json(&text, "inline")?;
    assert_eq!(back, m);

    match io::parse_csv::<Exact>("value,mass\n1,1/2\n2,-1\n", "inline.csv") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
