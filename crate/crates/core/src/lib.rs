//! Greedy indicator-series expansions over divergent coefficient sequences and
//! certified checks of the tail-probability series bounds for finite discrete
//! measures.
//!
//! ```
//! use tailseries::{verify_theorem1, CoefficientFamily, DiscreteMeasure, Exact, Outcome, SeriesConfig};
//!
//! let measure = DiscreteMeasure::new([
//!     ("1".parse::<Exact>().unwrap(), "1/2".parse().unwrap()),
//!     ("3".parse().unwrap(), "1/2".parse().unwrap()),
//! ])
//! .unwrap();
//! let config = SeriesConfig::for_mode(tailseries::ModeKind::ExactRational);
//! let report = verify_theorem1(&measure, &CoefficientFamily::natural(), &config).unwrap();
//! assert_eq!(report.lower.as_finite().unwrap().to_string(), "9901/5040");
//! assert_eq!(report.overall(), Outcome::Pass);
//! ```

pub mod cli;
pub mod coeffseq;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod measure;
pub mod scalar;
pub mod series;

pub use coeffseq::{
    largest_index_with_h_le, prefix_sums, term, CoefficientFamily, FamilyKind, IndexLookup, PrefixSums,
};
pub use error::{Error, Result};
pub use exact::Exact;
pub use expansion::{event_probabilities, expand, reconstruct, Certificate, GreedyExpansion};
pub use measure::{Atom, DiscreteMeasure};
pub use scalar::{CompensatedSum, ModeKind, Scalar, ScalarMode};
pub use series::{
    integer_tail_series, lower_series, overall, representation_sum, upper_series, verify_chung,
    verify_proposition, verify_theorem1, Outcome, Representation, SeriesConfig, SeriesKind, SeriesReport,
    SeriesValue, Verdict,
};
