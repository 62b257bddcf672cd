//! Exact scalars, truncated Laurent series in `w = 1/v`, and phase germs.

mod complex;
mod laurent;
mod phase;
mod ring;
mod scalar;

use thiserror::Error;

pub use complex::{Complex, ComplexEvaluation, ComplexLaurentSeries};
pub use laurent::{compare_order, Evaluation, LaurentSeries, OrderComparison, SeriesJson, DEFAULT_ORDER};
pub use phase::{compare_phase, phase_of, ExactPhase, PhaseFunction, PhaseInterval, PhaseJson, PhaseOrdering};
pub use ring::{Ring, Signed};
pub use scalar::{
    as_integer, floor_i64, format_rational, has_denominator_dividing, int, parse_rational, rat, serde_rational,
    Rational, Scalar,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("the zero series has no phase")]
    ZeroSeries,
    #[error("leading term is not determined within the truncation order")]
    Indeterminate,
    #[error("square root needs an even leading degree, got {0}")]
    OddLeadingDegree(i64),
    #[error("square root needs a positive leading coefficient")]
    NonPositiveLeading,
    #[error("leading coefficient {0} has no square root in a quadratic extension")]
    IrrationalLeading(String),
    #[error("no admissible phase in {0}")]
    EmptyBranch(String),
    #[error("more than one admissible phase in {0}")]
    AmbiguousBranch(String),
    #[error("limit {0} is not parallel to the leading coefficient")]
    LimitMismatch(String),
    #[error("invalid phase interval {0}")]
    BadInterval(String),
    #[error("malformed number {0:?}")]
    Parse(String),
}
