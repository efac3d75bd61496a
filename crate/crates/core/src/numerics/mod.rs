//! Directed-rounding interval arithmetic.
//!
//! [`Dyadic`] supplies exact binary values with per-operation rounding,
//! [`BoundedReal`] builds verified intervals on top of it, and
//! [`unit_circle_point`] / [`RootsOfUnity`] enclose points `e(a/q)`.

pub mod circle;
pub mod decimal;
pub mod dyadic;
pub mod elementary;
pub mod interval;

pub use circle::{unit_circle_point, ComplexInterval, RootsOfUnity, UnitCirclePoint};
pub use decimal::{format_directed, Decimal, DecimalParseError};
pub use dyadic::{Dyadic, Round};
pub use elementary::{ln2, pi, TurnEvaluator};
pub use interval::{BoundedReal, Verdict, DEFAULT_PRECISION, MIN_PRECISION};
