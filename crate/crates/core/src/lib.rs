mod echelon;
pub mod classify;
pub mod cli;
pub mod error;
pub mod numsgp;
pub mod scalar;
pub mod series;
pub mod sgring;
pub mod ulrich;

pub use error::{Error, Result};
pub use numsgp::NumericalSemigroup;
pub use scalar::{Field, Scalar};
pub use series::{Order, TruncatedSeries};
pub use sgring::{IdealBasis, RingContext};
