//! Exact coefficient arithmetic shared by every other module.

mod multipoly;
mod scalar;
mod series;
mod unipoly;

pub use multipoly::{Monomial, MultiPoly};
pub use scalar::{parse_scalar, Scalar};
pub use series::{product_of_inverse_linear_factors, TruncSeries1, TruncSeries2};
pub use unipoly::{unipoly_divides, UniPoly};
