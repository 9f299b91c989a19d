//! Exact-arithmetic engine for local standard and formal exterior square
//! L-factors.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: rationals, sparse multivariate polynomials, truncated power
//!   series in one and two variables, univariate polynomials.
//! - [`symmetric`]: partitions, Schur polynomials (Jacobi–Trudi with a
//!   bialternant oracle), zero-padded evaluation, bounded enumerations.
//! - [`lfactors`]: Satake parameters, standard and formal exterior square
//!   L-factors, the doubled-shape Schur expansions.
//! - [`integrals`]: newform Whittaker values on the torus and the
//!   Jacquet–Shalika / Bump–Friedberg torus sums.
//! - [`galois`]: graded Weil–Deligne representations, exterior squares and
//!   their L-factors, divisibility and hypothesis (H).
//!
//! Everything is exact; there is no floating point anywhere in the crate.

pub mod algebra;
pub mod error;
pub mod galois;
pub mod integrals;
pub mod lfactors;
pub mod symmetric;

pub use algebra::{MultiPoly, Scalar, TruncSeries1, TruncSeries2, UniPoly};
pub use error::{Error, Result};
pub use lfactors::{Entry, LFactor, SatakeParams};
pub use symmetric::Partition;
