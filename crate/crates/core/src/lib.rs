//! Truncation analysis for Fourier-Bessel expansions of scaled Bessel
//! functions, the empirical term-count model built on top of it, and
//! numerical checks of a Hankel-transform order invariant.
//!
//! Everything is generic over the scalar type via [`Real`] (`f32` or `f64`);
//! the `*64` aliases at the crate root pin the common case.

// negated comparisons are deliberate: they reject NaN along with the
// out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// frozen numeric constants keep their full published digits
#![allow(clippy::excessive_precision)]

mod dd;
mod error;
mod real;

pub mod fbse;
pub mod geometry;
pub mod hankel;
pub mod model;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod term_count;

pub use error::{Error, Result};
pub use real::Real;

pub use fbse::{ExpansionTerm, PartialSum, TargetFunction};
pub use geometry::{inner_product, l2prime_norm, RadialFunction};
pub use model::{HyperbolicFit, LinearFit, Prediction};
pub use quadrature::QuadratureSpec;
pub use roots::RootTable;
pub use special::{bessel_j, bessel_j_prime, gamma_fn, Order};
pub use term_count::{
    MonotonicityReport, SweepRow, SweepTable, TermCountQuery, TermCountResult, DEFAULT_L_MAX,
};

/// Concrete aliases for the default double-precision pipeline.
pub type Order64 = Order<f64>;
pub type RootTable64 = RootTable<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type RadialFunction64 = RadialFunction<f64>;
