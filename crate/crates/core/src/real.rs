//! Scalar abstraction: everything in this crate is generic over [`Real`],
//! which is implemented for `f32` and `f64`.

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar used throughout the crate.
///
/// The accuracy contracts documented on the individual operations are stated
/// for `f64`; with `f32` the same algorithms run but tolerances scale with
/// the wider machine epsilon.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Shorthand conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert into Real")
    }

    fn pi() -> Self {
        Self::of(std::f64::consts::PI)
    }

    /// Veltkamp splitting constant 2^ceil(p/2) + 1 for p mantissa digits.
    fn splitter() -> Self;
}

impl Real for f32 {
    fn splitter() -> Self {
        4097.0 // 2^12 + 1
    }
}

impl Real for f64 {
    fn splitter() -> Self {
        134217729.0 // 2^27 + 1
    }
}

/// Bit-exact key for using a scalar as a hash-map key.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ScalarKey(u64, i16, i8);

impl ScalarKey {
    pub(crate) fn of<T: Real>(x: T) -> Self {
        let (mantissa, exponent, sign) = x.integer_decode();
        ScalarKey(mantissa, exponent, sign)
    }
}
