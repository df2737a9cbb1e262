//! The weighted inner product `<f, g> = int_0^R t f(t) g(t) dt` and the norm
//! it induces on radial functions over [0, R].

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::real::Real;

/// A real-valued function on [0, R], optionally annotated with interior
/// quadrature break points (typically the scaled zeros of an oscillatory
/// Bessel factor).
pub struct RadialFunction<T> {
    eval: Box<dyn Fn(T) -> T + Send + Sync>,
    r_max: T,
    breakpoints: Vec<T>,
}

impl<T: Real> RadialFunction<T> {
    pub fn new(r_max: T, eval: impl Fn(T) -> T + Send + Sync + 'static) -> Result<Self> {
        Self::with_breakpoints(r_max, eval, Vec::new())
    }

    pub fn with_breakpoints(
        r_max: T,
        eval: impl Fn(T) -> T + Send + Sync + 'static,
        breakpoints: Vec<T>,
    ) -> Result<Self> {
        if !(r_max > T::zero()) || !r_max.is_finite() {
            return Err(Error::Domain(format!(
                "domain endpoint R must be finite and > 0, got {r_max}"
            )));
        }
        Ok(RadialFunction {
            eval: Box::new(eval),
            r_max,
            breakpoints,
        })
    }

    pub fn eval(&self, t: T) -> T {
        (self.eval)(t)
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }
}

fn merged_breaks<T: Real>(f: &RadialFunction<T>, g: &RadialFunction<T>) -> Vec<T> {
    let mut all: Vec<T> = f
        .breakpoints
        .iter()
        .chain(g.breakpoints.iter())
        .copied()
        .collect();
    all.sort_by(|a, b| a.partial_cmp(b).expect("breakpoints are finite"));
    all.dedup();
    all
}

/// `int_0^R t f(t) g(t) dt` to the spec's absolute tolerance.
pub fn inner_product<T: Real>(
    f: &RadialFunction<T>,
    g: &RadialFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if f.r_max != g.r_max {
        return Err(Error::Domain(format!(
            "inner product requires a common domain, got R = {} and {}",
            f.r_max, g.r_max
        )));
    }
    let breaks = merged_breaks(f, g);
    integrate(
        |t| t * f.eval(t) * g.eval(t),
        T::zero(),
        f.r_max,
        &breaks,
        spec,
    )
}

/// Weighted L2 norm `(int_0^R f(t)^2 t dt)^(1/2)`.
pub fn l2prime_norm<T: Real>(f: &RadialFunction<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let sq = inner_product(f, f, spec)?;
    // the integrand is pointwise nonnegative; tiny negative values are
    // quadrature round-off
    Ok(sq.max(T::zero()).sqrt())
}
