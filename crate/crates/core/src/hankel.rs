//! Hankel-transform order invariant, verified two ways.
//!
//! The radial identity
//!
//! ```text
//! r^2 f''(r) + r f'(r) = n^2 f(r) - r^2 Hinv_n(alpha^2 F_n(alpha))
//! ```
//!
//! has an n-independent left side, so the difference of consecutive orders
//! telescopes into the invariant
//!
//! ```text
//! f(r) / r^2 = [Hinv_{n+1}(alpha^2 F_{n+1}) - Hinv_n(alpha^2 F_n)] / (2n + 1).
//! ```
//!
//! The power-law family r^s admits closed-form transforms through gamma
//! ratios and is checked algebraically; fast-decaying test functions go
//! through truncated numeric transforms. The power-law pair is treated as a
//! formal identity (the defining integral does not converge classically for
//! every s), so numeric transforms are reserved for decaying functions.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::real::Real;
use crate::roots::RootTable;
use crate::special::{bessel_j_unchecked, ln_gamma_signed, Order};

/// A formal pair (n, s) for the power-law transform H_n(r^s); requires the
/// Hankel order n >= -1/2.
#[derive(Clone, Copy, Debug)]
pub struct PowerLawPair<T> {
    n: Order<T>,
    s: T,
}

impl<T: Real> PowerLawPair<T> {
    pub fn new(n: Order<T>, s: T) -> Result<Self> {
        check_hankel_order(n)?;
        if !s.is_finite() {
            return Err(Error::Domain(format!("exponent s must be finite, got {s}")));
        }
        Ok(PowerLawPair { n, s })
    }

    pub fn n(&self) -> Order<T> {
        self.n
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn coefficient(&self) -> Result<T> {
        power_law_coefficient(self.n, self.s)
    }
}

fn check_hankel_order<T: Real>(n: Order<T>) -> Result<()> {
    if n.value() < T::of(-0.5) {
        return Err(Error::Domain(format!(
            "Hankel order must be >= -1/2, got {}",
            n.value()
        )));
    }
    Ok(())
}

/// A transform sampled on a strictly increasing grid of frequencies (or
/// radii, for the inverse direction).
#[derive(Clone, Debug)]
pub struct TransformSample<T> {
    order: Order<T>,
    grid: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> TransformSample<T> {
    pub fn new(order: Order<T>, grid: Vec<T>, values: Vec<T>) -> Result<Self> {
        check_hankel_order(order)?;
        if grid.len() != values.len() {
            return Err(Error::Domain(format!(
                "grid and values lengths differ: {} vs {}",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.first().is_some_and(|&g| g <= T::zero())
        {
            return Err(Error::Domain(
                "grid must be strictly increasing and positive".into(),
            ));
        }
        Ok(TransformSample {
            order,
            grid,
            values,
        })
    }

    pub fn order(&self) -> Order<T> {
        self.order
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Evaluate the truncated forward transform of `f` on a grid of
/// frequencies.
pub fn sample_hankel<T: Real, F: Fn(T) -> T>(
    f: F,
    n: Order<T>,
    grid: &[T],
    r_max: T,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<TransformSample<T>> {
    let mut values = Vec::with_capacity(grid.len());
    for &alpha in grid {
        values.push(numeric_hankel(&f, n, alpha, r_max, roots, spec)?);
    }
    TransformSample::new(n, grid.to_vec(), values)
}

fn is_nonpositive_integer<T: Real>(z: T) -> bool {
    z <= T::zero() && z == z.round()
}

/// The alpha-independent coefficient of `H_n(r^s) = C / alpha^(s+2)`:
///
/// ```text
/// C(n, s) = 2^(s+1) gamma((n+s+2)/2) / gamma((n-s)/2)
/// ```
///
/// computed through signed log-gamma differences. A pole of the denominator
/// gamma maps to C = 0 (the analytic continuation the closed form implies),
/// which also keeps the n = s case total; a pole of the numerator is a
/// domain error.
pub fn power_law_coefficient<T: Real>(n: Order<T>, s: T) -> Result<T> {
    check_hankel_order(n)?;
    let half = T::of(0.5);
    let num_arg = (n.value() + s + T::of(2.0)) * half;
    let den_arg = (n.value() - s) * half;
    if is_nonpositive_integer(num_arg) {
        return Err(Error::Domain(format!(
            "numerator gamma argument {num_arg} is a non-positive integer"
        )));
    }
    if is_nonpositive_integer(den_arg) {
        return Ok(T::zero());
    }
    let (ln_num, sign_num) = ln_gamma_signed(num_arg)?;
    let (ln_den, sign_den) = ln_gamma_signed(den_arg)?;
    let magnitude = (T::of(std::f64::consts::LN_2) * (s + T::one()) + ln_num - ln_den).exp();
    Ok(sign_num * sign_den * magnitude)
}

/// Closed-form value at r of the alpha^2-then-inverse chain
/// `Hinv_n(alpha^2 H_n(r^s))`, i.e. `C(n, s) C(n, -s) r^(s-2)`; this equals
/// `(n^2 - s^2) r^(s-2)` by the gamma-ratio cancellation.
pub fn power_law_chain<T: Real>(n: Order<T>, s: T, r: T) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("r must be > 0, got {r}")));
    }
    let forward = power_law_coefficient(n, s)?;
    let inverse = power_law_coefficient(n, -s)?;
    Ok(forward * inverse * r.powf(s - T::of(2.0)))
}

/// The invariant's right side for f = r^s, assembled from the closed-form
/// chain values of orders n and n+1 (it telescopes to r^(s-2)).
pub fn invariant_rhs_power<T: Real>(n: Order<T>, s: T, r: T) -> Result<T> {
    check_hankel_order(n)?;
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("r must be > 0, got {r}")));
    }
    let nv = n.value();
    let np1 = nv + T::one();
    let base = r.powf(s - T::of(2.0));
    let upper = base * (np1 * np1 - s * s);
    let lower = base * (nv * nv - s * s);
    Ok((upper - lower) / (T::of(2.0) * nv + T::one()))
}

/// Truncated forward transform `int_0^rmax f(r) J_n(alpha r) r dr`; the
/// caller asserts the tail beyond r_max is below the quadrature tolerance.
pub fn numeric_hankel<T: Real, F: Fn(T) -> T>(
    f: F,
    n: Order<T>,
    alpha: T,
    r_max: T,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    check_hankel_order(n)?;
    if !(alpha > T::zero()) || !(r_max > T::zero()) {
        return Err(Error::Domain(format!(
            "numeric transform requires alpha > 0 and r_max > 0, got {alpha}, {r_max}"
        )));
    }
    let breaks = kernel_breaks(n, alpha, r_max, roots)?;
    let nv = n.value();
    integrate(
        |r| f(r) * bessel_j_unchecked(nv, alpha * r) * r,
        T::zero(),
        r_max,
        &breaks,
        spec,
    )
}

/// Zeros of r -> J_n(alpha r) inside (0, limit).
fn kernel_breaks<T: Real>(n: Order<T>, alpha: T, limit: T, roots: &RootTable<T>) -> Result<Vec<T>> {
    let mut breaks = Vec::new();
    let mut k = 1u32;
    loop {
        let z = roots.root(n, k)? / alpha;
        if z >= limit {
            break;
        }
        breaks.push(z);
        k += 1;
        if k > 100_000 {
            return Err(Error::Domain(
                "kernel oscillates too fast for the truncation radius".into(),
            ));
        }
    }
    Ok(breaks)
}

/// `Hinv_n(alpha^2 F_n)(r)` with F_n itself computed by the truncated
/// forward transform; the double integral underlying both Eq-style checks.
fn inverse_of_scaled_forward<T: Real, F: Fn(T) -> T>(
    f: &F,
    n: Order<T>,
    r: T,
    r_max: T,
    alpha_max: T,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    let breaks = kernel_breaks(n, r, alpha_max, roots)?;
    let nv = n.value();
    let inner_fail = std::cell::Cell::new(false);
    let value = integrate(
        |alpha| {
            if alpha == T::zero() {
                return T::zero();
            }
            match numeric_hankel(f, n, alpha, r_max, roots, spec) {
                Ok(fa) => alpha * alpha * alpha * fa * bessel_j_unchecked(nv, alpha * r),
                Err(_) => {
                    inner_fail.set(true);
                    T::nan()
                }
            }
        },
        T::zero(),
        alpha_max,
        &breaks,
        spec,
    )?;
    if inner_fail.get() || value.is_nan() {
        return Err(Error::ToleranceNotMet {
            achieved: f64::NAN,
            requested: spec.abs_tolerance().to_f64().unwrap_or(f64::NAN),
            refinements: 0,
        });
    }
    Ok(value)
}

/// Residual `|r^2 f'' + r f' - (n^2 f - r^2 Hinv_n(alpha^2 F_n))|` with the
/// derivatives supplied analytically by the caller and both transforms
/// truncated.
#[allow(clippy::too_many_arguments)]
pub fn radial_identity_residual<T, F, F1, F2>(
    f: F,
    f_prime: F1,
    f_double_prime: F2,
    n: Order<T>,
    r: T,
    r_max: T,
    alpha_max: T,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
    F1: Fn(T) -> T,
    F2: Fn(T) -> T,
{
    check_hankel_order(n)?;
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("r must be > 0, got {r}")));
    }
    let lhs = r * r * f_double_prime(r) + r * f_prime(r);
    let nv = n.value();
    let inv = inverse_of_scaled_forward(&f, n, r, r_max, alpha_max, roots, spec)?;
    let rhs = nv * nv * f(r) - r * r * inv;
    Ok((lhs - rhs).abs())
}

/// Residual of the invariant itself:
/// `|f(r)/r^2 - [Hinv_{n+1}(alpha^2 F_{n+1}) - Hinv_n(alpha^2 F_n)] / (2n+1)|`.
pub fn invariant_residual_numeric<T: Real, F: Fn(T) -> T>(
    f: F,
    n: Order<T>,
    r: T,
    r_max: T,
    alpha_max: T,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    check_hankel_order(n)?;
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("r must be > 0, got {r}")));
    }
    let n_up = Order::new(n.value() + T::one())?;
    let inv_lo = inverse_of_scaled_forward(&f, n, r, r_max, alpha_max, roots, spec)?;
    let inv_hi = inverse_of_scaled_forward(&f, n_up, r, r_max, alpha_max, roots, spec)?;
    let rhs = (inv_hi - inv_lo) / (T::of(2.0) * n.value() + T::one());
    Ok((f(r) / (r * r) - rhs).abs())
}

/// Default step for the finite-difference fallback derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Central first derivative; accuracy ceiling ~1e-8 at the default step.
pub fn central_diff1<T: Real, F: Fn(T) -> T>(f: &F, r: T, h: T) -> T {
    (f(r + h) - f(r - h)) / (T::of(2.0) * h)
}

/// Central second derivative; accuracy ceiling ~1e-8 at the default step.
pub fn central_diff2<T: Real, F: Fn(T) -> T>(f: &F, r: T, h: T) -> T {
    (f(r + h) - T::of(2.0) * f(r) + f(r - h)) / (h * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma_fn;
    use approx::assert_abs_diff_eq;

    fn ord(v: f64) -> Order<f64> {
        Order::new(v).unwrap()
    }

    #[test]
    fn coefficient_vanishes_at_denominator_pole() {
        // n = s makes (n - s)/2 = 0, a gamma pole, so 1/gamma = 0
        assert_eq!(power_law_coefficient(ord(1.0), 1.0).unwrap(), 0.0);
        assert_eq!(power_law_coefficient(ord(2.5), 2.5).unwrap(), 0.0);
        // (n - s)/2 = -1
        assert_eq!(power_law_coefficient(ord(2.0), 4.0).unwrap(), 0.0);
    }

    #[test]
    fn coefficient_simple_value() {
        // n = 2, s = 0: 2^1 gamma(2) / gamma(1) = 2
        let c = power_law_coefficient(ord(2.0), 0.0).unwrap();
        assert_abs_diff_eq!(c, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn numerator_pole_is_a_domain_error() {
        // (n + s + 2)/2 = 0 at n = 0, s = -2
        assert!(power_law_coefficient(ord(0.0), -2.0).is_err());
        assert!(power_law_coefficient(ord(-0.6), 0.0).is_err());
        assert!(PowerLawPair::new(ord(-0.6), 0.0).is_err());
    }

    #[test]
    fn negative_gamma_arguments_keep_their_sign() {
        // n = 0, s = 1: C = 2^2 gamma(1.5)/gamma(-0.5)
        // gamma(1.5) = sqrt(pi)/2, gamma(-0.5) = -2 sqrt(pi) => C = -1
        let c = power_law_coefficient(ord(0.0), 1.0).unwrap();
        assert_abs_diff_eq!(c, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn chain_reproduces_order_exponent_difference() {
        for &(n, s) in &[(2.0, 0.0), (3.0, 1.0), (0.5, -0.75), (4.0, 2.5)] {
            for &r in &[0.5, 2.0] {
                let chain = power_law_chain(ord(n), s, r).unwrap();
                let expected = (n * n - s * s) * r.powf(s - 2.0);
                assert_abs_diff_eq!(chain, expected, epsilon = expected.abs() * 1e-12 + 1e-13);
            }
        }
        // at n = 2, s = 0 the chain value is 4 r^-2
        let v = power_law_chain(ord(2.0), 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn invariant_rhs_telescopes() {
        let v = invariant_rhs_power(ord(1.0), 1.0, 2.0).unwrap();
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-13);
        for &(n, s, r) in &[(0.0, 0.5, 0.3), (2.0, -1.0, 10.0), (7.5, 2.0, 1.0)] {
            let v = invariant_rhs_power(ord(n), s, r).unwrap();
            let expected = r.powf(s - 2.0);
            assert_abs_diff_eq!(v, expected, epsilon = expected.abs() * 1e-12);
        }
    }

    #[test]
    fn gamma_ratio_steps_match_the_cancellation() {
        // gamma(z+1)/gamma(z) = z underlies the chain's (n^2 - s^2) collapse
        let mut z = 0.25f64;
        while z <= 10.0 {
            let ratio = gamma_fn(z + 1.0).unwrap() / gamma_fn(z).unwrap();
            assert_abs_diff_eq!(ratio, z, epsilon = z * 1e-12);
            z += 0.25;
        }
    }

    #[test]
    fn numeric_transform_basics() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let zero = numeric_hankel(|_| 0.0f64, ord(0.0), 1.0, 10.0, &roots, &spec).unwrap();
        assert_eq!(zero, 0.0);

        // linearity
        let f = |r: f64| (-r * r / 2.0).exp();
        let one = numeric_hankel(f, ord(0.0), 1.3, 12.0, &roots, &spec).unwrap();
        let two = numeric_hankel(|r| 2.0 * f(r), ord(0.0), 1.3, 12.0, &roots, &spec).unwrap();
        assert_abs_diff_eq!(two, 2.0 * one, epsilon = one.abs() * 1e-12);

        assert!(numeric_hankel(f, ord(0.0), 0.0, 12.0, &roots, &spec).is_err());
    }

    #[test]
    fn transform_samples_validate_their_grid() {
        let f = |r: f64| (-r * r / 2.0).exp();
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let s = sample_hankel(f, ord(0.0), &[0.5, 1.0, 2.0], 12.0, &roots, &spec).unwrap();
        assert_eq!(s.grid().len(), s.values().len());
        for (&a, &v) in s.grid().iter().zip(s.values()) {
            assert_abs_diff_eq!(v, (-a * a / 2.0).exp(), epsilon = 1e-10);
        }
        assert!(TransformSample::new(ord(0.0), vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(TransformSample::new(ord(0.0), vec![2.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(TransformSample::new(ord(0.0), vec![1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn gaussian_forward_transform_is_self_reciprocal() {
        // H_0(e^{-r^2/2}) = e^{-alpha^2/2}
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let f = |r: f64| (-r * r / 2.0).exp();
        for &alpha in &[0.5, 1.0, 2.0] {
            let got = numeric_hankel(f, ord(0.0), alpha, 14.0, &roots, &spec).unwrap();
            let expected = (-alpha * alpha / 2.0).exp();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-10);
        }
    }
}
