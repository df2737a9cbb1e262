//! The empirical term-count model: per-eps ordinary least squares of l
//! against the expansion order, the hyperbolic model a/x + b for the slope
//! as a function of eps/R, and the three-step predictor built from them.
//!
//! Only the slope feeds the predictor. The intercept sequence is computed
//! and exported alongside it but deliberately left unmodeled; l0 comes from
//! an exact minimal-term lookup at p' = 1 instead.

use crate::error::{Error, Result};
use crate::fbse::{PartialSum, TargetFunction};
use crate::quadrature::QuadratureSpec;
use crate::real::Real;
use crate::roots::RootTable;
use crate::special::Order;
use crate::term_count::min_terms_from_sums;

/// Ordinary least-squares line.
#[derive(Clone, Copy, Debug)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
}

/// Least-squares fit of y = a/x + b, with the sample grid it was fitted on.
#[derive(Clone, Debug)]
pub struct HyperbolicFit<T> {
    pub a: T,
    pub b: T,
    pub r_squared: T,
    pub grid: Vec<(T, T)>,
}

/// Output of the three-step predictor.
#[derive(Clone, Copy, Debug)]
pub struct Prediction<T> {
    pub m0: T,
    pub l0: u32,
    pub l_hat: T,
    pub l_rounded: i64,
}

/// Ordinary least squares over (x, y) points.
pub fn linear_fit<T: Real>(points: &[(T, T)]) -> Result<LinearFit<T>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!(
            "linear fit needs at least 2 points, got {n}"
        )));
    }
    let nf = T::of(n as f64);
    let mut sx = T::zero();
    let mut sy = T::zero();
    for &(x, y) in points {
        sx = sx + x;
        sy = sy + y;
    }
    let xbar = sx / nf;
    let ybar = sy / nf;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    let mut syy = T::zero();
    for &(x, y) in points {
        let dx = x - xbar;
        let dy = y - ybar;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if sxx == T::zero() {
        return Err(Error::DegenerateInput(
            "linear fit needs at least 2 distinct x values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res = (syy - slope * sxy).max(T::zero());
    let r_squared = if syy == T::zero() {
        T::one()
    } else {
        T::one() - ss_res / syy
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Inclusive eps grid [eps_start, eps_end] in steps of eps_step, with each
/// value snapped to 12 decimals so grid points carry clean decimal labels.
pub fn eps_grid<T: Real>(eps_start: T, eps_end: T, eps_step: T) -> Result<Vec<T>> {
    if !(eps_step > T::zero()) {
        return Err(Error::Domain("eps_step must be > 0".into()));
    }
    if !(eps_start > T::zero()) || eps_end < eps_start {
        return Err(Error::Domain(format!(
            "bad eps range [{eps_start}, {eps_end}]"
        )));
    }
    let count = ((eps_end - eps_start) / eps_step + T::of(1e-9))
        .floor()
        .to_i64()
        .unwrap_or(0)
        + 1;
    let snap = T::of(1e12);
    Ok((0..count)
        .map(|k| {
            let raw = eps_start + eps_step * T::of(k as f64);
            (raw * snap).round() / snap
        })
        .collect())
}

/// One least-squares line of l against p' per eps grid point. Partial sums
/// per p' are shared across the whole grid, so each overlap integral is
/// computed once.
#[allow(clippy::too_many_arguments)]
pub fn slope_grid<T: Real>(
    p: Order<T>,
    q: u32,
    eps_start: T,
    eps_end: T,
    eps_step: T,
    p_prime_range: &[u32],
    l_max: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Vec<(T, LinearFit<T>)>> {
    if p_prime_range.is_empty() {
        return Err(Error::Domain("p_prime_range must be non-empty".into()));
    }
    let grid = eps_grid(eps_start, eps_end, eps_step)?;
    let target = TargetFunction::new(p, q)?;
    let mut sums: Vec<PartialSum<T>> = p_prime_range
        .iter()
        .map(|&pp| Ok(PartialSum::new(target, Order::new(T::of(f64::from(pp)))?)))
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(grid.len());
    for &eps in &grid {
        let mut points = Vec::with_capacity(p_prime_range.len());
        for (idx, &pp) in p_prime_range.iter().enumerate() {
            let r = min_terms_from_sums(&mut sums[idx], eps, l_max, roots, spec)?;
            points.push((T::of(f64::from(pp)), T::of(f64::from(r.l))));
        }
        out.push((eps, linear_fit(&points)?));
    }
    Ok(out)
}

/// Least squares of y over the basis {1/x, 1}; linear in both parameters.
pub fn hyperbolic_fit<T: Real>(samples: &[(T, T)]) -> Result<HyperbolicFit<T>> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!(
            "hyperbolic fit needs at least 2 samples, got {n}"
        )));
    }
    for &(x, _) in samples {
        if !(x > T::zero()) {
            return Err(Error::DegenerateInput(format!(
                "hyperbolic fit requires x > 0, got {x}"
            )));
        }
    }
    let nf = T::of(n as f64);
    let mut sz = T::zero();
    let mut szz = T::zero();
    let mut sy = T::zero();
    let mut szy = T::zero();
    for &(x, y) in samples {
        let z = T::one() / x;
        sz = sz + z;
        szz = szz + z * z;
        sy = sy + y;
        szy = szy + z * y;
    }
    let det = szz * nf - sz * sz;
    if det == T::zero() {
        return Err(Error::DegenerateInput(
            "hyperbolic fit needs at least 2 distinct x values".into(),
        ));
    }
    let a = (nf * szy - sz * sy) / det;
    let b = (szz * sy - sz * szy) / det;

    let ybar = sy / nf;
    let mut ss_res = T::zero();
    let mut ss_tot = T::zero();
    for &(x, y) in samples {
        let fit = a / x + b;
        ss_res = ss_res + (y - fit) * (y - fit);
        ss_tot = ss_tot + (y - ybar) * (y - ybar);
    }
    let r_squared = if ss_tot == T::zero() {
        T::one()
    } else {
        T::one() - ss_res / ss_tot
    };
    Ok(HyperbolicFit {
        a,
        b,
        r_squared,
        grid: samples.to_vec(),
    })
}

/// Three-step prediction: slope from the fitted hyperbola, exact l0 supplied
/// by the caller, `l_hat = m0 (p' - 1) + l0`, rounded half away from zero.
pub fn predict_terms<T: Real>(
    fit: &HyperbolicFit<T>,
    eps_ratio: T,
    p_prime: u32,
    l0: u32,
) -> Result<Prediction<T>> {
    if !(eps_ratio > T::zero()) {
        return Err(Error::Domain(format!(
            "eps_ratio must be > 0, got {eps_ratio}"
        )));
    }
    if p_prime == 0 {
        return Err(Error::Domain("p_prime must be >= 1".into()));
    }
    if l0 == 0 {
        return Err(Error::Domain("l0 must be >= 1".into()));
    }
    let m0 = fit.a / eps_ratio + fit.b;
    let l_hat = m0 * T::of(f64::from(p_prime - 1)) + T::of(f64::from(l0));
    let l_rounded = l_hat.round().to_i64().unwrap_or(i64::MAX);
    Ok(Prediction {
        m0,
        l0,
        l_hat,
        l_rounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_point_line_is_exact() {
        let fit = linear_fit(&[(0.0f64, 1.0), (1.0, 3.0)]).unwrap();
        assert_abs_diff_eq!(fit.slope, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fit.intercept, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn residual_orthogonality() {
        let pts: Vec<(f64, f64)> = (1..=9)
            .map(|i| {
                (
                    i as f64,
                    3.7 * i as f64 - 1.2 + if i % 2 == 0 { 0.25 } else { -0.25 },
                )
            })
            .collect();
        let fit = linear_fit(&pts).unwrap();
        let mut sum_r = 0.0;
        let mut sum_xr = 0.0;
        for &(x, y) in &pts {
            let r = y - (fit.slope * x + fit.intercept);
            sum_r += r;
            sum_xr += x * r;
        }
        assert!(sum_r.abs() < 1e-9 && sum_xr.abs() < 1e-9);
        assert!(fit.r_squared >= 0.0 && fit.r_squared <= 1.0 + 1e-12);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(linear_fit(&[(1.0f64, 2.0)]).is_err());
        assert!(linear_fit(&[(1.0f64, 2.0), (1.0, 3.0)]).is_err());
        assert!(hyperbolic_fit(&[(1.0f64, 2.0)]).is_err());
        assert!(hyperbolic_fit(&[(1.0f64, 2.0), (1.0, 3.0)]).is_err());
        assert!(hyperbolic_fit(&[(0.0f64, 2.0), (1.0, 3.0)]).is_err());
        assert!(hyperbolic_fit(&[(-1.0f64, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn exact_hyperbola_is_recovered() {
        let samples: Vec<(f64, f64)> = (1..=10)
            .map(|i| {
                let x = 0.03 * i as f64;
                (x, 3.0 / x + 2.0)
            })
            .collect();
        let fit = hyperbolic_fit(&samples).unwrap();
        assert_abs_diff_eq!(fit.a, 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.b, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-10);
        assert_eq!(fit.grid.len(), 10);
    }

    #[test]
    fn two_samples_interpolate() {
        let fit = hyperbolic_fit(&[(0.5f64, 4.0), (2.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(fit.a / 0.5 + fit.b, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.a / 2.0 + fit.b, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn predictor_arithmetic() {
        let fit = HyperbolicFit {
            a: 0.0f64,
            b: 1.0,
            r_squared: 1.0,
            grid: vec![(0.1, 1.0), (0.2, 1.0)],
        };
        let p = predict_terms(&fit, 0.2, 5, 1).unwrap();
        assert_abs_diff_eq!(p.l_hat, 5.0, epsilon = 1e-14);
        assert_eq!(p.l_rounded, 5);
        // p' = 1 returns l0 exactly
        let p = predict_terms(&fit, 0.2, 1, 7).unwrap();
        assert_abs_diff_eq!(p.l_hat, 7.0, epsilon = 1e-14);
        assert!(predict_terms(&fit, 0.0, 1, 1).is_err());
        assert!(predict_terms(&fit, 0.1, 0, 1).is_err());
    }

    #[test]
    fn eps_grid_is_inclusive_and_snapped() {
        let grid = eps_grid(0.01f64, 0.36, 0.01).unwrap();
        assert_eq!(grid.len(), 36);
        assert_eq!(grid[0], 0.01);
        assert_eq!(grid[5], 0.06);
        assert_eq!(grid[35], 0.36);
        assert!(eps_grid(0.01f64, 0.36, 0.0).is_err());
        assert!(eps_grid(0.2f64, 0.1, 0.01).is_err());
    }
}
