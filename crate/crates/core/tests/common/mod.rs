//! Shared oracles for the integration suites. These deliberately avoid the
//! library's quadrature and root-refinement paths so they can serve as
//! independent cross-checks.

#![allow(dead_code)]

/// Locate a zero of `f` by bisection on a verified sign-change bracket.
pub fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    assert!(
        f_lo.signum() != f(hi).signum(),
        "no sign change on [{lo}, {hi}]"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * mid.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Composite trapezoid rule on a uniform grid of `n` intervals.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for i in 1..n {
        acc += f(a + h * i as f64);
    }
    acc * h
}
