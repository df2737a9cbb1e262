//! Fourier-Bessel expansion machinery: coefficients, cross-order overlap
//! terms, partial sums, and the truncation error in the weighted norm.
//!
//! For a target x(t) = J_p(u_{p,q} t) on [0, 1] expanded in the order-p'
//! basis, the squared truncation error after l terms collapses to
//!
//! ```text
//! ||x - x_l||^2 = (1/2) J_{p+1}(u_{p,q})^2 - 2 sum_{n=1}^{l} T_n
//! ```
//!
//! where T_n is the squared normalized overlap integral. Everything here is
//! computed at R = 1; the overlap terms depend only on the ratio eps/R, so
//! nothing is lost (see the invariance test).

use crate::error::{Error, Result};
use crate::geometry::RadialFunction;
use crate::quadrature::{integrate, QuadratureSpec};
use crate::real::Real;
use crate::roots::RootTable;
use crate::special::{bessel_j_unchecked, Order};

/// The scaled Bessel function J_p(u_{p,q} t) on [0, 1]; vanishes at t = 1 by
/// construction.
#[derive(Clone, Copy, Debug)]
pub struct TargetFunction<T> {
    p: Order<T>,
    q: u32,
}

impl<T: Real> TargetFunction<T> {
    pub fn new(p: Order<T>, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("target root index q must be >= 1".into()));
        }
        Ok(TargetFunction { p, q })
    }

    pub fn p(&self) -> Order<T> {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The scale root u_{p,q}.
    pub fn scale_root(&self, roots: &RootTable<T>) -> Result<T> {
        roots.root(self.p, self.q)
    }

    /// Squared weighted norm of the target, (1/2) J_{p+1}(u_{p,q})^2.
    pub fn squared_norm(&self, roots: &RootTable<T>) -> Result<T> {
        let u = self.scale_root(roots)?;
        let j = bessel_j_unchecked(self.p.value() + T::one(), u);
        Ok(j * j * T::of(0.5))
    }

    pub fn eval(&self, roots: &RootTable<T>, t: T) -> Result<T> {
        let u = self.scale_root(roots)?;
        Ok(bessel_j_unchecked(self.p.value(), u * t))
    }

    /// View as a [`RadialFunction`] on [0, 1], with quadrature breaks at the
    /// interior zeros.
    pub fn to_radial(&self, roots: &RootTable<T>) -> Result<RadialFunction<T>> {
        let zeros = roots.roots_up_to(self.p, self.q)?;
        let u = zeros[self.q as usize - 1];
        let breaks: Vec<T> = zeros[..self.q as usize - 1]
            .iter()
            .map(|&z| z / u)
            .collect();
        let nu = self.p.value();
        RadialFunction::with_breakpoints(T::one(), move |t| bessel_j_unchecked(nu, u * t), breaks)
    }
}

/// One term of an expansion: index, coefficient c_n, and the nonnegative
/// contribution T_n it makes to the cumulative overlap sum.
#[derive(Clone, Copy, Debug)]
pub struct ExpansionTerm<T> {
    pub n: u32,
    pub coefficient: T,
    pub contribution: T,
}

/// Incrementally extended expansion of a target in a (possibly different)
/// order-p' basis. `cumulative[l-1]` holds `sum_{n=1..l} T_n`; extending the
/// sum never changes earlier entries.
pub struct PartialSum<T> {
    target: TargetFunction<T>,
    p_prime: Order<T>,
    terms: Vec<ExpansionTerm<T>>,
    cumulative: Vec<T>,
}

impl<T: Real> PartialSum<T> {
    pub fn new(target: TargetFunction<T>, p_prime: Order<T>) -> Self {
        PartialSum {
            target,
            p_prime,
            terms: Vec::new(),
            cumulative: Vec::new(),
        }
    }

    pub fn target(&self) -> TargetFunction<T> {
        self.target
    }

    pub fn p_prime(&self) -> Order<T> {
        self.p_prime
    }

    pub fn terms(&self) -> &[ExpansionTerm<T>] {
        &self.terms
    }

    pub fn cumulative(&self) -> &[T] {
        &self.cumulative
    }

    pub fn len(&self) -> u32 {
        self.terms.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Compute terms up to index `l_max` (no-op if already that long).
    pub fn extend_to(
        &mut self,
        l_max: u32,
        roots: &RootTable<T>,
        spec: &QuadratureSpec<T>,
    ) -> Result<()> {
        while (self.terms.len() as u32) < l_max {
            let n = self.terms.len() as u32 + 1;
            let (coefficient, contribution) =
                coefficient_and_overlap(&self.target, self.p_prime, n, roots, spec)?;
            let prev = self.cumulative.last().copied().unwrap_or_else(T::zero);
            self.terms.push(ExpansionTerm {
                n,
                coefficient,
                contribution,
            });
            self.cumulative.push(prev + contribution);
        }
        Ok(())
    }
}

fn coefficient_and_overlap<T: Real>(
    target: &TargetFunction<T>,
    p_prime: Order<T>,
    n: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<(T, T)> {
    let target_zeros = roots.roots_up_to(target.p, target.q)?;
    let basis_zeros = roots.roots_up_to(p_prime, n)?;
    let u_target = target_zeros[target.q as usize - 1];
    let u_basis = basis_zeros[n as usize - 1];

    // panel boundaries at the scaled zeros of the faster-oscillating factor
    let breaks: Vec<T> = if u_target >= u_basis {
        target_zeros[..target.q as usize - 1]
            .iter()
            .map(|&z| z / u_target)
            .collect()
    } else {
        basis_zeros[..n as usize - 1]
            .iter()
            .map(|&z| z / u_basis)
            .collect()
    };

    let p = target.p.value();
    let pp = p_prime.value();
    let overlap = integrate(
        |t| t * bessel_j_unchecked(p, u_target * t) * bessel_j_unchecked(pp, u_basis * t),
        T::zero(),
        T::one(),
        &breaks,
        spec,
    )?;
    let denom = bessel_j_unchecked(pp + T::one(), u_basis);
    let normalized = overlap / denom;
    Ok((
        T::of(2.0) * overlap / (denom * denom),
        normalized * normalized,
    ))
}

/// Expansion coefficient c_n of an arbitrary radial function in the order
/// `alpha` basis on [0, R]:
///
/// ```text
/// c_n = 2 int_0^R r x(r) J_alpha(u_{alpha,n} r / R) dr / (R J_{alpha+1}(u_{alpha,n}))^2
/// ```
pub fn coefficient<T: Real>(
    x: &RadialFunction<T>,
    alpha: Order<T>,
    n: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("coefficient index n must be >= 1".into()));
    }
    let r_max = x.r_max();
    let boundary = x.eval(r_max).abs();
    let boundary_tol = T::of(1e-10).max(T::epsilon() * T::of(128.0));
    if boundary > boundary_tol {
        return Err(Error::Domain(format!(
            "function must vanish at R (|x(R)| = {boundary})"
        )));
    }
    let basis_zeros = roots.roots_up_to(alpha, n)?;
    let u = basis_zeros[n as usize - 1];
    let mut breaks: Vec<T> = x.breakpoints().to_vec();
    breaks.extend(basis_zeros[..n as usize - 1].iter().map(|&z| r_max * z / u));
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("breaks are finite"));
    breaks.dedup();

    let a = alpha.value();
    let overlap = integrate(
        |r| r * x.eval(r) * bessel_j_unchecked(a, u * r / r_max),
        T::zero(),
        r_max,
        &breaks,
        spec,
    )?;
    let denom = r_max * bessel_j_unchecked(a + T::one(), u);
    Ok(T::of(2.0) * overlap / (denom * denom))
}

/// The squared normalized overlap T_n of the target with the n-th order-p'
/// basis element. Always >= 0; zero exactly when the overlap integral
/// vanishes.
pub fn overlap_term<T: Real>(
    target: &TargetFunction<T>,
    p_prime: Order<T>,
    n: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("overlap index n must be >= 1".into()));
    }
    coefficient_and_overlap(target, p_prime, n, roots, spec).map(|(_, t)| t)
}

/// Terms and running sums up to `l_max`.
pub fn partial_sums<T: Real>(
    target: &TargetFunction<T>,
    p_prime: Order<T>,
    l_max: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<PartialSum<T>> {
    if l_max == 0 {
        return Err(Error::Domain("l_max must be >= 1".into()));
    }
    let mut sums = PartialSum::new(*target, p_prime);
    sums.extend_to(l_max, roots, spec)?;
    Ok(sums)
}

/// Weighted truncation error ||x - x_l|| after l terms of the order-p'
/// expansion. The max(0, .) clamp absorbs negative round-off once the series
/// has effectively converged (increments below ~1e-14 are numerically zero).
pub fn truncation_error<T: Real>(
    target: &TargetFunction<T>,
    p_prime: Order<T>,
    l: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    let sums = partial_sums(target, p_prime, l, roots, spec)?;
    truncation_error_from(&sums, l, roots)
}

/// Same as [`truncation_error`], reusing an existing [`PartialSum`] of
/// length >= l.
pub fn truncation_error_from<T: Real>(
    sums: &PartialSum<T>,
    l: u32,
    roots: &RootTable<T>,
) -> Result<T> {
    if l == 0 || l > sums.len() {
        return Err(Error::Domain(format!(
            "l = {l} outside computed range 1..={}",
            sums.len()
        )));
    }
    let norm_sq = sums.target().squared_norm(roots)?;
    let covered = T::of(2.0) * sums.cumulative()[l as usize - 1];
    Ok((norm_sq - covered).max(T::zero()).sqrt())
}

/// Evaluate the l-term reconstruction `sum_n c_n J_p'(u_{p',n} t)` at t.
pub fn reconstruct<T: Real>(
    target: &TargetFunction<T>,
    p_prime: Order<T>,
    l: u32,
    t: T,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if t < T::zero() || t > T::one() {
        return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
    }
    let sums = partial_sums(target, p_prime, l, roots, spec)?;
    let pp = p_prime.value();
    let mut acc = T::zero();
    for term in sums.terms() {
        let u = roots.root(p_prime, term.n)?;
        acc = acc + term.coefficient * bessel_j_unchecked(pp, u * t);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ord(v: f64) -> Order<f64> {
        Order::new(v).unwrap()
    }

    #[test]
    fn own_basis_coefficients_are_kronecker() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(0.0), 1).unwrap();
        let x = target.to_radial(&roots).unwrap();
        let c1 = coefficient(&x, ord(0.0), 1, &roots, &spec).unwrap();
        let c2 = coefficient(&x, ord(0.0), 2, &roots, &spec).unwrap();
        assert_abs_diff_eq!(c1, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c2, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn coefficient_is_linear_in_the_function() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(0.0), 1).unwrap();
        let u = target.scale_root(&roots).unwrap();
        let x = RadialFunction::new(1.0, move |t| bessel_j_unchecked(0.0, u * t)).unwrap();
        let kx = RadialFunction::new(1.0, move |t| 2.5 * bessel_j_unchecked(0.0, u * t)).unwrap();
        let c = coefficient(&x, ord(1.0), 3, &roots, &spec).unwrap();
        let kc = coefficient(&kx, ord(1.0), 3, &roots, &spec).unwrap();
        assert_abs_diff_eq!(kc, 2.5 * c, epsilon = 2.5 * c.abs() * 1e-12);
    }

    #[test]
    fn coefficient_rejects_nonvanishing_boundary() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let x = RadialFunction::new(1.0, |_| 1.0f64).unwrap();
        assert!(coefficient(&x, ord(0.0), 1, &roots, &spec).is_err());
    }

    #[test]
    fn own_basis_overlap_is_the_norm_constant() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(0.0), 1).unwrap();
        let t1 = overlap_term(&target, ord(0.0), 1, &roots, &spec).unwrap();
        assert_abs_diff_eq!(t1, 0.06738, epsilon = 5e-5);
        let t3 = overlap_term(&target, ord(0.0), 3, &roots, &spec).unwrap();
        assert!(t3.abs() <= 1e-10);
    }

    #[test]
    fn partial_sums_extend_without_rewriting_history() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(0.0), 1).unwrap();
        let mut sums = PartialSum::new(target, ord(1.0));
        sums.extend_to(5, &roots, &spec).unwrap();
        let head: Vec<f64> = sums.cumulative().to_vec();
        sums.extend_to(12, &roots, &spec).unwrap();
        assert_eq!(&sums.cumulative()[..5], head.as_slice());
        assert_eq!(sums.len(), 12);
        // sums of squares are non-decreasing
        for w in sums.cumulative().windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn own_basis_increment_lands_at_q() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(2.0), 3).unwrap();
        let sums = partial_sums(&target, ord(2.0), 5, &roots, &spec).unwrap();
        let cum = sums.cumulative();
        let norm_sq = target.squared_norm(&roots).unwrap();
        // single jump of J_{p+1}(u_{p,q})^2 / 4 at n = q, nothing elsewhere
        assert_abs_diff_eq!(cum[2] - cum[1], norm_sq / 2.0, epsilon = 1e-9);
        assert!(cum[1].abs() <= 1e-9 && (cum[4] - cum[2]).abs() <= 1e-9);
    }

    #[test]
    fn truncation_error_vanishes_in_own_basis() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(1.0), 2).unwrap();
        let err = truncation_error(&target, ord(1.0), 2, &roots, &spec).unwrap();
        assert!(err <= 1e-7, "err = {err:e}");
    }

    #[test]
    fn reconstruct_boundary_and_own_basis() {
        let roots = RootTable::new();
        let spec = QuadratureSpec::default();
        let target = TargetFunction::new(ord(0.0), 1).unwrap();
        let at_boundary = reconstruct(&target, ord(2.0), 8, 1.0, &roots, &spec).unwrap();
        assert!(at_boundary.abs() <= 1e-12);

        let own = reconstruct(&target, ord(0.0), 1, 0.5, &roots, &spec).unwrap();
        let direct = target.eval(&roots, 0.5).unwrap();
        assert_abs_diff_eq!(own, direct, epsilon = 1e-7);
        assert!(reconstruct(&target, ord(0.0), 1, 1.5, &roots, &spec).is_err());
    }
}
