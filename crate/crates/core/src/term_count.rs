//! Minimal-term search: the smallest l whose cumulative overlap sum strictly
//! exceeds the error threshold, plus grid sweeps and the monotonicity scan
//! over expansion orders.

use crate::error::{Error, Result};
use crate::fbse::{PartialSum, TargetFunction};
use crate::quadrature::QuadratureSpec;
use crate::real::Real;
use crate::roots::RootTable;
use crate::special::Order;

/// Default search ceiling; the largest term count exercised by the reference
/// tables is 198, so this leaves generous headroom.
pub const DEFAULT_L_MAX: u32 = 1000;

/// A single minimal-term question: how many order-p' terms does `target`
/// need to get within eps_ratio (= eps/R) in the weighted norm?
#[derive(Clone, Copy, Debug)]
pub struct TermCountQuery<T> {
    pub target: TargetFunction<T>,
    pub p_prime: Order<T>,
    pub eps_ratio: T,
    pub l_max: u32,
}

impl<T: Real> TermCountQuery<T> {
    pub fn new(
        target: TargetFunction<T>,
        p_prime: Order<T>,
        eps_ratio: T,
        l_max: u32,
    ) -> Result<Self> {
        if !(eps_ratio > T::zero()) || !eps_ratio.is_finite() {
            return Err(Error::Domain(format!(
                "eps_ratio must be finite and > 0, got {eps_ratio}"
            )));
        }
        if l_max == 0 {
            return Err(Error::Domain("l_max must be >= 1".into()));
        }
        Ok(TermCountQuery {
            target,
            p_prime,
            eps_ratio,
            l_max,
        })
    }
}

/// Outcome of a minimal-term search. When `shortcut_used` is set the
/// threshold was negative, so a single term suffices without computing any
/// overlap integral (the cumulative sum, being nonnegative, beats it
/// trivially); `achieved_sum` is then 0.
#[derive(Clone, Copy, Debug)]
pub struct TermCountResult<T> {
    pub l: u32,
    pub threshold: T,
    pub achieved_sum: T,
    pub shortcut_used: bool,
}

/// The inequality threshold `J_{p+1}(u_{p,q})^2 / 4 - eps_ratio^2 / 2`.
pub fn threshold<T: Real>(
    target: &TargetFunction<T>,
    eps_ratio: T,
    roots: &RootTable<T>,
) -> Result<T> {
    if !(eps_ratio > T::zero()) || !eps_ratio.is_finite() {
        return Err(Error::Domain(format!(
            "eps_ratio must be finite and > 0, got {eps_ratio}"
        )));
    }
    let norm_sq = target.squared_norm(roots)?;
    Ok(norm_sq * T::of(0.5) - eps_ratio * eps_ratio * T::of(0.5))
}

/// Smallest l with `cumulative[l-1] > threshold` (strict, no epsilon slack).
pub fn min_terms<T: Real>(
    query: &TermCountQuery<T>,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<TermCountResult<T>> {
    let mut sums = PartialSum::new(query.target, query.p_prime);
    min_terms_from_sums(&mut sums, query.eps_ratio, query.l_max, roots, spec)
}

/// Reuse (and extend) an existing partial sum; sweeping many eps values
/// against one cached [`PartialSum`] computes each overlap integral once.
pub fn min_terms_from_sums<T: Real>(
    sums: &mut PartialSum<T>,
    eps_ratio: T,
    l_max: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<TermCountResult<T>> {
    let target = sums.target();
    let th = threshold(&target, eps_ratio, roots)?;
    if l_max == 0 {
        return Err(Error::Domain("l_max must be >= 1".into()));
    }
    if th < T::zero() {
        return Ok(TermCountResult {
            l: 1,
            threshold: th,
            achieved_sum: T::zero(),
            shortcut_used: true,
        });
    }
    // scan what is already computed, extending one term at a time
    let mut l = 1u32;
    while l <= l_max {
        if sums.len() < l {
            sums.extend_to(l, roots, spec)?;
        }
        let achieved = sums.cumulative()[l as usize - 1];
        if achieved > th {
            return Ok(TermCountResult {
                l,
                threshold: th,
                achieved_sum: achieved,
                shortcut_used: false,
            });
        }
        l += 1;
    }
    Err(Error::LMaxExceeded {
        l_max,
        achieved: sums.cumulative()[l_max as usize - 1]
            .to_f64()
            .unwrap_or(f64::NAN),
        threshold: th.to_f64().unwrap_or(f64::NAN),
    })
}

/// One sweep cell: the key tuple plus the minimal term count.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow<T> {
    pub p: T,
    pub q: u32,
    pub p_prime: T,
    pub eps_ratio: T,
    pub l: u32,
}

/// Cartesian sweep output, ordered by (p, q, p_prime, eps_ratio).
#[derive(Clone, Debug, Default)]
pub struct SweepTable<T> {
    pub rows: Vec<SweepRow<T>>,
}

/// Evaluate every (target, p', eps) combination. Cells that share a
/// (target, p') pair reuse one partial sum.
pub fn sweep<T: Real>(
    targets: &[TargetFunction<T>],
    p_primes: &[Order<T>],
    eps_ratios: &[T],
    l_max: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<SweepTable<T>> {
    if targets.is_empty() || p_primes.is_empty() || eps_ratios.is_empty() {
        return Err(Error::Domain(
            "sweep requires non-empty target, p_prime, and eps lists".into(),
        ));
    }
    let mut targets: Vec<TargetFunction<T>> = targets.to_vec();
    targets.sort_by(|a, b| {
        (a.p().value(), a.q())
            .partial_cmp(&(b.p().value(), b.q()))
            .expect("orders are finite")
    });
    targets.dedup_by_key(|t| (t.p().value().to_f64().map(f64::to_bits), t.q()));
    let mut p_primes: Vec<Order<T>> = p_primes.to_vec();
    p_primes.sort_by(|a, b| {
        a.value()
            .partial_cmp(&b.value())
            .expect("orders are finite")
    });
    p_primes.dedup_by_key(|o| o.value().to_f64().map(f64::to_bits));
    let mut eps_ratios: Vec<T> = eps_ratios.to_vec();
    eps_ratios.sort_by(|a, b| a.partial_cmp(b).expect("eps values are finite"));
    eps_ratios.dedup();

    let mut rows = Vec::with_capacity(targets.len() * p_primes.len() * eps_ratios.len());
    for target in &targets {
        for &p_prime in &p_primes {
            let mut sums = PartialSum::new(*target, p_prime);
            for &eps in &eps_ratios {
                let result = min_terms_from_sums(&mut sums, eps, l_max, roots, spec)?;
                rows.push(SweepRow {
                    p: target.p().value(),
                    q: target.q(),
                    p_prime: p_prime.value(),
                    eps_ratio: eps,
                    l: result.l,
                });
            }
        }
    }
    Ok(SweepTable { rows })
}

/// Term counts over p' = 0..=p_prime_max at a fixed eps, with every adjacent
/// pair that breaks the away-from-p monotonicity.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    /// (p_prime, l) in increasing p_prime order.
    pub term_counts: Vec<(u32, u32)>,
    /// Adjacent order pairs (i, i+1) where l moves the wrong way.
    pub violations: Vec<(u32, u32)>,
}

/// Scan integer expansion orders 0..=p_prime_max. Moving away from the
/// target order p the count must never decrease; on the left side (p' < p)
/// that means l(i) >= l(i+1), on the right side l(i+1) >= l(i).
pub fn monotonicity_report<T: Real>(
    target: &TargetFunction<T>,
    p_prime_max: u32,
    eps_ratio: T,
    l_max: u32,
    roots: &RootTable<T>,
    spec: &QuadratureSpec<T>,
) -> Result<MonotonicityReport> {
    let p = target.p().value();
    if T::of(f64::from(p_prime_max)) < p {
        return Err(Error::Domain(format!(
            "p_prime_max = {p_prime_max} must reach the target order {p}"
        )));
    }
    let mut term_counts = Vec::with_capacity(p_prime_max as usize + 1);
    for pp in 0..=p_prime_max {
        let p_prime = Order::new(T::of(f64::from(pp)))?;
        let query = TermCountQuery::new(*target, p_prime, eps_ratio, l_max)?;
        let result = min_terms(&query, roots, spec)?;
        term_counts.push((pp, result.l));
    }
    let mut violations = Vec::new();
    for w in term_counts.windows(2) {
        let ((i, l_i), (j, l_j)) = (w[0], w[1]);
        let left_of_p = T::of(f64::from(j)) <= p;
        let right_of_p = T::of(f64::from(i)) >= p;
        if (left_of_p && l_i < l_j) || (right_of_p && l_j < l_i) {
            violations.push((i, j));
        }
    }
    Ok(MonotonicityReport {
        term_counts,
        violations,
    })
}
