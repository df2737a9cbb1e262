//! Composite Gauss-Legendre quadrature with caller-supplied panel
//! boundaries.
//!
//! Integrands here are smooth between consecutive zeros of their most
//! oscillatory Bessel factor, so fixed-order Gauss per inter-zero panel
//! converges geometrically. Error control doubles every panel and compares
//! the two composite values; node placement is deterministic, which keeps
//! results bit-reproducible run to run.

use crate::error::{Error, Result};
use crate::real::Real;

const MAX_DOUBLINGS: usize = 10;

/// Panel layout and stopping tolerance for the quadrature engine.
#[derive(Clone, Debug)]
pub struct QuadratureSpec<T> {
    panels_per_oscillation: usize,
    nodes_per_panel: usize,
    abs_tolerance: T,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(
        panels_per_oscillation: usize,
        nodes_per_panel: usize,
        abs_tolerance: T,
    ) -> Result<Self> {
        if panels_per_oscillation == 0 {
            return Err(Error::Domain("panels_per_oscillation must be >= 1".into()));
        }
        if nodes_per_panel < 8 {
            return Err(Error::Domain(format!(
                "nodes_per_panel must be >= 8, got {nodes_per_panel}"
            )));
        }
        if !(abs_tolerance > T::zero()) {
            return Err(Error::Domain("abs_tolerance must be > 0".into()));
        }
        Ok(QuadratureSpec {
            panels_per_oscillation,
            nodes_per_panel,
            abs_tolerance,
        })
    }

    pub fn panels_per_oscillation(&self) -> usize {
        self.panels_per_oscillation
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn abs_tolerance(&self) -> T {
        self.abs_tolerance
    }

    /// Same layout with a different stopping tolerance.
    pub fn with_tolerance(&self, abs_tolerance: T) -> Result<Self> {
        Self::new(
            self.panels_per_oscillation,
            self.nodes_per_panel,
            abs_tolerance,
        )
    }
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        let tol = T::of(1e-12).max(T::epsilon() * T::of(64.0));
        QuadratureSpec {
            panels_per_oscillation: 1,
            nodes_per_panel: 32,
            abs_tolerance: tol,
        }
    }
}

/// Integrate `f` over [a, b] with initial panel boundaries at `breaks`
/// (interior points; anything outside (a, b) is ignored).
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    breaks: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if !(b >= a) {
        return Err(Error::Domain(format!(
            "integration bounds reversed: [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(T::zero());
    }
    let rule = gauss_legendre_rule::<T>(spec.nodes_per_panel);

    let mut edges = Vec::with_capacity(breaks.len() + 2);
    edges.push(a);
    for &p in breaks {
        if p > a && p < b && p > *edges.last().expect("non-empty") {
            edges.push(p);
        }
    }
    edges.push(b);

    let mut panels: Vec<(T, T)> = Vec::new();
    let per = T::of(spec.panels_per_oscillation as f64);
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let width = (hi - lo) / per;
        for k in 0..spec.panels_per_oscillation {
            let p_lo = lo + width * T::of(k as f64);
            let p_hi = if k + 1 == spec.panels_per_oscillation {
                hi
            } else {
                lo + width * T::of((k + 1) as f64)
            };
            panels.push((p_lo, p_hi));
        }
    }

    let mut prev = composite(&f, &panels, &rule);
    for refinement in 1..=MAX_DOUBLINGS {
        let mut halved = Vec::with_capacity(panels.len() * 2);
        for &(lo, hi) in &panels {
            let mid = (lo + hi) * T::of(0.5);
            halved.push((lo, mid));
            halved.push((mid, hi));
        }
        let cur = composite(&f, &halved, &rule);
        let delta = (cur - prev).abs();
        if delta <= spec.abs_tolerance {
            return Ok(cur);
        }
        if refinement == MAX_DOUBLINGS {
            return Err(Error::ToleranceNotMet {
                achieved: delta.to_f64().unwrap_or(f64::NAN),
                requested: spec.abs_tolerance.to_f64().unwrap_or(f64::NAN),
                refinements: refinement,
            });
        }
        prev = cur;
        panels = halved;
    }
    unreachable!("refinement loop always returns");
}

fn composite<T: Real, F: Fn(T) -> T>(f: &F, panels: &[(T, T)], rule: &GaussRule<T>) -> T {
    let (nodes, weights) = rule;
    let half = T::of(0.5);
    let mut total = T::zero();
    for &(lo, hi) in panels {
        let mid = (lo + hi) * half;
        let scale = (hi - lo) * half;
        let mut acc = T::zero();
        for (&x, &w) in nodes.iter().zip(weights) {
            acc = acc + w * f(mid + scale * x);
        }
        total = total + scale * acc;
    }
    total
}

/// Node and weight vectors of a quadrature rule on [-1, 1].
pub type GaussRule<T> = (Vec<T>, Vec<T>);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]
/// (Newton iteration on the Legendre recurrence).
pub fn gauss_legendre_rule<T: Real>(n: usize) -> GaussRule<T> {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let m = n.div_ceil(2);
    let nf = T::of(n as f64);
    for i in 0..m {
        let mut z = (T::pi() * (T::of(i as f64) + T::of(0.75)) / (nf + T::of(0.5))).cos();
        let mut pp = T::zero();
        for _ in 0..100 {
            let mut p1 = T::one();
            let mut p2 = T::zero();
            for j in 0..n {
                let jf = T::of(j as f64);
                let p3 = p2;
                p2 = p1;
                p1 = ((T::of(2.0) * jf + T::one()) * z * p2 - jf * p3) / (jf + T::one());
            }
            pp = nf * (z * p1 - p2) / (z * z - T::one());
            let dz = p1 / pp;
            z = z - dz;
            if dz.abs() <= T::epsilon() * T::of(2.0) {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = T::of(2.0) / ((T::one() - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
