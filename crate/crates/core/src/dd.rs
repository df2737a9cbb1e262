//! Minimal double-word ("double-double") arithmetic.
//!
//! The ascending power series for J_nu cancels catastrophically once the
//! argument grows: at x = 36 the largest term is ~1e13 while the sum is
//! O(1). Accumulating in a hi/lo pair keeps the cancellation harmless up to
//! the series/asymptotic crossover.

use crate::real::Real;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Dd<T> {
    pub hi: T,
    pub lo: T,
}

#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn split<T: Real>(a: T) -> (T, T) {
    let c = T::splitter() * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

// Dekker product; avoids mul_add, which lowers to a libm call on targets
// without hardware FMA.
#[inline]
fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

impl<T: Real> Dd<T> {
    #[inline]
    pub fn from(x: T) -> Self {
        Dd {
            hi: x,
            lo: T::zero(),
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_scalar(self, rhs: T) -> Self {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_scalar(self, rhs: T) -> Self {
        let q1 = self.hi / rhs;
        let (p, e) = two_prod(q1, rhs);
        let r = ((self.hi - p) - e) + self.lo;
        let q2 = r / rhs;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_dd(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self.add(rhs.mul_scalar(q1).neg());
        let q2 = r.hi / rhs.hi;
        let r2 = r.add(rhs.mul_scalar(q2).neg());
        let q3 = r2.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo: lo + q3 }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    /// Exact product of two scalars.
    #[inline]
    pub fn product(a: T, b: T) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    /// Exact sum of two scalars.
    #[inline]
    pub fn sum(a: T, b: T) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }
}
