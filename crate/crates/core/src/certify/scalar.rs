//! Number types the inequality expressions are generic over.
//!
//! An expression written once against [`Scalar`] evaluates pointwise with
//! `f64`, as an enclosure with [`Interval`], and with value, gradient and
//! Hessian through [`Jet`] over either base.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use super::interval::Interval;

pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    type Base: Base;

    fn lift(c: Self::Base) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqr(&self) -> Self;
    fn recip(&self) -> Self;
    /// `self^e` on the nonnegative part of `self`.
    fn pow_nonneg(&self, e: &Self::Base) -> Self;

    fn constant(x: f64) -> Self {
        Self::lift(Self::Base::exact(x))
    }
}

/// A scalar that is its own base: constants are computed in it.
pub trait Base: Scalar<Base = Self> + Copy + Send + Sync {
    fn exact(x: f64) -> Self;
    fn pi() -> Self;
}

impl Scalar for f64 {
    type Base = f64;

    fn lift(c: f64) -> f64 {
        c
    }
    fn sin(&self) -> f64 {
        f64::sin(*self)
    }
    fn cos(&self) -> f64 {
        f64::cos(*self)
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn sqr(&self) -> f64 {
        self * self
    }
    fn recip(&self) -> f64 {
        1.0 / self
    }
    fn pow_nonneg(&self, e: &f64) -> f64 {
        self.max(0.0).powf(*e)
    }
}

impl Base for f64 {
    fn exact(x: f64) -> f64 {
        x
    }
    fn pi() -> f64 {
        PI
    }
}

impl Scalar for Interval {
    type Base = Interval;

    fn lift(c: Interval) -> Interval {
        c
    }
    fn sin(&self) -> Interval {
        Interval::sin(*self)
    }
    fn cos(&self) -> Interval {
        Interval::cos(*self)
    }
    fn ln(&self) -> Interval {
        Interval::ln(*self)
    }
    fn sqr(&self) -> Interval {
        Interval::sqr(*self)
    }
    fn recip(&self) -> Interval {
        Interval::recip(*self)
    }
    fn pow_nonneg(&self, e: &Interval) -> Interval {
        Interval::pow_nonneg(*self, *e)
    }
}

impl Base for Interval {
    fn exact(x: f64) -> Interval {
        Interval::point(x)
    }
    fn pi() -> Interval {
        Interval::pi()
    }
}

/// Second-order jet in `N` variables. The Hessian is kept symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T, const N: usize> {
    pub value: T,
    pub grad: [T; N],
    pub hess: [[T; N]; N],
}

impl<T: Base, const N: usize> Jet<T, N> {
    pub fn constant_of(value: T) -> Self {
        let z = T::exact(0.0);
        Self {
            value,
            grad: [z; N],
            hess: [[z; N]; N],
        }
    }

    /// The coordinate function `x_i` with value `value`.
    pub fn variable(value: T, i: usize) -> Self {
        let mut j = Self::constant_of(value);
        j.grad[i] = T::exact(1.0);
        j
    }

    /// Composes with a univariate function given its value and first two
    /// derivatives at `self.value`.
    fn chain(&self, f: T, d1: T, d2: T) -> Self {
        let mut out = Self::constant_of(f);
        for i in 0..N {
            out.grad[i] = d1 * self.grad[i];
            for j in i..N {
                out.hess[i][j] = d1 * self.hess[i][j] + d2 * (self.grad[i] * self.grad[j]);
                out.hess[j][i] = out.hess[i][j];
            }
        }
        out
    }
}

impl<T: Base, const N: usize> Add for Jet<T, N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        out.value = self.value + o.value;
        for i in 0..N {
            out.grad[i] = self.grad[i] + o.grad[i];
            for j in i..N {
                out.hess[i][j] = self.hess[i][j] + o.hess[i][j];
                out.hess[j][i] = out.hess[i][j];
            }
        }
        out
    }
}

impl<T: Base, const N: usize> Neg for Jet<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = self;
        out.value = -self.value;
        for i in 0..N {
            out.grad[i] = -self.grad[i];
            for j in i..N {
                out.hess[i][j] = -self.hess[i][j];
                out.hess[j][i] = out.hess[i][j];
            }
        }
        out
    }
}

impl<T: Base, const N: usize> Sub for Jet<T, N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Base, const N: usize> Mul for Jet<T, N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.value, o.value);
        let mut out = Self::constant_of(a * b);
        for i in 0..N {
            out.grad[i] = self.grad[i] * b + a * o.grad[i];
            for j in i..N {
                out.hess[i][j] = self.hess[i][j] * b
                    + a * o.hess[i][j]
                    + self.grad[i] * o.grad[j]
                    + o.grad[i] * self.grad[j];
                out.hess[j][i] = out.hess[i][j];
            }
        }
        out
    }
}

impl<T: Base, const N: usize> Scalar for Jet<T, N> {
    type Base = T;

    fn lift(c: T) -> Self {
        Self::constant_of(c)
    }

    fn sin(&self) -> Self {
        let (s, c) = (self.value.sin(), self.value.cos());
        self.chain(s, c, -s)
    }

    fn cos(&self) -> Self {
        let (s, c) = (self.value.sin(), self.value.cos());
        self.chain(c, -s, -c)
    }

    fn ln(&self) -> Self {
        let inv = self.value.recip();
        self.chain(self.value.ln(), inv, -inv.sqr())
    }

    fn sqr(&self) -> Self {
        let two = T::exact(2.0);
        self.chain(self.value.sqr(), two * self.value, two)
    }

    fn recip(&self) -> Self {
        let inv = self.value.recip();
        let inv2 = inv.sqr();
        self.chain(inv, -inv2, T::exact(2.0) * inv2 * inv)
    }

    fn pow_nonneg(&self, e: &T) -> Self {
        let one = T::exact(1.0);
        let u = self.value;
        let d1 = *e * u.pow_nonneg(&(*e - one));
        let d2 = *e * (*e - one) * u.pow_nonneg(&(*e - one - one));
        self.chain(u.pow_nonneg(e), d1, d2)
    }
}
