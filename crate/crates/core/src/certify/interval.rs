//! Closed intervals with outward rounding.
//!
//! Every operation computes endpoint values in round-to-nearest and then
//! widens each endpoint by [`WIDEN_ULPS`] units in the last place. The
//! standard library's transcendental functions are accurate to well under
//! that, so the exact image of the operands stays inside the result.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const WIDEN_ULPS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NEG_INFINITY;
    }
    let bits = x.to_bits();
    // same-sign steps move by whole ulps across binades
    if x > 0.0 && x.is_finite() && bits > WIDEN_ULPS as u64 {
        return f64::from_bits(bits - WIDEN_ULPS as u64);
    }
    if x < 0.0 && x.is_finite() {
        let y = f64::from_bits(bits + WIDEN_ULPS as u64);
        return if y.is_finite() { y } else { f64::NEG_INFINITY };
    }
    let mut x = x;
    for _ in 0..WIDEN_ULPS {
        x = x.next_down();
    }
    x
}

fn up(x: f64) -> f64 {
    -down(-x)
}

fn lower_end(x: f64, exact: bool) -> f64 {
    if exact && !x.is_nan() {
        x
    } else {
        down(x)
    }
}

fn upper_end(x: f64, exact: bool) -> f64 {
    if exact && !x.is_nan() {
        x
    } else {
        up(x)
    }
}

/// Whether the rounded sum `a + b` equals the exact sum (two-sum error term).
fn sum_is_exact(a: f64, b: f64, s: f64) -> bool {
    if !s.is_finite() {
        return false;
    }
    let bb = s - a;
    (a - (s - bb)) + (b - bb) == 0.0
}

/// `a * b` with `0 * inf = 0`, and whether the rounded product is exact.
fn mul_end(a: f64, b: f64) -> (f64, bool) {
    if a == 0.0 || b == 0.0 {
        return (0.0, true);
    }
    let p = a * b;
    let exact = p.is_finite() && p.abs() >= f64::MIN_POSITIVE && a.mul_add(b, -p) == 0.0;
    (p, exact)
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// # Panics
    /// If `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    /// Rounded endpoints widened outward.
    fn rounded(lo: f64, hi: f64) -> Self {
        Self::from_ends(down(lo), up(hi))
    }

    fn from_ends(lo: f64, hi: f64) -> Self {
        if lo <= hi {
            Self { lo, hi }
        } else {
            Self::ENTIRE
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_finite() && self.hi.is_finite() {
            0.5 * self.lo + 0.5 * self.hi
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// Splits at the midpoint into two halves sharing the midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.mid();
        (Self::new(self.lo, m), Self::new(m, self.hi))
    }

    pub fn sqr(self) -> Self {
        let a = self.lo.abs().min(self.hi.abs());
        let b = self.lo.abs().max(self.hi.abs());
        let (pa, ea) = mul_end(a, a);
        let (pb, eb) = mul_end(b, b);
        let lo = if self.contains_zero() { 0.0 } else { lower_end(pa, ea) };
        Self::from_ends(lo, upper_end(pb, eb)).clamp_nonneg()
    }

    fn clamp_nonneg(self) -> Self {
        Self {
            lo: self.lo.max(0.0),
            hi: self.hi,
        }
    }

    pub fn recip(self) -> Self {
        if self.contains_zero() {
            Self::ENTIRE
        } else {
            let (a, b) = (1.0 / self.hi, 1.0 / self.lo);
            let exact = |q: f64, x: f64| q.is_finite() && q.mul_add(x, -1.0) == 0.0;
            Self::from_ends(lower_end(a, exact(a, self.hi)), upper_end(b, exact(b, self.lo)))
        }
    }

    pub fn ln(self) -> Self {
        if self.hi < 0.0 {
            return Self::ENTIRE;
        }
        let lo = if self.lo <= 0.0 {
            f64::NEG_INFINITY
        } else {
            self.lo.ln()
        };
        Self::rounded(lo, self.hi.ln())
    }

    /// `x^e` for the nonnegative part of `self` and every `e` in `exp`.
    ///
    /// `x^e` is monotone in each argument separately for `x >= 0`, so the
    /// extremes sit at the corners.
    pub fn pow_nonneg(self, exp: Self) -> Self {
        let x = self.clamp_nonneg();
        if x.hi < 0.0 {
            return Self::ENTIRE;
        }
        if exp == Self::point(0.0) {
            return Self::point(1.0);
        }
        if exp == Self::point(1.0) {
            return x;
        }
        if exp == Self::point(2.0) {
            return x.sqr();
        }
        let corners = [
            x.lo.powf(exp.lo),
            x.lo.powf(exp.hi),
            x.hi.powf(exp.lo),
            x.hi.powf(exp.hi),
        ];
        let lo = corners.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi).clamp_nonneg()
    }

    pub fn sin(self) -> Self {
        self.periodic(f64::sin, FRAC_PI_2, -FRAC_PI_2)
    }

    pub fn cos(self) -> Self {
        self.periodic(f64::cos, 0.0, PI)
    }

    /// Enclosure of a `2 pi`-periodic function with values in `[-1, 1]`
    /// whose maxima sit at `max_at + 2 k pi` and minima at `min_at + 2 k pi`.
    /// Critical points within a small slack of the ends are included.
    fn periodic(self, f: fn(f64) -> f64, max_at: f64, min_at: f64) -> Self {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.width() >= TAU {
            return Self::new(-1.0, 1.0);
        }
        let slack = 1e-12 * (1.0 + self.lo.abs().max(self.hi.abs()));
        let hits = |at: f64| {
            let k = ((self.lo - slack - at) / TAU).ceil();
            k * TAU + at <= self.hi + slack
        };
        let (a, b) = (f(self.lo), f(self.hi));
        let r = Self::rounded(a.min(b), a.max(b));
        Self {
            lo: if hits(min_at) { -1.0 } else { r.lo.max(-1.0) },
            hi: if hits(max_at) { 1.0 } else { r.hi.min(1.0) },
        }
    }

    /// An enclosure of pi.
    pub fn pi() -> Self {
        Self::new(PI.next_down(), PI.next_up())
    }

    pub fn hull(self, other: Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        let (lo, hi) = (self.lo + o.lo, self.hi + o.hi);
        Interval::from_ends(
            lower_end(lo, sum_is_exact(self.lo, o.lo, lo)),
            upper_end(hi, sum_is_exact(self.hi, o.hi, hi)),
        )
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)] {
            let (p, exact) = mul_end(a, b);
            lo = lo.min(lower_end(p, exact));
            hi = hi.max(upper_end(p, exact));
        }
        Interval::from_ends(lo, hi)
    }
}
