//! Lower bounds for `C_{s,p}` from the two-parameter extremal family.
//!
//! The extremal ratio `T(alpha, beta)` is homogeneous of degree zero, so it
//! reduces to a profile in one variable `t in [0, 1]`:
//!
//! ```text
//! rho(t) = (1 + t^s)^{1/s} / sqrt(1 + t^2 +/- 2 t cos(pi/p))
//! ```
//!
//! The sign of `d/dt rho` equals the sign of
//! `Phi(t) = t^{s-1} - t + cos(pi/p) (t^s - 1)`, which decides between an
//! interior maximum at the root of `Phi` and the boundary maximum at `t = 1`.
//! Exponents `p > 2` are handled through the dual exponent, where
//! `cos(pi/p) = -cos(pi/p')` swaps the two denominator signs.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{dual_exponent, hv_max_constant, ExponentPair};
use crate::error::{check_range, Error, Result};

/// Bracket used by the root finder for `Phi`.
pub const ROOT_BRACKET: (f64, f64) = (1e-12, 1.0 - 1e-12);
/// Absolute tolerance of the bisection.
pub const ROOT_TOL: f64 = 1e-12;
const ROOT_MAX_ITER: usize = 200;
/// Points of the coarse scan seeding the golden-section refinement.
pub const DEFAULT_SCAN: usize = 10_000;

/// Which sign in front of `2 t cos(pi/p)` the profile uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SignBranch {
    PlusCos,
    MinusCos,
}

/// Where the supremum of the profile over `[0, 1]` is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MaxBranch {
    /// At `t = 1`: the closed form `2^{1/s} / (2 cos(pi/2p))` (or `sin` for `p > 2`).
    BoundaryT1,
    /// At the root of `Phi` in `(0, 1)`.
    InteriorRoot,
    /// At `t = 0` with value 1; only happens at `p = 2`, `s > 2`.
    BoundaryT0,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundResult {
    pub value: f64,
    pub arg_t: f64,
    pub branch: MaxBranch,
    pub sign_branch: SignBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub s: f64,
    pub lower_bound: f64,
    pub limit: f64,
}

/// `cos(pi/p)`, exactly zero at `p = 2`.
fn cos_pi_over(p: f64) -> f64 {
    if p == 2.0 {
        0.0
    } else {
        (PI / p).cos()
    }
}

/// `(|a+b|^s + |a-b|^s)^{1/s} / (2 sqrt(a^2 cos^2(pi/2p) + b^2 sin^2(pi/2p)))`.
pub fn ratio_t(alpha: f64, beta: f64, e: &ExponentPair) -> Result<f64> {
    if alpha == 0.0 && beta == 0.0 {
        return Err(Error::Parameter("ratio_t is undefined at (0, 0)".into()));
    }
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(Error::Parameter("alpha and beta must be finite".into()));
    }
    let s = e.s();
    let half_angle = PI / (2.0 * e.p());
    let plus = (alpha + beta).abs();
    let minus = (alpha - beta).abs();
    let big = plus.max(minus);
    let small = plus.min(minus);
    // (plus^s + minus^s)^{1/s} without overflow
    let numerator = big * (1.0 + (small / big).powf(s)).powf(1.0 / s);
    let denominator = 2.0
        * ((alpha * half_angle.cos()).powi(2) + (beta * half_angle.sin()).powi(2)).sqrt();
    Ok(numerator / denominator)
}

/// The one-variable profile of `ratio_t` along `a + b = 1`, `a - b = +/- t`.
pub fn profile_rho(t: f64, e: &ExponentPair, sign: SignBranch) -> Result<f64> {
    check_range("t", t, 0.0, 1.0)?;
    Ok(rho(t, e.s(), signed_cos(e.p(), sign)))
}

fn signed_cos(p: f64, sign: SignBranch) -> f64 {
    match sign {
        SignBranch::PlusCos => cos_pi_over(p),
        SignBranch::MinusCos => -cos_pi_over(p),
    }
}

fn rho(t: f64, s: f64, c: f64) -> f64 {
    (1.0 + t.powf(s)).powf(1.0 / s) / (1.0 + t * t + 2.0 * t * c).sqrt()
}

/// `Phi(t) = t^{s-1} - t + cos(pi/p) (t^s - 1)`; `sgn F' = sgn Phi` on `[0, 1]`.
pub fn sign_phi(t: f64, e: &ExponentPair) -> Result<f64> {
    check_range("t", t, 0.0, 1.0)?;
    Ok(phi(t, e.s(), cos_pi_over(e.p())))
}

fn phi(t: f64, s: f64, c: f64) -> f64 {
    if t == 1.0 {
        return 0.0;
    }
    t.powf(s - 1.0) - t + c * (t.powf(s) - 1.0)
}

/// `s cos(pi/p) + s - 2`; nonnegative exactly when `Phi` has an interior root.
pub fn case_discriminant(e: &ExponentPair) -> f64 {
    e.s() * cos_pi_over(e.p()) + e.s() - 2.0
}

/// The root `t~` of `Phi` in `(0, 1)` for `1 < p < 2`, or `None` when
/// `s cos(pi/p) + s - 2 < 0` and the profile increases up to `t = 1`.
pub fn critical_t(e: &ExponentPair) -> Result<Option<f64>> {
    if e.p() >= 2.0 {
        return Err(Error::Domain {
            name: "p",
            value: e.p(),
            range: "(1, 2); map p > 2 to its dual exponent first".into(),
        });
    }
    if case_discriminant(e) < 0.0 {
        return Ok(None);
    }
    root_of_phi(e.s(), cos_pi_over(e.p()))
        .map(Some)
        .ok_or(Error::NoSignChange {
            p: e.p(),
            s: e.s(),
            lo: ROOT_BRACKET.0,
            hi: ROOT_BRACKET.1,
        })
}

fn root_of_phi(s: f64, c: f64) -> Option<f64> {
    let (mut lo, mut hi) = ROOT_BRACKET;
    let (f_lo, f_hi) = (phi(lo, s, c), phi(hi, s, c));
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return None;
    }
    for _ in 0..ROOT_MAX_ITER {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if phi(mid, s, c) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Supremum of the profile over `t in [0, 1]` and both sign branches.
pub fn lower_bound(e: &ExponentPair) -> LowerBoundResult {
    lower_bound_with_scan(e, DEFAULT_SCAN).expect("default scan size is valid")
}

/// As [`lower_bound`] with an explicit size of the seeding scan.
pub fn lower_bound_with_scan(e: &ExponentPair, scan: usize) -> Result<LowerBoundResult> {
    if scan < 2 {
        return Err(Error::Parameter("scan needs at least 2 points".into()));
    }
    let s = e.s();
    let q = if e.p() > 2.0 { dual_exponent(e.p()) } else { e.p() };
    // on the reduced side cos(pi/q) <= 0 and the `+` branch dominates
    let c = cos_pi_over(q);
    let dominant = if e.p() > 2.0 {
        SignBranch::MinusCos
    } else {
        SignBranch::PlusCos
    };
    let other = match dominant {
        SignBranch::PlusCos => SignBranch::MinusCos,
        SignBranch::MinusCos => SignBranch::PlusCos,
    };

    let (mut best_t, mut best_v) = sup_on_branch(s, c, scan);
    let mut sign_branch = dominant;
    if q < 2.0 && case_discriminant(&ExponentPair::new(q, s)?) >= 0.0 {
        if let Some(root) = root_of_phi(s, c) {
            let v = rho(root, s, c);
            if v >= best_v {
                best_t = root;
                best_v = v;
            }
        }
    }
    let (other_t, other_v) = sup_on_branch(s, -c, scan);
    if other_v > best_v {
        best_t = other_t;
        best_v = other_v;
        sign_branch = other;
    }

    let branch = if (1.0 - best_t) <= 1e-9 {
        MaxBranch::BoundaryT1
    } else if best_t <= 1e-9 {
        MaxBranch::BoundaryT0
    } else {
        MaxBranch::InteriorRoot
    };
    Ok(LowerBoundResult {
        value: best_v,
        arg_t: best_t,
        branch,
        sign_branch,
    })
}

/// Coarse scan plus golden-section refinement, preferring the endpoints on
/// ties within rounding.
fn sup_on_branch(s: f64, c: f64, scan: usize) -> (f64, f64) {
    let f = |t: f64| rho(t, s, c);
    let step = 1.0 / (scan - 1) as f64;
    let mut k_best = 0;
    let mut v_best = f(0.0);
    for k in 1..scan {
        let v = f(k as f64 * step);
        if v > v_best {
            v_best = v;
            k_best = k;
        }
    }
    let lo = k_best.saturating_sub(1) as f64 * step;
    let hi = ((k_best + 1).min(scan - 1) as f64 * step).min(1.0);
    let (t_ref, v_ref) = golden_max(&f, lo, hi);

    let v_one = f(1.0);
    let v_zero = f(0.0);
    let tie = |a: f64, b: f64| a - b <= 1e-14 * b.abs();
    if tie(v_ref, v_one) && tie(v_best, v_one) {
        (1.0, v_one)
    } else if tie(v_ref, v_zero) && tie(v_best, v_zero) {
        (0.0, v_zero)
    } else if v_ref >= v_best {
        (t_ref, v_ref)
    } else {
        (k_best as f64 * step, v_best)
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if b - a <= 1e-15 {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Lower bounds along a sequence of `s`, next to the `s -> infinity` limit
/// `1 / sin(pi/p)`.
pub fn asymptotic_sweep(p: f64, s_values: &[f64]) -> Result<Vec<AsymptoticRow>> {
    let limit = hv_max_constant(p)?;
    s_values
        .iter()
        .map(|&s| {
            let e = ExponentPair::new(p, s)?;
            Ok(AsymptoticRow {
                s,
                lower_bound: lower_bound(&e).value,
                limit,
            })
        })
        .collect()
}
