//! The certified inequalities, each written once over [`Scalar`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::scalar::{Base, Scalar};
use crate::constants::ExponentPair;
use crate::error::{check_range, Error, Result};

/// Downward shift of the falsification fixture [`InequalityId::Eq1Shifted`].
pub const EQ1_SHIFT: f64 = 0.01;

/// The named inequalities the certifier knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityId {
    /// `phi_low(r, t) >= 0` on `[0, 1] x [0, pi]`, for `p < 2`.
    Lemma41,
    /// `phi_high(r, t) >= 0` for `p >= 2`.
    Lemma42,
    /// The `t = 0` slice `phi_t0(r) >= 0` for `p >= 2`.
    Eq1Section5,
    /// `phi_t0 - 0.01`, which is negative somewhere; exercises the violation path.
    Eq1Shifted,
    /// `d/dp ln h(p) >= 0` with `h(p) = (2 sin(pi/2p))^{-p}`.
    Claim51,
    /// `-r^2 (1 - r^s)^2 g'(r) >= 0` for `g(r) = (r^s - r^2)/(r - r^{s+1})`.
    AuxG,
}

impl InequalityId {
    pub const ALL: [InequalityId; 6] = [
        InequalityId::Lemma41,
        InequalityId::Lemma42,
        InequalityId::Eq1Section5,
        InequalityId::Eq1Shifted,
        InequalityId::Claim51,
        InequalityId::AuxG,
    ];

    /// Name used on the command line.
    pub fn cli_name(&self) -> &'static str {
        match self {
            InequalityId::Lemma41 => "lemma41",
            InequalityId::Lemma42 => "lemma42",
            InequalityId::Eq1Section5 => "eq1",
            InequalityId::Eq1Shifted => "eq1shift",
            InequalityId::Claim51 => "claim51",
            InequalityId::AuxG => "auxg",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            InequalityId::Lemma41 | InequalityId::Lemma42 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.cli_name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown inequality `{s}`")))
    }
}

fn c<S: Scalar>(x: f64) -> S {
    S::constant(x)
}

fn b<B: Base>(x: f64) -> B {
    B::exact(x)
}

/// `pi / (2p)` in the base arithmetic.
fn half_angle<B: Base>(p: B) -> B {
    B::pi() * (b::<B>(2.0) * p).recip()
}

/// `((1 + r^s) / 2)^{p/s}`.
fn power_mean_term<S: Scalar>(r: &S, p: S::Base, s: S::Base) -> S {
    ((c::<S>(1.0) + r.pow_nonneg(&s)) * c::<S>(0.5)).pow_nonneg(&(p * s.recip()))
}

/// `-((1+r^s)/2)^{p/s} + (1+r^2+2r cos t)^{p/2} / (2 cos(pi/2p))^p - r^{p/2} tan(pi/2p) cos(tp/2)`.
pub fn lemma41_expr<S: Scalar>(r: S, t: S, p: f64, s: f64) -> S {
    let (pb, sb) = (b::<S::Base>(p), b::<S::Base>(s));
    let half_p = pb * b(0.5);
    let a = half_angle(pb);
    let k = (b::<S::Base>(2.0) * a.cos()).pow_nonneg(&pb).recip();
    let tan = a.sin() * a.cos().recip();
    // 1 + r^2 + 2 r cos t, written so that it is visibly nonnegative
    let base = (c::<S>(1.0) - r.clone()).sqr() + c::<S>(2.0) * r.clone() * (c::<S>(1.0) + t.cos());
    -power_mean_term(&r, pb, sb) + base.pow_nonneg(&half_p) * S::lift(k)
        - r.pow_nonneg(&half_p) * S::lift(tan) * (t * S::lift(half_p)).cos()
}

/// `-((1+r^s)/2)^{p/s} + (1+r^2-2r cos t)^{p/2} / (2 sin(pi/2p))^p + r^{p/2} cot(pi/2p) cos(tp/2)`.
pub fn lemma42_expr<S: Scalar>(r: S, t: S, p: f64, s: f64) -> S {
    let (pb, sb) = (b::<S::Base>(p), b::<S::Base>(s));
    let half_p = pb * b(0.5);
    let a = half_angle(pb);
    let k = (b::<S::Base>(2.0) * a.sin()).pow_nonneg(&pb).recip();
    let cot = a.cos() * a.sin().recip();
    let base = (c::<S>(1.0) - r.clone()).sqr() + c::<S>(2.0) * r.clone() * (c::<S>(1.0) - t.cos());
    -power_mean_term(&r, pb, sb)
        + base.pow_nonneg(&half_p) * S::lift(k)
        + r.pow_nonneg(&half_p) * S::lift(cot) * (t * S::lift(half_p)).cos()
}

/// `-(1+r^p)/2 + (1-r)^p / (2 sin(pi/2p))^p + r^{p/2} cot(pi/2p) - shift`.
pub fn eq1_expr<S: Scalar>(r: S, p: f64, shift: f64) -> S {
    let pb = b::<S::Base>(p);
    let a = half_angle(pb);
    let k = (b::<S::Base>(2.0) * a.sin()).pow_nonneg(&pb).recip();
    let cot = a.cos() * a.sin().recip();
    -(c::<S>(1.0) + r.pow_nonneg(&pb)) * c::<S>(0.5)
        + (c::<S>(1.0) - r.clone()).pow_nonneg(&pb) * S::lift(k)
        + r.pow_nonneg(&(pb * b(0.5))) * S::lift(cot)
        - c::<S>(shift)
}

/// `d/dp ln h(p) = -ln(2 sin x) + x cot x` with `x = pi/(2p)`.
pub fn claim51_expr<S: Scalar>(p: S) -> S {
    let x = S::lift(S::Base::pi()) * (c::<S>(2.0) * p).recip();
    -(c::<S>(2.0) * x.sin()).ln() + x.clone() * x.cos() * x.sin().recip()
}

/// `(s-1)(r^{s+2} - r^s) - r^{2s} + r^2`; equals `-r^2 (1 - r^s)^2 g'(r)`.
pub fn auxg_expr<S: Scalar>(r: S, s: f64) -> S {
    let sb = b::<S::Base>(s);
    c::<S>(s - 1.0) * (r.pow_nonneg(&(sb + b(2.0))) - r.pow_nonneg(&sb))
        - r.pow_nonneg(&(sb * b(2.0)))
        + r.sqr()
}

/// Upper end of the `t`-range of `phi_high`: `2 pi / p` for `p >= 4`, else `pi`.
pub fn lemma42_t_max(p: f64) -> f64 {
    if p >= 4.0 {
        2.0 * std::f64::consts::PI / p
    } else {
        std::f64::consts::PI
    }
}

pub fn phi_low(r: f64, t: f64, e: &ExponentPair) -> Result<f64> {
    check_range("r", r, 0.0, 1.0)?;
    check_range("t", t, 0.0, std::f64::consts::PI)?;
    Ok(lemma41_expr(r, t, e.p(), e.s()))
}

pub fn phi_high(r: f64, t: f64, e: &ExponentPair) -> Result<f64> {
    check_range("r", r, 0.0, 1.0)?;
    if e.p() < 2.0 {
        return Err(Error::Domain {
            name: "p",
            value: e.p(),
            range: "[2, inf)".into(),
        });
    }
    let t_max = lemma42_t_max(e.p());
    check_range("t", t, 0.0, t_max * (1.0 + 1e-12))?;
    Ok(lemma42_expr(r, t, e.p(), e.s()))
}

pub fn phi_t0(r: f64, p: f64) -> Result<f64> {
    check_range("r", r, 0.0, 1.0)?;
    check_p_at_least_two(p)?;
    Ok(eq1_expr(r, p, 0.0))
}

/// `(2 sin(pi/2p))^{-p}`.
pub fn h_claim(p: f64) -> Result<f64> {
    check_p_at_least_two(p)?;
    Ok((2.0 * (std::f64::consts::PI / (2.0 * p)).sin()).powf(-p))
}

/// `(r^s - r^2) / (r - r^{s+1})`, replaced by its limit `-(s-2)/s` within
/// `1e-8` of `r = 1`.
pub fn g_aux(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "r",
            value: r,
            range: "(0, 1)".into(),
        });
    }
    if !(s.is_finite() && s >= 2.0) {
        return Err(Error::Domain {
            name: "s",
            value: s,
            range: "[2, inf)".into(),
        });
    }
    if 1.0 - r <= 1e-8 {
        return Ok(-(s - 2.0) / s);
    }
    Ok((r.powf(s) - r * r) / (r - r.powf(s + 1.0)))
}

pub(crate) fn check_p_at_least_two(p: f64) -> Result<f64> {
    crate::constants::validate_p(p)?;
    if p < 2.0 {
        return Err(Error::Domain {
            name: "p",
            value: p,
            range: "[2, inf)".into(),
        });
    }
    Ok(p)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pair(p: f64, s: f64) -> ExponentPair {
        ExponentPair::new(p, s).unwrap()
    }

    #[test]
    fn phi_low_examples() {
        let e = pair(1.5, 2.0);
        assert!(phi_low(1.0, PI / 1.5, &e).unwrap().abs() < 1e-12);
        assert!((phi_low(0.0, 0.3, &e).unwrap() - 0.40539644249863947).abs() < 1e-12);
        assert!((phi_low(1.0, 0.0, &e).unwrap() - 0.096376317177312804).abs() < 1e-12);
        assert!(phi_low(1.1, 0.0, &e).is_err());
        assert!(phi_low(0.5, 3.5, &e).is_err());
    }

    #[test]
    fn phi_high_examples() {
        let e = pair(3.0, 3.0);
        assert!(phi_high(1.0, PI / 3.0, &e).unwrap().abs() < 1e-12);
        assert!((phi_high(1.0, 0.0, &e).unwrap() - 0.73205080756887729).abs() < 1e-12);
        for t in [0.0, 1.0, 3.0] {
            assert!(phi_high(0.0, t, &pair(2.0, 2.0)).unwrap().abs() < 1e-12);
        }
        assert!(phi_high(0.5, 2.0, &pair(5.0, 5.0)).is_err());
        assert!(phi_high(0.5, 1.0, &pair(1.5, 1.0)).is_err());
    }

    #[test]
    fn equality_manifolds() {
        for k in 0..20 {
            let p = 1.01 + 0.0495 * k as f64;
            let s = if p <= 1.25 { 4.0 } else { 2.0 };
            let e = pair(p, s);
            assert!(phi_low(1.0, PI / p, &e).unwrap().abs() < 1e-12, "{p}");
        }
        for k in 0..30 {
            let p = 2.0 + 0.5 * k as f64;
            for s in [0.5, 1.0, p] {
                let e = pair(p, s);
                assert!(phi_high(1.0, PI / p, &e).unwrap().abs() < 1e-12, "{p} {s}");
            }
        }
    }

    #[test]
    fn phi_t0_examples() {
        assert!(phi_t0(1.0, 2.0).unwrap().abs() < 1e-12);
        assert!(phi_t0(0.0, 2.0).unwrap().abs() < 1e-12);
        assert!((phi_t0(0.5, 4.0).unwrap() - 0.25444173824159220).abs() < 1e-12);
        assert!(phi_t0(0.5, 1.9).is_err());
    }

    #[test]
    fn h_claim_examples() {
        assert!((h_claim(2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((h_claim(3.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((h_claim(6.0).unwrap() - 51.980762113533159).abs() < 1e-10);
        assert!(h_claim(1.5).is_err());
    }

    #[test]
    fn g_aux_examples() {
        assert_eq!(g_aux(0.5, 2.0).unwrap(), 0.0);
        assert!((g_aux(0.5, 4.0).unwrap() + 0.4).abs() < 1e-15);
        assert_eq!(g_aux(1.0 - 1e-9, 4.0).unwrap(), -0.5);
        assert!((g_aux(1.0 - 1e-6, 4.0).unwrap() + 0.5).abs() < 1e-5);
        assert!(g_aux(1.0, 4.0).is_err());
        assert!(g_aux(0.5, 1.5).is_err());
    }

    #[test]
    fn claim51_matches_log_derivative() {
        for p in [2.001, 3.0, 7.5, 40.0] {
            let h = 1e-6;
            let d = ((h_claim(p + h).unwrap()).ln() - (h_claim(p - h).unwrap()).ln()) / (2.0 * h);
            assert!((claim51_expr(p) - d).abs() < 1e-7, "{p}");
        }
    }

    #[test]
    fn auxg_matches_derivative_numerator() {
        for s in [2.5, 3.0, 8.0] {
            for r in [0.2, 0.5, 0.9] {
                let h = 1e-6;
                let d = (g_aux(r + h, s).unwrap() - g_aux(r - h, s).unwrap()) / (2.0 * h);
                let scale = r * r * (1.0 - r.powf(s)).powi(2);
                assert!((auxg_expr(r, s) + scale * d).abs() < 1e-7, "{r} {s}");
            }
        }
    }

    #[test]
    fn reduction_to_small_t() {
        for (p, s) in [(1.2, 4.0), (1.5, 2.0), (1.8, 2.0)] {
            let e = pair(p, s);
            for i in 0..=20 {
                let r = i as f64 / 20.0;
                let floor = phi_low(r, PI / p, &e).unwrap();
                for j in 0..=20 {
                    let t = PI / p + (PI - PI / p) * j as f64 / 20.0;
                    assert!(phi_low(r, t.min(PI), &e).unwrap() >= floor - 1e-12);
                }
            }
        }
    }

    #[test]
    fn ids_round_trip_names() {
        for id in InequalityId::ALL {
            assert_eq!(id.cli_name().parse::<InequalityId>().unwrap(), id);
        }
        assert!("lemma43".parse::<InequalityId>().is_err());
    }
}
