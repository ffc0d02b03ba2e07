//! Closed forms of the sharp constants and the classification of `(p, s)`
//! into the regimes where the closed form is a proved value.
//!
//! All functions are pure and evaluate with binary64 transcendental
//! functions.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower end (exclusive) of the admissible Lebesgue exponent.
pub const P_MIN: f64 = 1.0 + 1e-9;
/// Upper end (exclusive) of the admissible Lebesgue exponent.
pub const P_MAX: f64 = 1e6;

/// Lebesgue exponent `p` together with the aggregation order `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    p: f64,
    s: f64,
}

impl ExponentPair {
    pub fn new(p: f64, s: f64) -> Result<Self> {
        validate_p(p).map_err(|_| Error::InvalidExponent {
            p,
            s,
            reason: format!("p must lie in ({P_MIN}, {P_MAX})"),
        })?;
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidExponent {
                p,
                s,
                reason: "s must be positive and finite".into(),
            });
        }
        Ok(Self { p, s })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Hölder conjugate `p / (p - 1)`.
    pub fn dual_p(&self) -> f64 {
        dual_exponent(self.p)
    }
}

/// Which closed form (if any) is a proved value of the sharp constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    ProvedLowA,
    ProvedLowB,
    ProvedHigh,
    LowerBoundOnly,
}

impl Regime {
    /// The defining condition of the tag.
    pub fn condition(&self) -> &'static str {
        match self {
            Regime::ProvedLowA => "1 < p <= 5/4 and 0 < s <= 4",
            Regime::ProvedLowB => "5/4 < p < 2 and 0 < s <= 2",
            Regime::ProvedHigh => "p >= 2 and 0 < s <= p",
            Regime::LowerBoundOnly => "outside every proved range; closed form is a lower bound",
        }
    }

    pub fn is_proved(&self) -> bool {
        !matches!(self, Regime::LowerBoundOnly)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regime::ProvedLowA => "ProvedLowA",
            Regime::ProvedLowB => "ProvedLowB",
            Regime::ProvedHigh => "ProvedHigh",
            Regime::LowerBoundOnly => "LowerBoundOnly",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(e: &ExponentPair) -> Regime {
    let (p, s) = (e.p, e.s);
    if p <= 1.25 && s <= 4.0 {
        Regime::ProvedLowA
    } else if p > 1.25 && p < 2.0 && s <= 2.0 {
        Regime::ProvedLowB
    } else if p >= 2.0 && s <= p {
        Regime::ProvedHigh
    } else {
        Regime::LowerBoundOnly
    }
}

/// `2^{1/s} / (2 cos(pi/2p))` for `p < 2` and `2^{1/s} / (2 sin(pi/2p))` for
/// `p >= 2`, tagged with the regime. Outside the proved regimes the value is
/// still returned, flagged `LowerBoundOnly`.
pub fn sharp_constant(e: &ExponentPair) -> (f64, Regime) {
    let regime = classify(e);
    (conjectured_constant(e), regime)
}

/// The conjectured closed form for the side of `p = 2` that `e` lies on.
pub fn conjectured_constant(e: &ExponentPair) -> f64 {
    let half_angle = PI / (2.0 * e.p);
    // sin(pi/4) rounds below 1/sqrt(2), which would spoil C = 1 at p = s = 2
    let trig = if e.p == 2.0 {
        std::f64::consts::FRAC_1_SQRT_2
    } else if e.p < 2.0 {
        half_angle.cos()
    } else {
        half_angle.sin()
    };
    2f64.powf(1.0 / e.s) / (2.0 * trig)
}

/// Norm of `max(|P+ f|, |P- f|)`: `1 / sin(pi/p)`.
pub fn hv_max_constant(p: f64) -> Result<f64> {
    validate_p(p)?;
    Ok(1.0 / (PI / p).sin())
}

/// Best constant in `||u + i Hu||_p <= c_p ||u||_p`.
pub fn verbitsky_constant(p: f64) -> Result<f64> {
    validate_p(p)?;
    let half_angle = PI / (2.0 * p);
    Ok(if p <= 2.0 {
        1.0 / half_angle.cos()
    } else {
        1.0 / half_angle.sin()
    })
}

/// Norm of the conjugate-function operator on `L^p`: `tan(pi / 2 p~)` with
/// `p~ = min(p, p')`.
pub fn pichorides_constant(p: f64) -> Result<f64> {
    validate_p(p)?;
    let p_tilde = p.min(dual_exponent(p));
    Ok((PI / (2.0 * p_tilde)).tan())
}

pub fn dual_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

pub(crate) fn validate_p(p: f64) -> Result<f64> {
    if p.is_finite() && p > P_MIN && p < P_MAX {
        Ok(p)
    } else {
        Err(Error::Domain {
            name: "p",
            value: p,
            range: format!("({P_MIN}, {P_MAX})"),
        })
    }
}
