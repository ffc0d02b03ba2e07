//! Sampled checks of the facts used when the pointwise inequalities are
//! integrated over the circle: subharmonicity of the minorant and the
//! power-mean transfer between orders `s <= s0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::expr::check_p_at_least_two;
use crate::error::{Error, Result};

pub const MIN_QUADRATURE_POINTS: usize = 16;

/// The angular weight `v_p` of the minorant.
///
/// For `p >= 4` it is piecewise: `-cos(p/2 (pi/2 - |t|))` near `|t| = pi/2`,
/// the larger of `|cos(p/2 (pi/2 -+ t))|` for `|t| <= pi/2 - 2pi/p`, and
/// reflected through `v(t) = v(pi - |t|)` for `|t| >= pi/2`. For `2 <= p < 4`
/// it is `-cos(p (pi - |t|) / 2)`.
pub fn v_weight(t: f64, p: f64) -> Result<f64> {
    check_p_at_least_two(p)?;
    if !(t.is_finite() && t.abs() <= PI * (1.0 + 1e-12)) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            range: "[-pi, pi]".into(),
        });
    }
    Ok(v_weight_unchecked(t, p))
}

fn v_weight_unchecked(t: f64, p: f64) -> f64 {
    let a = t.abs().min(PI);
    if p < 4.0 {
        return -(0.5 * p * (PI - a)).cos();
    }
    let a = if a > FRAC_PI_2 { PI - a } else { a };
    if a > FRAC_PI_2 - TAU / p {
        -(0.5 * p * (FRAC_PI_2 - a)).cos()
    } else {
        (0.5 * p * (FRAC_PI_2 - a))
            .cos()
            .abs()
            .max((0.5 * p * (FRAC_PI_2 + a)).cos().abs())
    }
}

/// `phi_p(z) = |z|^{p/2} v_p(arg z - pi/2)` with the angle taken in `(-pi, pi]`.
pub fn phi_minorant(z: Complex64, p: f64) -> Result<f64> {
    check_p_at_least_two(p)?;
    Ok(phi_minorant_unchecked(z, p))
}

pub(crate) fn phi_minorant_unchecked(z: Complex64, p: f64) -> f64 {
    let norm = z.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let mut angle = z.arg() - FRAC_PI_2;
    if angle <= -PI {
        angle += TAU;
    }
    norm.powf(0.5 * p) * v_weight_unchecked(angle, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubharmonicReport {
    pub p: f64,
    pub radius: f64,
    pub quadrature_points: usize,
    /// Smallest circle mean minus center value over all centers.
    pub worst_deficit: f64,
    pub worst_center: [f64; 2],
    /// Quadrature allowance at the worst center.
    pub tol: f64,
}

impl SubharmonicReport {
    pub fn passes(&self) -> bool {
        self.worst_deficit >= -self.tol
    }
}

/// Mean of `phi_p` over circles of the given radius minus its value at the
/// center, minimized over `centers`. Subharmonicity predicts a nonnegative
/// result up to the declared trapezoid error
/// `tol = 10 (2 pi r / m)^2 (|z0| + r)^{p/2}`.
pub fn subharmonic_probe(
    p: f64,
    centers: &[Complex64],
    radius: f64,
    quadrature_points: usize,
) -> Result<SubharmonicReport> {
    check_p_at_least_two(p)?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain {
            name: "radius",
            value: radius,
            range: "(0, inf)".into(),
        });
    }
    if quadrature_points < MIN_QUADRATURE_POINTS {
        return Err(Error::InsufficientSamples {
            got: quadrature_points,
            need: MIN_QUADRATURE_POINTS,
        });
    }
    if centers.is_empty() {
        return Err(Error::Parameter("no centers given".into()));
    }
    let m = quadrature_points;
    let offsets: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / m as f64))
        .collect();
    let mut worst: Option<(f64, Complex64, f64)> = None;
    for &z0 in centers {
        if z0.norm() - radius < 0.5 * radius {
            return Err(Error::Parameter(format!(
                "center {z0} is closer than radius/2 to the disc boundary around 0"
            )));
        }
        let mean = offsets
            .iter()
            .map(|&w| phi_minorant_unchecked(z0 + w, p))
            .sum::<f64>()
            / m as f64;
        let deficit = mean - phi_minorant_unchecked(z0, p);
        let h = TAU * radius / m as f64;
        let tol = 10.0 * h * h * (z0.norm() + radius).powf(0.5 * p);
        if worst.is_none_or(|(d, _, _)| deficit < d) {
            worst = Some((deficit, z0, tol));
        }
    }
    let (worst_deficit, z, tol) = worst.expect("centers is nonempty");
    Ok(SubharmonicReport {
        p,
        radius,
        quadrature_points,
        worst_deficit,
        worst_center: [z.re, z.im],
        tol,
    })
}

/// `(((a^s + b^s)/2)^{p/s}, ((a^{s0} + b^{s0})/2)^{p/s0})`; the first never
/// exceeds the second when `s <= s0`.
pub fn power_mean_transfer(a: f64, b: f64, s: f64, s0: f64, p: f64) -> Result<(f64, f64)> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Parameter("a and b must be finite and nonnegative".into()));
    }
    if !(s > 0.0 && s <= s0 && s0.is_finite()) {
        return Err(Error::Parameter(format!("need 0 < s <= s0, got s = {s}, s0 = {s0}")));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            range: "(0, inf)".into(),
        });
    }
    let mean = |q: f64| ((a.powf(q) + b.powf(q)) / 2.0).powf(p / q);
    Ok((mean(s), mean(s0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn v_weight_examples() {
        assert!((v_weight(0.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((v_weight(FRAC_PI_2, 4.0).unwrap() + 1.0).abs() < 1e-15);
        assert!((v_weight(0.0, 4.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(v_weight(4.0, 4.0).is_err());
        assert!(v_weight(0.0, 1.5).is_err());
    }

    #[test]
    fn v_weight_four_is_cos_two_t() {
        for k in -50..=50 {
            let t = PI * k as f64 / 50.0;
            assert!((v_weight(t, 4.0).unwrap() - (2.0 * t).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn v_weight_symmetries() {
        for p in [2.0, 3.0, 4.0, 5.5, 9.0] {
            for k in 0..=100 {
                let t = PI * k as f64 / 100.0;
                let v = v_weight(t, p).unwrap();
                assert!((v - v_weight(-t, p).unwrap()).abs() < 1e-12);
                if p >= 4.0 && t >= FRAC_PI_2 {
                    assert!((v - v_weight(PI - t, p).unwrap()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn p_two_minorant_is_imaginary_part() {
        for z in [Complex64::new(0.3, -1.2), Complex64::new(-2.0, 0.5)] {
            assert!((phi_minorant(z, 2.0).unwrap() - z.im).abs() < 1e-12);
        }
    }

    #[test]
    fn probe_examples() {
        let centers = [Complex64::new(1.0, 0.3), Complex64::new(-0.2, 0.9)];
        let r = subharmonic_probe(2.0, &centers, 0.2, 64).unwrap();
        assert!(r.worst_deficit.abs() < 1e-12);
        let centers: Vec<Complex64> = (1..=20)
            .map(|k| Complex64::new(0.0, 0.2 + 0.1 * k as f64))
            .collect();
        let r = subharmonic_probe(4.0, &centers, 0.05, 512).unwrap();
        assert!(r.worst_deficit >= -1e-6);
        assert!(subharmonic_probe(3.0, &centers, 0.0, 512).is_err());
        assert!(subharmonic_probe(3.0, &centers, 0.05, 8).is_err());
        assert!(subharmonic_probe(3.0, &[Complex64::new(0.05, 0.0)], 0.05, 64).is_err());
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(power_mean_transfer(1.0, 1.0, 1.3, 2.7, 3.1).unwrap(), (1.0, 1.0));
        assert_eq!(power_mean_transfer(1.0, 0.0, 1.0, 2.0, 2.0).unwrap(), (0.25, 0.5));
        let (l, r) = power_mean_transfer(2.0, 1.0, 1.5, 3.0, 2.5).unwrap();
        assert!(l <= r);
        assert!(power_mean_transfer(1.0, 1.0, 3.0, 2.0, 2.0).is_err());
    }

    proptest! {
        #[test]
        fn transfer_is_monotone(a in 0.0f64..10.0, b in 0.0f64..10.0,
                                s in 0.1f64..6.0, ds in 0.0f64..6.0, p in 0.5f64..8.0) {
            let (l, r) = power_mean_transfer(a, b, s, s + ds, p).unwrap();
            prop_assert!(l <= r * (1.0 + 1e-12));
        }
    }
}
