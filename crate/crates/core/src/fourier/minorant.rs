//! Circle means of the subharmonic minorants evaluated on `P+ f conj(P- f)`.
//!
//! For `1 < p < 2` the integrand is `Re zeta^{p/2}` on the principal branch;
//! for `p >= 2` it is `phi_p(zeta)`. Both means should be nonnegative up to
//! quadrature error.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::norms::check_quadrature;
use super::poly::{project_minus, project_plus, TrigPolynomial};
use crate::certify::probes::phi_minorant_unchecked;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinorantReport {
    pub p: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub mean: f64,
    /// Nodes where `zeta` lies on the negative real axis (`p < 2` only).
    pub branch_hits: usize,
}

/// `Re zeta^{e}` with `arg zeta` in `(-pi, pi]`; the negative real axis
/// takes `arg = +pi`, the limit from above.
fn principal_re_pow(z: Complex64, e: f64) -> f64 {
    let r = z.norm();
    if r == 0.0 {
        return 0.0;
    }
    let arg = if z.im == 0.0 && z.re < 0.0 { PI } else { z.arg() };
    r.powf(e) * (e * arg).cos()
}

pub fn minorant_mean_check(f: &TrigPolynomial, p: f64, n: usize) -> Result<MinorantReport> {
    check_quadrature(n)?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            range: "(1, inf)".into(),
        });
    }
    let plus = project_plus(f).samples(n)?;
    let minus = project_minus(f).samples(n)?;
    let mut branch_hits = 0;
    let sum: f64 = plus
        .iter()
        .zip(&minus)
        .map(|(a, b)| {
            let zeta = a * b.conj();
            if p < 2.0 {
                if zeta.im == 0.0 && zeta.re < 0.0 {
                    branch_hits += 1;
                }
                principal_re_pow(zeta, 0.5 * p)
            } else {
                phi_minorant_unchecked(zeta, p)
            }
        })
        .sum();
    Ok(MinorantReport {
        p,
        n,
        mean: sum / n as f64,
        branch_hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::probes::phi_minorant;
    use crate::fourier::search::random_polynomial;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn analytic_function_has_zero_mean() {
        let f = TrigPolynomial::from_terms(&[(0, c(1.0)), (3, Complex64::new(0.0, 2.0))]);
        for p in [1.5, 2.0, 3.0] {
            assert_eq!(minorant_mean_check(&f, p, 64).unwrap().mean, 0.0);
        }
    }

    #[test]
    fn two_cos_sweeps_the_circle() {
        // zeta = e^{2 i theta}, so the means are angular averages of the weights
        let f = TrigPolynomial::from_terms(&[(-1, c(1.0)), (1, c(1.0))]);
        let r = minorant_mean_check(&f, 3.0, 4096).unwrap();
        assert!((r.mean - 2.0 / (3.0 * PI)).abs() < 1e-6);
        let r = minorant_mean_check(&f, 1.5, 4096).unwrap();
        assert!((r.mean - (0.75 * PI).sin() / (0.75 * PI)).abs() < 1e-6);
        let at_one = phi_minorant(Complex64::new(1.0, 0.0), 3.0).unwrap();
        assert!((at_one - (0.75 * PI).cos().abs()).abs() < 1e-15);
    }

    #[test]
    fn branch_takes_limit_from_above() {
        let v = principal_re_pow(c(-4.0), 0.75);
        assert!((v - 4f64.powf(0.75) * (0.75 * PI).cos()).abs() < 1e-15);
    }

    #[test]
    fn random_means_nonnegative() {
        for p in [1.5, 2.5, 3.0] {
            for k in 0..20 {
                let f = random_polynomial(8, 5, k);
                assert!(minorant_mean_check(&f, p, 1024).unwrap().mean >= -1e-8);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = TrigPolynomial::zero(1);
        assert!(minorant_mean_check(&f, 1.0, 64).is_err());
        assert!(minorant_mean_check(&f, 2.0, 48).is_err());
    }
}
