//! The extremal family `f = alpha Re g + i beta Im g` with
//! `g(z) = ((1 + z) / (1 - z))^{2 gamma / pi}`.
//!
//! On the circle `g(e^{i theta}) = |x|^a e^{+-i gamma}` with
//! `x = cot(theta / 2)`, `a = 2 gamma / pi` and the sign of `x`. Since `g` is
//! analytic with `g(0) = 1`, the projections are explicit:
//!
//! ```text
//! P+ f = (alpha + beta)/2 g + (alpha - beta)/2
//! P- f = (alpha - beta)/2 (conj(g) - 1)
//! ```
//!
//! `f` is in `L^p` only for `gamma < pi/(2p)`, and the ratio approaches its
//! supremum only as `gamma` approaches that threshold, where `|f|^p` has a
//! nearly non-integrable singularity at `theta = 0`. A uniform grid resolves
//! that poorly, so [`gamma_ratio`] integrates in `y = ln|x|`, where the
//! singularity becomes an exponential tail whose leading term is integrated
//! in closed form.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::norms::{check_quadrature, lp_mean, s_aggregate, RatioReport};
use super::poly::grid_angle;
use crate::constants::ExponentPair;
use crate::error::{Error, Result};

/// Default number of trapezoid nodes in `y` for [`gamma_ratio`].
pub const DEFAULT_NODES: usize = 4096;
/// Lower end of the `y`-range; the integrand there is below `e^{-40}`.
const Y_TAIL: f64 = 40.0;

/// Values of `f`, `P+ f` and `P- f` at one boundary point, from `x = cot(theta/2)`.
fn family_at(x: f64, gamma: f64, alpha: f64, beta: f64) -> (Complex64, Complex64, Complex64) {
    let a = 2.0 * gamma / PI;
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    let g = Complex64::from_polar(x.abs().powf(a), sign * gamma);
    let f = Complex64::new(alpha * g.re, beta * g.im);
    let plus = g * (0.5 * (alpha + beta)) + 0.5 * (alpha - beta);
    let minus = (g.conj() - 1.0) * (0.5 * (alpha - beta));
    (f, plus, minus)
}

fn check_gamma(gamma: f64, p: Option<f64>) -> Result<()> {
    let limit = p.map_or(FRAC_PI_2, |p| PI / (2.0 * p));
    if !(gamma > 0.0 && gamma < limit) {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            range: format!("(0, {limit})"),
        });
    }
    Ok(())
}

fn check_alpha_beta(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite()) || (alpha == 0.0 && beta == 0.0) {
        return Err(Error::Parameter("(alpha, beta) must be finite and nonzero".into()));
    }
    Ok(())
}

/// Samples of `f` on the `n`-point half-offset grid. With `p` given, `gamma`
/// must lie below the integrability threshold `pi/(2p)`.
pub fn test_function_samples(
    gamma: f64,
    alpha: f64,
    beta: f64,
    n: usize,
    p: Option<f64>,
) -> Result<Vec<Complex64>> {
    check_gamma(gamma, p)?;
    check_quadrature(n)?;
    Ok((0..n)
        .map(|k| {
            let x = 1.0 / (0.5 * grid_angle(k, n)).tan();
            family_at(x, gamma, alpha, beta).0
        })
        .collect())
}

/// Projection ratio of the family member on a uniform `n`-point grid,
/// using the explicit projections.
pub fn sampled_gamma_ratio(
    e: &ExponentPair,
    gamma: f64,
    alpha: f64,
    beta: f64,
    n: usize,
) -> Result<RatioReport> {
    check_gamma(gamma, Some(e.p()))?;
    check_alpha_beta(alpha, beta)?;
    check_quadrature(n)?;
    let mut whole = Vec::with_capacity(n);
    let mut agg = Vec::with_capacity(n);
    for k in 0..n {
        let x = 1.0 / (0.5 * grid_angle(k, n)).tan();
        let (f, plus, minus) = family_at(x, gamma, alpha, beta);
        whole.push(f.norm());
        agg.push(s_aggregate(plus.norm(), minus.norm(), e.s()));
    }
    let ratio = lp_mean(&agg, e.p())? / lp_mean(&whole, e.p())?;
    Ok(with_params(RatioReport::new(e, n, ratio), gamma, alpha, beta))
}

fn with_params(mut r: RatioReport, gamma: f64, alpha: f64, beta: f64) -> RatioReport {
    r.gamma = Some(gamma);
    r.alpha = Some(alpha);
    r.beta = Some(beta);
    r
}

/// Projection ratio of the family member by quadrature in `y = ln|cot(theta/2)|`.
///
/// The circle mean becomes `(1/2pi) sum_{+-} int F(+-e^y) / cosh(y) dy`.
/// `||f||_p^p = A^p / cos(gamma p)` with `A^2 = alpha^2 cos^2 gamma + beta^2 sin^2 gamma`
/// exactly. For the aggregate, the leading growth `B^p e^{apy}` with
/// `B = (|alpha+beta|^s + |alpha-beta|^s)^{1/s} / 2` is subtracted and
/// integrated exactly; the remainder decays exponentially at both ends and
/// goes to an `n`-node trapezoid rule.
pub fn gamma_ratio(
    e: &ExponentPair,
    gamma: f64,
    alpha: f64,
    beta: f64,
    n: usize,
) -> Result<RatioReport> {
    check_gamma(gamma, Some(e.p()))?;
    check_alpha_beta(alpha, beta)?;
    check_quadrature(n)?;
    let (p, s) = (e.p(), e.s());
    let a = 2.0 * gamma / PI;
    let phi = a * p;
    let cos_gp = (gamma * p).cos();

    // scale out max(|alpha|, |beta|) so that the p-th powers stay moderate
    let scale = alpha.abs().max(beta.abs());
    let (al, be) = (alpha / scale, beta / scale);
    let amp = ((al * gamma.cos()).powi(2) + (be * gamma.sin()).powi(2)).sqrt();
    let denom_p = amp.powf(p) / cos_gp;

    let b_inf = 0.5 * s_aggregate((al + be).abs(), (al - be).abs(), s);
    let b_inf_p = b_inf.powf(p);
    let rate_hi = 1.0 - phi + a;
    let (y0, y1) = (-Y_TAIL, Y_TAIL / rate_hi);
    let h = (y1 - y0) / (n - 1) as f64;

    let integrand = |y: f64| {
        let x = y.exp();
        let mut sum = 0.0;
        for sign in [1.0, -1.0] {
            let (_, plus, minus) = family_at(sign * x, gamma, al, be);
            sum += s_aggregate(plus.norm(), minus.norm(), s).powf(p);
        }
        (sum - 2.0 * b_inf_p * (phi * y).exp()) / y.cosh()
    };
    let mut remainder = 0.0;
    for k in 0..n {
        let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        remainder += w * integrand(y0 + h * k as f64);
    }
    remainder *= h;
    let num_p = remainder / (2.0 * PI) + b_inf_p / cos_gp;
    let ratio = (num_p / denom_p).powf(1.0 / p);
    Ok(with_params(RatioReport::new(e, n, ratio), gamma, alpha, beta))
}

/// `(cos(k pi / K), sin(k pi / K))` for `k = 0..K`: directions covering
/// every ratio `alpha : beta`, including `(1, 0)` and, for even `K`, `(0, 1)`.
pub fn default_alphabeta_grid(k_max: usize) -> Vec<(f64, f64)> {
    (0..k_max)
        .map(|k| {
            let t = PI * k as f64 / k_max as f64;
            if 2 * k == k_max {
                (0.0, 1.0)
            } else {
                (t.cos(), t.sin())
            }
        })
        .collect()
}

/// For each fraction `phi`, the best [`gamma_ratio`] over `alphabeta` at
/// `gamma = phi pi / (2p)`. Ties keep the earlier grid point.
pub fn extremal_sweep(
    e: &ExponentPair,
    gamma_fractions: &[f64],
    alphabeta: &[(f64, f64)],
    n: usize,
) -> Result<Vec<RatioReport>> {
    if alphabeta.is_empty() {
        return Err(Error::Parameter("empty (alpha, beta) grid".into()));
    }
    gamma_fractions
        .iter()
        .map(|&frac| {
            if !(frac > 0.0 && frac < 1.0) {
                return Err(Error::Domain {
                    name: "gamma fraction",
                    value: frac,
                    range: "(0, 1)".into(),
                });
            }
            let gamma = frac * PI / (2.0 * e.p());
            let mut best: Option<RatioReport> = None;
            for &(alpha, beta) in alphabeta {
                let r = gamma_ratio(e, gamma, alpha, beta, n)?;
                if best.as_ref().is_none_or(|b| r.ratio > b.ratio) {
                    best = Some(r);
                }
            }
            Ok(best.expect("grid is nonempty"))
        })
        .collect()
}
