//! `L^p` norms on the circle by the half-offset trapezoid rule, and the
//! projection ratio `||(|P+ f|^s + |P- f|^s)^{1/s}||_p / ||f||_p`.

use num_complex::Complex64;
use serde::Serialize;

use super::poly::{project_minus, project_plus, TrigPolynomial};
use crate::constants::{sharp_constant, ExponentPair};
use crate::error::{Error, Result};

/// Smallest admissible quadrature size.
pub const MIN_QUADRATURE: usize = 64;

/// Record of one norm-ratio experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub p: f64,
    pub s: f64,
    pub gamma: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "N")]
    pub n: usize,
    pub ratio: f64,
    pub reference: f64,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RatioReport {
    pub(crate) fn new(e: &ExponentPair, n: usize, ratio: f64) -> Self {
        let reference = sharp_constant(e).0;
        Self {
            p: e.p(),
            s: e.s(),
            gamma: None,
            alpha: None,
            beta: None,
            n,
            ratio,
            reference,
            margin: ratio / reference,
            seed: None,
        }
    }

    /// The ratio exceeds the reference constant by more than `rel_tol`.
    pub fn exceeds_reference(&self, rel_tol: f64) -> bool {
        self.ratio > self.reference * (1.0 + rel_tol)
    }
}

pub(crate) fn check_quadrature(n: usize) -> Result<()> {
    if n < MIN_QUADRATURE || !n.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "quadrature size must be a power of two >= {MIN_QUADRATURE}, got {n}"
        )));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            range: "(0, inf)".into(),
        });
    }
    Ok(())
}

/// `(mean |v|^p)^{1/p}`, scaled by the largest value so that large `p`
/// cannot overflow.
pub fn lp_mean(values: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    if values.is_empty() {
        return Err(Error::InsufficientSamples { got: 0, need: 1 });
    }
    let top = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if top == 0.0 {
        return Ok(0.0);
    }
    let mean = values.iter().map(|v| (v.abs() / top).powf(p)).sum::<f64>() / values.len() as f64;
    Ok(top * mean.powf(1.0 / p))
}

/// `L^p` norm of grid samples.
pub fn lp_norm_of_samples(samples: &[Complex64], p: f64) -> Result<f64> {
    let mags: Vec<f64> = samples.iter().map(|z| z.norm()).collect();
    lp_mean(&mags, p)
}

/// `L^p` norm of `f` with an `n`-point half-offset trapezoid rule.
pub fn lp_norm(f: &TrigPolynomial, p: f64, n: usize) -> Result<f64> {
    check_quadrature(n)?;
    lp_norm_of_samples(&f.samples(n)?, p)
}

/// `(a^s + b^s)^{1/s}` for `a, b >= 0` without overflow.
pub fn s_aggregate(a: f64, b: f64, s: f64) -> f64 {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if big == 0.0 {
        return 0.0;
    }
    big * (1.0 + (small / big).powf(s)).powf(1.0 / s)
}

/// `L^p` norm of the pointwise `s`-aggregate of `|P+ f|` and `|P- f|` samples.
pub fn aggregate_norm_of_samples(plus: &[Complex64], minus: &[Complex64], e: &ExponentPair) -> Result<f64> {
    if plus.len() != minus.len() {
        return Err(Error::Parameter("sample vectors differ in length".into()));
    }
    let agg: Vec<f64> = plus
        .iter()
        .zip(minus)
        .map(|(a, b)| s_aggregate(a.norm(), b.norm(), e.s()))
        .collect();
    lp_mean(&agg, e.p())
}

pub fn aggregate_norm(f: &TrigPolynomial, e: &ExponentPair, n: usize) -> Result<f64> {
    check_quadrature(n)?;
    let plus = project_plus(f).samples(n)?;
    let minus = project_minus(f).samples(n)?;
    aggregate_norm_of_samples(&plus, &minus, e)
}

/// `aggregate_norm(f) / ||f||_p` with the sharp constant as reference.
pub fn projection_ratio(f: &TrigPolynomial, e: &ExponentPair, n: usize) -> Result<RatioReport> {
    check_quadrature(n)?;
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let plus = project_plus(f).samples(n)?;
    let minus = project_minus(f).samples(n)?;
    let whole: Vec<Complex64> = plus.iter().zip(&minus).map(|(a, b)| a + b).collect();
    let denom = lp_norm_of_samples(&whole, e.p())?;
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let num = aggregate_norm_of_samples(&plus, &minus, e)?;
    Ok(RatioReport::new(e, n, num / denom))
}

/// Doubles the quadrature size from `n0` until two consecutive ratios agree
/// to `rel_tol`, or `n_max` is reached; returns the report at the larger size.
pub fn converged_projection_ratio(
    f: &TrigPolynomial,
    e: &ExponentPair,
    n0: usize,
    rel_tol: f64,
    n_max: usize,
) -> Result<RatioReport> {
    let n0 = n0.max((2 * f.degree() + 1).next_power_of_two()).max(MIN_QUADRATURE);
    let mut prev = projection_ratio(f, e, n0)?;
    let mut n = n0;
    while n < n_max {
        n *= 2;
        let next = projection_ratio(f, e, n)?;
        let done = (next.ratio - prev.ratio).abs() <= rel_tol * next.ratio;
        prev = next;
        if done {
            break;
        }
    }
    Ok(prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair(p: f64, s: f64) -> ExponentPair {
        ExponentPair::new(p, s).unwrap()
    }

    fn two_cos() -> TrigPolynomial {
        TrigPolynomial::from_terms(&[(-1, c(1.0, 0.0)), (1, c(1.0, 0.0))])
    }

    #[test]
    fn norm_examples() {
        let one = TrigPolynomial::from_terms(&[(0, c(1.0, 0.0))]);
        for p in [0.5, 1.0, 3.7] {
            assert!((lp_norm(&one, p, 64).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((lp_norm(&two_cos(), 2.0, 64).unwrap() - 2f64.sqrt()).abs() < 1e-9);
        assert!((lp_norm(&two_cos(), 4.0, 64).unwrap() - 1.5650845800732873).abs() < 1e-7);
        assert!(lp_norm(&one, 2.0, 100).is_err());
        assert!(lp_norm(&one, 2.0, 32).is_err());
    }

    #[test]
    fn aggregate_examples() {
        let f = two_cos();
        assert!((aggregate_norm(&f, &pair(2.0, 2.0), 64).unwrap() - 2f64.sqrt()).abs() < 1e-9);
        let g = TrigPolynomial::from_terms(&[(0, c(1.0, 0.0)), (3, c(0.0, 2.0))]);
        let e = pair(3.0, 1.5);
        assert!((aggregate_norm(&g, &e, 256).unwrap() - lp_norm(&g, 3.0, 256).unwrap()).abs() < 1e-14);
        let a = aggregate_norm(&f, &pair(3.0, 64.0), 64).unwrap();
        // the aggregate is the constant 2^{1/64}
        assert!((a - 2f64.powf(1.0 / 64.0)).abs() < 1e-12);
        assert!((a - 1.0).abs() < 0.011);
    }

    #[test]
    fn ratio_examples() {
        let r = projection_ratio(&two_cos(), &pair(2.0, 2.0), 4096).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-10);
        let k = TrigPolynomial::from_terms(&[(0, c(-2.5, 1.0))]);
        let r = projection_ratio(&k, &pair(3.3, 0.7), 64).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-14);
        assert_eq!(projection_ratio(&TrigPolynomial::zero(2), &pair(2.0, 2.0), 64), Err(Error::ZeroFunction));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"N\":64") && !json.contains("seed"));
    }

    #[test]
    fn convergence_harness_doubles() {
        let f = TrigPolynomial::from_terms(&[(-2, c(0.3, 0.0)), (1, c(1.0, -0.5)), (7, c(0.2, 0.2))]);
        let r = converged_projection_ratio(&f, &pair(3.0, 1.5), 64, 1e-8, 1 << 16).unwrap();
        let again = projection_ratio(&f, &pair(3.0, 1.5), r.n * 2).unwrap();
        assert!((r.ratio - again.ratio).abs() <= 1e-8 * r.ratio);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = TrigPolynomial> {
        (0..=max_deg).prop_flat_map(|d| {
            proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 2 * d + 1).prop_map(move |v| {
                TrigPolynomial::from_coefficients(d, v.into_iter().map(|(a, b)| c(a, b)).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parseval(f in arb_poly(16)) {
            let n2 = lp_norm(&f, 2.0, 64).unwrap().powi(2);
            let coeff: f64 = f.coefficients().iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((n2 - coeff).abs() <= 1e-12 * coeff.max(1.0));
        }

        #[test]
        fn p_two_ratio_at_most_one(f in arb_poly(10)) {
            prop_assume!(!f.is_zero());
            let r = projection_ratio(&f, &pair(2.0, 2.0), 64).unwrap();
            prop_assert!(r.ratio <= 1.0 + 1e-9);
        }

        #[test]
        fn s_monotonicity_transfer(f in arb_poly(8), s in 0.3f64..4.0, ds in 0.0f64..4.0, p in 1.2f64..6.0) {
            let s0 = s + ds;
            let a = aggregate_norm(&f, &pair(p, s), 256).unwrap();
            let b = aggregate_norm(&f, &pair(p, s0), 256).unwrap();
            let factor = 2f64.powf(1.0 / s - 1.0 / s0);
            prop_assert!(a <= factor * b * (1.0 + 1e-10) + 1e-12);
            prop_assert!(b <= a * (1.0 + 1e-10) + 1e-12);
        }
    }
}
