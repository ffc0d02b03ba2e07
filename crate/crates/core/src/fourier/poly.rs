//! Trigonometric polynomials `f(theta) = sum_{|n| <= N} c_n e^{i n theta}`
//! and their sampling on the half-offset grid `theta_k = 2 pi (k + 1/2) / M`.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Angle of the `k`-th node of the `m`-point half-offset grid.
pub fn grid_angle(k: usize, m: usize) -> f64 {
    TAU * (k as f64 + 0.5) / m as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    degree: usize,
    /// `coeffs[n + degree]` is the coefficient of `e^{i n theta}`.
    coeffs: Vec<Complex64>,
}

impl TrigPolynomial {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * degree + 1],
        }
    }

    /// From the coefficients of frequencies `-degree..=degree`, in order.
    pub fn from_coefficients(degree: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * degree + 1 {
            return Err(Error::Parameter(format!(
                "degree {degree} needs {} coefficients, got {}",
                2 * degree + 1,
                coeffs.len()
            )));
        }
        Ok(Self { degree, coeffs })
    }

    /// From `(frequency, coefficient)` pairs; repeated frequencies add up.
    pub fn from_terms(terms: &[(i64, Complex64)]) -> Self {
        let degree = terms.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut f = Self::zero(degree);
        for &(n, c) in terms {
            f.coeffs[(n + degree as i64) as usize] += c;
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `e^{i n theta}`; zero outside the support.
    pub fn coefficient(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.degree {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.degree as i64) as usize]
        }
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let d = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - d, c))
    }

    /// Applies a coefficient multiplier `c_n -> m(n) c_n`.
    pub fn map_coefficients(&self, m: impl Fn(i64, Complex64) -> Complex64) -> Self {
        let coeffs = self.frequencies().map(|(n, c)| m(n, c)).collect();
        Self {
            degree: self.degree,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Real-valued on the circle: `c_{-n} = conj(c_n)` up to `tol` times the
    /// largest coefficient.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (0..=self.degree as i64).all(|n| {
            (self.coefficient(-n) - self.coefficient(n).conj()).norm() <= tol * scale
        })
    }

    /// Direct evaluation at one angle.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.frequencies()
            .map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * theta))
            .sum()
    }

    /// Values at the `m`-point half-offset grid, `m >= 2 degree + 1`.
    pub fn samples(&self, m: usize) -> Result<Vec<Complex64>> {
        let need = 2 * self.degree + 1;
        if m < need {
            return Err(Error::InsufficientSamples { got: m, need });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for (n, c) in self.frequencies() {
            let shift = Complex64::from_polar(1.0, PI * n as f64 / m as f64);
            buf[n.rem_euclid(m as i64) as usize] += c * shift;
        }
        FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
        Ok(buf)
    }
}

impl Add for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn add(self, o: &TrigPolynomial) -> TrigPolynomial {
        let degree = self.degree.max(o.degree);
        let mut out = TrigPolynomial::zero(degree);
        for n in -(degree as i64)..=degree as i64 {
            out.coeffs[(n + degree as i64) as usize] = self.coefficient(n) + o.coefficient(n);
        }
        out
    }
}

impl Sub for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn sub(self, o: &TrigPolynomial) -> TrigPolynomial {
        let degree = self.degree.max(o.degree);
        let mut out = TrigPolynomial::zero(degree);
        for n in -(degree as i64)..=degree as i64 {
            out.coeffs[(n + degree as i64) as usize] = self.coefficient(n) - o.coefficient(n);
        }
        out
    }
}

/// Fourier coefficients `|n| <= degree` of uniformly sampled data on the
/// half-offset grid.
pub fn analyze(samples: &[Complex64], degree: usize) -> Result<TrigPolynomial> {
    let m = samples.len();
    let need = 2 * degree + 1;
    if m < need {
        return Err(Error::InsufficientSamples { got: m, need });
    }
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let mut f = TrigPolynomial::zero(degree);
    for n in -(degree as i64)..=degree as i64 {
        let shift = Complex64::from_polar(1.0 / m as f64, -PI * n as f64 / m as f64);
        f.coeffs[(n + degree as i64) as usize] = buf[n.rem_euclid(m as i64) as usize] * shift;
    }
    Ok(f)
}

/// Analytic part: keeps `n >= 0`.
pub fn project_plus(f: &TrigPolynomial) -> TrigPolynomial {
    f.map_coefficients(|n, c| if n >= 0 { c } else { Complex64::new(0.0, 0.0) })
}

/// Co-analytic part: keeps `n <= -1`.
pub fn project_minus(f: &TrigPolynomial) -> TrigPolynomial {
    f.map_coefficients(|n, c| if n < 0 { c } else { Complex64::new(0.0, 0.0) })
}

/// Harmonic conjugate, the multiplier `-i sgn(n)`.
pub fn conjugate(f: &TrigPolynomial) -> TrigPolynomial {
    f.map_coefficients(|n, c| match n.signum() {
        1 => Complex64::new(c.im, -c.re),
        -1 => Complex64::new(-c.im, c.re),
        _ => Complex64::new(0.0, 0.0),
    })
}
