//! Breadth-first interval branch-and-bound.
//!
//! Each box gets a rigorous lower bound, the best of three enclosures of the
//! target over the box:
//!
//! * the natural interval extension;
//! * the mean-value form `f(m) + sum_i g_i(B) (x_i - m_i)`;
//! * the second-order form `f(m) + g(m).d + 1/2 d^T H(B) d`.
//!
//! The second-order form is what makes boxes near a zero minimum, or on a
//! function that vanishes identically, certifiable at moderate depth: its
//! error shrinks like the cube of the box width. The midpoint of every box is
//! also evaluated in `f64` to look for violations.
//!
//! Boxes are processed one level at a time. Within a level the evaluation is
//! data-parallel and the results are merged in box order, so the report does
//! not depend on the thread schedule.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::expr::{
    auxg_expr, claim51_expr, eq1_expr, lemma41_expr, lemma42_expr, lemma42_t_max, InequalityId,
    EQ1_SHIFT,
};
use super::interval::Interval;
use super::scalar::{Jet, Scalar};
use crate::constants::{validate_p, P_MAX};
use crate::error::{Error, Result};

pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_DEPTH: u32 = 48;
pub const DEFAULT_MAX_BOXES: u64 = 50_000_000;
/// Upper end of the default `p`-range for [`InequalityId::Claim51`].
pub const CLAIM51_P_MAX: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Certified,
    ViolationFound,
    Inconclusive,
}

impl Status {
    /// Process exit code for the status.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::ViolationFound => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub id: InequalityId,
    pub p: Option<f64>,
    pub s: Option<f64>,
    #[serde(rename = "box")]
    pub domain: Vec<[f64; 2]>,
    pub status: Status,
    /// Rigorous lower bound of the target over `domain`.
    pub lower_bound: f64,
    pub min_point: Vec<f64>,
    pub min_value: f64,
    pub boxes: u64,
    pub depth: u32,
    pub eps: f64,
}

/// What to certify, where, and with which budget.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyRequest {
    pub id: InequalityId,
    pub p: Option<f64>,
    pub s: Option<f64>,
    /// Defaults to the full domain of the inequality.
    pub domain: Option<Vec<[f64; 2]>>,
    pub eps: f64,
    pub max_depth: u32,
    pub max_boxes: u64,
}

impl CertifyRequest {
    pub fn new(id: InequalityId) -> Self {
        Self {
            id,
            p: None,
            s: None,
            domain: None,
            eps: DEFAULT_EPS,
            max_depth: DEFAULT_MAX_DEPTH,
            max_boxes: DEFAULT_MAX_BOXES,
        }
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn s(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn domain(mut self, domain: Vec<[f64; 2]>) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn max_depth(mut self, max_depth: u32) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn max_boxes(mut self, max_boxes: u64) -> Self {
        self.max_boxes = max_boxes;
        self
    }
}

/// A fully validated target.
#[derive(Debug, Clone, Copy)]
enum Target {
    Lemma41 { p: f64, s: f64 },
    Lemma42 { p: f64, s: f64 },
    Eq1 { p: f64, shift: f64 },
    Claim51,
    AuxG { s: f64 },
}

impl Target {
    fn eval<S: Scalar, const N: usize>(&self, x: &[S; N]) -> S {
        match *self {
            Target::Lemma41 { p, s } => lemma41_expr(x[0].clone(), x[1].clone(), p, s),
            Target::Lemma42 { p, s } => lemma42_expr(x[0].clone(), x[1].clone(), p, s),
            Target::Eq1 { p, shift } => eq1_expr(x[0].clone(), p, shift),
            Target::Claim51 => claim51_expr(x[0].clone()),
            Target::AuxG { s } => auxg_expr(x[0].clone(), s),
        }
    }
}

fn contract(id: InequalityId, reason: impl Into<String>) -> Error {
    Error::Contract {
        id: id.cli_name().into(),
        reason: reason.into(),
    }
}

fn require(id: InequalityId, v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| contract(id, format!("{name} is required")))
}

/// The full domain of `id` at exponent `p`.
pub fn default_domain(id: InequalityId, p: Option<f64>) -> Vec<[f64; 2]> {
    match id {
        InequalityId::Lemma41 => vec![[0.0, 1.0], [0.0, PI]],
        InequalityId::Lemma42 => vec![[0.0, 1.0], [0.0, lemma42_t_max(p.unwrap_or(2.0))]],
        InequalityId::Claim51 => vec![[2.0, CLAIM51_P_MAX]],
        _ => vec![[0.0, 1.0]],
    }
}

struct Resolved {
    target: Target,
    p: Option<f64>,
    s: Option<f64>,
    domain: Vec<[f64; 2]>,
}

fn resolve(req: &CertifyRequest) -> Result<Resolved> {
    let id = req.id;
    if !(req.eps.is_finite() && req.eps >= 0.0) {
        return Err(Error::Parameter(format!("eps must be finite and >= 0, got {}", req.eps)));
    }
    if let Some(p) = req.p {
        validate_p(p)?;
    }
    let (target, p, s) = match id {
        InequalityId::Lemma41 => {
            let p = require(id, req.p, "p")?;
            let s = require(id, req.s, "s")?;
            let low_a = s == 4.0 && p > 1.0 && p <= 1.25;
            let low_b = s == 2.0 && p > 1.25 && p < 2.0;
            if !(low_a || low_b) {
                return Err(contract(
                    id,
                    format!("needs (s = 4 and 1 < p <= 5/4) or (s = 2 and 5/4 < p < 2), got p = {p}, s = {s}"),
                ));
            }
            (Target::Lemma41 { p, s }, Some(p), Some(s))
        }
        InequalityId::Lemma42 => {
            let p = require(id, req.p, "p")?;
            let s = require(id, req.s, "s")?;
            if !(p >= 2.0 && s > 0.0 && s <= p) {
                return Err(contract(id, format!("needs p >= 2 and 0 < s <= p, got p = {p}, s = {s}")));
            }
            (Target::Lemma42 { p, s }, Some(p), Some(s))
        }
        InequalityId::Eq1Section5 | InequalityId::Eq1Shifted => {
            // the shifted fixture is meant to run bare, on the p = 2 slice
            let p = match (id, req.p) {
                (InequalityId::Eq1Shifted, None) => 2.0,
                _ => require(id, req.p, "p")?,
            };
            if p < 2.0 {
                return Err(contract(id, format!("needs p >= 2, got p = {p}")));
            }
            if let Some(s) = req.s {
                if s != p {
                    return Err(contract(id, format!("is the s = p slice, got s = {s}")));
                }
            }
            let shift = if id == InequalityId::Eq1Shifted { EQ1_SHIFT } else { 0.0 };
            (Target::Eq1 { p, shift }, Some(p), Some(p))
        }
        InequalityId::Claim51 => (Target::Claim51, None, None),
        InequalityId::AuxG => {
            let s = require(id, req.s, "s")?;
            if !(s.is_finite() && s >= 2.0) {
                return Err(contract(id, format!("needs s >= 2, got s = {s}")));
            }
            (Target::AuxG { s }, None, Some(s))
        }
    };

    let full = default_domain(id, p);
    let domain = req.domain.clone().unwrap_or_else(|| full.clone());
    if domain.len() != full.len() {
        return Err(contract(
            id,
            format!("box must have {} dimension(s), got {}", full.len(), domain.len()),
        ));
    }
    let hi_limit = |k: usize| {
        if id == InequalityId::Claim51 {
            P_MAX
        } else {
            full[k][1]
        }
    };
    for (k, (d, f)) in domain.iter().zip(&full).enumerate() {
        if !(d[0].is_finite() && d[1].is_finite() && d[0] <= d[1]) {
            return Err(contract(id, format!("invalid box side [{}, {}]", d[0], d[1])));
        }
        if d[0] < f[0] || d[1] > hi_limit(k) {
            return Err(contract(
                id,
                format!("box side [{}, {}] leaves the domain [{}, {}]", d[0], d[1], f[0], hi_limit(k)),
            ));
        }
    }
    Ok(Resolved {
        target,
        p,
        s,
        domain,
    })
}

/// Runs the branch-and-bound for `req`.
pub fn certify_nonneg(req: &CertifyRequest) -> Result<CertificationReport> {
    let resolved = resolve(req)?;
    match resolved.domain.len() {
        1 => Ok(run::<1>(req, &resolved)),
        2 => Ok(run::<2>(req, &resolved)),
        n => unreachable!("no inequality has dimension {n}"),
    }
}

struct BoxEval<const N: usize> {
    bound: f64,
    mid: [f64; N],
    mid_value: f64,
}

fn lower(x: Interval) -> f64 {
    if x.lo().is_nan() {
        f64::NEG_INFINITY
    } else {
        x.lo()
    }
}

fn evaluate<const N: usize>(target: &Target, b: &[Interval; N]) -> BoxEval<N> {
    let mid: [f64; N] = std::array::from_fn(|i| b[i].mid());
    let mid_value = target.eval::<f64, N>(&mid);

    let over_box: [Jet<Interval, N>; N] = std::array::from_fn(|i| Jet::variable(b[i], i));
    let at_mid: [Jet<Interval, N>; N] =
        std::array::from_fn(|i| Jet::variable(Interval::point(mid[i]), i));
    let jb = target.eval(&over_box);
    let jm = target.eval(&at_mid);

    let delta: [Interval; N] = std::array::from_fn(|i| b[i] - Interval::point(mid[i]));
    let natural = lower(jb.value);

    let mut mean_value = jm.value;
    for (g, d) in jb.grad.iter().zip(&delta) {
        mean_value = mean_value + *g * *d;
    }

    let mut second = jm.value;
    let half = Interval::point(0.5);
    for i in 0..N {
        second = second + jm.grad[i] * delta[i];
        for j in 0..N {
            let dd = if i == j { delta[i].sqr() } else { delta[i] * delta[j] };
            second = second + half * jb.hess[i][j] * dd;
        }
    }

    let bound = natural.max(lower(mean_value)).max(lower(second));
    BoxEval {
        bound,
        mid,
        mid_value,
    }
}

fn split<const N: usize>(b: &[Interval; N]) -> ([Interval; N], [Interval; N]) {
    let mut k = 0;
    for i in 1..N {
        if b[i].width() > b[k].width() {
            k = i;
        }
    }
    let (l, r) = b[k].bisect();
    let (mut a, mut c) = (*b, *b);
    a[k] = l;
    c[k] = r;
    (a, c)
}

fn witness_cmp<const N: usize>(a: &(f64, [f64; N]), b: &(f64, [f64; N])) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| {
        a.1.iter()
            .zip(&b.1)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn run<const N: usize>(req: &CertifyRequest, resolved: &Resolved) -> CertificationReport {
    let eps = req.eps;
    let target = resolved.target;
    let root: [Interval; N] =
        std::array::from_fn(|i| Interval::new(resolved.domain[i][0], resolved.domain[i][1]));

    let mut level = vec![root];
    let mut depth = 0u32;
    let mut boxes = 0u64;
    let mut certified_min = f64::INFINITY;
    let mut witness: Option<(f64, [f64; N])> = None;

    let status;
    let lower_bound;
    loop {
        let evals: Vec<BoxEval<N>> = level.par_iter().map(|b| evaluate(&target, b)).collect();
        boxes += level.len() as u64;

        for e in &evals {
            if e.mid_value.is_nan() {
                continue;
            }
            let cand = (e.mid_value, e.mid);
            if witness.as_ref().is_none_or(|w| witness_cmp(&cand, w).is_lt()) {
                witness = Some(cand);
            }
        }

        let open_min = evals
            .iter()
            .filter(|e| e.bound < -eps)
            .map(|e| e.bound)
            .fold(f64::INFINITY, f64::min);
        for e in evals.iter().filter(|e| e.bound >= -eps) {
            certified_min = certified_min.min(e.bound);
        }

        if witness.is_some_and(|w| w.0 < -eps) {
            status = Status::ViolationFound;
            lower_bound = certified_min.min(open_min);
            break;
        }
        let open: Vec<&[Interval; N]> = level
            .iter()
            .zip(&evals)
            .filter(|(_, e)| e.bound < -eps)
            .map(|(b, _)| b)
            .collect();
        if open.is_empty() {
            status = Status::Certified;
            lower_bound = certified_min;
            break;
        }
        if depth >= req.max_depth || boxes + 2 * open.len() as u64 > req.max_boxes {
            status = Status::Inconclusive;
            lower_bound = certified_min.min(open_min);
            break;
        }
        level = open
            .into_iter()
            .flat_map(|b| {
                let (l, r) = split(b);
                [l, r]
            })
            .collect();
        depth += 1;
    }

    let (min_value, min_point) = witness
        .map(|(v, x)| (v, x.to_vec()))
        .unwrap_or((f64::NAN, Vec::new()));
    CertificationReport {
        id: req.id,
        p: resolved.p,
        s: resolved.s,
        domain: resolved.domain.clone(),
        status,
        lower_bound,
        min_point,
        min_value,
        boxes,
        depth,
        eps,
    }
}

/// Evaluates the target of a report at a point in `f64`, e.g. to replay a
/// violation witness.
pub fn evaluate_at(id: InequalityId, p: Option<f64>, s: Option<f64>, x: &[f64]) -> Result<f64> {
    let mut req = CertifyRequest::new(id);
    req.p = p;
    req.s = s;
    let resolved = resolve(&req)?;
    if x.len() != id.dimension() {
        return Err(Error::Parameter(format!(
            "{} expects {} coordinate(s)",
            id,
            id.dimension()
        )));
    }
    Ok(match x.len() {
        1 => resolved.target.eval::<f64, 1>(&[x[0]]),
        _ => resolved.target.eval::<f64, 2>(&[x[0], x[1]]),
    })
}

/// Encloses the target over a box in interval arithmetic (natural extension).
pub fn enclose(id: InequalityId, p: Option<f64>, s: Option<f64>, domain: &[[f64; 2]]) -> Result<Interval> {
    let mut req = CertifyRequest::new(id).domain(domain.to_vec());
    req.p = p;
    req.s = s;
    let resolved = resolve(&req)?;
    let iv = |k: usize| Interval::new(domain[k][0], domain[k][1]);
    Ok(match domain.len() {
        1 => resolved.target.eval::<Interval, 1>(&[iv(0)]),
        _ => resolved.target.eval::<Interval, 2>(&[iv(0), iv(1)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contracts_are_enforced() {
        let r = CertifyRequest::new(InequalityId::Lemma41).p(1.5).s(4.0);
        let err = certify_nonneg(&r).unwrap_err();
        assert!(err.to_string().contains("s = 2"));
        let r = CertifyRequest::new(InequalityId::Lemma42).p(3.0).s(4.0);
        assert!(certify_nonneg(&r).is_err());
        let r = CertifyRequest::new(InequalityId::Eq1Section5).p(1.9);
        assert!(certify_nonneg(&r).is_err());
        let r = CertifyRequest::new(InequalityId::AuxG).s(1.0);
        assert!(certify_nonneg(&r).is_err());
        let r = CertifyRequest::new(InequalityId::Lemma42)
            .p(5.0)
            .s(5.0)
            .domain(vec![[0.0, 1.0], [0.0, 2.0]]);
        assert!(certify_nonneg(&r).is_err());
        let r = CertifyRequest::new(InequalityId::Claim51).domain(vec![[1.5, 3.0]]);
        assert!(certify_nonneg(&r).is_err());
    }

    #[test]
    fn claim51_and_auxg_certify() {
        let r = certify_nonneg(&CertifyRequest::new(InequalityId::Claim51)).unwrap();
        assert_eq!(r.status, Status::Certified);
        assert!(r.lower_bound > 0.0);
        for s in [2.0, 3.0, 8.0] {
            let r = certify_nonneg(&CertifyRequest::new(InequalityId::AuxG).s(s)).unwrap();
            assert_eq!(r.status, Status::Certified, "{s}");
        }
    }

    #[test]
    fn shifted_fixture_is_falsified() {
        let r = certify_nonneg(&CertifyRequest::new(InequalityId::Eq1Shifted).p(2.0)).unwrap();
        assert_eq!(r.status, Status::ViolationFound);
        assert!(r.min_value < -r.eps);
        let replay = evaluate_at(r.id, r.p, r.s, &r.min_point).unwrap();
        assert_eq!(replay, r.min_value);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let r = CertifyRequest::new(InequalityId::Lemma41)
            .p(1.5)
            .s(2.0)
            .max_depth(3);
        let rep = certify_nonneg(&r).unwrap();
        assert_eq!(rep.status, Status::Inconclusive);
        assert!(rep.lower_bound < -rep.eps);
        let r = CertifyRequest::new(InequalityId::Lemma41)
            .p(1.5)
            .s(2.0)
            .max_boxes(10);
        assert_eq!(certify_nonneg(&r).unwrap().status, Status::Inconclusive);
    }

    #[test]
    fn reports_are_deterministic() {
        let r = CertifyRequest::new(InequalityId::Eq1Section5).p(3.3);
        let a = certify_nonneg(&r).unwrap();
        let b = certify_nonneg(&r).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.status, Status::Certified);
    }

    #[test]
    fn json_field_names() {
        let r = certify_nonneg(&CertifyRequest::new(InequalityId::Claim51)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["box", "boxes", "depth", "eps", "id", "lower_bound", "min_point", "min_value", "p", "s", "status"]
        );
        assert!(v["p"].is_null());
    }
}
