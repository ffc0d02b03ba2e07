use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid exponent pair (p = {p}, s = {s}): {reason}")]
    InvalidExponent { p: f64, s: f64, reason: String },

    #[error("{name} = {value} is outside the admissible range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("contract violated for {id}: {reason}")]
    Contract { id: String, reason: String },

    #[error("no sign change of the derivative-sign function on [{lo}, {hi}] (p = {p}, s = {s})")]
    NoSignChange { p: f64, s: f64, lo: f64, hi: f64 },

    #[error("the function is identically zero")]
    ZeroFunction,

    #[error("need at least {need} samples, got {got}")]
    InsufficientSamples { got: usize, need: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            range: format!("[{lo}, {hi}]"),
        })
    }
}
