//! Sharp constants for the joint `L^p` estimate of the analytic and
//! co-analytic projections on the unit circle.
//!
//! * [`constants`]: closed forms and regime classification.
//! * [`lowerbound`]: extremal-family lower bounds and their `s -> infinity` limit.
//! * [`certify`]: interval branch-and-bound certification of the pointwise inequalities.
//! * [`fourier`]: trigonometric polynomials, projections and norm-ratio experiments.
//! * [`cli`]: the command-line front end.

pub mod certify;
pub mod cli;
pub mod constants;
pub mod error;
pub mod fourier;
pub mod lowerbound;

pub use constants::{classify, sharp_constant, ExponentPair, Regime};
pub use error::{Error, Result};
pub use lowerbound::{lower_bound, LowerBoundResult, MaxBranch, SignBranch};
