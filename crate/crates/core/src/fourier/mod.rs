//! Trigonometric polynomials on the circle, the Riesz projections, `L^p`
//! norms by quadrature, and norm-ratio experiments.

pub mod extremal;
pub mod minorant;
pub mod norms;
pub mod poly;
pub mod search;

pub use extremal::{default_alphabeta_grid, extremal_sweep, gamma_ratio, test_function_samples};
pub use minorant::{minorant_mean_check, MinorantReport};
pub use norms::{aggregate_norm, lp_norm, projection_ratio, RatioReport};
pub use poly::{analyze, conjugate, project_minus, project_plus, TrigPolynomial};
pub use search::{conjugate_ratio, conjugate_search, random_ratio_search, ConjugateReport, SearchOutcome};
