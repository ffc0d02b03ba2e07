//! Certification of the pointwise inequalities behind the sharp constants,
//! and sampled checks of the facts used to integrate them.

pub mod bnb;
pub mod expr;
pub mod interval;
pub mod probes;
pub mod scalar;

pub use bnb::{certify_nonneg, CertificationReport, CertifyRequest, Status};
pub use expr::{g_aux, h_claim, phi_high, phi_low, phi_t0, InequalityId};
pub use interval::Interval;
pub use probes::{power_mean_transfer, subharmonic_probe, v_weight, SubharmonicReport};
