//! Excitation probabilities of a two-level atom and a mirror in relative
//! uniform acceleration, with a scalar field whose dispersion carries a
//! minimal-length (GUP) correction.
//!
//! Everything below [`units`] works in four dimensionless groups
//! (x, y, zeta, eps) and is generic over the floating point type through
//! [`Real`]. Aliases for `f64` and `f32` are provided at the crate root.

pub mod amplitude;
pub mod closed_form;
pub mod config;
pub mod dispersion;
pub mod equivalence;
pub mod error;
pub mod modes;
pub mod quadrature;
pub mod runner;
pub mod scalar;
pub mod special;
pub mod units;

pub use amplitude::{p1_numeric, p2_numeric, verify_pair, AmplitudeResult, QuadratureSettings, VerifyRecord};
pub use closed_form::{
    p1_closed, p1_closed_with, p2_closed, p2_closed_with, temperatures, PhaseConvention,
    ProbabilityBreakdown, TemperaturePair,
};
pub use equivalence::{
    beta_bound, q_value, symmetry_defect_scan, violation_parameter, BetaBound, BoundInputs,
    ViolationReport,
};
pub use error::{Error, Result};
pub use scalar::Real;
pub use units::{
    from_dimensionless, to_dimensionless, validate_physical, DimensionlessConfig,
    FrequencyConvention, PhysicalConfig, PhysicalConstants,
};

/// Complex scalar used for mode values, amplitudes and Gamma evaluations.
pub type ComplexValue = num_complex::Complex<f64>;
pub type ComplexValue32 = num_complex::Complex<f32>;
pub type DimensionlessConfig32 = units::DimensionlessConfig<f32>;
pub type ProbabilityBreakdown32 = closed_form::ProbabilityBreakdown<f32>;
pub type SpacetimePoint = modes::SpacetimePoint<f64>;
pub type ModeSpec = modes::ModeSpec<f64>;
