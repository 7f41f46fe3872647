//! Physical constants, SI parameter validation and the reduction to the four
//! dimensionless groups every other module works with.
//!
//! The SI layer is `f64` only: hbar^2 ~ 1e-68 is below the range of `f32`.
//! Everything downstream of [`to_dimensionless`] is generic over [`Real`].

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Upper bound on the dimensionless GUP strength for which the first-order
/// formulas are trusted.
pub const EPS_LIMIT: f64 = 0.1;

/// CODATA 2018 constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light (m/s).
    pub c: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Boltzmann constant (J/K).
    pub k_b: f64,
    /// Planck mass (kg).
    pub planck_mass: f64,
}

impl PhysicalConstants {
    pub const CODATA2018: Self = Self {
        c: 299_792_458.0,
        hbar: 1.054_571_817e-34,
        k_b: 1.380_649e-23,
        planck_mass: 2.176_434e-8,
    };

    /// Planck momentum M_P c (kg m/s), the natural unit of 1/sqrt(beta).
    pub fn planck_momentum(&self) -> f64 {
        self.planck_mass * self.c
    }

    /// Converts beta given in units of (M_P c)^-2 to SI (kg m/s)^-2.
    pub fn beta_from_planck_units(&self, beta_planck: f64) -> f64 {
        beta_planck / self.planck_momentum().powi(2)
    }

    /// Converts beta in SI (kg m/s)^-2 to units of (M_P c)^-2.
    pub fn beta_to_planck_units(&self, beta_si: f64) -> f64 {
        beta_si * self.planck_momentum().powi(2)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA2018
    }
}

/// How user-supplied frequencies are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrequencyConvention {
    /// Values are angular frequencies in rad/s.
    #[default]
    Angular,
    /// Values are ordinary frequencies in Hz and get multiplied by 2 pi.
    Ordinary,
}

impl FrequencyConvention {
    pub fn to_angular(self, value: f64) -> f64 {
        match self {
            FrequencyConvention::Angular => value,
            FrequencyConvention::Ordinary => 2.0 * std::f64::consts::PI * value,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrequencyConvention::Angular => "angular",
            FrequencyConvention::Ordinary => "ordinary",
        }
    }
}

impl std::str::FromStr for FrequencyConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "angular" => Ok(Self::Angular),
            "ordinary" => Ok(Self::Ordinary),
            other => Err(format!("unknown frequency convention `{other}` (angular|ordinary)")),
        }
    }
}

/// System parameters in SI units. Frequencies are angular (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    /// Proper acceleration (m/s^2).
    pub a: f64,
    /// Atomic transition frequency (rad/s).
    pub omega0: f64,
    /// Field-mode frequency (rad/s).
    pub nu: f64,
    /// Mirror (static-mirror case) or atom (accelerating-mirror case) position (m).
    pub z0: f64,
    /// Atom-field coupling (1/s).
    pub g: f64,
    /// GUP parameter ((kg m/s)^-2).
    pub beta: f64,
}

/// Lists every violated [`PhysicalConfig`] invariant. Empty means valid.
///
/// The `z0 < c^2/a` bound belongs to the accelerating-mirror geometry but is
/// reported here unconditionally; callers that only need the static-mirror
/// case may ignore it.
pub fn validate_physical(p: &PhysicalConfig, k: &PhysicalConstants) -> Vec<String> {
    let mut out = Vec::new();
    let positive = [
        ("a", p.a),
        ("omega0", p.omega0),
        ("nu", p.nu),
        ("z0", p.z0),
        ("g", p.g),
    ];
    for (name, v) in positive {
        if !(v > 0.0 && v.is_finite()) {
            out.push(format!("{name} must be finite and > 0 (got {v})"));
        }
    }
    if !(p.beta >= 0.0 && p.beta.is_finite()) {
        out.push(format!("beta must be finite and >= 0 (got {})", p.beta));
    }
    if p.a > 0.0 && p.z0 > 0.0 {
        let horizon = k.c * k.c / p.a;
        if p.z0 >= horizon {
            out.push(format!("z0 must be < c^2/a = {horizon:e} m (got {})", p.z0));
        }
    }
    out
}

/// The four dimensionless groups: x = omega0 c/a, y = nu c/a,
/// zeta = a z0/c^2, eps = beta hbar^2 nu^2/c^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessConfig<T = f64> {
    pub x: T,
    pub y: T,
    pub zeta: T,
    pub eps: T,
}

impl<T: Real> DimensionlessConfig<T> {
    /// Builds a validated configuration.
    pub fn new(x: T, y: T, zeta: T, eps: T) -> Result<Self> {
        let d = Self { x, y, zeta, eps };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("x", self.x), ("y", self.y), ("zeta", self.zeta)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(invalid(name, format!("must be finite and > 0 (got {v})")));
            }
        }
        if !(self.eps >= T::zero()) || !self.eps.is_finite() {
            return Err(invalid("eps", format!("must be finite and >= 0 (got {})", self.eps)));
        }
        if self.eps >= T::of(EPS_LIMIT) {
            return Err(Error::PerturbativeRegime {
                eps: self.eps.to_f64().unwrap_or(f64::NAN),
                limit: EPS_LIMIT,
            });
        }
        Ok(())
    }

    /// Validation for the accelerating-mirror geometry, which also needs zeta < 1.
    pub fn validate_mirror_accelerating(&self) -> Result<()> {
        self.validate()?;
        if self.zeta >= T::one() {
            return Err(invalid(
                "zeta",
                format!("accelerating mirror needs a z0/c^2 < 1 (got {})", self.zeta),
            ));
        }
        Ok(())
    }

    /// Same point with the GUP strength replaced.
    pub fn with_eps(&self, eps: T) -> Self {
        Self { eps, ..*self }
    }
}

/// Reduces SI parameters to dimensionless groups.
pub fn to_dimensionless(p: &PhysicalConfig, k: &PhysicalConstants) -> Result<DimensionlessConfig<f64>> {
    for (name, v) in [
        ("a", p.a),
        ("omega0", p.omega0),
        ("nu", p.nu),
        ("z0", p.z0),
        ("g", p.g),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid(name, format!("must be finite and > 0 (got {v})")));
        }
    }
    if !(p.beta >= 0.0 && p.beta.is_finite()) {
        return Err(invalid("beta", format!("must be finite and >= 0 (got {})", p.beta)));
    }
    let c_over_a = k.c / p.a;
    let hbar_nu_over_c = k.hbar * p.nu / k.c;
    let d = DimensionlessConfig {
        x: p.omega0 * c_over_a,
        y: p.nu * c_over_a,
        zeta: p.z0 / (k.c * c_over_a),
        eps: p.beta * hbar_nu_over_c * hbar_nu_over_c,
    };
    d.validate()?;
    Ok(d)
}

/// Inverse of [`to_dimensionless`] at a chosen reference acceleration.
pub fn from_dimensionless(
    d: &DimensionlessConfig<f64>,
    a: f64,
    g: f64,
    k: &PhysicalConstants,
) -> PhysicalConfig {
    let omega0 = d.x * a / k.c;
    let nu = d.y * a / k.c;
    PhysicalConfig {
        a,
        omega0,
        nu,
        z0: d.zeta * k.c * k.c / a,
        g,
        beta: d.eps * (k.c / (k.hbar * nu)).powi(2),
    }
}
