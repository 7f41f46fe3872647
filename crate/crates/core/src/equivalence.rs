//! Equivalence-violation diagnostics at nu = omega0 and the bound on beta.

use crate::closed_form::{p1_closed_with, p2_closed_with, resonant_phase_difference, PhaseConvention};
use crate::error::{invalid, Error, Result};
use crate::scalar::{reduce_half_period, Real};
use crate::units::{DimensionlessConfig, PhysicalConfig, PhysicalConstants};

/// How far P2 departs from P1 at nu = omega0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationReport<T = f64> {
    pub eps: T,
    /// Q = eps / (2 zeta^2) + (eps / (2 zeta)) ln zeta.
    pub q_value: T,
    /// R = 1 + Q.
    pub ratio: T,
    /// Phi2 - Phi1, reduced to (-pi/2, pi/2] since sin^2 has period pi.
    pub phase_defect: T,
    /// damping2 / damping1.
    pub damping_defect: T,
    /// planck2 / planck1.
    pub planck_defect: T,
}

/// Q as a function of (eps, zeta). Exactly linear in eps.
pub fn q_value<T: Real>(eps: T, zeta: T) -> T {
    let two = T::of(2.0);
    eps / (two * zeta * zeta) + eps / (two * zeta) * zeta.ln()
}

/// Q evaluated from SI quantities.
pub fn q_value_si(p: &PhysicalConfig, k: &PhysicalConstants) -> f64 {
    let b = p.beta * k.hbar * k.hbar * p.nu * p.nu;
    b * k.c * k.c / (2.0 * p.a * p.a * p.z0 * p.z0) + b / (2.0 * p.a * p.z0) * (p.a * p.z0 / (k.c * k.c)).ln()
}

pub fn violation_parameter<T: Real>(d: &DimensionlessConfig<T>) -> Result<ViolationReport<T>> {
    violation_parameter_with(d, PhaseConvention::default())
}

pub fn violation_parameter_with<T: Real>(
    d: &DimensionlessConfig<T>,
    convention: PhaseConvention,
) -> Result<ViolationReport<T>> {
    if d.x != d.y {
        return Err(Error::FrequencyMismatch {
            x: d.x.to_f64().unwrap_or(f64::NAN),
            y: d.y.to_f64().unwrap_or(f64::NAN),
        });
    }
    let b1 = p1_closed_with(d, convention)?;
    let b2 = p2_closed_with(d, convention)?;
    let q = q_value(d.eps, d.zeta);
    Ok(ViolationReport {
        eps: d.eps,
        q_value: q,
        ratio: T::one() + q,
        phase_defect: reduce_half_period(resonant_phase_difference(d, convention)?),
        damping_defect: b2.damping / b1.damping,
        planck_defect: b2.planck / b1.planck,
    })
}

/// One report per GUP strength, all other groups taken from `base`.
pub fn symmetry_defect_scan<T: Real>(
    base: &DimensionlessConfig<T>,
    eps_values: &[T],
) -> Result<Vec<ViolationReport<T>>> {
    eps_values
        .iter()
        .map(|&eps| violation_parameter(&base.with_eps(eps)))
        .collect()
}

/// Sign changes of Q on zeta in (0, 1), located by bisection on a grid of
/// `samples` points.
///
/// Q = eps (1 + zeta ln zeta) / (2 zeta^2), and 1 + zeta ln zeta >= 1 - 1/e
/// (minimum at zeta = 1/e), so for eps > 0 this returns an empty list.
pub fn q_zero_crossings(eps: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    let at = |i: usize| i as f64 / n as f64;
    let mut out = Vec::new();
    for i in 1..n - 1 {
        let (mut lo, mut hi) = (at(i), at(i + 1));
        if q_value(eps, lo).signum() == q_value(eps, hi).signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if q_value(eps, mid).signum() == q_value(eps, lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

/// Inputs of the beta bound, SI with angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub a: f64,
    pub omega0: f64,
    pub nu: f64,
    pub z0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaBound {
    /// (kg m/s)^-2.
    pub beta_max_si: f64,
    /// (M_P c)^-2.
    pub beta_max_planck_units: f64,
    /// Threshold eta0 standing in for "much less than 1".
    pub tolerance_factor: f64,
}

/// Largest beta with beta hbar^2 nu^3 / (a z0 omega0) < eta0.
///
/// beta_max = eta0 a z0 omega0 / (hbar^2 nu^3); with a z0 = c^2 this is
/// eta0 c^2 omega0 / (hbar^2 nu^3).
pub fn beta_bound(p: &BoundInputs, k: &PhysicalConstants, eta0: f64) -> Result<BetaBound> {
    for (name, v) in [
        ("a", p.a),
        ("omega0", p.omega0),
        ("nu", p.nu),
        ("z0", p.z0),
        ("eta0", eta0),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid(name, format!("must be finite and > 0 (got {v})")));
        }
    }
    let beta_max_si = eta0 * p.a * p.z0 * p.omega0 / (k.hbar * k.hbar * p.nu.powi(3));
    Ok(BetaBound {
        beta_max_si,
        beta_max_planck_units: k.beta_to_planck_units(beta_max_si),
        tolerance_factor: eta0,
    })
}
