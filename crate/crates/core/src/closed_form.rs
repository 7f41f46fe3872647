//! Closed-form excitation probabilities, to first order in the GUP strength,
//! and the Unruh temperatures.
//!
//! Probabilities are reported in the dimensionless normalisation
//! P^ = P a^2 / (g^2 c^2). The SI wrappers at the bottom evaluate the same
//! expressions symbol for symbol in physical units.
//!
//! Static mirror, accelerating atom:
//!
//! ```text
//! P^1 = (2 pi / x) exp(-eps y^2 Omega cos D) / (e^{2 pi x} - 1)
//!       sin^2( y(1-eps) zeta + x ln y - theta - eps x / 2 + (eps y^2 / 2) Omega sin D )
//! ```
//!
//! Accelerating mirror, static atom, ybar = y (1 - eps/2):
//!
//! ```text
//! P^2 = (2 pi ybar / x^2) exp(-eps y / (x zeta)) / (e^{2 pi ybar} - 1)
//!       sin^2( x zeta + ybar ln x + (eps y/2) ln zeta + eps y / 2
//!              + eps y^2 / (2 x zeta) + kappa )
//! ```
//!
//! theta, D and kappa come from [`gamma_phase_set`]. The sign with which they
//! enter is selected by [`PhaseConvention`].

use crate::error::{Error, Result};
use crate::scalar::{reduce_half_period, Real};
use crate::special::{gamma_phase_set, planck_factor, GammaPhaseSet};
use crate::units::{to_dimensionless, PhysicalConfig, PhysicalConstants};

/// How the Gamma-function phases (theta, D = theta1 - theta, kappa) enter the
/// sin^2 arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseConvention {
    /// Phases as produced by evaluating the amplitude integrals:
    /// theta -> -theta, D -> -D, kappa -> -kappa relative to `AsPublished`.
    /// This is the form the numerical amplitudes reproduce.
    #[default]
    Integral,
    /// Phases with the signs written in the published expressions. Gives the
    /// same probabilities whenever the Gamma phases drop out (e.g. the
    /// x = y, eps = 0 symmetry) but not in general.
    AsPublished,
}

impl PhaseConvention {
    fn sign<T: Real>(self) -> T {
        match self {
            PhaseConvention::Integral => -T::one(),
            PhaseConvention::AsPublished => T::one(),
        }
    }
}

/// A probability split into its factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityBreakdown<T = f64> {
    pub total: T,
    pub prefactor: T,
    pub damping: T,
    pub planck: T,
    /// Raw sin^2 argument (radians), not reduced.
    pub phase_argument: T,
    /// `phase_argument` reduced to (-pi/2, pi/2].
    pub phase_reduced: T,
    pub sin2: T,
}

impl<T: Real> ProbabilityBreakdown<T> {
    fn assemble(prefactor: T, damping: T, planck: T, phase: T) -> Self {
        let reduced = reduce_half_period(phase);
        let s = reduced.sin();
        let sin2 = s * s;
        Self {
            total: prefactor * damping * planck * sin2,
            prefactor,
            damping,
            planck,
            phase_argument: phase,
            phase_reduced: reduced,
            sin2,
        }
    }
}

/// P^1 for an atom accelerating away from a static mirror.
pub fn p1_closed<T: Real>(d: &crate::DimensionlessConfig<T>) -> Result<ProbabilityBreakdown<T>> {
    p1_closed_with(d, PhaseConvention::Integral)
}

pub fn p1_closed_with<T: Real>(
    d: &crate::DimensionlessConfig<T>,
    convention: PhaseConvention,
) -> Result<ProbabilityBreakdown<T>> {
    d.validate()?;
    let g = gamma_phase_set(d.x, d.y)?;
    Ok(p1_from_phases(d, &g, convention))
}

fn p1_from_phases<T: Real>(
    d: &crate::DimensionlessConfig<T>,
    g: &GammaPhaseSet<T>,
    convention: PhaseConvention,
) -> ProbabilityBreakdown<T> {
    let two = T::of(2.0);
    let s: T = convention.sign();
    let (x, y, zeta, eps) = (d.x, d.y, d.zeta, d.eps);
    let theta = s * g.theta;
    let delta = s * g.delta_phase;
    let eta = -x * y.ln() + theta;
    let phase = y * (T::one() - eps) * zeta - eta - eps * x / two
        + eps * y * y / two * g.omega_ratio * delta.sin();
    let damping = (-eps * y * y * g.omega_ratio * delta.cos()).exp();
    ProbabilityBreakdown::assemble(two * T::PI() / x, damping, planck_factor(x), phase)
}

/// P^2 for a static atom and a mirror accelerating away from it. Needs zeta < 1.
pub fn p2_closed<T: Real>(d: &crate::DimensionlessConfig<T>) -> Result<ProbabilityBreakdown<T>> {
    p2_closed_with(d, PhaseConvention::Integral)
}

pub fn p2_closed_with<T: Real>(
    d: &crate::DimensionlessConfig<T>,
    convention: PhaseConvention,
) -> Result<ProbabilityBreakdown<T>> {
    d.validate_mirror_accelerating()?;
    let two = T::of(2.0);
    let (x, y, zeta, eps) = (d.x, d.y, d.zeta, d.eps);
    let ybar = y * (T::one() - eps / two);
    let g = gamma_phase_set(x, ybar)?;
    let s: T = convention.sign();
    let half_power = eps * y / two;
    let damping_exponent = eps * y / (x * zeta);
    if damping_exponent > T::one() {
        log::warn!(
            "P2 damping exponent eps y/(x zeta) = {damping_exponent} exceeds 1; \
             zeta = {zeta} is outside the regime where the first-order form is sensible"
        );
    }
    let phase = x * zeta + ybar * x.ln() + half_power * zeta.ln() + half_power
        + eps * y * y / (two * x * zeta)
        + s * g.kappa;
    Ok(ProbabilityBreakdown::assemble(
        two * T::PI() * ybar / (x * x),
        (-damping_exponent).exp(),
        planck_factor(ybar),
        phase,
    ))
}

/// Phi2 - Phi1 at x = y, assembled term by term so the eps-free parts
/// cancel exactly. Not reduced.
pub(crate) fn resonant_phase_difference<T: Real>(
    d: &crate::DimensionlessConfig<T>,
    convention: PhaseConvention,
) -> Result<T> {
    d.validate_mirror_accelerating()?;
    let two = T::of(2.0);
    let (x, zeta, eps) = (d.x, d.zeta, d.eps);
    let s: T = convention.sign();
    let ybar = x * (T::one() - eps / two);
    let g1 = gamma_phase_set(x, x)?;
    let g2 = gamma_phase_set(x, ybar)?;
    let half_power = eps * x / two;
    Ok(eps * x * zeta
        + (ybar - x) * x.ln()
        + half_power * zeta.ln()
        + two * half_power
        + eps * x / (two * zeta)
        - eps * x * x / two * g1.omega_ratio * (s * g1.delta_phase).sin()
        + s * (g2.kappa + g1.theta))
}

/// Unruh temperature and its GUP-shifted counterpart, in kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperaturePair {
    pub unruh: f64,
    pub modified: f64,
}

/// T_U = hbar a / (2 pi k_B c), T'_U = T_U / (1 - eps/2).
pub fn temperatures(p: &PhysicalConfig, k: &PhysicalConstants) -> Result<TemperaturePair> {
    let d = to_dimensionless(p, k)?;
    if d.eps >= 2.0 {
        return Err(Error::InvalidParameter {
            name: "beta",
            reason: format!("modified temperature has a pole at eps = 2 (got {})", d.eps),
        });
    }
    let unruh = k.hbar * p.a / (2.0 * std::f64::consts::PI * k.k_b * k.c);
    Ok(TemperaturePair {
        unruh,
        modified: unruh / (1.0 - d.eps / 2.0),
    })
}

/// Physical P1 evaluated directly from SI symbols. Equals
/// `g^2 c^2 / a^2 * p1_closed(..).total`.
pub fn p1_closed_si(p: &PhysicalConfig, k: &PhysicalConstants, convention: PhaseConvention) -> Result<f64> {
    let PhysicalConfig { a, omega0, nu, z0, g, beta } = *p;
    let c = k.c;
    let hb2 = k.hbar * k.hbar;
    let gp = gamma_phase_set(omega0 * c / a, nu * c / a)?;
    let s: f64 = convention.sign();
    let theta = s * gp.theta;
    let big_delta = s * gp.delta_phase;
    let om = gp.omega_ratio;
    let nu_tilde = nu * (1.0 - beta * hb2 * nu * nu / (c * c));
    let small_delta = omega0 * c / a * (a / (nu * c)).ln();
    let eta = small_delta + theta;
    let arg = nu_tilde * z0 / c - eta - beta * hb2 * nu * nu * omega0 / (2.0 * a * c)
        + beta * hb2 * nu.powi(4) / (2.0 * a * a) * om * big_delta.sin();
    let damping = (-(beta * hb2 * nu.powi(4) / (a * a)) * om * big_delta.cos()).exp();
    let planck = 1.0 / (2.0 * std::f64::consts::PI * omega0 * c / a).exp_m1();
    Ok(2.0 * std::f64::consts::PI * g * g * c / (a * omega0) * damping * planck * arg.sin().powi(2))
}

/// Physical P2 evaluated directly from SI symbols.
pub fn p2_closed_si(p: &PhysicalConfig, k: &PhysicalConstants, convention: PhaseConvention) -> Result<f64> {
    let PhysicalConfig { a, omega0, nu, z0, g, beta } = *p;
    let c = k.c;
    let hb2 = k.hbar * k.hbar;
    let nu_bar = (1.0 - beta * hb2 * nu * nu / (2.0 * c * c)) * nu;
    let gp = gamma_phase_set(omega0 * c / a, nu_bar * c / a)?;
    let kappa = convention.sign::<f64>() * gp.kappa;
    let b3 = beta * hb2 * nu.powi(3);
    let arg = omega0 * z0 / c - nu_bar * c / a * (a / (omega0 * c)).ln()
        + b3 / (2.0 * a * c) * (a * z0 / (c * c)).ln()
        + b3 / (2.0 * a * c)
        + beta * hb2 * nu.powi(4) * c / (2.0 * a * a * z0 * omega0)
        + kappa;
    let damping = (-b3 / (a * z0 * omega0)).exp();
    let planck = 1.0 / (2.0 * std::f64::consts::PI * nu_bar * c / a).exp_m1();
    Ok(2.0 * std::f64::consts::PI * g * g * nu_bar * c / (a * omega0 * omega0) * damping * planck * arg.sin().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::from_dimensionless;
    use crate::DimensionlessConfig;

    const K: PhysicalConstants = PhysicalConstants::CODATA2018;

    fn dc(x: f64, y: f64, zeta: f64, eps: f64) -> DimensionlessConfig<f64> {
        DimensionlessConfig::new(x, y, zeta, eps).unwrap()
    }

    #[test]
    fn factorisation_identity() {
        for d in [dc(1.0, 1.0, 0.5, 0.0), dc(0.5, 2.0, 0.3, 0.01), dc(2.0, 1.3, 0.9, 0.05)] {
            for b in [p1_closed(&d).unwrap(), p2_closed(&d).unwrap()] {
                let prod = b.prefactor * b.damping * b.planck * b.sin2;
                assert!((b.total - prod).abs() <= 1e-14 * b.total.abs().max(1e-300));
                assert!(b.total >= 0.0);
                assert!((b.sin2 - b.phase_argument.sin().powi(2)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn heisenberg_limit_of_p1() {
        let d = dc(1.0, 1.3, 2.0, 0.0);
        let b = p1_closed(&d).unwrap();
        let theta = gamma_phase_set(1.0, 1.3).unwrap().theta;
        let expect = 2.0 * std::f64::consts::PI * planck_factor(1.0) * (1.3 * 2.0 + 1.3f64.ln() + theta).sin().powi(2);
        assert!((b.total - expect).abs() < 1e-15);
        assert_eq!(b.damping, 1.0);

        let published = p1_closed_with(&d, PhaseConvention::AsPublished).unwrap();
        let expect = 2.0 * std::f64::consts::PI * planck_factor(1.0) * (1.3 * 2.0 + 1.3f64.ln() - theta).sin().powi(2);
        assert!((published.total - expect).abs() < 1e-15);
    }

    #[test]
    fn damping_of_p1_at_unit_x() {
        let b = p1_closed(&dc(1.0, 1.0, 2.0, 0.01)).unwrap();
        assert!((b.damping - 0.005f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn p2_heisenberg_damping_and_domain() {
        let b = p2_closed(&dc(1.0, 1.0, 0.5, 0.0)).unwrap();
        assert_eq!(b.damping, 1.0);
        assert!(p2_closed(&dc(1.0, 1.0, 1.5, 0.0)).is_err());
    }

    #[test]
    fn symmetry_at_zero_eps_in_both_conventions() {
        for conv in [PhaseConvention::Integral, PhaseConvention::AsPublished] {
            for &x in &[0.5, 1.0, 2.0] {
                for &zeta in &[0.3, 0.5, 0.9] {
                    let d = dc(x, x, zeta, 0.0);
                    let p1 = p1_closed_with(&d, conv).unwrap().total;
                    let p2 = p2_closed_with(&d, conv).unwrap().total;
                    assert!(((p1 - p2) / p1).abs() < 1e-12, "x {x} zeta {zeta}: {p1} vs {p2}");
                }
            }
        }
    }

    #[test]
    fn si_wrappers_agree_with_dimensionless_forms() {
        let a = 3.0e8;
        let g = 2.5;
        for d in [dc(1.0, 1.3, 0.5, 0.01), dc(0.7, 0.9, 0.2, 0.03)] {
            let p = from_dimensionless(&d, a, g, &K);
            let scale = g * g * K.c * K.c / (a * a);
            for conv in [PhaseConvention::Integral, PhaseConvention::AsPublished] {
                let si1 = p1_closed_si(&p, &K, conv).unwrap();
                let si2 = p2_closed_si(&p, &K, conv).unwrap();
                let d1 = p1_closed_with(&d, conv).unwrap().total * scale;
                let d2 = p2_closed_with(&d, conv).unwrap().total * scale;
                assert!((si1 / d1 - 1.0).abs() < 1e-9, "{si1} vs {d1}");
                assert!((si2 / d2 - 1.0).abs() < 1e-9, "{si2} vs {d2}");
            }
        }
    }

    #[test]
    fn unruh_temperatures() {
        let mut p = PhysicalConfig {
            a: 9.8,
            omega0: 1e9,
            nu: 1e9,
            z0: 1.0,
            g: 1.0,
            beta: 0.0,
        };
        let t = temperatures(&p, &K).unwrap();
        assert_eq!(t.unruh, t.modified);
        // hbar a / (2 pi k_B c) at a = 9.8 m/s^2
        assert!((t.unruh / 3.973_913_252_290_325e-20 - 1.0).abs() < 1e-12);

        // beta chosen so that eps = 0.01.
        p.beta = 0.01 * (K.c / (K.hbar * p.nu)).powi(2);
        let t = temperatures(&p, &K).unwrap();
        assert!((t.modified / t.unruh - 1.0 / 0.995).abs() < 1e-12);
        assert!(t.modified > t.unruh);
    }
}
