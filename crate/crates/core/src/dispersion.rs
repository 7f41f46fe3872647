//! Roots of the GUP-deformed dispersion relation.
//!
//! With a plane wave e^{-i nu t + i K z} the deformed wave equation gives
//! 2 beta hbar^2 K^4 + K^2 - nu^2/c^2 = 0. In units K = k nu/c this is
//! `2 eps k^4 + k^2 - 1 = 0`.

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use crate::units::EPS_LIMIT;

/// Upper end of the domain accepted by [`wavenumber_exact`].
pub const EXACT_EPS_LIMIT: f64 = 0.125;

/// Spatial wavenumber in units of nu/c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavenumber<T = f64> {
    pub k: T,
    pub eps: T,
}

/// First-order propagating root, k = 1 - eps.
pub fn wavenumber_perturbative<T: Real>(eps: T) -> Result<Wavenumber<T>> {
    if !(eps >= T::zero()) || eps >= T::of(EPS_LIMIT) {
        return Err(Error::PerturbativeRegime {
            eps: eps.to_f64().unwrap_or(f64::NAN),
            limit: EPS_LIMIT,
        });
    }
    Ok(Wavenumber { k: T::one() - eps, eps })
}

/// Exact propagating root of `2 eps k^4 + k^2 - 1 = 0`.
///
/// Uses k^2 = 2 / (1 + sqrt(1 + 8 eps)), which is the rationalised form of
/// (-1 + sqrt(1 + 8 eps)) / (4 eps) and stays accurate as eps -> 0.
pub fn wavenumber_exact<T: Real>(eps: T) -> Result<Wavenumber<T>> {
    if !(eps >= T::zero()) || eps >= T::of(EXACT_EPS_LIMIT) {
        return Err(invalid(
            "eps",
            format!("exact root needs 0 <= eps < {EXACT_EPS_LIMIT} (got {eps})"),
        ));
    }
    let two = T::of(2.0);
    let k2 = two / (T::one() + (T::one() + T::of(8.0) * eps).sqrt());
    Ok(Wavenumber { k: k2.sqrt(), eps })
}

/// The second root of the quartic. k^2 is negative there, so the "wavenumber"
/// is imaginary with |k| ~ 1/sqrt(2 eps): an evanescent, trans-Planckian
/// branch that the mode functions never use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonphysicalBranch<T = f64> {
    /// |k| of the imaginary root, in units of nu/c.
    pub magnitude: T,
    pub eps: T,
}

impl<T> NonphysicalBranch<T> {
    pub const NOTE: &'static str = "nonphysical for this model";
}

pub fn nonphysical_branch<T: Real>(eps: T) -> Result<NonphysicalBranch<T>> {
    if !(eps > T::zero()) {
        return Err(invalid("eps", "second branch exists only for eps > 0"));
    }
    let k2 = (T::one() + (T::one() + T::of(8.0) * eps).sqrt()) / (T::of(4.0) * eps);
    Ok(NonphysicalBranch {
        magnitude: k2.sqrt(),
        eps,
    })
}

/// Residual of the dimensionless quartic at a real k.
pub fn quartic_residual<T: Real>(k: T, eps: T) -> T {
    let k2 = k * k;
    T::of(2.0) * eps * k2 * k2 + k2 - T::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbative_values() {
        assert_eq!(wavenumber_perturbative(0.0).unwrap().k, 1.0);
        assert!((wavenumber_perturbative(0.01_f64).unwrap().k - 0.99).abs() < 1e-15);
        assert!((wavenumber_perturbative(0.05_f64).unwrap().k - 0.95).abs() < 1e-15);
        assert!(wavenumber_perturbative(0.1).is_err());
        assert!(wavenumber_perturbative(-1e-3).is_err());
    }

    #[test]
    fn exact_root_at_one_percent() {
        // k^2 = (-1 + sqrt(1.08)) / 0.04
        let oracle = ((-1.0 + 1.08_f64.sqrt()) / 0.04).sqrt();
        let k = wavenumber_exact(0.01).unwrap().k;
        assert!((k - oracle).abs() < 1e-14);
        assert!((k - 0.990_334_344_316_687).abs() < 1e-14);
        assert!(quartic_residual(k, 0.01).abs() < 1e-14);
        let gap = (k - 0.99).abs();
        assert!((gap - 3.33e-4).abs() < 1e-5, "gap = {gap}");
    }

    #[test]
    fn exact_root_continuous_at_zero() {
        assert_eq!(wavenumber_exact(0.0).unwrap().k, 1.0);
        assert!((wavenumber_exact(1e-12_f64).unwrap().k - 1.0).abs() < 1e-11);
        assert!(wavenumber_exact(0.125).is_err());
    }

    #[test]
    fn second_branch_is_trans_planckian() {
        let b = nonphysical_branch(1e-4).unwrap();
        assert!((b.magnitude * (2e-4_f64).sqrt() - 1.0).abs() < 1e-2);
        // k = i |k| solves 2 eps k^4 + k^2 - 1 = 0 with k^2 = -|k|^2.
        let k2 = -b.magnitude * b.magnitude;
        assert!((2.0 * 1e-4 * k2 * k2 + k2 - 1.0).abs() / (k2 * k2 * 2e-4) < 1e-12);
        assert!(nonphysical_branch(0.0).is_err());
    }
}
