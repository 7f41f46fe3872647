//! Field modes and kinematics in dimensionless coordinates: time in units of
//! c/a, position in units of c^2/a.

use num_complex::Complex;

use crate::dispersion::wavenumber_perturbative;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// An event (t, z). Used for both Minkowski and Rindler charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint<T = f64> {
    pub t: T,
    pub z: T,
}

impl<T: Real> SpacetimePoint<T> {
    pub fn new(t: T, z: T) -> Self {
        Self { t, z }
    }

    /// z > |t|.
    pub fn in_right_wedge(&self) -> bool {
        self.z > self.t.abs()
    }
}

/// Parameters of a single field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec<T = f64> {
    /// nu c / a.
    pub y: T,
    /// beta hbar^2 nu^2 / c^2.
    pub eps: T,
    /// Static-mirror position, units of c^2/a.
    pub zeta0: T,
}

impl<T: Real> ModeSpec<T> {
    pub fn new(y: T, eps: T, zeta0: T) -> Result<Self> {
        if !(y > T::zero()) {
            return Err(invalid("y", format!("must be > 0 (got {y})")));
        }
        wavenumber_perturbative(eps)?;
        Ok(Self { y, eps, zeta0 })
    }

    /// Deformed wavenumber y (1 - eps).
    pub fn y_tilde(&self) -> T {
        self.y * (T::one() - self.eps)
    }

    /// Shifted frequency y (1 - eps/2).
    pub fn y_bar(&self) -> T {
        self.y * (T::one() - self.eps / T::of(2.0))
    }

    /// Exponent eps y / 2 of the power-law factors of the accelerating-mirror mode.
    pub fn power_exponent(&self) -> T {
        self.eps * self.y / T::of(2.0)
    }
}

fn cis<T: Real>(phase: T) -> Complex<T> {
    Complex::from_polar(T::one(), phase)
}

/// |base|^{i e}. The modulus is used off the right wedge, where the base can
/// be negative; a zero base (a measure-zero set) maps to 1.
fn imag_power<T: Real>(base: T, e: T) -> Complex<T> {
    if e == T::zero() || base == T::zero() {
        return Complex::new(T::one(), T::zero());
    }
    cis(e * base.abs().ln())
}

/// Uniformly accelerated worldline: t = sinh tau, z = cosh tau.
pub fn atom_trajectory<T: Real>(tau: T) -> SpacetimePoint<T> {
    SpacetimePoint::new(tau.sinh(), tau.cosh())
}

/// (t_bar, z_bar) -> (e^{z_bar} sinh t_bar, e^{z_bar} cosh t_bar).
pub fn rindler_to_minkowski<T: Real>(p: SpacetimePoint<T>) -> SpacetimePoint<T> {
    let r = p.z.exp();
    SpacetimePoint::new(r * p.t.sinh(), r * p.t.cosh())
}

/// Inverse chart map, defined on the right wedge only.
pub fn minkowski_to_rindler<T: Real>(p: SpacetimePoint<T>) -> Result<SpacetimePoint<T>> {
    if !p.in_right_wedge() {
        return Err(Error::OutsideWedge {
            t: p.t.to_f64().unwrap_or(f64::NAN),
            z: p.z.to_f64().unwrap_or(f64::NAN),
        });
    }
    let plus = (p.z + p.t).ln();
    let minus = (p.z - p.t).ln();
    let half = T::of(0.5);
    Ok(SpacetimePoint::new(half * (plus - minus), half * (plus + minus)))
}

/// Static-mirror mode, vanishing at z = zeta0:
/// e^{-i y t} [e^{-i y~ (z - zeta0)} - e^{+i y~ (z - zeta0)}].
pub fn mode_static_mirror<T: Real>(p: SpacetimePoint<T>, m: &ModeSpec<T>) -> Complex<T> {
    let k = m.y_tilde();
    let d = p.z - m.zeta0;
    cis(-m.y * p.t) * (cis(-k * d) - cis(k * d))
}

/// Rindler-frame mode with the mirror at z_bar = 0.
pub fn mode_rindler<T: Real>(p: SpacetimePoint<T>, m: &ModeSpec<T>) -> Complex<T> {
    let k = m.y_tilde();
    cis(-m.y * p.t) * (cis(k * p.z) - cis(-k * p.z))
}

/// Accelerating-mirror mode written in Minkowski coordinates.
///
/// Term one, supported on z - t > 0: e^{i ybar ln(z - t)} (z + t)^{-i e}.
/// Term two, supported on z + t > 0: -e^{-i ybar ln(z + t)} (z - t)^{+i e},
/// with e = eps y / 2. Both supports closed-open: Theta(0) = 0.
pub fn mode_accel_mirror<T: Real>(p: SpacetimePoint<T>, m: &ModeSpec<T>) -> Complex<T> {
    let ybar = m.y_bar();
    let e = m.power_exponent();
    let minus = p.z - p.t;
    let plus = p.z + p.t;
    let mut out = Complex::new(T::zero(), T::zero());
    if minus > T::zero() {
        out = out + cis(ybar * minus.ln()) * imag_power(plus, -e);
    }
    if plus > T::zero() {
        out = out - cis(-ybar * plus.ln()) * imag_power(minus, e);
    }
    out
}

/// [`mode_accel_mirror`] expanded to first order in the power exponent
/// e = eps y / 2, with ybar kept exact. Returns (phi_0, phi_1) such that
/// phi = phi_0 + e phi_1 + O(e^2).
pub fn mode_accel_mirror_first_order<T: Real>(
    p: SpacetimePoint<T>,
    m: &ModeSpec<T>,
) -> (Complex<T>, Complex<T>) {
    let ybar = m.y_bar();
    let i = Complex::new(T::zero(), T::one());
    let minus = p.z - p.t;
    let plus = p.z + p.t;
    let mut zeroth = Complex::new(T::zero(), T::zero());
    let mut first = Complex::new(T::zero(), T::zero());
    if minus > T::zero() {
        let w = cis(ybar * minus.ln());
        zeroth = zeroth + w;
        if plus != T::zero() {
            first = first - i * w * plus.abs().ln();
        }
    }
    if plus > T::zero() {
        let w = cis(-ybar * plus.ln());
        zeroth = zeroth - w;
        if minus != T::zero() {
            first = first - i * w * minus.abs().ln();
        }
    }
    (zeroth, first)
}
