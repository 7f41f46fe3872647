//! Complex log-Gamma, the Gamma-function phases that enter the closed forms,
//! and the Planck occupation factor.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{principal_angle, Real};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Gamma(z): the real part is log|Gamma(z)|, the imaginary part an
/// argument of Gamma(z) (not necessarily principal).
///
/// Reflection handles Re z < 1/2. The lower half-plane is obtained by
/// conjugation so that `log_gamma(conj z) == conj(log_gamma(z))` bit for bit.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParameter {
            name: "z",
            reason: format!("non-finite argument {z}"),
        });
    }
    if z.im < T::zero() {
        return log_gamma(z.conj()).map(|w| w.conj());
    }
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(log_gamma_upper(z))
}

fn log_gamma_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = T::of(0.5);
    if z.re < half {
        let pi = T::PI();
        let one = Complex::new(T::one(), T::zero());
        return Complex::new(pi.ln(), T::zero()) - ln_sin_pi(z) - log_gamma_upper(one - z);
    }
    let zm1 = z - T::one();
    let mut series = Complex::new(T::of(LANCZOS_COEF[0]), T::zero());
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series = series + Complex::new(T::of(c), T::zero()) / (zm1 + T::of(i as f64));
    }
    let t = zm1 + T::of(LANCZOS_G + 0.5);
    let half_ln_two_pi = T::of(0.5) * (T::of(2.0) * T::PI()).ln();
    (zm1 + half) * t.ln() - t + series.ln() + half_ln_two_pi
}

/// log sin(pi z) for Im z >= 0, without overflow for large Im z.
fn ln_sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let pi = T::PI();
    let i = Complex::new(T::zero(), T::one());
    if z.im > T::one() {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        let w = (i * z * (pi + pi)).exp();
        let ln_i_half = Complex::new(-T::of(2.0).ln(), pi / T::of(2.0));
        ln_i_half - i * z * pi + (Complex::new(T::one(), T::zero()) - w).ln()
    } else {
        (z * pi).sin().ln()
    }
}

/// Gamma(z) by exponentiating [`log_gamma`].
pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    log_gamma(z).map(|w| w.exp())
}

/// Principal argument of Gamma(z), in (-pi, pi].
pub fn arg_gamma<T: Real>(z: Complex<T>) -> Result<T> {
    log_gamma(z).map(|w| principal_angle(w.im))
}

/// Phases and magnitude ratio built from Gamma(-ix), Gamma(-ix-1) and Gamma(i ybar).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPhaseSet<T = f64> {
    /// Arg Gamma(-ix).
    pub theta: T,
    /// Arg Gamma(-ix-1).
    pub theta1: T,
    /// theta1 - theta.
    pub delta_phase: T,
    /// |Gamma(-ix-1)| / |Gamma(-ix)|.
    pub omega_ratio: T,
    /// Arg Gamma(i ybar).
    pub kappa: T,
}

pub fn gamma_phase_set<T: Real>(x: T, ybar: T) -> Result<GammaPhaseSet<T>> {
    if !(x > T::zero()) || !(ybar > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "x/ybar",
            reason: format!("must be > 0 (got x = {x}, ybar = {ybar})"),
        });
    }
    let lg0 = log_gamma(Complex::new(T::zero(), -x))?;
    let lg1 = log_gamma(Complex::new(-T::one(), -x))?;
    let lgk = log_gamma(Complex::new(T::zero(), ybar))?;
    let theta = principal_angle(lg0.im);
    let theta1 = principal_angle(lg1.im);
    Ok(GammaPhaseSet {
        theta,
        theta1,
        delta_phase: theta1 - theta,
        omega_ratio: (lg1.re - lg0.re).exp(),
        kappa: principal_angle(lgk.im),
    })
}

/// Thermal occupation 1/(e^{2 pi w} - 1).
pub fn planck_factor<T: Real>(w: T) -> T {
    let arg = (T::PI() + T::PI()) * w;
    if arg > T::one() {
        let e = (-arg).exp();
        e / (T::one() - e)
    } else {
        T::one() / arg.exp_m1()
    }
}
