//! Excitation probabilities computed by integrating the transition amplitude
//! directly, independent of the closed forms.
//!
//! Both amplitudes are expanded to first order in the power exponent
//! e = eps y / 2 of the deformed modes, with the shifted frequencies
//! y (1 - eps/2) and y (1 - eps) kept exact. This is the same order the
//! closed forms are accurate to.
//!
//! Static mirror (atom on t = sinh tau, z = cosh tau), with u = e^tau:
//!
//! ```text
//! I1 = e^{-i y~ zeta} F(x, p, q) - e^{+i y~ zeta} F(-x, -p, -q)
//! F(x, p, q) = int_0^inf u^{ix-1} e^{ipu} (1 - iq/u) du,   p = ybar, q = e
//! ```
//!
//! Accelerating mirror (atom at z = zeta), with s = zeta -+ t:
//!
//! ```text
//! I2 = e^{ix zeta} G(-ybar, -x, -e) - e^{-ix zeta} G(ybar, x, e)
//! G(b, x, e) = int_0^inf s^{ib} (1 - ie ln|2 zeta - s|) e^{ixs} ds
//! ```
//!
//! and P^ = |I|^2 / 4 in both cases. The power-law end of F at u -> 0 is
//! handled by subtracting its Mellin moments analytically; the end of G at
//! s -> 0 becomes exponentially small under s = e^w. The oscillatory tails are
//! damped with e^{-delta |omega| (v - v0)} for each regulator delta and the
//! sum is extrapolated polynomially to delta = 0.

use num_complex::Complex;

use crate::closed_form::{p1_closed, p2_closed};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{damped_tail, extrapolate_to_zero, integrate, TailSpec, TailValues};
use crate::scalar::Real;
use crate::units::DimensionlessConfig;

/// Numerical knobs of the amplitude integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSettings<T = f64> {
    /// Damping strengths, strictly decreasing and positive.
    pub regulator_sequence: Vec<T>,
    /// Absolute tolerance for each piece of an integral.
    pub abs_tolerance: T,
    /// Degree of the polynomial used to extrapolate to zero damping.
    pub extrapolation_order: usize,
    /// Hard limit on the tail length in the integration variable. `None`
    /// picks, per regulator, the point where the damped tail is below
    /// tolerance.
    pub cutoff: Option<T>,
    /// Panel limit for the finite-interval pieces.
    pub max_subdivisions: usize,
    /// Panel limit for each oscillatory tail.
    pub max_tail_panels: usize,
}

impl<T: Real> Default for QuadratureSettings<T> {
    fn default() -> Self {
        Self {
            regulator_sequence: (0..7).map(|j| T::of(0.1 * 0.5f64.powi(j))).collect(),
            abs_tolerance: T::of(1e-10),
            extrapolation_order: 3,
            cutoff: None,
            max_subdivisions: 2000,
            max_tail_panels: 200_000,
        }
    }
}

impl<T: Real> QuadratureSettings<T> {
    pub fn validate(&self) -> Result<()> {
        let r = &self.regulator_sequence;
        if r.iter().any(|&d| !(d > T::zero()) || !d.is_finite()) {
            return Err(invalid("regulator_sequence", "entries must be finite and > 0"));
        }
        if r.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(invalid("regulator_sequence", "must be strictly decreasing"));
        }
        if r.len() < self.extrapolation_order + 2 {
            return Err(invalid(
                "regulator_sequence",
                format!(
                    "extrapolation order {} needs at least {} regulators (got {})",
                    self.extrapolation_order,
                    self.extrapolation_order + 2,
                    r.len()
                ),
            ));
        }
        if !(self.abs_tolerance > T::zero()) {
            return Err(invalid("abs_tolerance", "must be > 0"));
        }
        if let Some(c) = self.cutoff {
            if !(c > T::zero()) {
                return Err(invalid("cutoff", "must be > 0"));
            }
        }
        Ok(())
    }

    /// Extrapolation residual above which a result is rejected.
    pub fn residual_limit(&self) -> T {
        T::of(100.0) * self.abs_tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeResult<T = f64> {
    /// P^ = |amplitude|^2 / 4.
    pub probability: T,
    /// Time integral of the conjugate mode times e^{i x tau}, extrapolated to
    /// zero damping.
    pub amplitude: Complex<T>,
    /// Amplitude at each regulator, in the order of `regulator_sequence`.
    pub regulator_estimates: Vec<Complex<T>>,
    pub extrapolation_residual: T,
}

/// P^ for an amplitude integral.
pub fn probability_from_amplitude<T: Real>(amplitude: Complex<T>) -> T {
    amplitude.norm_sqr() / T::of(4.0)
}

fn cis<T: Real>(phase: T) -> Complex<T> {
    Complex::from_polar(T::one(), phase)
}

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// e^{i theta} - 1 - i theta without cancellation for small theta.
fn expm1_minus_linear<T: Real>(theta: T) -> Complex<T> {
    let half = theta / T::of(2.0);
    let re = -T::of(2.0) * half.sin() * half.sin();
    let im = if theta.abs() < T::of(0.5) {
        let t2 = theta * theta;
        // sin t - t
        -theta * t2 / T::of(6.0)
            * (T::one()
                - t2 / T::of(20.0)
                    * (T::one() - t2 / T::of(42.0) * (T::one() - t2 / T::of(72.0) * (T::one() - t2 / T::of(110.0)))))
    } else {
        theta.sin() - theta
    };
    c(re, im)
}

struct Piece<T> {
    near: Complex<T>,
    tail: TailValues<T>,
}

/// Shared tail call, with the cutoff and panel limit from the settings.
fn tail<T: Real, F: Fn(T) -> Complex<T>>(
    f: &F,
    start: T,
    omega: T,
    envelope: T,
    q: &QuadratureSettings<T>,
) -> Result<TailValues<T>> {
    let spec = TailSpec {
        start,
        omega,
        envelope,
        abs_tol: q.abs_tolerance,
        cutoff: q.cutoff,
        max_panels: q.max_tail_panels,
    };
    damped_tail(f, &spec, &q.regulator_sequence)
}

/// F(x, p, q) split into its undamped part and the damped tail on u >= 1.
fn p1_piece<T: Real>(x: T, p: T, qe: T, q: &QuadratureSettings<T>) -> Result<Piece<T>> {
    let i = c(T::zero(), T::one());
    let one = T::one();
    let tol = q.abs_tolerance;

    // int_0^1 u^{ix-1} [(1 + pq) - iq/u] du by continuation, and the remainder
    // R(u) = ipu + E(pu) - iq E(pu)/u, which is O(u), on w = ln u.
    let mellin = c(one + p * qe, T::zero()) / c(T::zero(), x) - i * qe / c(-one, x);
    let remainder = |w: T| {
        let u = w.exp();
        let e2 = expm1_minus_linear(p * u);
        let r = i * (p * u) + e2 - i * e2 * (qe / u);
        cis(x * w) * r
    };
    let w_min = (T::of(1e-2) * tol / p.abs()).ln().min(-one);
    let near = integrate(&remainder, w_min, T::zero(), tol / T::of(4.0), q.max_subdivisions)?;

    let integrand = |u: T| cis(x * u.ln() + p * u) * c(one, -qe / u) / u;
    let envelope = one + qe.abs();
    let tail = tail(&integrand, one, p, envelope, q)?;
    Ok(Piece {
        near: mellin + near.value,
        tail,
    })
}

/// G(b, x, e) split into its undamped part on (0, 3 zeta) and the damped
/// tail beyond.
fn p2_piece<T: Real>(b: T, x: T, e: T, zeta: T, q: &QuadratureSettings<T>) -> Result<Piece<T>> {
    let one = T::one();
    let two = T::of(2.0);
    let tol = q.abs_tolerance / T::of(8.0);
    let f = |s: T, log_gap: T| cis(b * s.ln() + x * s) * c(one, -e * log_gap);

    // (0, zeta] on s = e^w; the integrand carries a factor e^w.
    let lower = |w: T| {
        let s = w.exp();
        f(s, (two * zeta - s).ln()) * s
    };
    let w_min = (T::of(1e-2) * tol).ln() - (one + e.abs());
    let a = integrate(&lower, w_min, zeta.ln(), tol, q.max_subdivisions)?;

    // [zeta, 2 zeta] and [2 zeta, 3 zeta] on s = 2 zeta -+ r^2.
    let root = zeta.sqrt();
    let below = |r: T| f(two * zeta - r * r, two * r.ln()) * (two * r);
    let above = |r: T| f(two * zeta + r * r, two * r.ln()) * (two * r);
    let m1 = integrate(&below, T::zero(), root, tol, q.max_subdivisions)?;
    let m2 = integrate(&above, T::zero(), root, tol, q.max_subdivisions)?;

    let start = T::of(3.0) * zeta;
    let upper = |s: T| f(s, (s - two * zeta).ln());
    // |1 - ie ln(s - 2 zeta)| over the longest tail any regulator can use.
    let reach = (q.abs_tolerance.recip().ln() + T::of(30.0))
        / (q.regulator_sequence.last().copied().unwrap_or(one) * x.abs());
    let envelope = one + e.abs() * (start + reach).ln().abs().max(zeta.ln().abs());
    let tail = tail(&upper, start, x, envelope, q)?;
    Ok(Piece {
        near: a.value + m1.value + m2.value,
        tail,
    })
}

/// Combines weighted pieces per regulator and extrapolates to zero damping.
fn assemble<T: Real>(
    terms: [(Complex<T>, Piece<T>); 2],
    q: &QuadratureSettings<T>,
) -> Result<AmplitudeResult<T>> {
    let limit = q.residual_limit();
    for (_, piece) in &terms {
        if let Some(worst) = piece.tail.errors.iter().copied().fold(None, |m: Option<T>, e| {
            Some(m.map_or(e, |m| m.max(e)))
        }) {
            if worst > limit {
                return Err(Error::NonConvergence(format!(
                    "tail error estimate {worst:e} exceeds {limit:e}; the cutoff is too short"
                )));
            }
        }
    }
    let n = q.regulator_sequence.len();
    let estimates: Vec<Complex<T>> = (0..n)
        .map(|j| {
            terms.iter().fold(c(T::zero(), T::zero()), |acc, (w, piece)| {
                acc + *w * (piece.near + piece.tail.values[j])
            })
        })
        .collect();
    let ex = extrapolate_to_zero(&q.regulator_sequence, &estimates, q.extrapolation_order)?;
    if !(ex.residual <= limit) {
        return Err(Error::NonConvergence(format!(
            "extrapolation residual {:e} exceeds {limit:e}",
            ex.residual
        )));
    }
    Ok(AmplitudeResult {
        probability: probability_from_amplitude(ex.value),
        amplitude: ex.value,
        regulator_estimates: estimates,
        extrapolation_residual: ex.residual,
    })
}

/// P^1 from the amplitude integral along the accelerated worldline.
pub fn p1_numeric<T: Real>(
    d: &DimensionlessConfig<T>,
    q: &QuadratureSettings<T>,
) -> Result<AmplitudeResult<T>> {
    d.validate()?;
    q.validate()?;
    let half = T::of(0.5);
    let y_tilde = d.y * (T::one() - d.eps);
    let p = d.y * (T::one() - d.eps * half);
    let qe = d.eps * d.y * half;
    let plus = p1_piece(d.x, p, qe, q)?;
    let minus = p1_piece(-d.x, -p, -qe, q)?;
    let phase = y_tilde * d.zeta;
    assemble([(cis(-phase), plus), (-cis(phase), minus)], q)
}

/// P^2 from the amplitude integral at the static atom. Needs zeta < 1.
pub fn p2_numeric<T: Real>(
    d: &DimensionlessConfig<T>,
    q: &QuadratureSettings<T>,
) -> Result<AmplitudeResult<T>> {
    d.validate_mirror_accelerating()?;
    q.validate()?;
    let half = T::of(0.5);
    let ybar = d.y * (T::one() - d.eps * half);
    let e = d.eps * d.y * half;
    let first = p2_piece(-ybar, -d.x, -e, d.zeta, q)?;
    let second = p2_piece(ybar, d.x, e, d.zeta, q)?;
    let phase = d.x * d.zeta;
    assemble([(cis(phase), first), (-cis(-phase), second)], q)
}

/// Agreement bound used by [`verify_pair`]: 1e-3 at eps = 0, 1e-2 otherwise.
pub fn default_bound(eps: f64) -> f64 {
    if eps == 0.0 {
        1e-3
    } else {
        1e-2
    }
}

/// Closed form against numeric oracle for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyRecord {
    pub p1_closed: f64,
    pub p1_numeric: f64,
    pub p1_deviation: f64,
    /// Present only for zeta < 1.
    pub p2_closed: Option<f64>,
    pub p2_numeric: Option<f64>,
    pub p2_deviation: Option<f64>,
    pub bound: f64,
    /// Set when any deviation exceeds `bound`.
    pub flagged: bool,
}

fn relative(numeric: f64, closed: f64) -> f64 {
    (numeric - closed).abs() / closed.abs().max(f64::MIN_POSITIVE)
}

/// Runs both oracles and both closed forms. P2 is skipped when zeta >= 1.
pub fn verify_pair(d: &DimensionlessConfig<f64>, q: &QuadratureSettings<f64>) -> Result<VerifyRecord> {
    let bound = default_bound(d.eps);
    let p1c = p1_closed(d)?.total;
    let p1n = p1_numeric(d, q)?.probability;
    let p1_deviation = relative(p1n, p1c);
    let (p2_closed, p2_numeric, p2_deviation) = if d.zeta < 1.0 {
        let c2 = p2_closed(d)?.total;
        let n2 = p2_numeric(d, q)?.probability;
        (Some(c2), Some(n2), Some(relative(n2, c2)))
    } else {
        (None, None, None)
    };
    let flagged = p1_deviation > bound || p2_deviation.is_some_and(|v| v > bound);
    Ok(VerifyRecord {
        p1_closed: p1c,
        p1_numeric: p1n,
        p1_deviation,
        p2_closed,
        p2_numeric,
        p2_deviation,
        bound,
        flagged,
    })
}
