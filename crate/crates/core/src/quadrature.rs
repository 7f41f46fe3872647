//! Gauss-Kronrod quadrature for complex integrands, an exponentially damped
//! oscillatory-tail integrator that shares panels across damping strengths,
//! and polynomial extrapolation of the damping strength to zero.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// 7-point Gauss weights on XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Abscissae of the 15-point rule on [a, b], in a fixed order.
fn nodes<T: Real>(a: T, b: T) -> [T; 15] {
    let center = (a + b) * T::of(0.5);
    let half = (b - a) * T::of(0.5);
    let mut out = [center; 15];
    for j in 0..7 {
        let dx = half * T::of(XGK[j]);
        out[2 * j] = center - dx;
        out[2 * j + 1] = center + dx;
    }
    out
}

/// Kronrod weight of node `idx` as laid out by [`nodes`].
fn kronrod_weight(idx: usize) -> f64 {
    if idx == 14 {
        WGK[7]
    } else {
        WGK[idx / 2]
    }
}

/// (Kronrod estimate, error estimate) from function values laid out by [`nodes`].
fn gk15_from_values<T: Real>(values: &[Complex<T>; 15], half: T) -> (Complex<T>, T) {
    let zero = Complex::new(T::zero(), T::zero());
    let mut kron = zero;
    let mut gauss = values[14] * T::of(WG[3]);
    let mut res_abs = T::zero();
    for (i, v) in values.iter().enumerate() {
        let w = T::of(kronrod_weight(i));
        kron = kron + *v * w;
        res_abs = res_abs + v.norm() * w;
    }
    for j in 0..3 {
        let idx = 2 * j + 1;
        let w = T::of(WG[j]);
        gauss = gauss + (values[2 * idx] + values[2 * idx + 1]) * w;
    }
    let mean = kron * T::of(0.5);
    let mut res_asc = T::zero();
    for (i, v) in values.iter().enumerate() {
        res_asc = res_asc + (*v - mean).norm() * T::of(kronrod_weight(i));
    }
    let result = kron * half;
    let mut err = ((kron - gauss) * half).norm();
    let res_asc = res_asc * half.abs();
    let res_abs = res_abs * half.abs();
    if res_asc != T::zero() && err != T::zero() {
        let scaled = (T::of(200.0) * err / res_asc).powf(T::of(1.5));
        err = res_asc * scaled.min(T::one());
    }
    let floor = T::of(50.0) * T::epsilon() * res_abs;
    (result, err.max(floor))
}

/// One 15-point Gauss-Kronrod panel.
pub fn gk15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> (Complex<T>, T) {
    let xs = nodes(a, b);
    let values = xs.map(f);
    gk15_from_values(&values, (b - a) * T::of(0.5))
}

/// Result of a finite-interval integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: Complex<T>,
    pub error: T,
    pub subdivisions: usize,
}

/// Globally adaptive integration on [a, b]: the panel with the largest error
/// estimate is bisected until the summed estimate is below `abs_tol`.
pub fn integrate<T: Real, F: Fn(T) -> Complex<T>>(
    f: &F,
    a: T,
    b: T,
    abs_tol: T,
    max_subdivisions: usize,
) -> Result<Integral<T>> {
    struct Panel<T> {
        a: T,
        b: T,
        value: Complex<T>,
        error: T,
    }
    let (value, error) = gk15(f, a, b);
    let mut panels = vec![Panel { a, b, value, error }];
    let mut total_err = error;
    while total_err > abs_tol {
        if panels.len() >= max_subdivisions {
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature on [{a}, {b}] hit {max_subdivisions} panels with error {total_err:e} > {abs_tol:e}"
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.error > panels[best].error { i } else { best });
        let p = panels.swap_remove(worst);
        let mid = (p.a + p.b) * T::of(0.5);
        let (v1, e1) = gk15(f, p.a, mid);
        let (v2, e2) = gk15(f, mid, p.b);
        panels.push(Panel { a: p.a, b: mid, value: v1, error: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, error: e2 });
        // Re-summing keeps the total independent of rounding history.
        total_err = panels.iter().fold(T::zero(), |s, p| s + p.error);
    }
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).expect("finite panel bounds"));
    let value = panels
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |s, p| s + p.value);
    Ok(Integral {
        value,
        error: total_err,
        subdivisions: panels.len(),
    })
}

/// Description of an oscillatory tail integral
/// `int_start^inf f(v) e^{-delta |omega| (v - start)} dv`.
#[derive(Debug, Clone, Copy)]
pub struct TailSpec<T> {
    pub start: T,
    /// Oscillation frequency of f; sets panel length and the damping scale.
    pub omega: T,
    /// Upper bound for |f| on the tail, used to size the truncation.
    pub envelope: T,
    pub abs_tol: T,
    /// Optional hard limit on the tail length.
    pub cutoff: Option<T>,
    pub max_panels: usize,
}

/// Per-regulator tail values.
#[derive(Debug, Clone, PartialEq)]
pub struct TailValues<T> {
    pub values: Vec<Complex<T>>,
    /// Quadrature plus truncation error estimate for each regulator.
    pub errors: Vec<T>,
}

struct Leaf<T> {
    a: T,
    b: T,
    values: [Complex<T>; 15],
    error: T,
}

/// Damped oscillatory tail for every damping strength in `regulators`.
///
/// The undamped integrand is sampled once on half-period panels (bisected
/// further where the Kronrod estimate asks for it); each regulator then
/// re-weights the cached samples and truncates where the damping has brought
/// the integrand below tolerance.
pub fn damped_tail<T: Real, F: Fn(T) -> Complex<T>>(
    f: &F,
    spec: &TailSpec<T>,
    regulators: &[T],
) -> Result<TailValues<T>> {
    let w = spec.omega.abs();
    if !(w > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "omega",
            reason: "tail frequency must be nonzero".into(),
        });
    }
    let smallest = regulators
        .iter()
        .copied()
        .fold(T::infinity(), |m, r| m.min(r));
    if !(smallest > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "regulator_sequence",
            reason: "damping strengths must be positive".into(),
        });
    }
    let env = spec.envelope.max(T::epsilon());
    let decay_budget = (env / spec.abs_tol).ln().max(T::zero()) + T::of(3.0);
    let natural = |delta: T| decay_budget / (delta * w);
    let mut length = natural(smallest);
    if let Some(c) = spec.cutoff {
        length = length.min(c);
    }
    let panel = T::PI() / w;
    let n_panels = (length / panel).ceil().to_usize().unwrap_or(usize::MAX);
    if n_panels > spec.max_panels {
        return Err(Error::NonConvergence(format!(
            "tail needs {n_panels} panels, more than the limit {}",
            spec.max_panels
        )));
    }
    // Never ask a panel for less than its own rounding floor.
    let per_length_tol = (spec.abs_tol / (T::of(2.0) * length)).max(T::of(100.0) * T::epsilon() * env);
    let mut leaves: Vec<Leaf<T>> = Vec::with_capacity(n_panels);
    for j in 0..n_panels {
        let a = spec.start + panel * T::of(j as f64);
        let b = a + panel;
        refine(f, a, b, per_length_tol, 0, &mut leaves)?;
    }

    let mut values = Vec::with_capacity(regulators.len());
    let mut errors = Vec::with_capacity(regulators.len());
    for &delta in regulators {
        let rate = delta * w;
        let mut limit = natural(delta);
        let mut truncation = T::zero();
        if let Some(c) = spec.cutoff {
            if c < limit {
                limit = c;
                truncation = env * (-rate * c).exp() / rate;
            }
        }
        let end = spec.start + limit;
        let mut sum = Complex::new(T::zero(), T::zero());
        let mut err = T::zero();
        for leaf in leaves.iter().take_while(|l| l.a < end) {
            let xs = nodes(leaf.a, leaf.b);
            let half = (leaf.b - leaf.a) * T::of(0.5);
            let mut acc = Complex::new(T::zero(), T::zero());
            for (i, (&x, v)) in xs.iter().zip(leaf.values.iter()).enumerate() {
                let damp = (-rate * (x - spec.start)).exp();
                acc = acc + *v * (damp * T::of(kronrod_weight(i)));
            }
            sum = sum + acc * half;
            err = err + leaf.error;
        }
        values.push(sum);
        errors.push(err + truncation);
    }
    Ok(TailValues { values, errors })
}

fn refine<T: Real, F: Fn(T) -> Complex<T>>(
    f: &F,
    a: T,
    b: T,
    per_length_tol: T,
    depth: usize,
    out: &mut Vec<Leaf<T>>,
) -> Result<()> {
    let xs = nodes(a, b);
    let values = xs.map(f);
    let (_, error) = gk15_from_values(&values, (b - a) * T::of(0.5));
    if error <= per_length_tol * (b - a) || depth >= 12 {
        if error > per_length_tol * (b - a) * T::of(1e3) {
            return Err(Error::NonConvergence(format!(
                "tail panel [{a}, {b}] stuck at error {error:e}"
            )));
        }
        out.push(Leaf { a, b, values, error });
        return Ok(());
    }
    let mid = (a + b) * T::of(0.5);
    refine(f, a, mid, per_length_tol, depth + 1, out)?;
    refine(f, mid, b, per_length_tol, depth + 1, out)
}

/// Value at zero of the interpolating polynomial through (nodes[i], values[i])
/// (Neville's scheme).
pub fn neville_at_zero<T: Real>(nodes: &[T], values: &[Complex<T>]) -> Complex<T> {
    assert_eq!(nodes.len(), values.len());
    let mut p: Vec<Complex<T>> = values.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (nodes[i], nodes[i + m]);
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
    }
    p[0]
}

/// Extrapolated value and residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation<T> {
    pub value: Complex<T>,
    pub residual: T,
}

/// Polynomial extrapolation to zero regulator.
///
/// The value uses the `order + 1` smallest regulators; the residual is its
/// distance from the order + 1 polynomial through the `order + 2` smallest.
pub fn extrapolate_to_zero<T: Real>(
    regulators: &[T],
    values: &[Complex<T>],
    order: usize,
) -> Result<Extrapolation<T>> {
    let n = regulators.len();
    if values.len() != n || n < order + 2 {
        return Err(Error::InvalidParameter {
            name: "extrapolation_order",
            reason: format!("order {order} needs at least {} regulator values (got {n})", order + 2),
        });
    }
    let lo = n - (order + 1);
    let value = neville_at_zero(&regulators[lo..], &values[lo..]);
    let check = neville_at_zero(&regulators[lo - 1..], &values[lo - 1..]);
    Ok(Extrapolation {
        value,
        residual: (value - check).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn gk15_is_exact_for_polynomials() {
        let f = |x: f64| c(x.powi(20), 3.0 * x * x);
        let (v, _) = gk15(&f, 0.0, 1.0);
        assert!((v - c(1.0 / 21.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // int_0^1 ln(x) dx = -1
        let f = |x: f64| c(x.ln(), 0.0);
        let r = integrate(&f, 0.0, 1.0, 1e-11, 500).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn adaptive_reports_non_convergence() {
        let f = |x: f64| c((1.0 / x).sin(), 0.0);
        assert!(matches!(integrate(&f, 1e-9, 1.0, 1e-14, 20), Err(Error::NonConvergence(_))));
    }

    #[test]
    fn neville_recovers_polynomial() {
        let xs = [0.4, 0.2, 0.1, 0.05];
        let ys: Vec<_> = xs.iter().map(|&x| c(2.0 - x + 3.0 * x * x * x, x)).collect();
        let v = neville_at_zero(&xs, &ys);
        assert!((v - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn damped_tail_of_shifted_exponential() {
        // int_1^inf e^{i v} e^{-d (v-1)} dv = e^{i} / (d - i), analytic in d.
        let f = |v: f64| Complex::from_polar(1.0, v);
        let regs: Vec<f64> = (0..7).map(|j| 0.1 * 0.5f64.powi(j)).collect();
        let spec = TailSpec {
            start: 1.0,
            omega: 1.0,
            envelope: 1.0,
            abs_tol: 1e-10,
            cutoff: None,
            max_panels: 100_000,
        };
        let tail = damped_tail(&f, &spec, &regs).unwrap();
        for (d, v) in regs.iter().zip(&tail.values) {
            let exact = Complex::from_polar(1.0, 1.0) / c(*d, -1.0);
            assert!((v - exact).norm() < 1e-9, "delta {d}: {v} vs {exact}");
        }
        let ex = extrapolate_to_zero(&regs, &tail.values, 3).unwrap();
        let limit = Complex::from_polar(1.0, 1.0) / c(0.0, -1.0);
        assert!((ex.value - limit).norm() < 1e-8, "{}", ex.value);
        assert!(ex.residual < 1e-7);
    }

    #[test]
    fn tiny_cutoff_shows_up_in_errors() {
        let f = |v: f64| Complex::from_polar(1.0, v);
        let spec = TailSpec {
            start: 0.0,
            omega: 1.0,
            envelope: 1.0,
            abs_tol: 1e-10,
            cutoff: Some(2.0 * PI),
            max_panels: 1000,
        };
        let tail = damped_tail(&f, &spec, &[0.1, 0.05]).unwrap();
        assert!(tail.errors.iter().all(|&e| e > 1.0));
    }

    #[test]
    fn extrapolation_needs_enough_points() {
        let v = [c(1.0, 0.0); 3];
        assert!(extrapolate_to_zero(&[0.3, 0.2, 0.1], &v, 2).is_err());
        assert!(extrapolate_to_zero(&[0.3, 0.2, 0.1], &v, 1).is_ok());
    }
}
