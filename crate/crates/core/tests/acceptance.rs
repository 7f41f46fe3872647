//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gup_mirror::amplitude::{p1_numeric, p2_numeric, QuadratureSettings};
use gup_mirror::config::{parse_config, Mode};
use gup_mirror::dispersion::{quartic_residual, wavenumber_exact};
use gup_mirror::equivalence::{beta_bound, q_value, violation_parameter, BoundInputs};
use gup_mirror::modes::{
    minkowski_to_rindler, mode_accel_mirror, mode_rindler, mode_static_mirror, rindler_to_minkowski, ModeSpec,
    SpacetimePoint,
};
use gup_mirror::runner::render;
use gup_mirror::special::{gamma_phase_set, log_gamma};
use gup_mirror::{p1_closed, p2_closed, DimensionlessConfig, PhysicalConstants};

const FREQUENCIES: [f64; 3] = [0.5, 1.0, 2.0];
const ZETAS: [f64; 3] = [0.3, 0.5, 0.9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if elapsed >= limit {
        out.pass = false;
    }
    out.detail = format!("{} [{:.3?} of {:?}]", out.detail, elapsed, limit);
    out
}

fn dc(x: f64, y: f64, zeta: f64, eps: f64) -> DimensionlessConfig<f64> {
    DimensionlessConfig::new(x, y, zeta, eps).expect("valid grid point")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut worst: f64 = 0.0;
        for &x in &FREQUENCIES {
            for &zeta in &ZETAS {
                let d = dc(x, x, zeta, 0.0);
                let p1 = p1_closed(&d).unwrap().total;
                let p2 = p2_closed(&d).unwrap().total;
                worst = worst.max((p1 - p2).abs() / p1);
            }
        }
        Outcome {
            pass: worst < 1e-12,
            detail: format!("max |P1-P2|/P1 = {worst:.3e} (< 1e-12)"),
        }
    })
}

/// Max relative deviation of `numeric` from `closed` over the (x, y, zeta)
/// grid at one eps, with the offending points.
fn grid_deviation(
    eps: f64,
    closed: fn(&DimensionlessConfig<f64>) -> f64,
    numeric: fn(&DimensionlessConfig<f64>, &QuadratureSettings<f64>) -> f64,
    bound: f64,
) -> (f64, Vec<String>) {
    let q = QuadratureSettings::default();
    let mut worst: f64 = 0.0;
    let mut over = Vec::new();
    for &x in &FREQUENCIES {
        for &y in &FREQUENCIES {
            for &zeta in &ZETAS {
                let d = dc(x, y, zeta, eps);
                let r = rel(numeric(&d, &q), closed(&d));
                worst = worst.max(r);
                if !(r < bound) {
                    over.push(format!("(x={x}, y={y}, zeta={zeta}, eps={eps}): {r:.2e}"));
                }
            }
        }
    }
    (worst, over)
}

fn p1c(d: &DimensionlessConfig<f64>) -> f64 {
    p1_closed(d).unwrap().total
}
fn p2c(d: &DimensionlessConfig<f64>) -> f64 {
    p2_closed(d).unwrap().total
}
fn p1n(d: &DimensionlessConfig<f64>, q: &QuadratureSettings<f64>) -> f64 {
    p1_numeric(d, q).unwrap().probability
}
fn p2n(d: &DimensionlessConfig<f64>, q: &QuadratureSettings<f64>) -> f64 {
    p2_numeric(d, q).unwrap().probability
}

type Closed = fn(&DimensionlessConfig<f64>) -> f64;
type Numeric = fn(&DimensionlessConfig<f64>, &QuadratureSettings<f64>) -> f64;

fn oracle_part(label: &str, eps_values: &[f64], pairs: &[(&str, Closed, Numeric)], bound: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut over = Vec::new();
    let mut total = 0;
    for &(name, closed, numeric) in pairs {
        for &eps in eps_values {
            let (w, o) = grid_deviation(eps, closed, numeric, bound);
            worst = worst.max(w);
            over.extend(o.into_iter().map(|s| format!("{name} {s}")));
            total += 27;
        }
    }
    let mut detail = format!("{label}: max relative deviation {worst:.3e} (< {bound:e})");
    if !over.is_empty() {
        detail.push_str(&format!("; {} of {total} points over bound:", over.len()));
        for o in &over {
            detail.push_str("\n      ");
            detail.push_str(o);
        }
    }
    Outcome {
        pass: over.is_empty(),
        detail,
    }
}

fn criterion_2() -> Vec<(&'static str, Outcome)> {
    let start = Instant::now();
    let mut parts = vec![
        ("2a", oracle_part("P1, P2 at eps = 0", &[0.0], &[("P1", p1c, p1n), ("P2", p2c, p2n)], 1e-3)),
        ("2b", oracle_part("P1 at eps in {1e-3, 1e-2}", &[1e-3, 1e-2], &[("P1", p1c, p1n)], 1e-2)),
        ("2c", oracle_part("P2 at eps in {1e-3, 1e-2}", &[1e-3, 1e-2], &[("P2", p2c, p2n)], 1e-2)),
    ];
    // The three parts share one 60 s budget.
    let elapsed = start.elapsed();
    for (_, o) in &mut parts {
        o.pass &= elapsed < Duration::from_secs(60);
    }
    parts[0].1.detail.push_str(&format!(" [criterion 2 total {elapsed:.3?} of 60s]"));
    parts
}

fn criterion_3() -> Outcome {
    timed(Duration::from_millis(1), || {
        let k = PhysicalConstants::CODATA2018;
        let nu = 2.0 * PI * 1e9;
        let b = beta_bound(&BoundInputs { a: 1.0, omega0: nu, nu, z0: k.c * k.c }, &k, 1.0).unwrap();
        let v = b.beta_max_planck_units;
        Outcome {
            pass: (1e66..=1e68).contains(&v),
            detail: format!("beta_max = {v:.4e} (M_P c)^-2, in [1e66, 1e68]"),
        }
    })
}

fn criterion_4() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut worst = [0.0f64; 4];
        for i in 0..200 {
            let x = 10f64.powf(-1.0 + 2.0 * i as f64 / 199.0);
            let lg = log_gamma(Complex::new(0.0, x)).unwrap();
            let mod2 = (2.0 * lg.re).exp();
            worst[0] = worst[0].max(rel(mod2, PI / (x * (PI * x).sinh())));
            let s = gamma_phase_set(x, x).unwrap();
            let (c, sn) = (s.omega_ratio * s.delta_phase.cos(), s.omega_ratio * s.delta_phase.sin());
            worst[1] = worst[1].max(rel(c, -1.0 / (1.0 + x * x)));
            worst[2] = worst[2].max(rel(sn, x / (1.0 + x * x)));
            worst[3] = worst[3].max((s.kappa + s.theta).abs() / s.theta.abs());
        }
        Outcome {
            pass: worst.iter().all(|&w| w < 1e-10),
            detail: format!(
                "max rel: |G(ix)|^2 {:.2e}, Omega cos D {:.2e}, Omega sin D {:.2e}, kappa+theta {:.2e} (< 1e-10)",
                worst[0], worst[1], worst[2], worst[3]
            ),
        }
    })
}

fn criterion_5() -> Outcome {
    timed(Duration::from_millis(1), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for eps in [1e-4, 1e-3, 1e-2_f64] {
            let k = wavenumber_exact(eps).unwrap().k;
            let gap = (k - (1.0 - eps)).abs();
            let res = quartic_residual(k, eps).abs();
            pass &= gap <= 5.0 * eps * eps && res < 1e-14;
            parts.push(format!("eps {eps:e}: gap/eps^2 {:.3}, residual {res:.1e}", gap / (eps * eps)));
        }
        Outcome {
            pass,
            detail: format!("{} (gap <= 5 eps^2, residual < 1e-14)", parts.join("; ")),
        }
    })
}

fn criterion_6() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d69_7272);
        let m = ModeSpec::new(1.3, 0.02, 0.7).unwrap();

        let mut boundary: f64 = 0.0;
        for _ in 0..100 {
            let t: f64 = rng.gen_range(-20.0..20.0);
            boundary = boundary.max(mode_static_mirror(SpacetimePoint::new(t, m.zeta0), &m).norm());
            boundary = boundary.max(mode_rindler(SpacetimePoint::new(t, 0.0), &m).norm());
            let tb: f64 = rng.gen_range(-3.0..3.0);
            boundary = boundary.max(mode_accel_mirror(rindler_to_minkowski(SpacetimePoint::new(tb, 0.0)), &m).norm());
        }

        let mut wedge: f64 = 0.0;
        for _ in 0..1000 {
            let t: f64 = rng.gen_range(-5.0..5.0);
            let z = t.abs() + rng.gen_range(0.05..5.0);
            let p = SpacetimePoint::new(t, z);
            let a = mode_accel_mirror(p, &m);
            let b = mode_rindler(minkowski_to_rindler(p).unwrap(), &m);
            wedge = wedge.max((a - b).norm() / b.norm());
        }

        let mut round: f64 = 0.0;
        for _ in 0..1000 {
            let p: SpacetimePoint<f64> = SpacetimePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0));
            let back = minkowski_to_rindler(rindler_to_minkowski(p)).unwrap();
            round = round.max((back.t - p.t).abs().max((back.z - p.z).abs()));
        }
        Outcome {
            pass: boundary < 1e-12 && wedge < 1e-12 && round < 1e-13,
            detail: format!(
                "boundary {boundary:.2e} (< 1e-12), wedge rel {wedge:.2e} (< 1e-12), round-trip {round:.2e} (< 1e-13)"
            ),
        }
    })
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut exact = true;
    let mut worst_ratio_gap: f64 = 0.0;
    for &zeta in &[0.1, 0.3, 0.5, 0.9, 1.0, 2.0, 7.5] {
        for &eps in &[1e-4, 1e-3, 3e-3, 1e-2] {
            for lambda in [2.0, 0.5, 4.0] {
                exact &= q_value(lambda * eps, zeta) == lambda * q_value(eps, zeta);
            }
        }
    }
    pass &= exact;
    let mut zero_ok = true;
    let mut nonzero_ok = true;
    for &x in &FREQUENCIES {
        for &zeta in &ZETAS {
            let base = violation_parameter(&dc(x, x, zeta, 0.0)).unwrap();
            zero_ok &= base.phase_defect == 0.0;
            for eps in [1e-3, 1e-2] {
                let one = violation_parameter(&dc(x, x, zeta, eps)).unwrap().phase_defect;
                let two = violation_parameter(&dc(x, x, zeta, 2.0 * eps)).unwrap().phase_defect;
                nonzero_ok &= one != 0.0;
                worst_ratio_gap = worst_ratio_gap.max((two / one / 2.0 - 1.0).abs());
            }
        }
    }
    pass &= zero_ok && nonzero_ok && worst_ratio_gap < 0.1;
    Outcome {
        pass,
        detail: format!(
            "Q(l eps) == l Q(eps) exactly: {exact}; defect zero at eps = 0: {zero_ok}; nonzero for eps > 0: {nonzero_ok}; \
             max |ratio/2 - 1| at 2x eps = {worst_ratio_gap:.3e} (< 0.1)"
        ),
    }
}

fn criterion_8() -> Outcome {
    let sweep = "x = 1\ny = 1.3\neps_values = 0, 0.005, 0.01\nsweep_param = zeta\nsweep_min = 0.05\n\
                 sweep_max = 0.95\nsweep_count = 400\nsweep_spacing = log\n";
    let verify = "x = 1\ny = 1\neps = 0.01\nsweep_param = zeta\nsweep_min = 0.2\nsweep_max = 0.9\nsweep_count = 8\n";
    let mut identical = true;
    let mut sizes = Vec::new();
    for (text, mode) in [(sweep, Mode::Sweep), (verify, Mode::Sweep)] {
        let mut outputs = Vec::new();
        for workers in [1, 2, 3, 8] {
            for _ in 0..2 {
                let mut cfg = parse_config(&format!("{text}workers = {workers}\n"), Some(mode)).unwrap();
                if text == verify {
                    // Numeric columns as well: run the points through verify.
                    cfg.mode = Mode::Verify;
                }
                outputs.push(render(&cfg).unwrap().into_bytes());
            }
        }
        identical &= outputs.windows(2).all(|w| w[0] == w[1]);
        sizes.push(outputs[0].len());
    }
    Outcome {
        pass: identical,
        detail: format!("byte-identical across workers 1, 2, 3, 8 (x2 runs each): {identical}; sizes {sizes:?} bytes"),
    }
}

fn main() {
    let mut results: Vec<(String, Outcome)> = vec![("1".into(), criterion_1())];
    results.extend(criterion_2().into_iter().map(|(n, o)| (n.to_owned(), o)));
    for (n, f) in [
        ("3", criterion_3 as fn() -> Outcome),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
        ("8", criterion_8),
    ] {
        results.push((n.to_owned(), f()));
    }
    let mut failed = 0;
    for (n, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:<2} {tag}  {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
