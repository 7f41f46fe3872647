//! Executes a [`RunConfig`] and renders the CSV output.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::amplitude::{p1_numeric, p2_numeric};
use crate::closed_form::{p1_closed_with, p2_closed_with, temperatures};
use crate::config::{ConfigError, DimensionlessInputs, Mode, ParameterBlock, PhysicalInputs, RunConfig, SweepParam};
use crate::equivalence::{beta_bound, q_value, BoundInputs};
use crate::error::Error;
use crate::units::{to_dimensionless, DimensionlessConfig, FrequencyConvention, PhysicalConfig, PhysicalConstants};

pub const SWEEP_HEADER: &str = "x,y,zeta,eps,p1_closed,p2_closed,p1_numeric,p2_numeric,phase1,phase2,q_value,ratio";
pub const BOUND_HEADER: &str = "reading,a,omega0,nu,z0,eta0,beta_max_si,beta_max_planck_units";
pub const TEMPERATURE_HEADER: &str = "a,nu,eps,unruh,modified";

/// One evaluated point. Fields that do not apply are `None` and render empty.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepResultRow {
    pub x: f64,
    pub y: f64,
    pub zeta: f64,
    pub eps: f64,
    pub p1_closed: Option<f64>,
    pub p2_closed: Option<f64>,
    pub p1_numeric: Option<f64>,
    pub p2_numeric: Option<f64>,
    pub phase1: Option<f64>,
    pub phase2: Option<f64>,
    pub q_value: Option<f64>,
    pub ratio: Option<f64>,
}

impl SweepResultRow {
    fn fields(&self) -> [Option<f64>; 12] {
        [
            Some(self.x),
            Some(self.y),
            Some(self.zeta),
            Some(self.eps),
            self.p1_closed,
            self.p2_closed,
            self.p1_numeric,
            self.p2_numeric,
            self.phase1,
            self.phase2,
            self.q_value,
            self.ratio,
        ]
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Compute(#[from] Error),
}

impl RunError {
    /// 2 for quadrature non-convergence, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Compute(Error::NonConvergence(_)) => 2,
            _ => 1,
        }
    }
}

/// 17 significant digits, '.' decimal separator.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn push_line(out: &mut String, fields: impl IntoIterator<Item = String>) {
    let mut first = true;
    for f in fields {
        if !first {
            out.push(',');
        }
        out.push_str(&f);
        first = false;
    }
    out.push('\n');
}

pub fn render_rows(rows: &[SweepResultRow]) -> String {
    let mut out = String::with_capacity(32 + rows.len() * 256);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        push_line(&mut out, r.fields().map(|f| f.map(format_float).unwrap_or_default()));
    }
    out
}

/// Values used for both p1 and p2 in the verify mode's built-in grid.
pub const DEFAULT_GRID_FREQUENCIES: [f64; 3] = [0.5, 1.0, 2.0];
pub const DEFAULT_GRID_ZETA: [f64; 3] = [0.3, 0.5, 0.9];
pub const DEFAULT_GRID_EPS: [f64; 3] = [0.0, 1e-3, 1e-2];

/// The 81 points of the built-in verification grid, eps outermost.
pub fn default_grid() -> Vec<DimensionlessConfig<f64>> {
    let mut out = Vec::with_capacity(81);
    for &eps in &DEFAULT_GRID_EPS {
        for &x in &DEFAULT_GRID_FREQUENCIES {
            for &y in &DEFAULT_GRID_FREQUENCIES {
                for &zeta in &DEFAULT_GRID_ZETA {
                    out.push(DimensionlessConfig { x, y, zeta, eps });
                }
            }
        }
    }
    out
}

fn physical_config(p: &PhysicalInputs, conv: FrequencyConvention, k: &PhysicalConstants) -> PhysicalConfig {
    let beta = match (p.beta, p.beta_planck) {
        (Some(b), _) => b,
        (None, Some(bp)) => k.beta_from_planck_units(bp),
        (None, None) => 0.0,
    };
    PhysicalConfig {
        a: p.a.unwrap_or(f64::NAN),
        omega0: conv.to_angular(p.omega0.unwrap_or(f64::NAN)),
        nu: conv.to_angular(p.nu.unwrap_or(f64::NAN)),
        z0: p.z0.unwrap_or(f64::NAN),
        g: p.g.unwrap_or(1.0),
        beta,
    }
}

fn base_inputs(cfg: &RunConfig, k: &PhysicalConstants) -> Result<DimensionlessInputs, RunError> {
    match &cfg.params {
        ParameterBlock::Dimensionless(d) => Ok(*d),
        ParameterBlock::Physical(p) => {
            let d = to_dimensionless(&physical_config(p, cfg.freq_convention, k), k)?;
            Ok(DimensionlessInputs {
                x: Some(d.x),
                y: Some(d.y),
                zeta: Some(d.zeta),
                eps: Some(d.eps),
            })
        }
        ParameterBlock::DefaultGrid => Err(ConfigError {
            line: None,
            key: None,
            message: format!("{} mode needs a parameter block", cfg.mode),
        }
        .into()),
    }
}

fn complete(d: DimensionlessInputs) -> Result<DimensionlessConfig<f64>, RunError> {
    let get = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| ConfigError {
            line: None,
            key: Some(name.to_owned()),
            message: "required".into(),
        })
    };
    Ok(DimensionlessConfig::new(
        get(d.x, "x")?,
        get(d.y, "y")?,
        get(d.zeta, "zeta")?,
        get(d.eps, "eps")?,
    )?)
}

/// Every point a run evaluates, in output order.
pub fn points(cfg: &RunConfig) -> Result<Vec<DimensionlessConfig<f64>>, RunError> {
    let k = PhysicalConstants::CODATA2018;
    if cfg.params == ParameterBlock::DefaultGrid {
        return Ok(default_grid());
    }
    let base = base_inputs(cfg, &k)?;
    let Some(axis) = cfg.sweep else {
        return Ok(vec![complete(base)?]);
    };
    let eps_list: Vec<Option<f64>> = match &cfg.eps_values {
        Some(list) => list.iter().map(|&e| Some(e)).collect(),
        None => vec![base.eps],
    };
    let values = axis.values();
    let mut out = Vec::with_capacity(eps_list.len() * values.len());
    for eps in eps_list {
        for &v in &values {
            let mut d = DimensionlessInputs { eps, ..base };
            match axis.param {
                SweepParam::X => d.x = Some(v),
                SweepParam::Y => d.y = Some(v),
                SweepParam::Zeta => d.zeta = Some(v),
                SweepParam::Eps => d.eps = Some(v),
            }
            out.push(complete(d)?);
        }
    }
    Ok(out)
}

/// Evaluates one row for the given mode.
pub fn evaluate_row(d: &DimensionlessConfig<f64>, cfg: &RunConfig) -> Result<SweepResultRow, Error> {
    let conv = cfg.phase_convention;
    let mut row = SweepResultRow {
        x: d.x,
        y: d.y,
        zeta: d.zeta,
        eps: d.eps,
        ..Default::default()
    };
    let want_p1 = cfg.mode != Mode::P2;
    let want_p2 = cfg.mode == Mode::P2 || d.zeta < 1.0;
    if want_p1 {
        let b = p1_closed_with(d, conv)?;
        row.p1_closed = Some(b.total);
        row.phase1 = Some(b.phase_argument);
    }
    if want_p2 {
        let b = p2_closed_with(d, conv)?;
        row.p2_closed = Some(b.total);
        row.phase2 = Some(b.phase_argument);
    }
    if matches!(cfg.mode, Mode::Compare | Mode::Sweep | Mode::Verify) && d.x == d.y {
        let q = q_value(d.eps, d.zeta);
        row.q_value = Some(q);
        row.ratio = Some(1.0 + q);
    }
    if cfg.mode == Mode::Verify {
        row.p1_numeric = Some(p1_numeric(d, &cfg.quadrature)?.probability);
        if want_p2 {
            row.p2_numeric = Some(p2_numeric(d, &cfg.quadrature)?.probability);
        }
    }
    if let Some(bad) = row.fields().into_iter().flatten().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "row",
            reason: format!("non-finite value {bad} at x = {}, y = {}, zeta = {}, eps = {}", d.x, d.y, d.zeta, d.eps),
        });
    }
    Ok(row)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, RunError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| RunError::Config(ConfigError {
            line: None,
            key: Some("workers".into()),
            message: e.to_string(),
        }))
}

/// Evaluates all rows on `cfg.workers` threads. Rows come back in point order
/// and the first failing point (in that order) decides the error.
pub fn compute_rows(cfg: &RunConfig) -> Result<Vec<SweepResultRow>, RunError> {
    let pts = points(cfg)?;
    let results: Vec<Result<SweepResultRow, Error>> =
        pool(cfg.workers)?.install(|| pts.par_iter().map(|d| evaluate_row(d, cfg)).collect());
    results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(RunError::from)
}

fn bound_csv(cfg: &RunConfig) -> Result<String, RunError> {
    let ParameterBlock::Physical(p) = &cfg.params else {
        return Err(ConfigError {
            line: None,
            key: None,
            message: "bound mode needs a, omega0, nu".into(),
        }
        .into());
    };
    let k = PhysicalConstants::CODATA2018;
    let a = p.a.unwrap_or(f64::NAN);
    let z0 = p.z0.unwrap_or(k.c * k.c / a);
    let mut out = String::new();
    out.push_str(BOUND_HEADER);
    out.push('\n');
    for conv in [FrequencyConvention::Angular, FrequencyConvention::Ordinary] {
        let inputs = BoundInputs {
            a,
            omega0: conv.to_angular(p.omega0.unwrap_or(f64::NAN)),
            nu: conv.to_angular(p.nu.unwrap_or(f64::NAN)),
            z0,
        };
        let b = beta_bound(&inputs, &k, cfg.eta0)?;
        let nums = [a, inputs.omega0, inputs.nu, z0, cfg.eta0, b.beta_max_si, b.beta_max_planck_units];
        push_line(
            &mut out,
            std::iter::once(conv.name().to_owned()).chain(nums.into_iter().map(format_float)),
        );
    }
    Ok(out)
}

fn temperatures_csv(cfg: &RunConfig) -> Result<String, RunError> {
    let ParameterBlock::Physical(p) = &cfg.params else {
        return Err(ConfigError {
            line: None,
            key: None,
            message: "temperatures mode needs a physical block".into(),
        }
        .into());
    };
    let k = PhysicalConstants::CODATA2018;
    let phys = physical_config(p, cfg.freq_convention, &k);
    let eps = to_dimensionless(&phys, &k)?.eps;
    let t = temperatures(&phys, &k)?;
    let mut out = String::new();
    let _ = writeln!(out, "{TEMPERATURE_HEADER}");
    push_line(&mut out, [phys.a, phys.nu, eps, t.unruh, t.modified].map(format_float));
    Ok(out)
}

/// CSV text for a run, without touching the file system.
pub fn render(cfg: &RunConfig) -> Result<String, RunError> {
    match cfg.mode {
        Mode::Bound => bound_csv(cfg),
        Mode::Temperatures => temperatures_csv(cfg),
        _ => Ok(render_rows(&compute_rows(cfg)?)),
    }
}

/// Renders and writes the CSV to `cfg.output`.
pub fn run(cfg: &RunConfig) -> Result<PathBuf, RunError> {
    let path = cfg.output.clone().ok_or_else(|| ConfigError {
        line: None,
        key: Some("output".into()),
        message: "no output path (use --out or `output = ...`)".into(),
    })?;
    let text = render(cfg)?;
    std::fs::write(&path, text).map_err(|source| RunError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
