//! Run configuration: line-oriented `key = value` text with `#` comments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::amplitude::QuadratureSettings;
use crate::closed_form::PhaseConvention;
use crate::units::{FrequencyConvention, EPS_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    P1,
    P2,
    Compare,
    Sweep,
    Verify,
    Bound,
    Temperatures,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::P1,
        Mode::P2,
        Mode::Compare,
        Mode::Sweep,
        Mode::Verify,
        Mode::Bound,
        Mode::Temperatures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::P1 => "p1",
            Mode::P2 => "p2",
            Mode::Compare => "compare",
            Mode::Sweep => "sweep",
            Mode::Verify => "verify",
            Mode::Bound => "bound",
            Mode::Temperatures => "temperatures",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (p1|p2|compare|sweep|verify|bound|temperatures)"))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parse or validation failure. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, key: Option<&str>, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            key: key.map(str::to_owned),
            message: message.into(),
        }
    }

    fn key(key: &str, message: impl Into<String>) -> Self {
        Self {
            line: None,
            key: Some(key.to_owned()),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            key: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(key) = &self.key {
            write!(f, "`{key}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Dimensionless point. A swept group is left as `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DimensionlessInputs {
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub zeta: Option<f64>,
    pub eps: Option<f64>,
}

/// SI inputs, frequencies as given (see [`RunConfig::freq_convention`]).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhysicalInputs {
    pub a: Option<f64>,
    pub omega0: Option<f64>,
    pub nu: Option<f64>,
    pub z0: Option<f64>,
    pub g: Option<f64>,
    /// (kg m/s)^-2.
    pub beta: Option<f64>,
    /// (M_P c)^-2.
    pub beta_planck: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParameterBlock {
    Dimensionless(DimensionlessInputs),
    Physical(PhysicalInputs),
    /// Only valid in verify mode: the built-in grid.
    DefaultGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    X,
    Y,
    Zeta,
    Eps,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::X => "x",
            SweepParam::Y => "y",
            SweepParam::Zeta => "zeta",
            SweepParam::Eps => "eps",
        }
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(Self::X),
            "y" => Ok(Self::Y),
            "zeta" => Ok(Self::Zeta),
            "eps" => Ok(Self::Eps),
            other => Err(format!("unknown sweep parameter `{other}` (x|y|zeta|eps)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Self::Linear),
            "log" => Ok(Self::Log),
            other => Err(format!("unknown spacing `{other}` (linear|log)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

pub const MAX_SWEEP_COUNT: usize = 1_000_000;

impl SweepAxis {
    /// The axis values in increasing order. Endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * f,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: ParameterBlock,
    pub sweep: Option<SweepAxis>,
    /// Outer loop of GUP strengths for sweep mode.
    pub eps_values: Option<Vec<f64>>,
    pub quadrature: QuadratureSettings<f64>,
    pub output: Option<PathBuf>,
    pub freq_convention: FrequencyConvention,
    pub phase_convention: PhaseConvention,
    /// Worker threads; 0 means available parallelism.
    pub workers: usize,
    /// Threshold standing in for "much less than 1" in bound mode.
    pub eta0: f64,
}

const DIMENSIONLESS_KEYS: [&str; 4] = ["x", "y", "zeta", "eps"];
const PHYSICAL_KEYS: [&str; 7] = ["a", "omega0", "nu", "z0", "g", "beta", "beta_planck"];
const OTHER_KEYS: [&str; 17] = [
    "mode",
    "sweep_param",
    "sweep_min",
    "sweep_max",
    "sweep_count",
    "sweep_spacing",
    "eps_values",
    "regulators",
    "abs_tolerance",
    "extrapolation_order",
    "cutoff",
    "max_subdivisions",
    "output",
    "freq_convention",
    "phase_convention",
    "workers",
    "eta0",
];

struct Entry {
    line: usize,
    value: String,
}

struct Entries(BTreeMap<String, Entry>);

impl Entries {
    fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse::<T>()
                .map(Some)
                .map_err(|err| ConfigError::at(e.line, Some(key), format!("cannot parse `{}`: {err}", e.value))),
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        let v = self.parse::<f64>(key)?;
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(self.error(key, "must be finite"));
            }
        }
        Ok(v)
    }

    fn float_list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(e) = self.0.get(key) else { return Ok(None) };
        e.value
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| ConfigError::at(e.line, Some(key), format!("`{}` is not a finite number", s.trim())))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn error(&self, key: &str, message: impl Into<String>) -> ConfigError {
        match self.0.get(key) {
            Some(e) => ConfigError::at(e.line, Some(key), message),
            None => ConfigError::key(key, message),
        }
    }
}

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::at(line, None, format!("expected `key = value`, found `{content}`")));
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(ConfigError::at(line, None, "missing key before `=`"));
        }
        let known = DIMENSIONLESS_KEYS.contains(&key) || PHYSICAL_KEYS.contains(&key) || OTHER_KEYS.contains(&key);
        if !known {
            return Err(ConfigError::at(line, Some(key), "unknown key"));
        }
        if value.is_empty() {
            return Err(ConfigError::at(line, Some(key), "missing value"));
        }
        if let Some(prev) = map.get(key) {
            let prev: &Entry = prev;
            return Err(ConfigError::at(line, Some(key), format!("duplicate key (first set on line {})", prev.line)));
        }
        map.insert(key.to_owned(), Entry { line, value: value.to_owned() });
    }
    Ok(Entries(map))
}

/// Parses a configuration. `mode` from the command line takes part in the
/// check against a `mode` key in the text; at least one of the two must be
/// given and they must agree.
pub fn parse_config(text: &str, mode: Option<Mode>) -> Result<RunConfig, ConfigError> {
    let e = tokenize(text)?;
    let file_mode: Option<Mode> = e.parse("mode")?;
    let mode = match (mode, file_mode) {
        (Some(a), Some(b)) if a != b => {
            return Err(e.error("mode", format!("config says `{b}` but `{a}` was requested")));
        }
        (Some(m), _) | (None, Some(m)) => m,
        (None, None) => return Err(ConfigError::key("mode", "no mode given")),
    };

    let sweep = parse_sweep(&e, mode)?;
    let params = parse_block(&e, mode, sweep.as_ref())?;
    let eps_values = e.float_list("eps_values")?;
    if let Some(list) = &eps_values {
        if mode != Mode::Sweep {
            return Err(e.error("eps_values", "only valid in sweep mode"));
        }
        if sweep.is_some_and(|s| s.param == SweepParam::Eps) {
            return Err(e.error("eps_values", "cannot be combined with a sweep over eps"));
        }
        if matches!(params, ParameterBlock::Dimensionless(DimensionlessInputs { eps: Some(_), .. })) {
            return Err(e.error("eps", "fixed eps conflicts with eps_values"));
        }
        for &v in list {
            check_group(&e, "eps_values", SweepParam::Eps, v)?;
        }
    }

    let mut quadrature = QuadratureSettings::<f64>::default();
    if let Some(r) = e.float_list("regulators")? {
        quadrature.regulator_sequence = r;
    }
    if let Some(t) = e.float("abs_tolerance")? {
        quadrature.abs_tolerance = t;
    }
    if let Some(o) = e.parse("extrapolation_order")? {
        quadrature.extrapolation_order = o;
    }
    if let Some(c) = e.float("cutoff")? {
        quadrature.cutoff = Some(c);
    }
    if let Some(m) = e.parse("max_subdivisions")? {
        quadrature.max_subdivisions = m;
    }
    if let Err(err) = quadrature.validate() {
        let key = match &err {
            crate::error::Error::InvalidParameter { name: "regulator_sequence", .. } => "regulators",
            crate::error::Error::InvalidParameter { name, .. } => name,
            _ => "regulators",
        };
        return Err(e.error(key, err.to_string()));
    }

    let phase_convention = match e.parse::<String>("phase_convention")?.as_deref() {
        None | Some("integral") => PhaseConvention::Integral,
        Some("published") => PhaseConvention::AsPublished,
        Some(other) => {
            return Err(e.error("phase_convention", format!("unknown value `{other}` (integral|published)")));
        }
    };
    let eta0 = e.float("eta0")?.unwrap_or(1.0);
    if !(eta0 > 0.0) {
        return Err(e.error("eta0", "must be > 0"));
    }

    Ok(RunConfig {
        mode,
        params,
        sweep,
        eps_values,
        quadrature,
        output: e.parse::<String>("output")?.map(PathBuf::from),
        freq_convention: e.parse("freq_convention")?.unwrap_or_default(),
        phase_convention,
        workers: e.parse("workers")?.unwrap_or(0),
        eta0,
    })
}

fn check_group(e: &Entries, key: &str, param: SweepParam, v: f64) -> Result<(), ConfigError> {
    let ok = match param {
        SweepParam::Eps => (0.0..EPS_LIMIT).contains(&v),
        _ => v > 0.0,
    };
    if ok {
        Ok(())
    } else {
        let bound = match param {
            SweepParam::Eps => format!("0 <= eps < {EPS_LIMIT} (perturbative regime)"),
            _ => format!("{} > 0", param.name()),
        };
        Err(e.error(key, format!("value {v} violates {bound}")))
    }
}

fn parse_sweep(e: &Entries, mode: Mode) -> Result<Option<SweepAxis>, ConfigError> {
    let keys = ["sweep_param", "sweep_min", "sweep_max", "sweep_count", "sweep_spacing"];
    let present: Vec<&str> = keys.iter().copied().filter(|k| e.has(k)).collect();
    if mode != Mode::Sweep {
        if let Some(k) = present.first() {
            return Err(e.error(k, "sweep axis is only valid in sweep mode"));
        }
        return Ok(None);
    }
    for k in &keys[..4] {
        if !e.has(k) {
            return Err(ConfigError::key(k, "required in sweep mode"));
        }
    }
    let param: SweepParam = e.parse("sweep_param")?.expect("checked above");
    let min = e.float("sweep_min")?.expect("checked above");
    let max = e.float("sweep_max")?.expect("checked above");
    let count: usize = e.parse("sweep_count")?.expect("checked above");
    let spacing = e.parse("sweep_spacing")?.unwrap_or(Spacing::Linear);
    if !(2..=MAX_SWEEP_COUNT).contains(&count) {
        return Err(e.error("sweep_count", format!("must be in [2, {MAX_SWEEP_COUNT}] (got {count})")));
    }
    if !(min < max) {
        return Err(e.error("sweep_max", format!("must exceed sweep_min ({min} >= {max})")));
    }
    if spacing == Spacing::Log && !(min > 0.0) {
        return Err(e.error("sweep_min", "log spacing needs a positive minimum"));
    }
    check_group(e, "sweep_min", param, min)?;
    check_group(e, "sweep_max", param, max)?;
    Ok(Some(SweepAxis { param, min, max, count, spacing }))
}

fn parse_block(e: &Entries, mode: Mode, sweep: Option<&SweepAxis>) -> Result<ParameterBlock, ConfigError> {
    let dimless: Vec<&str> = DIMENSIONLESS_KEYS.iter().copied().filter(|k| e.has(k)).collect();
    let physical: Vec<&str> = PHYSICAL_KEYS.iter().copied().filter(|k| e.has(k)).collect();
    if !dimless.is_empty() && !physical.is_empty() {
        return Err(e.error(
            physical[0],
            format!("cannot mix physical keys with dimensionless key `{}`", dimless[0]),
        ));
    }
    if !physical.is_empty() {
        let p = PhysicalInputs {
            a: e.float("a")?,
            omega0: e.float("omega0")?,
            nu: e.float("nu")?,
            z0: e.float("z0")?,
            g: e.float("g")?,
            beta: e.float("beta")?,
            beta_planck: e.float("beta_planck")?,
        };
        if p.beta.is_some() && p.beta_planck.is_some() {
            return Err(e.error("beta_planck", "give either beta or beta_planck, not both"));
        }
        let required: &[&str] = match mode {
            Mode::Bound => &["a", "omega0", "nu"],
            _ => &["a", "omega0", "nu", "z0"],
        };
        for k in required {
            if !e.has(k) {
                return Err(ConfigError::key(k, format!("required in {mode} mode")));
            }
        }
        if mode != Mode::Bound && p.beta.is_none() && p.beta_planck.is_none() {
            return Err(ConfigError::key("beta", format!("beta or beta_planck required in {mode} mode")));
        }
        if mode == Mode::Bound {
            for k in ["g", "beta", "beta_planck"] {
                if e.has(k) {
                    return Err(e.error(k, "not used in bound mode"));
                }
            }
        }
        for (k, v) in [("a", p.a), ("omega0", p.omega0), ("nu", p.nu), ("z0", p.z0), ("g", p.g)] {
            if v.is_some_and(|v| !(v > 0.0)) {
                return Err(e.error(k, "must be > 0"));
            }
        }
        for (k, v) in [("beta", p.beta), ("beta_planck", p.beta_planck)] {
            if v.is_some_and(|v| v < 0.0) {
                return Err(e.error(k, "must be >= 0"));
            }
        }
        return Ok(ParameterBlock::Physical(p));
    }
    if dimless.is_empty() {
        return match mode {
            Mode::Verify => Ok(ParameterBlock::DefaultGrid),
            Mode::Bound | Mode::Temperatures => Err(ConfigError::general(format!(
                "{mode} mode needs physical parameters (a, omega0, nu, ...)"
            ))),
            _ => Err(ConfigError::general("no parameter block: give x, y, zeta, eps or a physical block")),
        };
    }
    if matches!(mode, Mode::Bound | Mode::Temperatures) {
        return Err(e.error(dimless[0], format!("{mode} mode needs physical parameters, not dimensionless ones")));
    }
    let d = DimensionlessInputs {
        x: e.float("x")?,
        y: e.float("y")?,
        zeta: e.float("zeta")?,
        eps: e.float("eps")?,
    };
    let swept = sweep.map(|s| s.param.name());
    for (k, param) in [
        ("x", SweepParam::X),
        ("y", SweepParam::Y),
        ("zeta", SweepParam::Zeta),
        ("eps", SweepParam::Eps),
    ] {
        if Some(k) == swept {
            if e.has(k) {
                return Err(e.error(k, "is swept; remove the fixed value"));
            }
            continue;
        }
        if k == "eps" && e.has("eps_values") {
            continue;
        }
        match e.float(k)? {
            Some(v) => check_group(e, k, param, v)?,
            None => return Err(ConfigError::key(k, "required")),
        }
    }
    Ok(ParameterBlock::Dimensionless(d))
}
