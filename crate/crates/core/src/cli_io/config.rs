//! Run configuration documents (JSON object model).

use std::f64::consts::PI;
use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::entanglement::ThermalContext;
use crate::error::{ConfigError, FieldIssue};
use crate::kinematics::BoundaryConfig;
use crate::spectrum::uniform_grid;

pub const DEFAULT_GRID_POINTS: usize = 2000;
pub const DEFAULT_DIVERGENCE_CAP: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub include_endpoints: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points: DEFAULT_GRID_POINTS,
            theta_min: 0.0,
            theta_max: PI,
            include_endpoints: false,
        }
    }
}

impl GridSpec {
    pub fn angles(&self) -> Vec<f64> {
        uniform_grid(self.points, self.theta_min, self.theta_max, self.include_endpoints)
            .expect("grid validated at parse time")
    }
}

/// Input for the single-point subcommands: either an explicit squeezing
/// ratio or an incidence angle to derive it from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    Z(f64),
    ThetaI(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub id: Option<String>,
    pub boundary: BoundaryConfig,
    pub grid: GridSpec,
    pub thermal: ThermalContext,
    pub divergence_cap: f64,
    pub seed: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub probe: Option<Probe>,
}

const TOP_KEYS: &[&str] = &[
    "id", "beta", "u_over_c", "n_i", "n_t", "n_r", "n_a", "grid", "n_bar", "divergence_cap", "seed",
    "output", "z", "theta_i",
];
const GRID_KEYS: &[&str] = &["points", "theta_min", "theta_max", "include_endpoints"];
const OUTPUT_KEYS: &[&str] = &["format", "path"];

struct Fields<'a> {
    obj: &'a Map<String, Value>,
    prefix: String,
    issues: &'a mut Vec<FieldIssue>,
}

impl<'a> Fields<'a> {
    fn path(&self, key: &str) -> String {
        if self.prefix.is_empty() {
            key.to_string()
        } else {
            format!("{}.{}", self.prefix, key)
        }
    }

    fn issue(&mut self, key: &str, reason: impl Into<String>) {
        let path = self.path(key);
        self.issues.push(FieldIssue::new(path, reason));
    }

    fn reject_unknown(&mut self, known: &[&str]) {
        let unknown: Vec<String> = self
            .obj
            .keys()
            .filter(|k| !known.contains(&k.as_str()))
            .cloned()
            .collect();
        for k in unknown {
            self.issue(&k, "unknown key");
        }
    }

    fn number(&mut self, key: &str) -> Option<f64> {
        match self.obj.get(key)? {
            Value::Number(n) => n.as_f64(),
            _ => {
                self.issue(key, "expected a number");
                None
            }
        }
    }

    fn required_number(&mut self, key: &str) -> Option<f64> {
        if !self.obj.contains_key(key) {
            self.issue(key, "required");
            return None;
        }
        self.number(key)
    }

    fn unsigned(&mut self, key: &str) -> Option<u64> {
        match self.obj.get(key)? {
            Value::Number(n) if n.as_u64().is_some() => n.as_u64(),
            _ => {
                self.issue(key, "expected a non-negative integer");
                None
            }
        }
    }

    fn boolean(&mut self, key: &str) -> Option<bool> {
        match self.obj.get(key)? {
            Value::Bool(b) => Some(*b),
            _ => {
                self.issue(key, "expected true or false");
                None
            }
        }
    }

    fn string(&mut self, key: &str) -> Option<String> {
        match self.obj.get(key)? {
            Value::String(s) => Some(s.clone()),
            _ => {
                self.issue(key, "expected a string");
                None
            }
        }
    }

    fn object(&mut self, key: &str) -> Option<&'a Map<String, Value>> {
        match self.obj.get(key)? {
            Value::Object(m) => Some(m),
            _ => {
                self.issue(key, "expected an object");
                None
            }
        }
    }
}

fn check_index(f: &mut Fields<'_>, key: &str) -> Option<f64> {
    let n = f.required_number(key)?;
    if n > 0.0 {
        Some(n)
    } else {
        f.issue(key, format!("refractive index must be > 0, got {n}"));
        None
    }
}

fn parse_grid(obj: &Map<String, Value>, prefix: String, issues: &mut Vec<FieldIssue>) -> Option<GridSpec> {
    let mut f = Fields { obj, prefix, issues };
    f.reject_unknown(GRID_KEYS);
    let mut grid = GridSpec::default();
    let mut ok = true;
    if let Some(points) = f.unsigned("points") {
        if points >= 2 {
            grid.points = points as usize;
        } else {
            f.issue("points", "point count must be >= 2");
            ok = false;
        }
    } else {
        ok &= !f.obj.contains_key("points");
    }
    for (key, slot) in [("theta_min", &mut grid.theta_min), ("theta_max", &mut grid.theta_max)] {
        match f.number(key) {
            Some(v) if (0.0..=PI).contains(&v) => *slot = v,
            Some(v) => {
                f.issue(key, format!("angle must lie in [0, pi], got {v}"));
                ok = false;
            }
            None => ok &= !f.obj.contains_key(key),
        }
    }
    if ok && grid.theta_min >= grid.theta_max {
        f.issue("theta_max", "theta_max must exceed theta_min");
        ok = false;
    }
    match f.boolean("include_endpoints") {
        Some(b) => grid.include_endpoints = b,
        None => ok &= !f.obj.contains_key("include_endpoints"),
    }
    ok.then_some(grid)
}

/// Validate one configuration object. `prefix` is prepended to field paths.
pub fn config_from_value(value: &Value, prefix: &str) -> Result<RunConfig, ConfigError> {
    let Some(obj) = value.as_object() else {
        let path = if prefix.is_empty() { "$" } else { prefix };
        return Err(ConfigError::single(path, "expected an object"));
    };
    let mut issues = Vec::new();
    let mut f = Fields {
        obj,
        prefix: prefix.to_string(),
        issues: &mut issues,
    };
    f.reject_unknown(TOP_KEYS);

    let id = f.string("id");

    let beta = match (obj.contains_key("beta"), obj.contains_key("u_over_c")) {
        (true, true) => {
            f.issue("beta", "give exactly one of beta or u_over_c");
            None
        }
        (false, false) => {
            f.issue("beta", "one of beta or u_over_c is required");
            None
        }
        (true, false) => match f.number("beta") {
            Some(b) if b > 0.0 && b < 1.0 => Some(b),
            Some(b) => {
                f.issue("beta", format!("out of range: must lie in (0, 1), got {b}"));
                None
            }
            None => None,
        },
        (false, true) => match f.number("u_over_c") {
            Some(u) if u > 1.0 && u.is_finite() => Some(1.0 / u),
            Some(u) => {
                f.issue("u_over_c", format!("out of range: must exceed 1, got {u}"));
                None
            }
            None => None,
        },
    };
    let n_i = check_index(&mut f, "n_i");
    let n_t = check_index(&mut f, "n_t");
    let n_r = check_index(&mut f, "n_r");
    let n_a = check_index(&mut f, "n_a");

    let grid = match f.object("grid") {
        Some(g) => {
            let p = f.path("grid");
            parse_grid(g, p, &mut *f.issues)
        }
        None => (!obj.contains_key("grid")).then(GridSpec::default),
    };

    let thermal = match f.number("n_bar") {
        Some(n) => match ThermalContext::new(n) {
            Ok(t) => Some(t),
            Err(_) => {
                f.issue("n_bar", format!("thermal occupancy must be >= 0, got {n}"));
                None
            }
        },
        None => (!obj.contains_key("n_bar")).then(ThermalContext::vacuum),
    };

    let divergence_cap = match f.number("divergence_cap") {
        Some(c) if c > 0.0 => Some(c),
        Some(c) => {
            f.issue("divergence_cap", format!("must be > 0, got {c}"));
            None
        }
        None => (!obj.contains_key("divergence_cap")).then_some(DEFAULT_DIVERGENCE_CAP),
    };

    let seed = match f.unsigned("seed") {
        Some(s) => Some(s),
        None => (!obj.contains_key("seed")).then_some(0),
    };

    let mut format = Some(OutputFormat::default());
    let mut out = None;
    if let Some(o) = f.object("output") {
        let mut of = Fields {
            obj: o,
            prefix: f.path("output"),
            issues: &mut *f.issues,
        };
        of.reject_unknown(OUTPUT_KEYS);
        if let Some(s) = of.string("format") {
            format = OutputFormat::parse(&s);
            if format.is_none() {
                of.issue("format", format!("expected csv or json, got {s:?}"));
            }
        } else if o.contains_key("format") {
            format = None;
        }
        out = of.string("path").map(PathBuf::from);
    } else if obj.contains_key("output") {
        format = None;
    }

    let probe = match (obj.contains_key("z"), obj.contains_key("theta_i")) {
        (true, true) => {
            f.issue("z", "give at most one of z or theta_i");
            None
        }
        (true, false) => match f.number("z") {
            Some(z) if z.abs() < 1.0 => Some(Probe::Z(z)),
            Some(z) => {
                f.issue("z", format!("|z| must be < 1, got {z}"));
                None
            }
            None => None,
        },
        (false, true) => match f.number("theta_i") {
            Some(t) if (0.0..=PI).contains(&t) => Some(Probe::ThetaI(t)),
            Some(t) => {
                f.issue("theta_i", format!("angle must lie in [0, pi], got {t}"));
                None
            }
            None => None,
        },
        (false, false) => None,
    };

    if !issues.is_empty() {
        return Err(ConfigError { issues });
    }
    let (Some(beta), Some(n_i), Some(n_t), Some(n_r), Some(n_a)) = (beta, n_i, n_t, n_r, n_a) else {
        unreachable!("missing boundary fields always record an issue")
    };
    let boundary = BoundaryConfig::new(beta, n_i, n_t, n_r, n_a)
        .map_err(|e| ConfigError::single(if prefix.is_empty() { "beta".into() } else { format!("{prefix}.beta") }, e.to_string()))?;
    Ok(RunConfig {
        id,
        boundary,
        grid: grid.expect("grid issues recorded"),
        thermal: thermal.expect("n_bar issues recorded"),
        divergence_cap: divergence_cap.expect("cap issues recorded"),
        seed: seed.expect("seed issues recorded"),
        format: format.expect("format issues recorded"),
        out,
        probe,
    })
}

fn parse_document(source: &str) -> Result<Value, ConfigError> {
    serde_json::from_str(source).map_err(|e| ConfigError::single("$", format!("malformed document: {e}")))
}

/// Parse and validate a single run configuration.
pub fn parse_config(source: &str) -> Result<RunConfig, ConfigError> {
    config_from_value(&parse_document(source)?, "")
}

/// Parse a sweep document: a JSON array of run configurations.
pub fn parse_sweep(source: &str) -> Result<Vec<RunConfig>, ConfigError> {
    let doc = parse_document(source)?;
    let Some(items) = doc.as_array() else {
        return Err(ConfigError::single("$", "sweep expects an array of configurations"));
    };
    if items.is_empty() {
        return Err(ConfigError::single("$", "sweep needs at least one configuration"));
    }
    let mut configs = Vec::with_capacity(items.len());
    let mut issues = Vec::new();
    for (k, item) in items.iter().enumerate() {
        match config_from_value(item, &format!("[{k}]")) {
            Ok(c) => configs.push(c),
            Err(e) => issues.extend(e.issues),
        }
    }
    if issues.is_empty() {
        Ok(configs)
    } else {
        Err(ConfigError { issues })
    }
}
