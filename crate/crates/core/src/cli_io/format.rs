//! Deterministic CSV / JSON rendering.

use serde_json::{json, Map, Number, Value};

use crate::spectrum::{EmissionPoint, PointStatus, RegimeReport};

pub const SIGNIFICANT_DIGITS: usize = 12;

pub const SPECTRUM_HEADER: &str = "theta_i,theta_t,theta_r,mean_pairs,e_vn,e_n,status";
pub const RESONANCE_HEADER: &str = "regime,incident_branch_active,reflected_branch_active,branch,theta_i,theta_t,theta_r";
pub const ENTANGLE_HEADER: &str = "z,mean_pairs,e_vn,mu,e_n,n_bar_c";
pub const SAMPLE_HEADER: &str = "pairs";

/// Render `x` with 12 significant digits in the style of C's `%.12g`.
/// Non-finite values become `inf`, `-inf` or `nan`.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number rounded to 12 significant digits; `null` when not finite.
pub fn json_number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = fmt_sig(x).parse().expect("formatted float parses");
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn spectrum_fields(p: &EmissionPoint) -> [String; 7] {
    [
        fmt_sig(p.theta_i),
        fmt_sig(p.theta_t),
        fmt_sig(p.theta_r),
        fmt_sig(p.mean_pairs),
        fmt_sig(p.e_vn),
        fmt_sig(p.e_n),
        p.status.to_string(),
    ]
}

fn spectrum_object(p: &EmissionPoint) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("theta_i".into(), json_number(p.theta_i));
    m.insert("theta_t".into(), json_number(p.theta_t));
    m.insert("theta_r".into(), json_number(p.theta_r));
    m.insert("mean_pairs".into(), json_number(p.mean_pairs));
    m.insert("e_vn".into(), json_number(p.e_vn));
    m.insert("e_n".into(), json_number(p.e_n));
    m.insert("status".into(), Value::String(p.status.to_string()));
    m
}

pub fn spectrum_csv(points: &[EmissionPoint]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&spectrum_fields(p).join(","));
        out.push('\n');
    }
    out
}

pub fn spectrum_json(points: &[EmissionPoint]) -> String {
    let rows: Vec<Value> = points.iter().map(|p| Value::Object(spectrum_object(p))).collect();
    to_json(&Value::Array(rows))
}

/// Concatenated spectra with a leading `config_id` column.
pub fn sweep_csv(runs: &[(String, Vec<EmissionPoint>)]) -> String {
    let mut out = format!("config_id,{SPECTRUM_HEADER}\n");
    for (id, points) in runs {
        for p in points {
            out.push_str(id);
            out.push(',');
            out.push_str(&spectrum_fields(p).join(","));
            out.push('\n');
        }
    }
    out
}

pub fn sweep_json(runs: &[(String, Vec<EmissionPoint>)]) -> String {
    let mut rows = Vec::new();
    for (id, points) in runs {
        for p in points {
            let mut m = Map::new();
            m.insert("config_id".into(), Value::String(id.clone()));
            m.extend(spectrum_object(p));
            rows.push(Value::Object(m));
        }
    }
    to_json(&Value::Array(rows))
}

pub fn resonances_csv(report: &RegimeReport) -> String {
    let mut out = format!("{RESONANCE_HEADER}\n");
    let prefix = format!(
        "{},{},{}",
        report.regime, report.incident_branch_active, report.reflected_branch_active
    );
    if report.resonances.is_empty() {
        out.push_str(&format!("{prefix},,,,\n"));
    }
    for r in &report.resonances {
        out.push_str(&format!(
            "{prefix},{},{},{},{}\n",
            r.branch,
            fmt_sig(r.theta_i),
            fmt_sig(r.theta_t),
            fmt_sig(r.theta_r)
        ));
    }
    out
}

pub fn resonances_json(report: &RegimeReport) -> String {
    let roots: Vec<Value> = report
        .resonances
        .iter()
        .map(|r| {
            json!({
                "branch": r.branch.as_str(),
                "theta_i": json_number(r.theta_i),
                "theta_t": json_number(r.theta_t),
                "theta_r": json_number(r.theta_r),
            })
        })
        .collect();
    to_json(&json!({
        "regime": report.regime.as_str(),
        "incident_branch_active": report.incident_branch_active,
        "reflected_branch_active": report.reflected_branch_active,
        "resonances": roots,
    }))
}

/// Measures for a single squeezing ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangleRow {
    pub z: f64,
    pub mean_pairs: f64,
    pub e_vn: f64,
    pub mu: f64,
    pub e_n: f64,
    pub n_bar_c: f64,
}

impl EntangleRow {
    fn values(&self) -> [(&'static str, f64); 6] {
        [
            ("z", self.z),
            ("mean_pairs", self.mean_pairs),
            ("e_vn", self.e_vn),
            ("mu", self.mu),
            ("e_n", self.e_n),
            ("n_bar_c", self.n_bar_c),
        ]
    }
}

pub fn entangle_csv(row: &EntangleRow) -> String {
    let cells: Vec<String> = row.values().iter().map(|(_, v)| fmt_sig(*v)).collect();
    format!("{ENTANGLE_HEADER}\n{}\n", cells.join(","))
}

pub fn entangle_json(row: &EntangleRow) -> String {
    let m: Map<String, Value> = row
        .values()
        .iter()
        .map(|(k, v)| (k.to_string(), json_number(*v)))
        .collect();
    to_json(&Value::Object(m))
}

pub fn samples_csv(draws: &[u64]) -> String {
    let mut out = format!("{SAMPLE_HEADER}\n");
    for d in draws {
        out.push_str(&d.to_string());
        out.push('\n');
    }
    out
}

pub fn samples_json(draws: &[u64]) -> String {
    to_json(&json!(draws))
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Parse a spectrum CSV produced by [`spectrum_csv`] back into points.
pub fn parse_spectrum_csv(text: &str) -> Option<Vec<EmissionPoint>> {
    let mut lines = text.lines();
    if lines.next()? != SPECTRUM_HEADER {
        return None;
    }
    lines
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 7 {
                return None;
            }
            let num = |s: &str| s.parse::<f64>().ok();
            Some(EmissionPoint {
                theta_i: num(cells[0])?,
                theta_t: num(cells[1])?,
                theta_r: num(cells[2])?,
                mean_pairs: num(cells[3])?,
                e_vn: num(cells[4])?,
                e_n: num(cells[5])?,
                status: PointStatus::parse(cells[6])?,
            })
        })
        .collect()
}
