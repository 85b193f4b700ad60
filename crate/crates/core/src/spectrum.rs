//! Angular emission spectra, resonance regimes and resonance-angle search.

use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::entanglement::{entanglement_entropy, log_negativity, ThermalContext};
use crate::error::{DivergenceKind, Error, Result};
use crate::kinematics::{g_factor, reflected_angle, transmitted_angle, BoundaryConfig, Branch};
use crate::squeezing::{bogoliubov_coefficients, mean_pair_number_closed_form};

/// Number of interior points scanned to bracket the reflected-branch root.
pub const BRACKET_SCAN_POINTS: usize = 10_000;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Ok,
    Divergent,
    BetweenResonances,
    Degenerate,
}

impl PointStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PointStatus::Ok => "ok",
            PointStatus::Divergent => "divergent",
            PointStatus::BetweenResonances => "between_resonances",
            PointStatus::Degenerate => "degenerate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ok" => PointStatus::Ok,
            "divergent" => PointStatus::Divergent,
            "between_resonances" => PointStatus::BetweenResonances,
            "degenerate" => PointStatus::Degenerate,
            _ => return None,
        })
    }
}

impl fmt::Display for PointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One sample of the angular spectrum. Measures are `+inf` for divergent
/// points and NaN for between-resonance or degenerate points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionPoint {
    pub theta_i: f64,
    pub theta_t: f64,
    pub theta_r: f64,
    pub mean_pairs: f64,
    pub e_vn: f64,
    pub e_n: f64,
    pub status: PointStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    NoResonance,
    SingleResonance,
    DoubleResonance,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::NoResonance => "no_resonance",
            Regime::SingleResonance => "single_resonance",
            Regime::DoubleResonance => "double_resonance",
        }
    }

    fn from_count(count: usize) -> Self {
        match count {
            0 => Regime::NoResonance,
            1 => Regime::SingleResonance,
            _ => Regime::DoubleResonance,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A resonant incidence angle and the transmitted/reflected directions it
/// maps to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub branch: Branch,
    pub theta_i: f64,
    pub theta_t: f64,
    pub theta_r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub incident_branch_active: bool,
    pub reflected_branch_active: bool,
    /// Refined roots sorted by incidence angle; empty when not refined.
    pub resonances: Vec<Resonance>,
}

pub fn classify_regime(cfg: &BoundaryConfig) -> RegimeReport {
    let incident_branch_active = cfg.beta() * cfg.n_i() > 1.0;
    let reflected_branch_active = cfg.beta() * cfg.n_r() > 1.0;
    let active = usize::from(incident_branch_active) + usize::from(reflected_branch_active);
    RegimeReport {
        regime: Regime::from_count(active),
        incident_branch_active,
        reflected_branch_active,
        resonances: Vec::new(),
    }
}

/// Second-branch resonance condition as a function of the incidence angle:
/// the transmitted G factor, whose zero is the pole of the mixing ratio.
fn scattered_condition(theta_i: f64, cfg: &BoundaryConfig) -> f64 {
    match transmitted_angle(theta_i, cfg) {
        Ok(theta_t) => g_factor(theta_t, cfg.n_t(), cfg.beta()),
        Err(_) => f64::NAN,
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn map_root(branch: Branch, theta_i: f64, cfg: &BoundaryConfig) -> Result<Resonance> {
    Ok(Resonance {
        branch,
        theta_i,
        theta_t: transmitted_angle(theta_i, cfg)?,
        theta_r: reflected_angle(theta_i, cfg)?,
    })
}

/// Classify the regime and refine every active resonance to within `tol`.
///
/// The incident-branch root is closed form. The reflected-branch root is
/// bracketed on a uniform scan of `(0, pi)` and then bisected.
pub fn resonance_angles(cfg: &BoundaryConfig, tol: f64) -> Result<RegimeReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be > 0, got {tol}")));
    }
    let mut report = classify_regime(cfg);

    if report.incident_branch_active {
        let theta = (1.0 / (cfg.beta() * cfg.n_i())).acos();
        report.resonances.push(map_root(Branch::Incident, theta, cfg)?);
    }

    if report.reflected_branch_active {
        let grid = uniform_grid(BRACKET_SCAN_POINTS, 0.0, PI, false)?;
        let values: Vec<f64> = grid.iter().map(|&t| scattered_condition(t, cfg)).collect();
        let bracket = grid
            .windows(2)
            .zip(values.windows(2))
            .find(|(_, v)| v[0].is_finite() && v[1].is_finite() && (v[0] < 0.0) != (v[1] < 0.0))
            .map(|(t, _)| (t[0], t[1]));
        let (lo, hi) = bracket.ok_or_else(|| Error::RootBracketingFailure {
            branch: Branch::Reflected.to_string(),
        })?;
        let theta = bisect(|t| scattered_condition(t, cfg), lo, hi, tol);
        report.resonances.push(map_root(Branch::Reflected, theta, cfg)?);
    }

    report
        .resonances
        .sort_by(|a, b| a.theta_i.total_cmp(&b.theta_i));
    Ok(report)
}

/// `points` uniformly spaced angles on `[min, max]`. Without endpoints the
/// points are the interior of a `points + 1` step subdivision.
pub fn uniform_grid(points: usize, min: f64, max: f64, include_endpoints: bool) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidInput("grid needs at least 2 points".into()));
    }
    if !(0.0 <= min && min < max && max <= PI) {
        return Err(Error::InvalidInput(format!(
            "grid range must satisfy 0 <= min < max <= pi, got [{min}, {max}]"
        )));
    }
    let span = max - min;
    let grid = if include_endpoints {
        let step = span / (points - 1) as f64;
        (0..points)
            .map(|k| if k + 1 == points { max } else { min + step * k as f64 })
            .collect()
    } else {
        let step = span / (points + 1) as f64;
        (1..=points).map(|k| min + step * k as f64).collect()
    };
    Ok(grid)
}

fn emission_point(theta_i: f64, cfg: &BoundaryConfig, ctx: &ThermalContext, cap: f64) -> EmissionPoint {
    let angles = transmitted_angle(theta_i, cfg).and_then(|t| Ok((t, reflected_angle(theta_i, cfg)?)));
    let (theta_t, theta_r) = match angles {
        Ok(a) => a,
        Err(_) => {
            return EmissionPoint {
                theta_i,
                theta_t: f64::NAN,
                theta_r: f64::NAN,
                mean_pairs: f64::NAN,
                e_vn: f64::NAN,
                e_n: f64::NAN,
                status: PointStatus::Degenerate,
            }
        }
    };
    let flagged = |status: PointStatus| {
        let v = if status == PointStatus::Divergent { f64::INFINITY } else { f64::NAN };
        EmissionPoint {
            theta_i,
            theta_t,
            theta_r,
            mean_pairs: v,
            e_vn: v,
            e_n: v,
            status,
        }
    };
    let status_of = |e: &Error| match e.divergence_kind() {
        Some(DivergenceKind::BetweenResonances) => PointStatus::BetweenResonances,
        Some(DivergenceKind::AtResonance) => PointStatus::Divergent,
        None => PointStatus::Degenerate,
    };

    let coeffs = match bogoliubov_coefficients(theta_i, cfg) {
        Ok(c) => c,
        Err(e) => return flagged(status_of(&e)),
    };
    let mean_pairs = match mean_pair_number_closed_form(theta_i, cfg) {
        Ok(n) => n,
        Err(e) => return flagged(status_of(&e)),
    };
    if !(mean_pairs <= cap) {
        return flagged(PointStatus::Divergent);
    }
    match (entanglement_entropy(mean_pairs), log_negativity(ctx, coeffs.z)) {
        (Ok(e_vn), Ok(e_n)) => EmissionPoint {
            theta_i,
            theta_t,
            theta_r,
            mean_pairs,
            e_vn,
            e_n,
            status: PointStatus::Ok,
        },
        (Err(e), _) | (_, Err(e)) => flagged(status_of(&e)),
    }
}

/// Evaluate the emission spectrum on `grid`. Problems at individual points
/// are reported through each point's status; the sweep itself only fails
/// on invalid arguments.
pub fn angular_spectrum(
    cfg: &BoundaryConfig,
    grid: &[f64],
    ctx: &ThermalContext,
    divergence_cap: f64,
) -> Result<Vec<EmissionPoint>> {
    if !(divergence_cap > 0.0) {
        return Err(Error::InvalidInput(format!(
            "divergence cap must be > 0, got {divergence_cap}"
        )));
    }
    if grid.iter().any(|t| !(0.0..=PI).contains(t)) {
        return Err(Error::InvalidInput("grid angles must lie in [0, pi]".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("grid must be strictly increasing".into()));
    }
    Ok(grid
        .par_iter()
        .map(|&theta| emission_point(theta, cfg, ctx, divergence_cap))
        .collect())
}

/// Group a spectrum into divergent clusters: maximal runs of indices that
/// are divergent or sit on either side of an `ok` / `between_resonances`
/// boundary. Each such boundary is a sign change of the mixing-ratio
/// radicand, i.e. a pole of the pair number lying between two samples.
pub fn divergent_clusters(points: &[EmissionPoint]) -> Vec<RangeInclusive<usize>> {
    let n = points.len();
    let mut marked = vec![false; n];
    for (i, p) in points.iter().enumerate() {
        if p.status == PointStatus::Divergent {
            marked[i] = true;
        }
        if i + 1 < n {
            let pair = (p.status, points[i + 1].status);
            if matches!(
                pair,
                (PointStatus::Ok, PointStatus::BetweenResonances)
                    | (PointStatus::BetweenResonances, PointStatus::Ok)
            ) {
                marked[i] = true;
                marked[i + 1] = true;
            }
        }
    }

    let mut clusters = Vec::new();
    let mut start = None;
    for (i, &m) in marked.iter().enumerate() {
        match (m, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                clusters.push(s..=i - 1);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        clusters.push(s..=n - 1);
    }
    clusters
}

/// True if `theta` falls inside `cluster` widened by `slack` grid steps.
pub fn cluster_contains(points: &[EmissionPoint], cluster: &RangeInclusive<usize>, theta: f64, slack: f64) -> bool {
    let lo = points[*cluster.start()].theta_i;
    let hi = points[*cluster.end()].theta_i;
    let step = if points.len() > 1 {
        (points[points.len() - 1].theta_i - points[0].theta_i) / (points.len() - 1) as f64
    } else {
        0.0
    };
    theta >= lo - slack * step && theta <= hi + slack * step
}
