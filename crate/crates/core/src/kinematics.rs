//! Frame transformation and double-Doppler scattering kinematics.
//!
//! Angles are measured from the apparent velocity of the boundary. All
//! wave vectors are expressed as a (parallel, perpendicular) pair in units
//! with `c = 1`; every formula here is homogeneous in `k`, so the length
//! unit is arbitrary.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Denominators below this magnitude are treated as exactly zero.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// The boundary definition: apparent-velocity parameter and the four
/// refractive indices seen by the incident, transmitted, reflected and
/// anti-incident modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConfig {
    beta: f64,
    n_i: f64,
    n_t: f64,
    n_r: f64,
    n_a: f64,
}

impl BoundaryConfig {
    pub fn new(beta: f64, n_i: f64, n_t: f64, n_r: f64, n_a: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::InvalidInput(format!(
                "beta must lie in (0, 1), got {beta}"
            )));
        }
        for (name, n) in [("n_i", n_i), ("n_t", n_t), ("n_r", n_r), ("n_a", n_a)] {
            if !(n > 0.0 && n.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and > 0, got {n}"
                )));
            }
        }
        Ok(BoundaryConfig {
            beta,
            n_i,
            n_t,
            n_r,
            n_a,
        })
    }

    /// Build from the apparent boundary speed in units of `c` (`u/c > 1`).
    pub fn from_u_over_c(u_over_c: f64, n_i: f64, n_t: f64, n_r: f64, n_a: f64) -> Result<Self> {
        if !(u_over_c > 1.0 && u_over_c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "u_over_c must be finite and > 1, got {u_over_c}"
            )));
        }
        Self::new(1.0 / u_over_c, n_i, n_t, n_r, n_a)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma_sq().sqrt()
    }

    pub fn gamma_sq(&self) -> f64 {
        gamma_sq(self.beta)
    }

    pub fn n_i(&self) -> f64 {
        self.n_i
    }

    pub fn n_t(&self) -> f64 {
        self.n_t
    }

    pub fn n_r(&self) -> f64 {
        self.n_r
    }

    pub fn n_a(&self) -> f64 {
        self.n_a
    }
}

fn gamma_sq(beta: f64) -> f64 {
    1.0 / ((1.0 - beta) * (1.0 + beta))
}

/// `G(theta, n) = 1 - beta n cos(theta)`; vanishes when the mode co-moves
/// with the boundary.
pub fn g_factor(theta: f64, n: f64, beta: f64) -> f64 {
    1.0 - beta * n * theta.cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Incident,
    Transmitted,
    Reflected,
    AntiIncident,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Incident => "incident",
            Branch::Transmitted => "transmitted",
            Branch::Reflected => "reflected",
            Branch::AntiIncident => "anti_incident",
        }
    }

    /// Reflected and anti-incident modes are written with negated
    /// components, so their angle is that of `-k`.
    fn is_reversed(self) -> bool {
        matches!(self, Branch::Reflected | Branch::AntiIncident)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A plane-wave mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveMode {
    pub k_par: f64,
    pub k_perp: f64,
    pub magnitude: f64,
    pub theta: f64,
    pub branch: Branch,
    pub n: f64,
    pub omega: f64,
}

impl WaveMode {
    /// Incident mode of wave number `k` at angle `theta` in a medium of index `n`.
    pub fn incident(k: f64, theta: f64, n: f64) -> Result<Self> {
        check_angle(theta)?;
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "incident wave number must be finite and > 0, got {k}"
            )));
        }
        if !(n > 0.0) {
            return Err(Error::InvalidInput(format!("index must be > 0, got {n}")));
        }
        Ok(WaveMode {
            k_par: k * theta.cos(),
            k_perp: k * theta.sin(),
            magnitude: k,
            theta,
            branch: Branch::Incident,
            n,
            omega: k / n,
        })
    }

    pub fn from_components(k_par: f64, k_perp: f64, branch: Branch, n: f64) -> Self {
        let magnitude = k_par.hypot(k_perp);
        let sign = if branch.is_reversed() { -1.0 } else { 1.0 };
        WaveMode {
            k_par,
            k_perp,
            magnitude,
            theta: k_perp.abs().atan2(sign * k_par),
            branch,
            n,
            omega: magnitude / n,
        }
    }
}

/// Auxiliary scalars shared by the scattering and squeezing formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicAux {
    pub f: f64,
    pub h_i: f64,
    pub h_t: f64,
    pub h_r: f64,
    pub delta_it: f64,
    pub delta_ir: f64,
    pub g_i: f64,
    pub g_t: f64,
    pub g_r: f64,
}

fn check_angle(theta: f64) -> Result<()> {
    if (0.0..=PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "angle must lie in [0, pi], got {theta}"
        )))
    }
}

/// Refractive index seen in the frame where the boundary sweeps the medium
/// instantaneously.
pub fn boosted_index(n: f64, theta: f64, beta: f64) -> Result<f64> {
    check_angle(theta)?;
    if !(n > 0.0) {
        return Err(Error::InvalidInput(format!("index must be > 0, got {n}")));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "beta must lie in (0, 1), got {beta}"
        )));
    }
    let g = g_factor(theta, n, beta);
    if g.abs() < DEGENERACY_TOL {
        return Err(Error::DegenerateFrame { denominator: g });
    }
    let g2 = gamma_sq(beta);
    let (s, c) = theta.sin_cos();
    let num = (g2 * (c - beta / n).powi(2) + s * s).sqrt();
    Ok((n * num / (g2 * g)).abs())
}

fn h_of(g2: f64, cos_i: f64, sin_i: f64, beta: f64, n: f64) -> f64 {
    (g2 * (cos_i - beta / n).powi(2) + sin_i * sin_i).sqrt()
}

fn g_of(beta: f64, n: f64, cos_i: f64) -> f64 {
    beta * (1.0 - beta * n * cos_i) / n
}

pub fn kinematic_aux(theta_i: f64, cfg: &BoundaryConfig) -> Result<KinematicAux> {
    check_angle(theta_i)?;
    let beta = cfg.beta;
    let g2 = cfg.gamma_sq();
    let (s, c) = theta_i.sin_cos();

    let h_i = h_of(g2, c, s, beta, cfg.n_i);
    let h_t = h_of(g2, c, s, beta, cfg.n_t);
    let h_r = h_of(g2, c, s, beta, cfg.n_r);
    if h_t < DEGENERACY_TOL || h_r < DEGENERACY_TOL {
        return Err(Error::DegenerateGeometry(format!(
            "h_t = {h_t:e}, h_r = {h_r:e} at theta_i = {theta_i}"
        )));
    }

    Ok(KinematicAux {
        f: c - beta / cfg.n_i,
        h_i,
        h_t,
        h_r,
        delta_it: h_i / h_t,
        delta_ir: h_i / h_r,
        g_i: g_of(beta, cfg.n_i, c),
        g_t: g_of(beta, cfg.n_t, c),
        g_r: g_of(beta, cfg.n_r, c),
    })
}

/// Parallel components (per unit incident wave number) of the transmitted,
/// reflected and anti-incident modes, before the overall sign of the
/// reversed branches is applied.
struct ParallelFactors {
    transmitted: f64,
    reflected: f64,
    anti_incident: f64,
}

fn parallel_factors(aux: &KinematicAux, cfg: &BoundaryConfig) -> ParallelFactors {
    let g2 = cfg.gamma_sq();
    ParallelFactors {
        transmitted: g2 * (aux.f + aux.delta_it * aux.g_t),
        reflected: g2 * (aux.f - aux.delta_ir * aux.g_r),
        anti_incident: g2 * (aux.f + aux.g_i),
    }
}

/// Map an incident mode onto the transmitted, reflected and anti-incident
/// modes produced by the moving boundary.
pub fn scatter(incident: &WaveMode, cfg: &BoundaryConfig) -> Result<(WaveMode, WaveMode, WaveMode)> {
    if incident.branch != Branch::Incident {
        return Err(Error::InvalidInput(format!(
            "scatter expects an incident mode, got {}",
            incident.branch
        )));
    }
    if !(incident.magnitude > 0.0) {
        return Err(Error::InvalidInput(
            "incident wave number must be > 0".into(),
        ));
    }
    let aux = kinematic_aux(incident.theta, cfg)?;
    let par = parallel_factors(&aux, cfg);
    let k = incident.magnitude;
    let perp = k * incident.theta.sin();

    let transmitted =
        WaveMode::from_components(k * par.transmitted, perp, Branch::Transmitted, cfg.n_t);
    let reflected =
        WaveMode::from_components(-k * par.reflected, -perp, Branch::Reflected, cfg.n_r);
    let anti_incident =
        WaveMode::from_components(-k * par.anti_incident, -perp, Branch::AntiIncident, cfg.n_a);
    Ok((transmitted, reflected, anti_incident))
}

fn fresnel_angle(theta_i: f64, parallel: f64) -> f64 {
    // On axis the mode stays on axis; only the direction can flip.
    if theta_i == 0.0 || theta_i == PI {
        return if parallel >= 0.0 { 0.0 } else { PI };
    }
    theta_i.sin().atan2(parallel)
}

/// Direction of the transmitted mode, in `[0, pi]`.
pub fn transmitted_angle(theta_i: f64, cfg: &BoundaryConfig) -> Result<f64> {
    let aux = kinematic_aux(theta_i, cfg)?;
    Ok(fresnel_angle(theta_i, parallel_factors(&aux, cfg).transmitted))
}

/// Direction of the reflected mode, in `[0, pi]`.
pub fn reflected_angle(theta_i: f64, cfg: &BoundaryConfig) -> Result<f64> {
    let aux = kinematic_aux(theta_i, cfg)?;
    Ok(fresnel_angle(theta_i, parallel_factors(&aux, cfg).reflected))
}
