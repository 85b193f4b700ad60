//! Two-mode squeezing coefficients, pair statistics and a seeded sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DivergenceKind, Error, Result};
use crate::kinematics::{g_factor, kinematic_aux, transmitted_angle, BoundaryConfig, DEGENERACY_TOL};

/// |z| at or above `1 - RESONANCE_TOL` counts as resonant.
pub const RESONANCE_TOL: f64 = 1e-12;

/// Mixing between the initial (incident, anti-incident) and final
/// (transmitted, reflected) mode operators for one incidence angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficients {
    pub alpha: f64,
    pub a_coef: f64,
    pub b_coef: f64,
    /// Squeezing ratio `B/A`. May be negative; physical quantities use `|z|`.
    pub z: f64,
    pub g_func_i: f64,
    pub g_func_t: f64,
}

/// Truncated distribution of the number of emitted pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDistribution {
    pub probabilities: Vec<f64>,
    pub truncation_mass: f64,
}

impl PairDistribution {
    pub fn mean(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// Shannon entropy (nats) of the listed probabilities.
    pub fn shannon_entropy(&self) -> f64 {
        self.probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum()
    }
}

fn check_z(z: f64) -> Result<f64> {
    let az = z.abs();
    if az.is_nan() {
        return Err(Error::InvalidInput("squeezing ratio is NaN".into()));
    }
    if az >= 1.0 - RESONANCE_TOL {
        return Err(Error::resonant(
            DivergenceKind::AtResonance,
            format!("|z| = {az} is at or beyond 1"),
        ));
    }
    Ok(az)
}

/// The two products whose ratio is the square of the mixing ratio:
/// `n_i h_i G(theta_i, n_i)` and `n_t h_t G(theta_t, n_t)`.
struct ModeWeights {
    incident: f64,
    transmitted: f64,
    g_i: f64,
    g_t: f64,
}

fn mode_weights(theta_i: f64, cfg: &BoundaryConfig) -> Result<ModeWeights> {
    let aux = kinematic_aux(theta_i, cfg)?;
    let theta_t = transmitted_angle(theta_i, cfg)?;
    let g_i = g_factor(theta_i, cfg.n_i(), cfg.beta());
    let g_t = g_factor(theta_t, cfg.n_t(), cfg.beta());
    if g_i.abs() < DEGENERACY_TOL || g_t.abs() < DEGENERACY_TOL {
        return Err(Error::resonant(
            DivergenceKind::AtResonance,
            format!("G factor vanishes (G_i = {g_i:e}, G_t = {g_t:e}) at theta_i = {theta_i}"),
        ));
    }
    let incident = cfg.n_i() * aux.h_i * g_i;
    let transmitted = cfg.n_t() * aux.h_t * g_t;
    if incident * transmitted < 0.0 {
        return Err(Error::resonant(
            DivergenceKind::BetweenResonances,
            format!("G factors have opposite signs (G_i = {g_i}, G_t = {g_t}) at theta_i = {theta_i}"),
        ));
    }
    Ok(ModeWeights {
        incident,
        transmitted,
        g_i,
        g_t,
    })
}

pub fn bogoliubov_coefficients(theta_i: f64, cfg: &BoundaryConfig) -> Result<ScatteringCoefficients> {
    let w = mode_weights(theta_i, cfg)?;
    let alpha_sq = w.incident / w.transmitted;
    if alpha_sq <= 0.0 || !alpha_sq.is_finite() {
        return Err(Error::resonant(
            DivergenceKind::AtResonance,
            format!("alpha^2 = {alpha_sq} at theta_i = {theta_i}"),
        ));
    }
    let alpha = alpha_sq.sqrt();
    let z = (1.0 - alpha_sq) / (1.0 + alpha_sq);
    check_z(z)?;
    Ok(ScatteringCoefficients {
        alpha,
        a_coef: (1.0 + alpha_sq) / (2.0 * alpha),
        b_coef: (1.0 - alpha_sq) / (2.0 * alpha),
        z,
        g_func_i: w.g_i,
        g_func_t: w.g_t,
    })
}

/// Mean photon number in each of the two output modes.
pub fn mean_pair_number(z: f64) -> Result<f64> {
    let az = check_z(z)?;
    let q = az * az;
    Ok(q / (1.0 - q))
}

/// Mean photon number computed directly from the mode weights, without
/// passing through `z`.
pub fn mean_pair_number_closed_form(theta_i: f64, cfg: &BoundaryConfig) -> Result<f64> {
    let w = mode_weights(theta_i, cfg)?;
    let diff = w.incident - w.transmitted;
    Ok(diff * diff / (4.0 * w.incident * w.transmitted))
}

pub fn pair_distribution(z: f64, n_max: usize) -> Result<PairDistribution> {
    let az = check_z(z)?;
    let q = az * az;
    let head = 1.0 - q;
    let mut probabilities = Vec::with_capacity(n_max + 1);
    let mut weight = 1.0;
    for _ in 0..=n_max {
        probabilities.push(head * weight);
        weight *= q;
    }
    Ok(PairDistribution {
        probabilities,
        truncation_mass: weight,
    })
}

/// Draw `count` pair numbers from `p_n = (1 - z^2) z^(2n)` by inverting the
/// geometric CDF. The same `(z, seed, count)` always yields the same draws.
pub fn sample_pair_counts(z: f64, seed: u64, count: usize) -> Result<Vec<u64>> {
    let az = check_z(z)?;
    if count == 0 {
        return Err(Error::InvalidInput("count must be >= 1".into()));
    }
    if az == 0.0 {
        return Ok(vec![0; count]);
    }
    let ln_q = 2.0 * az.ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            // u in (0, 1]; P(n >= k) = q^k
            let u = 1.0 - rng.random::<f64>();
            (u.ln() / ln_q).floor() as u64
        })
        .collect())
}
