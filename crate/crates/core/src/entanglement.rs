//! Entanglement of the emitted pair: von Neumann entropy for the pure
//! two-mode squeezed vacuum, logarithmic negativity for the squeezed
//! thermal state. All results are in nats.

use crate::error::{DivergenceKind, Error, Result};
use crate::squeezing::RESONANCE_TOL;

/// Mean thermal occupancy of each initial mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThermalContext {
    n_bar: f64,
}

impl ThermalContext {
    pub fn new(n_bar: f64) -> Result<Self> {
        if !(n_bar >= 0.0 && n_bar.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "thermal occupancy must be finite and >= 0, got {n_bar}"
            )));
        }
        Ok(ThermalContext { n_bar })
    }

    pub fn vacuum() -> Self {
        ThermalContext { n_bar: 0.0 }
    }

    pub fn n_bar(&self) -> f64 {
        self.n_bar
    }
}

fn abs_z(z: f64) -> Result<f64> {
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

/// `(1 + N) ln(1 + N) - N ln N`, the entropy of either beam of a pure
/// two-mode squeezed vacuum with `N` mean pairs. Only pure states are
/// accepted: thermal inputs go through [`log_negativity`].
pub fn entanglement_entropy(mean_pairs: f64) -> Result<f64> {
    if !(mean_pairs >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "mean pair number must be >= 0, got {mean_pairs}"
        )));
    }
    if mean_pairs == 0.0 {
        return Ok(0.0);
    }
    if mean_pairs.is_infinite() {
        return Ok(f64::INFINITY);
    }
    // rewritten as ln(1+N) + N ln(1 + 1/N) to avoid cancellation at large N
    Ok(mean_pairs.ln_1p() + mean_pairs * mean_pairs.recip().ln_1p())
}

/// Smallest symplectic eigenvalue of the squeezed thermal state.
pub fn symplectic_eigenvalue(ctx: &ThermalContext, z: f64) -> Result<f64> {
    let az = abs_z(z)?;
    Ok((2.0 * ctx.n_bar + 1.0) * (1.0 - az) / (1.0 + az))
}

pub fn log_negativity(ctx: &ThermalContext, z: f64) -> Result<f64> {
    let az = abs_z(z)?;
    // -ln(mu) = 2 artanh|z| - ln(2 n_bar + 1)
    let neg_ln_mu = 2.0 * az.atanh() - (2.0 * ctx.n_bar).ln_1p();
    Ok(neg_ln_mu.max(0.0))
}

/// Thermal occupancy above which the logarithmic negativity vanishes.
pub fn critical_occupancy(z: f64) -> Result<f64> {
    let az = abs_z(z)?;
    Ok(az / (1.0 - az))
}
