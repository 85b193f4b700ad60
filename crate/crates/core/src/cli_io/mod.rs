//! Run orchestration for the command-line tool.

mod config;
pub mod format;

use std::fs;
use std::io::Write;

use serde_json::{json, Value};

pub use config::{
    config_from_value, parse_config, parse_sweep, GridSpec, OutputFormat, Probe, RunConfig, DEFAULT_DIVERGENCE_CAP,
    DEFAULT_GRID_POINTS,
};
pub use format::EntangleRow;

use crate::entanglement::{critical_occupancy, entanglement_entropy, log_negativity, symplectic_eigenvalue};
use crate::error::{Error, Result};
use crate::spectrum::{angular_spectrum, resonance_angles};
use crate::squeezing::{bogoliubov_coefficients, mean_pair_number, sample_pair_counts};

/// Bisection tolerance used for resonance reports.
pub const ROOT_TOLERANCE: f64 = 1e-13;

pub fn run_spectrum(cfg: &RunConfig) -> Result<String> {
    let points = angular_spectrum(&cfg.boundary, &cfg.grid.angles(), &cfg.thermal, cfg.divergence_cap)?;
    Ok(match cfg.format {
        OutputFormat::Csv => format::spectrum_csv(&points),
        OutputFormat::Json => format::spectrum_json(&points),
    })
}

/// Spectra of several configurations, tagged by `id` or by position.
pub fn run_sweep(cfgs: &[RunConfig], fmt: OutputFormat) -> Result<String> {
    let runs = cfgs
        .iter()
        .enumerate()
        .map(|(k, cfg)| {
            let id = cfg.id.clone().unwrap_or_else(|| k.to_string());
            let points = angular_spectrum(&cfg.boundary, &cfg.grid.angles(), &cfg.thermal, cfg.divergence_cap)?;
            Ok((id, points))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match fmt {
        OutputFormat::Csv => format::sweep_csv(&runs),
        OutputFormat::Json => format::sweep_json(&runs),
    })
}

pub fn run_resonances(cfg: &RunConfig) -> Result<String> {
    let report = resonance_angles(&cfg.boundary, ROOT_TOLERANCE)?;
    Ok(match cfg.format {
        OutputFormat::Csv => format::resonances_csv(&report),
        OutputFormat::Json => format::resonances_json(&report),
    })
}

fn probe_z(cfg: &RunConfig, probe: Option<Probe>) -> Result<f64> {
    match probe.or(cfg.probe) {
        Some(Probe::Z(z)) => Ok(z),
        Some(Probe::ThetaI(theta)) => Ok(bogoliubov_coefficients(theta, &cfg.boundary)?.z),
        None => Err(Error::InvalidInput(
            "need a squeezing ratio (z) or an incidence angle (theta_i)".into(),
        )),
    }
}

pub fn entangle_row(cfg: &RunConfig, probe: Option<Probe>) -> Result<EntangleRow> {
    let z = probe_z(cfg, probe)?;
    let mean_pairs = mean_pair_number(z)?;
    Ok(EntangleRow {
        z,
        mean_pairs,
        e_vn: entanglement_entropy(mean_pairs)?,
        mu: symplectic_eigenvalue(&cfg.thermal, z)?,
        e_n: log_negativity(&cfg.thermal, z)?,
        n_bar_c: critical_occupancy(z)?,
    })
}

pub fn run_entangle(cfg: &RunConfig, probe: Option<Probe>) -> Result<String> {
    let row = entangle_row(cfg, probe)?;
    Ok(match cfg.format {
        OutputFormat::Csv => format::entangle_csv(&row),
        OutputFormat::Json => format::entangle_json(&row),
    })
}

pub fn run_sample(cfg: &RunConfig, probe: Option<Probe>, count: usize) -> Result<String> {
    let z = probe_z(cfg, probe)?;
    let draws = sample_pair_counts(z, cfg.seed, count)?;
    Ok(match cfg.format {
        OutputFormat::Csv => format::samples_csv(&draws),
        OutputFormat::Json => format::samples_json(&draws),
    })
}

/// Write `text` to the configured destination, or stdout when none.
pub fn write_output(text: &str, dest: Option<&std::path::Path>) -> Result<()> {
    match dest {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Machine-readable error object written to the diagnostic stream.
pub fn error_object(err: &Error) -> Value {
    let mut body = json!({
        "kind": err.kind(),
        "message": err.to_string(),
    });
    if let Error::Config(c) = err {
        body["issues"] = c
            .issues
            .iter()
            .map(|i| json!({"path": i.path, "reason": i.reason}))
            .collect();
    }
    if let Some(kind) = err.divergence_kind() {
        body["divergence"] = Value::String(kind.as_str().into());
    }
    json!({ "error": body })
}
