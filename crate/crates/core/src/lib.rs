//! Photon-pair emission and entanglement from a sharp optical boundary that
//! sweeps a medium with apparent superluminal velocity.
//!
//! The crate is organised bottom-up:
//!
//! * [`kinematics`]: frame transformation and the double-Doppler map from an
//!   incident mode to the transmitted, reflected and anti-incident modes.
//! * [`squeezing`]: two-mode squeezing coefficients, mean pair number, pair
//!   statistics and a seeded sampler.
//! * [`entanglement`]: entropy of entanglement, logarithmic negativity and
//!   the critical thermal occupancy.
//! * [`spectrum`]: angular emission spectra and resonance search.
//! * [`cli_io`]: configuration parsing and serialization for the `frontpair`
//!   command-line tool.
//!
//! Units: `c = 1`, angles in radians measured from the boundary velocity,
//! entropies in nats.

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli_io;
pub mod entanglement;
pub mod error;
pub mod kinematics;
pub mod spectrum;
pub mod squeezing;

pub use entanglement::{critical_occupancy, entanglement_entropy, log_negativity, symplectic_eigenvalue, ThermalContext};
pub use error::{ConfigError, DivergenceKind, Error, FieldIssue, Result};
pub use kinematics::{
    boosted_index, kinematic_aux, reflected_angle, scatter, transmitted_angle, BoundaryConfig, Branch, KinematicAux,
    WaveMode,
};
pub use spectrum::{
    angular_spectrum, classify_regime, divergent_clusters, resonance_angles, EmissionPoint, PointStatus, Regime,
    RegimeReport, Resonance,
};
pub use squeezing::{
    bogoliubov_coefficients, mean_pair_number, mean_pair_number_closed_form, pair_distribution, sample_pair_counts,
    PairDistribution, ScatteringCoefficients,
};
