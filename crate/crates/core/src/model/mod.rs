//! The discrete alloy-type Anderson model: coupling densities, single-site
//! profiles, reproducible coupling samples and the finite-volume Hamiltonian.

mod config;
mod density;
mod hamiltonian;
mod potential;
mod sampling;

pub use config::AndersonConfig;
pub use density::{bv_norm, DensityBV};
pub use hamiltonian::{assemble_hamiltonian, Boundary, Hamiltonian};
pub use potential::{build_u, rescale_kappa, GeneralizedStepPotential, PeriodicPotential, SingleSiteProfile};
pub use sampling::{sample_omega, sample_omega_stream, stream_rng, uniforms};

use crate::symbol::WienerInverse;

/// The discrete Wegner constant `||f||_BV ||B||_1 / kappa`.
pub fn wegner_constant(config: &AndersonConfig, wiener: &WienerInverse) -> f64 {
    bv_norm(&config.f) * wiener.column_sum_norm / config.kappa()
}
