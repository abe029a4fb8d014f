//! Numerical laboratory for Wegner estimates of discrete Anderson models
//! whose single-site potential `u = sum_k alpha_k v(. - k)` may change sign.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: lattice cubes `Q_s` and the torus projection.
//! * [`symbol`]: coefficient fields, their symbols, non-vanishing
//!   certificates and Wiener inversion.
//! * [`circulant`]: the periodized coefficient matrix on `Q_{l+R}`, its
//!   inverse, and the change of couplings `eta = A omega`.
//! * [`model`]: densities, potentials, coupling samples and Hamiltonians.
//! * [`spectral`]: eigenvalue counting and spectral averaging.
//! * [`experiments`]: Monte Carlo estimators and checks.

pub mod circulant;
pub mod dft;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod lattice;
pub mod model;
pub mod spectral;
pub mod symbol;

pub use circulant::{
    build_circulant, column_sum_norm, eta_from_omega, fold_laurent_inverse, invert_circulant,
    verify_rectangle_condition, CirculantOperator, EtaVariables,
};
pub use error::{Error, Result};
pub use experiments::{
    estimate_ids, estimate_wegner, lipschitz_check, self_averaging_check, IdsCurve, LipschitzVerdict,
    SelfAveragingTable, WegnerReport,
};
pub use geometry::{enumerate_box, BoxSpec, Site, TorusProjection};
pub use lattice::LatticeFunction;
pub use model::{
    assemble_hamiltonian, build_u, bv_norm, rescale_kappa, sample_omega, wegner_constant, AndersonConfig,
    Boundary, DensityBV, GeneralizedStepPotential, Hamiltonian, PeriodicPotential, SingleSiteProfile,
};
pub use spectral::{count_below, count_in_interval, projector_element, spectral_averaging_check, Interval};
pub use symbol::{
    certify_nonvanishing, check_diagonal_dominance, evaluate_symbol, wiener_inverse, CoefficientField,
    SymbolCertificate, WienerInverse,
};
