//! Divisor classes and slopes on moduli spaces of curves, polarized K3
//! surfaces and Hurwitz spaces.

pub mod divisor;
pub mod hurwitz;
pub mod k3;
pub mod known;
pub mod series;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::grr::GrrError;
use crate::loci::LociError;
use crate::symfunc::SymError;

pub use divisor::{slope, Boundary, ModuliDivisor};
pub use hurwitz::{
    canonical_from_hodge, hodge_admissible_coeff, hodge_coeff_symbolic, hodgepart, hurwitz_report, partclass, HodgePart,
    HurwitzReport,
};
pub use k3::{k3_rank4_class, k3_rank4_prefactor, kosz_class, KoszReport, Rank4Report};
pub use known::{
    known_divisor, petri_class, petri_class_symbolic, petri_decomposition_report, KnownKind, KnownValue, PartialClass,
    PetriComponent, PetriDecomposition,
};
pub use series::{
    calibration_data, calibration_report, default_calibration, dp12_slope, fit_n_over_beta, pelda_slope,
    pushforward_table, series_c1f, series_params, virtual_pushforward, virtual_slope, virtual_slope_from_pushforward,
    Calibration, CalibrationTrial, Dp12Report, PushforwardTable, SeriesParams, SlopeDatum, SlopeForm, VirtualSlope,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("unsupported parameter: {0}")]
    UnsupportedParam(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("beta did not cancel: {0}")]
    BetaDidNotCancel(String),
    #[error("boundary coefficient is not positive: {0}")]
    BoundaryCoefficientNonpositive(String),
    #[error("mu is not a partition of k")]
    NotPartitionOfK,
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Grr(#[from] GrrError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Loci(#[from] LociError),
}
