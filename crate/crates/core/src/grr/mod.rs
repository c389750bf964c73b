//! Grothendieck-Riemann-Roch to codimension one on the base of curve and K3
//! fibrations, driven by pushforward tables.

pub mod character;
pub mod hurwitz;
pub mod k3;
pub mod rules;
pub mod tags;
pub mod taut;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use character::{grr_c1, grr_rank, BundleCharacter};
pub use hurwitz::{
    hurwitz_gamma, hurwitz_genus, hurwitz_rules, hurwitz_sheaf_chern, hurwitz_twisted, jet_chern, jet_porteous_d3,
    to_hurwitz_gamma_basis, JetPorteous,
};
pub use k3::{chern_un, k3_gamma, k3_twisted_kappas, lm_lambda_relation, rank_un, to_k3_gamma_basis, LambdaRelation};
pub use rules::{curve_rules, k3_rules, todd, FiberRuleTable, RuleValue};
pub use tags::{Tag, TagMonomial, TagPoly};
pub use taut::{TautClass, TautSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrrError {
    #[error("no pushforward rule for {0}")]
    MissingRule(String),
    #[error("{0}")]
    NotInBasis(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
