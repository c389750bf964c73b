//! Classes of quadric degeneracy loci `Sigma^r_{e,f}` of a map
//! `Sym^2 E -> F`, and of the degenerate-pencil locus.

pub mod closed;
pub mod localization;
pub mod pencil;
pub mod projective;
pub mod residue;
pub mod weights;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::symfunc::SymError;

pub use closed::{closed_divisor_class, closed_divisor_class_from_constants, divisorial_f};
pub use localization::{
    localization_class, localization_class_chern, localization_class_with, LocalizationMethod, LocalizationSum,
    PropertyReport,
};
pub use pencil::{pencil_class_chern, pencil_class_quot, pencil_class_sub, pencil_monomial_weight, pencil_sub_to_quot};
pub use projective::{fixed_point_restriction, projectivize};
pub use residue::{chern_difference, chern_difference_chern, residue_class, residue_divisor_class};
pub use weights::{sym2_pairs, sym2_weights, ScalarData, WeightSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LociError {
    #[error("precondition violated: {0}")]
    InvalidParameters(String),
    #[error("(e,r)=({e},{r}) is not divisorial: f = C(e+1,2) - C(r+1,2) = {f}")]
    NotDivisorial { e: u32, r: u32, f: i64 },
    #[error("scalar condition fails at weight {weight}: got {got}, expected {expected}")]
    ScalarMismatch { weight: usize, got: String, expected: i64 },
    #[error("sample point makes two weights coincide")]
    DegeneratePoint,
    #[error("{0}")]
    NotPolynomial(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sym(#[from] SymError),
}
