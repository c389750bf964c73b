//! Partitions, Chern series, Schur determinants and the degeneracy classes
//! built from them.

pub mod chern;
pub mod partition;
pub mod schur;

use thiserror::Error;

pub use chern::{from_power_sums, power_sums, shifted_chern, sym2_series, ChernSeries};
pub use partition::{partitions, Partition};
pub use schur::{a_const, b_const, gtp_class, schur, sym_degeneracy_class, sym_degeneracy_class_chern, AMethod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("Chern series truncated at order {order}, class c_{needed} requested")]
    TruncationTooLow { needed: usize, order: usize },
    #[error("parameter out of range: {0}")]
    InvalidRange(String),
}
