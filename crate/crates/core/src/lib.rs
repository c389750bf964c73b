//! Exact Chern-class computations for loci of quadrics of prescribed corank
//! and the divisor classes on moduli spaces that they induce.

pub mod algebra;
pub mod grr;
pub mod loci;
pub mod moduli;
pub mod symfunc;
