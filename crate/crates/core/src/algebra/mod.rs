//! Exact commutative algebra: rationals, sparse polynomials, rational
//! functions with factored denominators, and symmetric reduction.

pub mod division;
pub mod error;
pub mod monomial;
pub mod polynomial;
pub mod ratfun;
pub mod rational;
pub mod ring;
pub mod symmetric;
pub mod variable;

pub use division::exact_divide;
pub use error::AlgebraError;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use ratfun::{substitute, sum_fractions, RationalFunction};
pub use rational::{binomial, binomial_q, int, parse_rational, rat, Rational};
pub use ring::{determinant, solve_linear, Field, Fp, Ring, SolveError};
pub use symmetric::{check_symmetric, elementary, expand_chern, symmetric_reduce};
pub use variable::{Alphabet, Param, Variable};

/// Shorthand for `Polynomial::var(v)`.
pub fn pv(v: Variable) -> Polynomial {
    Polynomial::var(v)
}

/// The parameter `p` as a rational function.
pub fn param(p: Param) -> RationalFunction {
    RationalFunction::var(Variable::Param(p))
}
