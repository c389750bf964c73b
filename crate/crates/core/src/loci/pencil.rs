//! Degenerate pencils of quadrics: 2-planes in `Sym^2 E` tangent to the
//! discriminant hypersurface.

use std::collections::BTreeMap;

use crate::algebra::{int, symmetric_reduce, Alphabet, AlgebraError, Polynomial, Variable};

fn sum_of(alphabet: Alphabet, n: u32) -> Polynomial {
    Polynomial::sum_of((1..=n).map(|i| Variable::Root(alphabet, i)))
}

/// `N = C(e+1, 2) - 2`, the rank of the quotient bundle.
pub fn quotient_rank(e: u32) -> u32 {
    e * (e + 1) / 2 - 2
}

/// `f(alpha, gamma) = (e-1)(4 sum alpha - e sum gamma)`, `gamma` the roots of
/// the tautological 2-plane.
pub fn pencil_class_sub(e: u32) -> Polynomial {
    let a = sum_of(Alphabet::Alpha, e);
    let g = sum_of(Alphabet::Gamma, 2);
    (&a.scale(&int(4)) - &g.scale(&int(e as i64))).scale(&int(e as i64 - 1))
}

/// `g(alpha, beta) = (e-1)(e sum beta - (e^2+e-4) sum alpha)` with `N` betas.
pub fn pencil_class_quot(e: u32) -> Polynomial {
    let a = sum_of(Alphabet::Alpha, e);
    let b = sum_of(Alphabet::Beta, quotient_rank(e));
    let e = e as i64;
    (&b.scale(&int(e)) - &a.scale(&int(e * e + e - 4))).scale(&int(e - 1))
}

/// Weight of the discriminant monomial `(prod K_ii)^{e-1} (prod L_ii)^{e-1}`,
/// where `K_ii` has weight `2 alpha_i - gamma_1` and `L_ii` weight
/// `2 alpha_i - gamma_2`.
pub fn pencil_monomial_weight(e: u32) -> Polynomial {
    let mut w = Polynomial::zero();
    for s in 1..=2 {
        for i in 1..=e {
            w += &(&Polynomial::var(Variable::alpha(i)).scale(&int(2)) - &Polynomial::var(Variable::gamma(s)));
        }
    }
    w.scale(&int(e as i64 - 1))
}

/// Rewrite a linear class in `alpha, gamma` through
/// `sum gamma = (e+1) sum alpha - sum beta`. The class must depend on the
/// `gamma`s only through their sum.
pub fn pencil_sub_to_quot(cls: &Polynomial, e: u32) -> Option<Polynomial> {
    let (g1, g2) = (Variable::gamma(1), Variable::gamma(2));
    if cls.linear_coefficient(&g1) != cls.linear_coefficient(&g2) || cls.degree_in(&g1) > 1 || cls.degree_in(&g2) > 1 {
        return None;
    }
    let sum_gamma = &sum_of(Alphabet::Alpha, e).scale(&int(e as i64 + 1)) - &sum_of(Alphabet::Beta, quotient_rank(e));
    let map = BTreeMap::from([(g1, sum_gamma), (g2, Polynomial::zero())]);
    Some(cls.substitute(&map))
}

/// `(e-1)(e c_1(F) - (e^2+e-4) c_1(E))` in Chern symbols.
pub fn pencil_class_chern(e: u32) -> Result<Polynomial, AlgebraError> {
    let q = symmetric_reduce(&pencil_class_quot(e), Alphabet::Alpha, e)?;
    symmetric_reduce(&q, Alphabet::Beta, quotient_rank(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(pencil_class_sub(2).to_string(), "4*alpha1 + 4*alpha2 - 2*gamma1 - 2*gamma2");
        assert_eq!(pencil_class_sub(3), (&sum_of(Alphabet::Alpha, 3).scale(&int(8)) - &sum_of(Alphabet::Gamma, 2).scale(&int(6))));
        assert_eq!(pencil_class_chern(6).unwrap().to_string(), "-190*c1E + 30*c1F");
        assert_eq!(pencil_class_chern(2).unwrap().to_string(), "-2*c1E + 2*c1F");
    }

    #[test]
    fn monomial_weight_and_exactness() {
        for e in 2..=8 {
            assert_eq!(pencil_monomial_weight(e), pencil_class_sub(e));
            assert_eq!(pencil_sub_to_quot(&pencil_class_sub(e), e).unwrap(), pencil_class_quot(e));
        }
    }
}
