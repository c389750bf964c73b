//! Chern classes on the partial compactification of the Hurwitz space of
//! degree-`k` covers of the line by curves of genus `2k - 1`.
//!
//! `L` is the pulled-back degree-`k` line bundle and `V = f_* L`, so that
//! `frak_a = k c1V`. Only the boundary divisor `D0` meets the partial
//! compactification, so the node class pushes to `D0`.

use crate::algebra::{rat, RationalFunction};

use super::character::{grr_c1, BundleCharacter};
use super::rules::{curve_rules, FiberRuleTable};
use super::tags::{Tag, TagPoly};
use super::taut::{TautClass, TautSymbol};
use super::GrrError;

fn rf(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

fn sym(s: TautSymbol) -> TautClass {
    TautClass::symbol(s)
}

/// `g = 2k - 1`.
pub fn hurwitz_genus(k: &RationalFunction) -> RationalFunction {
    &(k * &rf(2)) - &rf(1)
}

/// Curve rules for the universal cover, with `push(c1L) = k`.
pub fn hurwitz_rules(k: &RationalFunction) -> FiberRuleTable {
    curve_rules(&hurwitz_genus(k), k).with_boundary(&sym(TautSymbol::D0))
}

/// `c1V = frak_a / k`.
fn eliminate_c1v(cls: &TautClass, k: &RationalFunction) -> TautClass {
    cls.substitute_symbol(&TautSymbol::C1V, &TautClass::term(TautSymbol::FrakA, &rf(1) / k))
}

/// `kappa1 = 12 lambda - D0`.
fn eliminate_kappa1(cls: &TautClass) -> TautClass {
    let k1 = TautClass::from_terms([(TautSymbol::Lambda, rf(12)), (TautSymbol::D0, rf(-1))]);
    cls.substitute_symbol(&TautSymbol::Kappa1, &k1)
}

/// The twist-invariant class `gamma = frak_b - ((2k-2)/k) frak_a`.
pub fn hurwitz_gamma(k: &RationalFunction) -> TautClass {
    let c = -(&(&(k * &rf(2)) - &rf(2)) / k);
    TautClass::from_terms([(TautSymbol::FrakB, rf(1)), (TautSymbol::FrakA, c)])
}

/// Rewrites `frak_b` through `gamma`; fails if a `frak_a` term survives.
pub fn to_hurwitz_gamma_basis(cls: &TautClass, k: &RationalFunction) -> Result<TautClass, GrrError> {
    let c = &(&(k * &rf(2)) - &rf(2)) / k;
    let b = TautClass::from_terms([(TautSymbol::Gamma, rf(1)), (TautSymbol::FrakA, c)]);
    let out = cls.substitute_symbol(&TautSymbol::FrakB, &b);
    if out.contains(&TautSymbol::FrakA) {
        return Err(GrrError::NotInBasis(format!("{cls} is not a combination of lambda, gamma and D0")));
    }
    Ok(out)
}

/// `(c1 E, c1 F)` for `E = f_*(omega (x) L^dual)` and `F = f_*(omega^2 (x) L^-2)`.
///
/// `R^1 f_*(omega (x) L^dual)` is dual to `V`, which contributes `-c1V`;
/// `F` has no higher direct image since `deg(L^2 (x) omega^dual) < 0`.
pub fn hurwitz_sheaf_chern(k: &RationalFunction) -> Result<(TautClass, TautClass), GrrError> {
    let rules = hurwitz_rules(k);
    let w_minus_l = &TagPoly::tag(Tag::C1Omega) - &TagPoly::tag(Tag::C1L);
    let e = grr_c1(&BundleCharacter::line_bundle(&w_minus_l), &rules)?;
    let e = eliminate_c1v(&e.sub(&sym(TautSymbol::C1V)), k);
    let f = grr_c1(&BundleCharacter::line_bundle(&w_minus_l.scale_q(rat(2, 1))), &rules)?;
    Ok((e, f))
}

/// Chern classes `(c1, c2)` of the second jet bundle of `L`, built from the
/// filtration with graded pieces `L`, `L (x) omega`, `L (x) omega^2`.
pub fn jet_chern() -> (TagPoly, TagPoly) {
    let l = TagPoly::tag(Tag::C1L);
    let w = TagPoly::tag(Tag::C1Omega);
    let total = (0..3).fold(TagPoly::one(), |acc, j| {
        let piece = &TagPoly::one() + &(&l + &w.scale_q(rat(j, 1)));
        acc.mul_truncated(&piece, 2)
    });
    (total.part(1), total.part(2))
}

/// Steps of the Porteous computation of the triple-ramification divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPorteous {
    /// `f_* c2(J^2 L)` with `kappa1` kept.
    pub push_c2_jet: TautClass,
    /// `f_* c2(J^2 L - f^* V)` in the `gamma` basis, `kappa1` kept.
    pub push_c2_quotient: TautClass,
    /// `[D3] = f_* c2(J^2 L - f^* V) - [D0]`.
    pub d3: TautClass,
}

/// `c_2(f^* V)` is pulled back from codimension two and pushes to
/// `c_2(V) f_*(1) = 0`, so only `c_1(f^* V)` enters.
pub fn jet_porteous_d3(k: &RationalFunction) -> Result<JetPorteous, GrrError> {
    let rules = hurwitz_rules(k).with_kappa1_symbol();
    let (c1j, c2j) = jet_chern();
    let v = TagPoly::tag(Tag::Pull(TautSymbol::C1V));
    // c_2(J - V) = c2J - c1J v + v^2
    let c2q = &(&c2j - &(&c1j * &v)) + &(&v * &v);
    let push_c2_jet = rules.push(&c2j)?;
    let quotient = eliminate_c1v(&rules.push(&c2q)?, k);
    let push_c2_quotient = to_hurwitz_gamma_basis(&quotient, k)?;
    let d3 = eliminate_kappa1(&push_c2_quotient).sub(&sym(TautSymbol::D0));
    Ok(JetPorteous { push_c2_jet, push_c2_quotient, d3 })
}

/// `(frak_a, frak_b)` recomputed after `L -> L (x) f^* alpha`.
pub fn hurwitz_twisted(k: &RationalFunction, alpha: &TautSymbol) -> Result<(TautClass, TautClass), GrrError> {
    let rules = hurwitz_rules(k);
    let l = &TagPoly::tag(Tag::C1L) + &TagPoly::tag(Tag::Pull(alpha.clone()));
    let a = rules.push(&(&l * &l))?;
    let b = rules.push(&(&l * &TagPoly::tag(Tag::C1Omega)))?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{param, Param};

    fn q(n: i64, d: i64) -> RationalFunction {
        RationalFunction::constant(rat(n, d))
    }

    #[test]
    fn sheaf_classes() {
        let k = param(Param::K);
        let (e, f) = hurwitz_sheaf_chern(&k).unwrap();
        let ea = &(&k - &rf(2)) / &(&k * &rf(2));
        let expected_e = TautClass::from_terms([
            (TautSymbol::Lambda, rf(1)),
            (TautSymbol::FrakB, q(-1, 2)),
            (TautSymbol::FrakA, ea),
        ]);
        assert_eq!(e, expected_e);
        let expected_f = TautClass::from_terms([
            (TautSymbol::Lambda, rf(13)),
            (TautSymbol::FrakA, rf(2)),
            (TautSymbol::FrakB, rf(-3)),
            (TautSymbol::D0, rf(-1)),
        ]);
        assert_eq!(f, expected_f);
    }

    #[test]
    fn jet_classes() {
        let (c1, c2) = jet_chern();
        let l = TagPoly::tag(Tag::C1L);
        let w = TagPoly::tag(Tag::C1Omega);
        assert_eq!(c1, (&l + &w).scale_q(rat(3, 1)));
        let expected = &(&(&l * &l).scale_q(rat(3, 1)) + &(&l * &w).scale_q(rat(6, 1))) + &(&w * &w).scale_q(rat(2, 1));
        assert_eq!(c2, expected);
    }

    #[test]
    fn triple_ramification() {
        let k = param(Param::K);
        let j = jet_porteous_d3(&k).unwrap();
        assert_eq!(j.push_c2_jet.to_string(), "2*kappa1 + 3*frak_a + 6*frak_b");
        assert_eq!(j.push_c2_quotient.to_string(), "2*kappa1 + 6*gamma");
        assert_eq!(j.d3.to_string(), "24*lambda + 6*gamma - 3*D0");
    }

    #[test]
    fn gamma_twist_invariant() {
        let k = param(Param::K);
        let alpha = TautSymbol::Unknown("alpha".into());
        let (a, b) = hurwitz_twisted(&k, &alpha).unwrap();
        assert_eq!(a.coefficient(&alpha), &k * &rf(2));
        let gamma = hurwitz_gamma(&k);
        let twisted = gamma.substitute_symbol(&TautSymbol::FrakA, &a).substitute_symbol(&TautSymbol::FrakB, &b);
        assert_eq!(twisted, gamma);
    }
}
