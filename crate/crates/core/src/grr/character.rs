use crate::algebra::{rat, RationalFunction};

use super::rules::{todd, FiberRuleTable};
use super::tags::TagPoly;
use super::taut::TautClass;
use super::GrrError;

/// Chern character `rank + ch1 + ch2 + ch3` of a bundle on the total space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleCharacter {
    pub rank: RationalFunction,
    /// `ch[k-1]` is the degree-`k` component.
    pub ch: [TagPoly; 3],
}

impl BundleCharacter {
    pub fn trivial(rank: impl Into<RationalFunction>) -> Self {
        Self { rank: rank.into(), ch: [TagPoly::zero(), TagPoly::zero(), TagPoly::zero()] }
    }

    /// `exp(c1)` truncated after degree 3.
    pub fn line_bundle(c1: &TagPoly) -> Self {
        let c2 = c1 * c1;
        let c3 = &c2 * c1;
        Self { rank: RationalFunction::one(), ch: [c1.clone(), c2.scale_q(rat(1, 2)), c3.scale_q(rat(1, 6))] }
    }

    /// From Chern classes via Newton's identities.
    pub fn from_chern(rank: impl Into<RationalFunction>, c1: &TagPoly, c2: &TagPoly, c3: &TagPoly) -> Self {
        let c1sq = c1 * c1;
        let ch2 = (&c1sq - &c2.scale_q(rat(2, 1))).scale_q(rat(1, 2));
        let ch3 = (&(&(&c1sq * c1) - &(c1 * c2).scale_q(rat(3, 1))) + &c3.scale_q(rat(3, 1))).scale_q(rat(1, 6));
        Self { rank: rank.into(), ch: [c1.clone(), ch2, ch3] }
    }

    /// Total Chern character as one tag polynomial.
    pub fn total(&self) -> TagPoly {
        let mut t = TagPoly::constant(self.rank.clone());
        for c in &self.ch {
            t = &t + c;
        }
        t
    }

    fn from_total(t: &TagPoly) -> Self {
        Self { rank: t.part(0).coefficient(&Default::default()), ch: [t.part(1), t.part(2), t.part(3)] }
    }

    pub fn dual(&self) -> Self {
        Self { rank: self.rank.clone(), ch: [-&self.ch[0], self.ch[1].clone(), -&self.ch[2]] }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_total(&(&self.total() + &other.total()))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_total(&self.total().mul_truncated(&other.total(), 3))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self::from_total(&self.total().scale(c))
    }
}

fn grr_integrand(chr: &BundleCharacter, rules: &FiberRuleTable) -> TagPoly {
    chr.total().mul_truncated(&todd(rules.relative_dim), rules.relative_dim + 1)
}

/// `c_1` of the pushforward: `push(ch * td)` in degree `relative_dim + 1`.
pub fn grr_c1(chr: &BundleCharacter, rules: &FiberRuleTable) -> Result<TautClass, GrrError> {
    rules.push(&grr_integrand(chr, rules))
}

/// Rank (Euler characteristic on a fibre) of the pushforward.
pub fn grr_rank(chr: &BundleCharacter, rules: &FiberRuleTable) -> Result<RationalFunction, GrrError> {
    rules.push_constant(&grr_integrand(chr, rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{param, Param};
    use crate::grr::rules::{curve_rules, k3_rules};
    use crate::grr::tags::Tag;
    use crate::grr::taut::TautSymbol;

    #[test]
    fn structure_sheaf_gives_lambda() {
        let t = curve_rules(&param(Param::G), &param(Param::D));
        let c = grr_c1(&BundleCharacter::trivial(1), &t).unwrap();
        assert_eq!(c, TautClass::symbol(TautSymbol::Lambda));
        assert!(grr_rank(&BundleCharacter::trivial(1), &t).unwrap() == &RationalFunction::one() - &param(Param::G));
    }

    #[test]
    fn bicanonical_curves() {
        let g = param(Param::G);
        let t = curve_rules(&g, &param(Param::D));
        let w2 = BundleCharacter::line_bundle(&TagPoly::tag(Tag::C1Omega).scale_q(rat(2, 1)));
        assert_eq!(grr_c1(&w2, &t).unwrap().to_string(), "13*lambda - delta");
        assert_eq!(grr_rank(&w2, &t).unwrap(), &(&g * &RationalFunction::int(3)) - &RationalFunction::int(3));
    }

    #[test]
    fn additivity() {
        let t = k3_rules(&param(Param::G));
        let a = BundleCharacter::line_bundle(&TagPoly::tag(Tag::C1L));
        let b = BundleCharacter::line_bundle(&TagPoly::tag(Tag::C1L).scale_q(rat(2, 1)));
        let sum = grr_c1(&a.direct_sum(&b), &t).unwrap();
        assert_eq!(sum, grr_c1(&a, &t).unwrap().add(&grr_c1(&b, &t).unwrap()));
    }

    #[test]
    fn chern_round_trip_for_line_bundles() {
        let l = TagPoly::tag(Tag::C1L);
        assert_eq!(
            BundleCharacter::from_chern(1, &l, &TagPoly::zero(), &TagPoly::zero()),
            BundleCharacter::line_bundle(&l)
        );
        let e = BundleCharacter::from_chern(2, &l, &TagPoly::tag(Tag::C2E), &TagPoly::zero());
        let end = e.tensor(&e.dual());
        assert!(end.ch[0].is_zero());
        assert!(end.ch[2].is_zero());
    }
}
