//! Pushforward tables for curve and K3 fibrations.

use std::collections::BTreeMap;

use crate::algebra::{rat, RationalFunction};

use super::tags::{Tag, TagMonomial, TagPoly};
use super::taut::{TautClass, TautSymbol};
use super::GrrError;

/// Value of a pushforward rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleValue {
    /// A codimension-one class on the base (monomials of degree `relative_dim + 1`).
    Class(TautClass),
    /// A number (monomials of degree `relative_dim`).
    Constant(RationalFunction),
}

/// Pushforward rules along a fibration of relative dimension 1 or 2.
///
/// Monomials of degree below `relative_dim` push to zero. A pulled-back base
/// class `x` factors out: `push(x * m) = x * push(m)`, so only fibre
/// monomials need rules. Products of two or more base classes land in
/// codimension two and are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRuleTable {
    pub relative_dim: u32,
    rules: BTreeMap<TagMonomial, RuleValue>,
}

fn m(factors: &[(Tag, u32)]) -> TagMonomial {
    TagMonomial::new(factors)
}

fn class(terms: &[(TautSymbol, RationalFunction)]) -> RuleValue {
    RuleValue::Class(TautClass::from_terms(terms.iter().cloned()))
}

impl FiberRuleTable {
    pub fn new(relative_dim: u32) -> Self {
        Self { relative_dim, rules: BTreeMap::new() }
    }

    pub fn with_rule(mut self, mono: TagMonomial, value: RuleValue) -> Self {
        self.rules.insert(mono, value);
        self
    }

    pub fn rule(&self, mono: &TagMonomial) -> Option<&RuleValue> {
        self.rules.get(mono)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&TagMonomial, &RuleValue)> {
        self.rules.iter()
    }

    /// Replaces the node class `c2T` by `boundary` in the curve rules, keeping
    /// `push(c1omega^2) + push(c2T) = 12 lambda`.
    pub fn with_boundary(self, boundary: &TautClass) -> Self {
        let twelve_lambda = TautClass::term(TautSymbol::Lambda, RationalFunction::int(12));
        self.with_rule(m(&[(Tag::C1Omega, 2)]), RuleValue::Class(twelve_lambda.sub(boundary)))
            .with_rule(m(&[(Tag::C2T, 1)]), RuleValue::Class(boundary.clone()))
    }

    /// Keeps `kappa1` as an atom: `push(c1omega^2) = kappa1`, `push(c2T) = 12 lambda - kappa1`.
    pub fn with_kappa1_symbol(self) -> Self {
        let k1 = TautClass::symbol(TautSymbol::Kappa1);
        let twelve_lambda = TautClass::term(TautSymbol::Lambda, RationalFunction::int(12));
        self.with_rule(m(&[(Tag::C1Omega, 2)]), RuleValue::Class(k1.clone()))
            .with_rule(m(&[(Tag::C2T, 1)]), RuleValue::Class(twelve_lambda.sub(&k1)))
    }

    /// Adds rules for an auxiliary rank-2 bundle with `push(c2E) = value`.
    /// Since `c1omega` is pulled back from the base as `lambda` on a K3
    /// fibration, `push(c2E * c1omega) = value * lambda`.
    pub fn with_c2e(self, value: RationalFunction) -> Self {
        self.with_rule(m(&[(Tag::C2E, 1)]), RuleValue::Constant(value.clone()))
            .with_rule(m(&[(Tag::C2E, 1), (Tag::C1Omega, 1)]), class(&[(TautSymbol::Lambda, value)]))
    }

    /// Pushes the degree `relative_dim + 1` part of `p` to the base.
    pub fn push(&self, p: &TagPoly) -> Result<TautClass, GrrError> {
        let top = self.relative_dim + 1;
        let mut out = TautClass::zero();
        for (mono, c) in p.part(top).terms() {
            let (pulls, fibre) = mono.split_pullbacks();
            let pull_degree: u32 = pulls.iter().map(|(_, e)| e).sum();
            match pull_degree {
                0 => match self.rules.get(&fibre) {
                    Some(RuleValue::Class(cls)) => out = out.add(&cls.scale(c)),
                    _ => return Err(GrrError::MissingRule(fibre.to_string())),
                },
                1 => {
                    let k = self.push_constant_monomial(&fibre)?;
                    out.add_term(pulls[0].0.clone(), c * &k);
                }
                _ => {}
            }
        }
        Ok(out)
    }

    fn push_constant_monomial(&self, mono: &TagMonomial) -> Result<RationalFunction, GrrError> {
        if mono.degree() < self.relative_dim {
            return Ok(RationalFunction::zero());
        }
        match self.rules.get(mono) {
            Some(RuleValue::Constant(k)) => Ok(k.clone()),
            _ => Err(GrrError::MissingRule(mono.to_string())),
        }
    }

    /// Pushes the degree `relative_dim` part of `p`: the rank of the pushforward.
    pub fn push_constant(&self, p: &TagPoly) -> Result<RationalFunction, GrrError> {
        let mut out = RationalFunction::zero();
        for (mono, c) in p.part(self.relative_dim).terms() {
            let (pulls, fibre) = mono.split_pullbacks();
            if pulls.is_empty() {
                out = &out + &(c * &self.push_constant_monomial(&fibre)?);
            }
        }
        Ok(out)
    }
}

/// Rules for a family of nodal curves of genus `genus` with a line bundle of
/// fibre degree `deg_l`. The node class pushes to `delta`.
pub fn curve_rules(genus: &RationalFunction, deg_l: &RationalFunction) -> FiberRuleTable {
    let two_g_minus_two = &(genus * &RationalFunction::int(2)) - &RationalFunction::int(2);
    FiberRuleTable::new(1)
        .with_rule(m(&[(Tag::C1L, 2)]), class(&[(TautSymbol::FrakA, RationalFunction::one())]))
        .with_rule(m(&[(Tag::C1L, 1), (Tag::C1Omega, 1)]), class(&[(TautSymbol::FrakB, RationalFunction::one())]))
        .with_rule(m(&[(Tag::C1L, 1)]), RuleValue::Constant(deg_l.clone()))
        .with_rule(m(&[(Tag::C1Omega, 1)]), RuleValue::Constant(two_g_minus_two))
        .with_boundary(&TautClass::symbol(TautSymbol::DeltaTotal))
}

/// Rules for the universal quasi-polarized K3 surface of genus `genus`.
/// `kappa_{a,b}` is the pushforward of `c1L^a c2T^b`.
pub fn k3_rules(genus: &RationalFunction) -> FiberRuleTable {
    let two_g_minus_two = &(genus * &RationalFunction::int(2)) - &RationalFunction::int(2);
    let zero = || RuleValue::Class(TautClass::zero());
    FiberRuleTable::new(2)
        .with_rule(m(&[(Tag::C1L, 3)]), class(&[(TautSymbol::Kappa30, RationalFunction::one())]))
        .with_rule(m(&[(Tag::C1L, 1), (Tag::C2T, 1)]), class(&[(TautSymbol::Kappa11, RationalFunction::one())]))
        .with_rule(m(&[(Tag::C1L, 2), (Tag::C1Omega, 1)]), class(&[(TautSymbol::Lambda, two_g_minus_two.clone())]))
        .with_rule(m(&[(Tag::C1Omega, 1), (Tag::C2T, 1)]), class(&[(TautSymbol::Lambda, RationalFunction::int(24))]))
        .with_rule(m(&[(Tag::C1L, 1), (Tag::C1Omega, 2)]), zero())
        .with_rule(m(&[(Tag::C1Omega, 3)]), zero())
        .with_rule(m(&[(Tag::C1L, 2)]), RuleValue::Constant(two_g_minus_two))
        .with_rule(m(&[(Tag::C2T, 1)]), RuleValue::Constant(RationalFunction::int(24)))
        .with_rule(m(&[(Tag::C1L, 1), (Tag::C1Omega, 1)]), RuleValue::Constant(RationalFunction::zero()))
        .with_rule(m(&[(Tag::C1Omega, 2)]), RuleValue::Constant(RationalFunction::zero()))
}

/// Todd class of the relative tangent sheaf through degree
/// `relative_dim + 1`, in the form
/// `1 - c1omega/2 + (c1omega^2 + c2T)/12 + c1omega*c2T/24`.
///
/// The cubic term carries the sign that reproduces the K3 formula for
/// `c_1` of `pi_* L^n` with constant term `+lambda`.
pub fn todd(relative_dim: u32) -> TagPoly {
    let w = TagPoly::tag(Tag::C1Omega);
    let c2 = TagPoly::tag(Tag::C2T);
    let mut t = &TagPoly::one() - &w.scale_q(rat(1, 2));
    t = &t + &(&w.pow(2) + &c2).scale_q(rat(1, 12));
    if relative_dim >= 2 {
        t = &t + &(&w * &c2).scale_q(rat(1, 24));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{param, Param};

    #[test]
    fn curve_table_values() {
        let g = param(Param::G);
        let t = curve_rules(&g, &param(Param::D));
        let w2 = TagPoly::tag(Tag::C1Omega).pow(2);
        assert_eq!(t.push(&w2).unwrap().to_string(), "12*lambda - delta");
        assert_eq!(t.push_constant(&TagPoly::tag(Tag::C1L)).unwrap(), param(Param::D));
        assert!(t.push_constant(&TagPoly::one()).unwrap().is_zero());
        let lambda_rule = (&w2 + &TagPoly::tag(Tag::C2T)).scale_q(rat(1, 12));
        assert_eq!(t.push(&lambda_rule).unwrap(), TautClass::symbol(TautSymbol::Lambda));
    }

    #[test]
    fn k3_table_values() {
        let t = k3_rules(&param(Param::G));
        assert_eq!(t.push_constant(&TagPoly::tag(Tag::C2T)).unwrap(), RationalFunction::int(24));
        let l2 = TagPoly::tag(Tag::C1L).pow(2);
        assert_eq!(t.push_constant(&l2).unwrap().to_string(), "2*g - 2");
        let lw2 = &TagPoly::tag(Tag::C1L) * &TagPoly::tag(Tag::C1Omega).pow(2);
        assert!(t.push(&lw2).unwrap().is_zero());
    }

    #[test]
    fn missing_rule_reported() {
        let t = k3_rules(&param(Param::G));
        let e = t.push(&(&TagPoly::tag(Tag::C2E) * &TagPoly::tag(Tag::C1L))).unwrap_err();
        assert!(matches!(e, GrrError::MissingRule(s) if s == "c1L*c2E"));
    }

    #[test]
    fn todd_display_factors() {
        let t = todd(2);
        let w = TagMonomial::new(&[(Tag::C1Omega, 1)]);
        let wc2 = TagMonomial::new(&[(Tag::C1Omega, 1), (Tag::C2T, 1)]);
        assert_eq!(t.coefficient(&w), RationalFunction::constant(rat(-1, 2)));
        assert_eq!(t.coefficient(&TagMonomial::new(&[(Tag::C2T, 1)])), RationalFunction::constant(rat(1, 12)));
        assert_eq!(t.coefficient(&wc2), RationalFunction::constant(rat(1, 24)));
        assert!(todd(1).coefficient(&wc2).is_zero());
    }
}
