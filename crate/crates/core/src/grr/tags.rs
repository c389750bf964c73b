//! Polynomials in tagged classes on the total space of a fibration.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{Rational, RationalFunction};

use super::taut::TautSymbol;

/// A class on the total space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// `c_1` of the polarizing line bundle.
    C1L,
    /// `c_1` of the relative dualizing sheaf.
    C1Omega,
    /// `c_2` of the relative tangent sheaf (for curves: the node class).
    C2T,
    /// `c_2` of an auxiliary rank-2 bundle.
    C2E,
    /// Pullback of a divisor class from the base.
    Pull(TautSymbol),
}

impl Tag {
    pub fn degree(&self) -> u32 {
        match self {
            Tag::C2T | Tag::C2E => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::C1L => f.write_str("c1L"),
            Tag::C1Omega => f.write_str("c1omega"),
            Tag::C2T => f.write_str("c2T"),
            Tag::C2E => f.write_str("c2E"),
            Tag::Pull(s) => write!(f, "pull({s})"),
        }
    }
}

/// A monomial in tags: tag -> exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TagMonomial(BTreeMap<Tag, u32>);

impl TagMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(factors: &[(Tag, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for (t, e) in factors {
            if *e > 0 {
                *m.entry(t.clone()).or_insert(0) += e;
            }
        }
        TagMonomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(t, e)| t.degree() * e).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Tag, u32)> {
        self.0.iter().map(|(t, e)| (t, *e))
    }

    fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (t, e) in &other.0 {
            *m.entry(t.clone()).or_insert(0) += e;
        }
        TagMonomial(m)
    }

    /// Splits off the pulled-back factors: `(pulls, fibre part)`.
    pub fn split_pullbacks(&self) -> (Vec<(TautSymbol, u32)>, TagMonomial) {
        let mut pulls = Vec::new();
        let mut rest = BTreeMap::new();
        for (t, e) in &self.0 {
            match t {
                Tag::Pull(s) => pulls.push((s.clone(), *e)),
                _ => {
                    rest.insert(t.clone(), *e);
                }
            }
        }
        (pulls, TagMonomial(rest))
    }
}

impl fmt::Display for TagMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(t, e)| if *e == 1 { t.to_string() } else { format!("{t}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial in tags with coefficients rational in the formal parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TagPoly {
    terms: BTreeMap<TagMonomial, RationalFunction>,
}

impl TagPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RationalFunction::one())
    }

    pub fn constant(c: impl Into<RationalFunction>) -> Self {
        Self::term(TagMonomial::one(), c.into())
    }

    pub fn tag(t: Tag) -> Self {
        Self::term(TagMonomial::new(&[(t, 1)]), RationalFunction::one())
    }

    pub fn term(m: TagMonomial, c: RationalFunction) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn add_term(&mut self, m: TagMonomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TagMonomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &TagMonomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale_q(&self, c: Rational) -> Self {
        self.scale(&RationalFunction::constant(c))
    }

    /// The part of tagged degree exactly `d`.
    pub fn part(&self, d: u32) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Product with every term of degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if m.degree() <= max_degree {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add<&TagPoly> for &TagPoly {
    type Output = TagPoly;
    fn add(self, rhs: &TagPoly) -> TagPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&TagPoly> for &TagPoly {
    type Output = TagPoly;
    fn sub(self, rhs: &TagPoly) -> TagPoly {
        self + &(-rhs)
    }
}

impl Neg for &TagPoly {
    type Output = TagPoly;
    fn neg(self) -> TagPoly {
        self.scale(&RationalFunction::int(-1))
    }
}

impl Mul<&TagPoly> for &TagPoly {
    type Output = TagPoly;
    fn mul(self, rhs: &TagPoly) -> TagPoly {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl fmt::Display for TagPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn grading_and_truncation() {
        let l = TagPoly::tag(Tag::C1L);
        let c2 = TagPoly::tag(Tag::C2T);
        let p = &(&l + &c2) * &(&l + &c2);
        assert_eq!(p.part(2), l.pow(2));
        assert_eq!(p.part(3), (&l * &c2).scale_q(rat(2, 1)));
        assert!(p.mul_truncated(&TagPoly::one(), 3).part(4).is_zero());
        assert_eq!(TagMonomial::new(&[(Tag::C1L, 1), (Tag::C2T, 1)]).degree(), 3);
    }

    #[test]
    fn pullback_split() {
        let m = TagMonomial::new(&[(Tag::Pull(TautSymbol::C1V), 1), (Tag::C1L, 2)]);
        let (pulls, rest) = m.split_pullbacks();
        assert_eq!(pulls, vec![(TautSymbol::C1V, 1)]);
        assert_eq!(rest, TagMonomial::new(&[(Tag::C1L, 2)]));
    }
}
