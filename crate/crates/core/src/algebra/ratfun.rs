use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use super::division::{common_univariate, exact_divide, univariate_gcd};
use super::error::AlgebraError;
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::ring::Field;
use super::variable::Variable;

/// Quotient of polynomials with the denominator kept as a product of monic
/// factors. Scalars live in the numerator.
///
/// Equality is semantic (cross-multiplication), so two representations of the
/// same function compare equal even when not fully reduced.
#[derive(Clone, Debug, Default)]
pub struct RationalFunction {
    num: Polynomial,
    den: BTreeMap<Polynomial, u32>,
}

fn monic(p: &Polynomial) -> (Rational, Polynomial) {
    let lc = p.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
    (lc.clone(), p.scale(&lc.recip()))
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(Polynomial::int(n))
    }

    pub fn var(v: Variable) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// `num / den`, reduced as far as trial division by `den` allows.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        Ok(Self::with_factors(num, [(den, 1)])?.reduced())
    }

    /// `num / prod f^m` without any cancellation attempt.
    pub fn with_factors(
        num: Polynomial,
        factors: impl IntoIterator<Item = (Polynomial, u32)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = RationalFunction { num, den: BTreeMap::new() };
        for (f, m) in factors {
            out.push_factor(f, m)?;
        }
        Ok(out)
    }

    fn push_factor(&mut self, f: Polynomial, m: u32) -> Result<(), AlgebraError> {
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if m == 0 {
            return Ok(());
        }
        let (lc, f) = monic(&f);
        let mut scale = Rational::one();
        for _ in 0..m {
            scale *= &lc;
        }
        self.num = self.num.scale(&scale.recip());
        if !f.is_constant() {
            *self.den.entry(f).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, m)| (f, *m))
    }

    pub fn denominator(&self) -> Polynomial {
        self.den
            .iter()
            .fold(Polynomial::one(), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_polynomial().and_then(Polynomial::as_constant)
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Variable> {
        let mut v = self.num.variables();
        for f in self.den.keys() {
            v.extend(f.variables());
        }
        v
    }

    /// Cancels denominator factors that divide the numerator; in one
    /// variable, performs a full gcd reduction instead.
    pub fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        if self.den.is_empty() {
            return self;
        }
        let mut polys: Vec<&Polynomial> = self.den.keys().collect();
        polys.push(&self.num);
        if let Some(Some(v)) = common_univariate(&polys) {
            let d = self.denominator();
            if let Some(g) = univariate_gcd(&self.num, &d, &v) {
                let num = exact_divide(&self.num, &g).expect("gcd divides numerator");
                let den = exact_divide(&d, &g).expect("gcd divides denominator");
                return Self::with_factors(num, [(den, 1)]).expect("nonzero denominator");
            }
        }
        let keys: Vec<Polynomial> = self.den.keys().cloned().collect();
        for f in keys {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match exact_divide(&self.num, &f) {
                    Ok(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        self
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let num = self
            .den
            .iter()
            .fold(Polynomial::one(), |acc, (f, m)| &acc * &f.pow(*m));
        Ok(Self::with_factors(num, [(self.num.clone(), 1)])?.reduced())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.num = out.num.scale(c);
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    /// Evaluates in a field; `None` if the denominator vanishes.
    pub fn evaluate<F: Field>(&self, value: &impl Fn(&Variable) -> F) -> Option<F> {
        let n = self.num.evaluate(value)?;
        let mut d = F::one();
        for (f, m) in &self.den {
            let fv = f.evaluate(value)?;
            for _ in 0..*m {
                d = d.mul(&fv);
            }
        }
        Some(n.mul(&d.inv()?))
    }

    /// Replaces variables by rational functions; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<Variable, RationalFunction>) -> Result<Self, AlgebraError> {
        let num = substitute_poly(&self.num, map)?;
        let mut den = Self::one();
        for (f, m) in &self.den {
            den = &den * &substitute_poly(f, map)?.pow(*m as i32)?;
        }
        num.checked_div(&den)
    }
}

/// Substitutes rational functions into a polynomial.
pub fn substitute(p: &Polynomial, map: &BTreeMap<Variable, RationalFunction>) -> Result<RationalFunction, AlgebraError> {
    substitute_poly(p, map)
}

fn substitute_poly(p: &Polynomial, map: &BTreeMap<Variable, RationalFunction>) -> Result<RationalFunction, AlgebraError> {
    if map.values().all(|r| r.den.is_empty()) {
        let pm: BTreeMap<Variable, Polynomial> = map.iter().map(|(k, v)| (k.clone(), v.num.clone())).collect();
        return Ok(RationalFunction::from_poly(p.substitute(&pm)));
    }
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(c.clone());
        let mut kept = Vec::new();
        for (v, e) in m.iter() {
            match map.get(v) {
                Some(img) => t = &t * &img.pow(*e as i32)?,
                None => kept.push((v.clone(), *e)),
            }
        }
        let rest = Polynomial::term(super::monomial::Monomial::from_pairs(kept), Rational::one());
        acc = &acc + &(&t * &RationalFunction::from_poly(rest));
    }
    Ok(acc)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.denominator() == &other.num * &self.denominator()
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::int(n)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction { num: &self.num + &rhs.num, den: self.den.clone() }.reduced();
        }
        let mut lcd = self.den.clone();
        for (f, m) in &rhs.den {
            let e = lcd.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let cofactor = |own: &BTreeMap<Polynomial, u32>| {
            lcd.iter().fold(Polynomial::one(), |acc, (f, m)| {
                &acc * &f.pow(m - own.get(f).copied().unwrap_or(0))
            })
        };
        let num = &(&self.num * &cofactor(&self.den)) + &(&rhs.num * &cofactor(&rhs.den));
        RationalFunction { num, den: lcd }.reduced()
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        RationalFunction { num: &self.num * &rhs.num, den }.reduced()
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use `checked_div` to handle it.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                $tr::$method(&self, rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(p, m)| {
                let base = if p.len() > 1 { format!("({p})") } else { p.to_string() };
                if *m > 1 { format!("{base}^{m}") } else { base }
            })
            .collect();
        if factors.len() == 1 {
            write!(f, "{num}/{}", factors[0])
        } else {
            write!(f, "{num}/({})", factors.join("*"))
        }
    }
}

/// Sums rational functions over their least common denominator and asserts
/// that the denominator cancels completely.
///
/// The LCD is the union of the factor multisets (maximum multiplicity per
/// factor). Cofactor products run in parallel; the reduction is exact, so the
/// result does not depend on scheduling or on the order of `terms`.
pub fn sum_fractions(terms: &[RationalFunction]) -> Result<Polynomial, AlgebraError> {
    use rayon::prelude::*;

    let mut lcd: BTreeMap<Polynomial, u32> = BTreeMap::new();
    for t in terms {
        for (f, m) in &t.den {
            let e = lcd.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
    }
    let numerator = terms
        .par_iter()
        .map(|t| {
            let cof = lcd.iter().fold(Polynomial::one(), |acc, (f, m)| {
                &acc * &f.pow(m - t.den.get(f).copied().unwrap_or(0))
            });
            &t.num * &cof
        })
        .reduce(Polynomial::zero, |a, b| &a + &b);
    let mut quotient = numerator;
    for (f, m) in &lcd {
        for _ in 0..*m {
            quotient = exact_divide(&quotient, f).map_err(|_| AlgebraError::DenominatorSurvives {
                factor: f.to_string(),
            })?;
        }
    }
    Ok(quotient)
}
