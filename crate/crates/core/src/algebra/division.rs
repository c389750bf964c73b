use std::collections::BTreeMap;

use num_traits::Zero;

use super::error::AlgebraError;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::variable::Variable;

/// Exact quotient `p / q`, failing unless the remainder is zero.
///
/// Leading-term division in graded-lex order: if `q` divides `p` then every
/// intermediate remainder is a multiple of `q`, so its leading monomial is
/// divisible by `lt(q)`; a non-divisible leading monomial proves
/// non-divisibility.
pub fn exact_divide(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let (lm_q, lc_q) = match q.leading_term() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(AlgebraError::DivisionByZero),
    };
    if q.len() == 1 {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let qm = m.div(&lm_q).ok_or(AlgebraError::DivisionNotExact)?;
            out.add_term(qm, c / &lc_q);
        }
        return Ok(out);
    }
    let mut rem = p.clone();
    let mut quot = Polynomial::zero();
    while let Some((lm, lc)) = rem.leading_term() {
        let qm = lm.div(&lm_q).ok_or(AlgebraError::DivisionNotExact)?;
        let qc = lc / &lc_q;
        rem -= &q.mul_monomial(&qm).scale(&qc);
        quot.add_term(qm, qc);
    }
    Ok(quot)
}

/// Dense coefficient vector of a polynomial in one variable (constant first).
/// `None` if another variable occurs.
pub fn univariate_coefficients(p: &Polynomial, v: &Variable) -> Option<Vec<Rational>> {
    let mut out = vec![Rational::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let (e, rest) = m.split_off(v);
        if !rest.is_one() {
            return None;
        }
        out[e as usize] = c.clone();
    }
    Some(out)
}

fn from_univariate(coeffs: &[Rational], v: &Variable) -> Polynomial {
    Polynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| (Monomial::power(v.clone(), e as u32), c.clone())),
    )
}

/// Monic gcd of two polynomials in the single variable `v` (Euclid over Q).
pub fn univariate_gcd(a: &Polynomial, b: &Polynomial, v: &Variable) -> Option<Polynomial> {
    let mut x = univariate_coefficients(a, v)?;
    let mut y = univariate_coefficients(b, v)?;
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Some(Polynomial::zero());
    }
    let lead = x.last().cloned().unwrap();
    let monic: Vec<Rational> = x.iter().map(|c| c / &lead).collect();
    Some(from_univariate(&monic, v))
}

fn trim(c: &mut Vec<Rational>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().cloned().unwrap();
        let shift = r.len() - 1 - db;
        let f = &lr / lb;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &f * bk;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

/// Single variable shared by all supplied polynomials, if there is at most one.
pub fn common_univariate(ps: &[&Polynomial]) -> Option<Option<Variable>> {
    let mut vars = BTreeMap::new();
    for p in ps {
        for v in p.variables() {
            vars.insert(v, ());
        }
    }
    match vars.len() {
        0 => Some(None),
        1 => Some(vars.into_keys().next()),
        _ => None,
    }
}
