//! Rewriting symmetric polynomials in elementary symmetric symbols.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::error::AlgebraError;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::variable::{Alphabet, Variable};

/// `e_k(x_1, ..., x_n)` in the roots of `alphabet`.
pub fn elementary(alphabet: Alphabet, n: u32, k: u32) -> Polynomial {
    let mut layer = vec![Polynomial::one()];
    for i in 1..=n {
        let x = Polynomial::var(Variable::Root(alphabet, i));
        let mut next = vec![Polynomial::zero(); layer.len() + 1];
        for (j, p) in layer.iter().enumerate() {
            next[j] += p;
            next[j + 1] += &(p * &x);
        }
        next.truncate(k as usize + 1);
        layer = next;
    }
    layer.get(k as usize).cloned().unwrap_or_else(Polynomial::zero)
}

fn swap_roots(p: &Polynomial, alphabet: Alphabet, i: u32, j: u32) -> Polynomial {
    p.map_variables(|v| match v {
        Variable::Root(a, k) if *a == alphabet && *k == i => Variable::Root(alphabet, j),
        Variable::Root(a, k) if *a == alphabet && *k == j => Variable::Root(alphabet, i),
        other => other.clone(),
    })
}

/// Checks invariance under adjacent transpositions of roots `1..=n`.
pub fn check_symmetric(p: &Polynomial, alphabet: Alphabet, n: u32) -> Result<(), AlgebraError> {
    for i in 1..n {
        if swap_roots(p, alphabet, i, i + 1) != *p {
            return Err(AlgebraError::NotSymmetric(i, i + 1));
        }
    }
    Ok(())
}

/// Rewrites `p` so that roots `1..=n` of `alphabet` only enter through the
/// symbols `Chern(alphabet, k)`. Other variables are carried along.
pub fn symmetric_reduce(p: &Polynomial, alphabet: Alphabet, n: u32) -> Result<Polynomial, AlgebraError> {
    check_symmetric(p, alphabet, n)?;
    let is_root = |v: &Variable| matches!(v, Variable::Root(a, k) if *a == alphabet && *k >= 1 && *k <= n);

    // group by the part free of the alphabet
    let mut groups: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (roots, rest) = m.split_by(is_root);
        groups.entry(rest).or_default().add_term(roots, c.clone());
    }

    let mut power_cache: HashMap<(u32, u32), Polynomial> = HashMap::new();
    let mut out = Polynomial::zero();
    for (rest, mut q) in groups {
        let mut reduced = Polynomial::zero();
        while !q.is_zero() {
            let (lead, coeff) = lex_leading(&q, alphabet, n);
            let exps: Vec<u32> = (1..=n).map(|i| lead.exponent(&Variable::Root(alphabet, i))).collect();
            let mut product = Polynomial::one();
            let mut symbol = Vec::new();
            for k in 1..=n as usize {
                let next = if k < n as usize { exps[k] } else { 0 };
                let d = exps[k - 1] - next;
                if d > 0 {
                    let pw = power_cache
                        .entry((k as u32, d))
                        .or_insert_with(|| elementary(alphabet, n, k as u32).pow(d))
                        .clone();
                    product = &product * &pw;
                    symbol.push((Variable::Chern(alphabet, k as u32), d));
                }
            }
            q -= &product.scale(&coeff);
            reduced.add_term(Monomial::from_pairs(symbol), coeff);
        }
        out += &reduced.mul_monomial(&rest);
    }
    Ok(out)
}

/// Lex-leading term with `x_1 > x_2 > ... > x_n`, which for a symmetric
/// polynomial has weakly decreasing exponents.
fn lex_leading(q: &Polynomial, alphabet: Alphabet, n: u32) -> (Monomial, Rational) {
    let key = |m: &Monomial| -> Vec<u32> { (1..=n).map(|i| m.exponent(&Variable::Root(alphabet, i))).collect() };
    let (m, c) = q
        .terms()
        .max_by(|(a, _), (b, _)| key(a).cmp(&key(b)))
        .expect("nonzero polynomial");
    debug_assert!(!c.is_zero());
    (m.clone(), c.clone())
}

/// Replaces `Chern(alphabet, k)` by `e_k` of roots `1..=n` (zero for `k > n`).
pub fn expand_chern(p: &Polynomial, alphabet: Alphabet, n: u32) -> Polynomial {
    let mut map = BTreeMap::new();
    for v in p.variables() {
        if let Variable::Chern(a, k) = v {
            if a == alphabet {
                map.insert(v.clone(), elementary(alphabet, n, k));
            }
        }
    }
    p.substitute(&map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::alpha(i))
    }

    #[test]
    fn power_sum_p2() {
        let p2 = &(&x(1).pow(2) + &x(2).pow(2)) + &x(3).pow(2);
        let r = symmetric_reduce(&p2, Alphabet::Alpha, 3).unwrap();
        let c = |k| Polynomial::var(Variable::c_e(k));
        assert_eq!(r, &c(1).pow(2) - &c(2).scale(&int(2)));
    }

    #[test]
    fn reports_asymmetry() {
        let p = &x(1).pow(2) + &x(2);
        assert_eq!(
            symmetric_reduce(&p, Alphabet::Alpha, 2),
            Err(AlgebraError::NotSymmetric(1, 2))
        );
        let q = &(&x(1) + &x(2)) + &x(3).pow(2);
        assert_eq!(
            symmetric_reduce(&q, Alphabet::Alpha, 3),
            Err(AlgebraError::NotSymmetric(2, 3))
        );
    }

    #[test]
    fn mixed_alphabets_carry_through() {
        let b = Polynomial::var(Variable::beta(1));
        let p = &(&x(1) + &x(2)) * &b;
        let r = symmetric_reduce(&p, Alphabet::Alpha, 2).unwrap();
        assert_eq!(r, &Polynomial::var(Variable::c_e(1)) * &b);
        assert_eq!(expand_chern(&r, Alphabet::Alpha, 2), p);
    }
}
