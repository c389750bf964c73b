use std::cmp::Ordering;
use std::fmt;

use super::variable::Variable;

/// Power product of variables, stored as `(variable, exponent)` pairs sorted
/// by variable with strictly positive exponents.
///
/// `Ord` is graded lex: total degree first, then the exponent of the smallest
/// variable where the two differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Variable, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds from arbitrary pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Monomial {
        let mut v: Vec<(Variable, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Variable, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Variable, u32)> {
        self.0.iter()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let oe = other.0[j].1;
                j += 1;
                match e.cmp(&oe) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v.clone(), e - oe)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes `v`, returning its exponent and the cofactor.
    pub fn split_off(&self, v: &Variable) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = self.0.iter().filter(|(w, _)| w != v).cloned().collect();
        (e, Monomial(rest))
    }

    /// Partitions into the part accepted by `pred` and the rest.
    pub fn split_by(&self, pred: impl Fn(&Variable) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    pub fn map_variables(&self, f: impl Fn(&Variable) -> Variable) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(v, e)| (f(v), *e)))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(i, e)| (Variable::alpha(i), e)))
    }

    #[test]
    fn grlex_order() {
        // degree dominates
        assert!(m(&[(2, 2)]) > m(&[(1, 1)]));
        // alpha1 outranks alpha2 at equal degree
        assert!(m(&[(1, 1)]) > m(&[(2, 1)]));
        assert!(m(&[(1, 1), (3, 1)]) > m(&[(2, 2)]));
        assert!(m(&[(1, 2)]) > m(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn mul_and_div() {
        let a = m(&[(1, 2), (3, 1)]);
        let b = m(&[(2, 1), (3, 2)]);
        let p = a.mul(&b);
        assert_eq!(p, m(&[(1, 2), (2, 1), (3, 3)]));
        assert_eq!(p.div(&b), Some(a.clone()));
        assert_eq!(a.div(&b), None);
        assert_eq!(p.div(&p), Some(Monomial::one()));
    }
}
