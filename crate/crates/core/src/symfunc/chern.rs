use num_traits::Zero;

use crate::algebra::{binomial_q, Alphabet, Polynomial, Rational, Variable};

use super::SymError;

/// Total Chern class `1 + c_1 + c_2 + ...` as a list of graded pieces.
///
/// A series is *exact* when every class past the stored ones vanishes (an
/// honest bundle of known rank); otherwise it is truncated and asking for a
/// higher class is an error.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernSeries {
    coeffs: Vec<Polynomial>,
    exact: bool,
}

impl ChernSeries {
    pub fn one() -> Self {
        ChernSeries { coeffs: vec![Polynomial::one()], exact: true }
    }

    /// `prod (1 + x)` over the given roots.
    pub fn from_roots(roots: &[Polynomial]) -> Self {
        let mut c = vec![Polynomial::one()];
        for x in roots {
            let mut next = vec![Polynomial::zero(); c.len() + 1];
            for (k, p) in c.iter().enumerate() {
                next[k] += p;
                next[k + 1] += &(p * x);
            }
            c = next;
        }
        ChernSeries { coeffs: c, exact: true }
    }

    /// Roots `1..=n` of an alphabet.
    pub fn of_alphabet(alphabet: Alphabet, n: u32) -> Self {
        let roots: Vec<Polynomial> = (1..=n).map(|i| Polynomial::var(Variable::Root(alphabet, i))).collect();
        Self::from_roots(&roots)
    }

    /// Formal Chern classes `c_i = Chern(alphabet, i)` of a rank-`n` bundle.
    pub fn generic(alphabet: Alphabet, n: u32) -> Self {
        let mut coeffs = vec![Polynomial::one()];
        coeffs.extend((1..=n).map(|i| Polynomial::var(Variable::Chern(alphabet, i))));
        ChernSeries { coeffs, exact: true }
    }

    pub fn from_coeffs(coeffs: Vec<Polynomial>, exact: bool) -> Self {
        assert!(!coeffs.is_empty(), "a Chern series starts with c_0");
        ChernSeries { coeffs, exact }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Highest stored index.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// `c_i`, with `c_i = 0` for negative `i`.
    pub fn get(&self, i: i64) -> Result<Polynomial, SymError> {
        if i < 0 {
            return Ok(Polynomial::zero());
        }
        let i = i as usize;
        match self.coeffs.get(i) {
            Some(p) => Ok(p.clone()),
            None if self.exact => Ok(Polynomial::zero()),
            None => Err(SymError::TruncationTooLow { needed: i, order: self.order() }),
        }
    }

    /// `c(V^dual)`: `c_i -> (-1)^i c_i`.
    pub fn dual(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, p)| if i % 2 == 1 { -p } else { p.clone() })
            .collect();
        ChernSeries { coeffs, exact: self.exact }
    }

    /// Product of series (Whitney sum), truncated at `order` when given.
    pub fn product(&self, other: &Self, order: Option<usize>) -> Self {
        let full = self.order() + other.order();
        let limit = match order {
            Some(o) => o.min(full),
            None => full,
        };
        let exact_limit = if self.exact && other.exact { full } else { self.order().min(other.order()) };
        let limit = limit.min(exact_limit);
        let mut coeffs = vec![Polynomial::zero(); limit + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(limit + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(limit + 1 - i) {
                coeffs[i + j] += &(a * b);
            }
        }
        ChernSeries { coeffs, exact: self.exact && other.exact && limit == full }
    }

    /// Multiplicative inverse up to `order`.
    pub fn inverse(&self, order: usize) -> Result<Self, SymError> {
        let mut inv = vec![Polynomial::one()];
        for n in 1..=order {
            let mut acc = Polynomial::zero();
            for k in 1..=n {
                acc -= &(&self.get(k as i64)? * &inv[n - k]);
            }
            inv.push(acc);
        }
        Ok(ChernSeries { coeffs: inv, exact: false })
    }

    /// `self / other` up to `order` (virtual difference `self - other`).
    pub fn quotient(&self, other: &Self, order: usize) -> Result<Self, SymError> {
        let inv = other.inverse(order)?;
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = Polynomial::zero();
            for k in 0..=n {
                acc += &(&self.get(k as i64)? * &inv.coeffs[n - k]);
            }
            coeffs.push(acc);
        }
        Ok(ChernSeries { coeffs, exact: false })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let was = coeffs.len();
        coeffs.truncate(order + 1);
        ChernSeries { coeffs, exact: self.exact && was <= order + 1 }
    }
}

/// Power sums `p_1..p_order` of a bundle in terms of its Chern classes
/// (Newton's identities).
pub fn power_sums(c: &ChernSeries, order: usize) -> Result<Vec<Polynomial>, SymError> {
    let mut p: Vec<Polynomial> = vec![Polynomial::zero()];
    for k in 1..=order {
        let mut acc = c.get(k as i64)?.scale(&Rational::from_integer(k.into()));
        if k % 2 == 0 {
            acc = -&acc;
        }
        for i in 1..k {
            let term = &c.get(i as i64)? * &p[k - i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        p.push(acc);
    }
    Ok(p)
}

/// Chern series from power sums `p_1..p_order` (inverse Newton identities).
pub fn from_power_sums(p: &[Polynomial], order: usize) -> ChernSeries {
    let mut e = vec![Polynomial::one()];
    for k in 1..=order {
        let mut acc = Polynomial::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    ChernSeries { coeffs: e, exact: false }
}

/// `c(Sym^2 V)` up to `order` for `V` of rank `rank` with Chern series `c`,
/// via `p_k(Sym^2 V) = (sum_m C(k,m) p_m p_{k-m} + 2^k p_k) / 2`.
pub fn sym2_series(c: &ChernSeries, rank: u32, order: usize) -> Result<ChernSeries, SymError> {
    let mut p = power_sums(c, order)?;
    p[0] = Polynomial::int(rank as i64);
    let mut q = vec![Polynomial::zero()];
    for k in 1..=order {
        let mut acc = Polynomial::zero();
        for m in 0..=k {
            acc += &(&p[m] * &p[k - m]).scale(&binomial_q(k as i64, m as i64));
        }
        acc += &p[k].scale(&Rational::from_integer(num_bigint::BigInt::from(1u64) << k));
        q.push(acc.scale(&Rational::new(1.into(), 2.into())));
    }
    Ok(from_power_sums(&q, order))
}

/// `c_k` of the shifted roots `x_i + w`, expressed through `c_j` of the
/// roots: `sum_j C(n - j, k - j) c_j w^(k - j)`.
pub fn shifted_chern(c: &ChernSeries, rank: u32, w: &Polynomial) -> Result<ChernSeries, SymError> {
    let n = rank as i64;
    let mut coeffs = Vec::with_capacity(rank as usize + 1);
    for k in 0..=n {
        let mut acc = Polynomial::zero();
        for j in 0..=k {
            let b = binomial_q(n - j, k - j);
            if b.is_zero() {
                continue;
            }
            acc += &(&c.get(j)? * &w.pow((k - j) as u32)).scale(&b);
        }
        coeffs.push(acc);
    }
    Ok(ChernSeries { coeffs, exact: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{expand_chern, int, symmetric_reduce};

    #[test]
    fn quotient_example_ranks_one_two() {
        let a = ChernSeries::generic(Alphabet::Alpha, 1);
        let b = ChernSeries::generic(Alphabet::Beta, 2);
        let q = b.quotient(&a, 2).unwrap();
        let a1 = Polynomial::var(Variable::c_e(1));
        let b1 = Polynomial::var(Variable::c_f(1));
        let b2 = Polynomial::var(Variable::c_f(2));
        assert_eq!(q.get(2).unwrap(), &(&b2 - &(&a1 * &b1)) + &a1.pow(2));
        assert!(matches!(q.get(3), Err(SymError::TruncationTooLow { .. })));
    }

    #[test]
    fn sym2_matches_roots() {
        for e in 1..=4u32 {
            let roots: Vec<Polynomial> = (1..=e)
                .flat_map(|i| (i..=e).map(move |j| (i, j)))
                .map(|(i, j)| &Polynomial::var(Variable::alpha(i)) + &Polynomial::var(Variable::alpha(j)))
                .collect();
            let direct = ChernSeries::from_roots(&roots);
            let via = sym2_series(&ChernSeries::generic(Alphabet::Alpha, e), e, 4).unwrap();
            for k in 0..=4 {
                let lhs = symmetric_reduce(&direct.get(k).unwrap(), Alphabet::Alpha, e).unwrap();
                assert_eq!(lhs, via.get(k).unwrap(), "e={e} k={k}");
            }
        }
    }

    #[test]
    fn shift_matches_roots() {
        let e = 3;
        let z = Polynomial::var(Variable::Z);
        let w = z.scale(&crate::algebra::rat(-1, 2));
        let shifted = shifted_chern(&ChernSeries::generic(Alphabet::Alpha, e), e, &w).unwrap();
        let roots: Vec<Polynomial> = (1..=e).map(|i| &Polynomial::var(Variable::alpha(i)) + &w).collect();
        let direct = ChernSeries::from_roots(&roots);
        for k in 0..=e as i64 {
            assert_eq!(expand_chern(&shifted.get(k).unwrap(), Alphabet::Alpha, e), direct.get(k).unwrap());
        }
        assert_eq!(direct.get(1).unwrap().linear_coefficient(&Variable::Z), int(-3) / int(2));
    }
}
