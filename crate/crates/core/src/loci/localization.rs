//! Torus localization for the class of the locus `Sigma^r_{e,f}`.
//!
//! For `W = {alpha_i + alpha_j : i <= j}` and `d = |W| - f`,
//!
//! ```text
//! sum_{H subset W, |H| = d} sum_{gamma in H}
//!     h_r(alpha - gamma/2) * prod_j prod_{delta in H} (beta_j - delta)
//!   / ( prod_{delta in W - gamma} (delta - gamma)
//!       * prod_{delta in H - gamma} prod_{eps in W - H} (eps - delta) )
//! ```
//!
//! is a polynomial of degree `C(r+1, 2) - d + 1`, symmetric in the
//! `alpha`s and in the `beta`s.
//!
//! Three evaluation routes share the same term enumeration:
//! * [`LocalizationSum::sum_symbolic`] builds every term as a rational
//!   function and cancels the common denominator with `sum_fractions`.
//!   Exact, but the LCD grows quickly, so it is meant for `e <= 3`.
//! * [`LocalizationSum::interpolate_chern`] evaluates the sum exactly at
//!   integer points and solves for the coefficients in the basis
//!   `c_mu(E) c_nu(F)`, with extra points as a consistency check.
//! * [`LocalizationSum::check_properties`] evaluates over `F_p` to test
//!   polynomiality, homogeneity and symmetry for sums with tens of
//!   thousands of terms.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{
    binomial, expand_chern, solve_linear, sum_fractions, Alphabet, Field, Fp, Monomial, Polynomial, Rational,
    RationalFunction, Ring, SolveError, Variable,
};
use crate::symfunc::{partitions, sym_degeneracy_class, sym_degeneracy_class_chern, Partition};

use super::weights::sym2_pairs;
use super::LociError;

#[derive(Clone, Debug)]
pub struct LocalizationSum {
    e: u32,
    f: u32,
    r: u32,
    d: usize,
    pairs: Vec<(u32, u32)>,
    h_chern: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizationMethod {
    Symbolic,
    Interpolation,
}

/// Outcome of the randomized structural checks over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub degree: u32,
    pub polynomial: bool,
    pub homogeneous: bool,
    pub symmetric_alpha: bool,
    pub symmetric_beta: bool,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.polynomial && self.homogeneous && self.symmetric_alpha && self.symmetric_beta
    }
}

fn c2(n: u32) -> u32 {
    n * (n + 1) / 2
}

impl LocalizationSum {
    pub fn new(e: u32, f: u32, r: u32) -> Result<Self, LociError> {
        if r == 0 || r > e {
            return Err(LociError::InvalidParameters(format!("need 1 <= r <= e, got r={r}, e={e}")));
        }
        let w = c2(e);
        if f > w {
            return Err(LociError::InvalidParameters(format!("f={f} exceeds rank of Sym^2 E ({w})")));
        }
        let d = w - f;
        if d == 0 || d > c2(r) {
            return Err(LociError::InvalidParameters(format!(
                "need 1 <= d <= C(r+1,2), got d={d} for (e,f,r)=({e},{f},{r})"
            )));
        }
        Ok(LocalizationSum {
            e,
            f,
            r,
            d: d as usize,
            pairs: sym2_pairs(e),
            h_chern: sym_degeneracy_class_chern(r, e)?,
        })
    }

    /// Same sum with the weights enumerated in a random order.
    pub fn shuffled(mut self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.pairs.shuffle(&mut rng);
        self
    }

    pub fn codimension_in_fibre(&self) -> usize {
        self.d
    }

    /// Degree of the resulting class.
    pub fn degree(&self) -> u32 {
        c2(self.r) + 1 - self.d as u32
    }

    pub fn term_count(&self) -> usize {
        let n = binomial(self.pairs.len() as i64, self.d as i64);
        usize::try_from(n).unwrap_or(usize::MAX).saturating_mul(self.d)
    }

    fn subsets(&self) -> Vec<Vec<usize>> {
        (0..self.pairs.len()).combinations(self.d).collect()
    }

    /// Value of the sum at a point. Fails if two weights coincide there.
    pub fn evaluate<F: Field>(&self, alpha: &[F], beta: &[F]) -> Result<F, LociError> {
        assert_eq!(alpha.len(), self.e as usize);
        assert_eq!(beta.len(), self.f as usize);
        let w: Vec<F> = self
            .pairs
            .iter()
            .map(|&(i, j)| alpha[i as usize - 1].add(&alpha[j as usize - 1]))
            .collect();
        let n = w.len();
        let half = F::from_rational(&Rational::new(1.into(), 2.into())).ok_or(LociError::DegeneratePoint)?;
        let mut h_over_e = Vec::with_capacity(n);
        let mut p = Vec::with_capacity(n);
        for k in 0..n {
            let mut ek = F::one();
            for l in 0..n {
                if l != k {
                    ek = ek.mul(&w[l].sub(&w[k]));
                }
            }
            let ek_inv = ek.inv().ok_or(LociError::DegeneratePoint)?;
            let shift = w[k].mul(&half);
            let shifted: Vec<F> = alpha.iter().map(|a| a.sub(&shift)).collect();
            let el = elementary_values(&shifted);
            let h = self
                .h_chern
                .evaluate(&|v: &Variable| match v {
                    Variable::Chern(Alphabet::Alpha, i) => el.get(*i as usize).cloned().unwrap_or_else(F::zero),
                    _ => F::zero(),
                })
                .ok_or(LociError::DegeneratePoint)?;
            h_over_e.push(h.mul(&ek_inv));
            p.push(beta.iter().fold(F::one(), |acc, b| acc.mul(&b.sub(&w[k]))));
        }
        let subsets = self.subsets();
        let total = subsets
            .par_iter()
            .map(|h| -> Result<F, LociError> {
                let mut in_h = vec![false; n];
                for &k in h {
                    in_h[k] = true;
                }
                let mut ph = F::one();
                let mut qall = F::one();
                let mut inner = F::zero();
                for &delta in h {
                    let mut q = F::one();
                    for eps in 0..n {
                        if !in_h[eps] {
                            q = q.mul(&w[eps].sub(&w[delta]));
                        }
                    }
                    ph = ph.mul(&p[delta]);
                    qall = qall.mul(&q);
                    inner = inner.add(&h_over_e[delta].mul(&q));
                }
                let qinv = qall.inv().ok_or(LociError::DegeneratePoint)?;
                Ok(ph.mul(&qinv).mul(&inner))
            })
            .try_reduce(F::zero, |a, b| Ok(a.add(&b)))?;
        Ok(total)
    }

    /// Every `(H, gamma)` term as a rational function in the roots.
    pub fn symbolic_terms(&self) -> Result<Vec<RationalFunction>, LociError> {
        let w: Vec<Polynomial> = self
            .pairs
            .iter()
            .map(|&(i, j)| &Polynomial::var(Variable::alpha(i)) + &Polynomial::var(Variable::alpha(j)))
            .collect();
        let n = w.len();
        let h_roots = sym_degeneracy_class(self.r, self.e)?;
        let half = Rational::new(1.into(), 2.into());
        let shifted_h: Vec<Polynomial> = w
            .iter()
            .map(|gamma| {
                let map: BTreeMap<Variable, Polynomial> = (1..=self.e)
                    .map(|i| (Variable::alpha(i), &Polynomial::var(Variable::alpha(i)) - &gamma.scale(&half)))
                    .collect();
                h_roots.substitute(&map)
            })
            .collect();
        let p: Vec<Polynomial> = w
            .iter()
            .map(|delta| {
                (1..=self.f).fold(Polynomial::one(), |acc, j| &acc * &(&Polynomial::var(Variable::beta(j)) - delta))
            })
            .collect();
        let subsets = self.subsets();
        let terms: Vec<Vec<RationalFunction>> = subsets
            .par_iter()
            .map(|h| -> Result<Vec<RationalFunction>, LociError> {
                let ph = h.iter().fold(Polynomial::one(), |acc, &k| &acc * &p[k]);
                let rest: Vec<usize> = (0..n).filter(|k| !h.contains(k)).collect();
                let mut out = Vec::with_capacity(h.len());
                for &gamma in h {
                    let mut factors = Vec::new();
                    for delta in (0..n).filter(|&k| k != gamma) {
                        factors.push((&w[delta] - &w[gamma], 1));
                    }
                    for &delta in h.iter().filter(|&&k| k != gamma) {
                        for &eps in &rest {
                            factors.push((&w[eps] - &w[delta], 1));
                        }
                    }
                    out.push(RationalFunction::with_factors(&shifted_h[gamma] * &ph, factors)?);
                }
                Ok(out)
            })
            .collect::<Result<_, _>>()?;
        Ok(terms.into_iter().flatten().collect())
    }

    /// Exact symbolic sum in the roots `alpha_i`, `beta_j`.
    pub fn sum_symbolic(&self) -> Result<Polynomial, LociError> {
        Ok(sum_fractions(&self.symbolic_terms()?)?)
    }

    /// Basis `c_mu(E) c_nu(F)` of bi-symmetric forms of the class degree.
    fn chern_basis(&self) -> Vec<(Partition, Partition)> {
        let top = self.degree();
        let mut basis = Vec::new();
        for a in 0..=top {
            for mu in partitions(a, self.e) {
                for nu in partitions(top - a, self.f) {
                    basis.push((mu.clone(), nu));
                }
            }
        }
        basis
    }

    /// The class in the Chern symbols `c_i(E)`, `c_j(F)`, determined from
    /// exact values at random integer points.
    ///
    /// Extra sample points beyond the basis size must be fitted exactly;
    /// otherwise the sum is not a bi-symmetric form of the expected degree
    /// and `NotPolynomial` is returned.
    pub fn interpolate_chern(&self, seed: u64) -> Result<Polynomial, LociError> {
        const EXTRA: usize = 4;
        let basis = self.chern_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let bound = 64 * (self.e + self.f) as i64 + 64;
        let mut attempts = 0;
        let mut target = basis.len() + EXTRA;
        loop {
            while rows.len() < target {
                attempts += 1;
                if attempts > 20 * target + 100 {
                    return Err(LociError::NotPolynomial("could not find enough generic sample points".into()));
                }
                let alpha: Vec<Rational> = (0..self.e).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
                let beta: Vec<Rational> = (0..self.f).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
                let value = match self.evaluate(&alpha, &beta) {
                    Ok(v) => v,
                    Err(LociError::DegeneratePoint) => continue,
                    Err(e) => return Err(e),
                };
                let ea = elementary_values(&alpha);
                let eb = elementary_values(&beta);
                rows.push(
                    basis
                        .iter()
                        .map(|(mu, nu)| {
                            let x = mu.parts().iter().fold(Rational::from_integer(1.into()), |acc, &k| acc * &ea[k as usize]);
                            nu.parts().iter().fold(x, |acc, &k| acc * &eb[k as usize])
                        })
                        .collect(),
                );
                rhs.push(value);
            }
            match solve_linear(&rows, &rhs) {
                Ok(x) => {
                    let mut out = Polynomial::zero();
                    for ((mu, nu), c) in basis.iter().zip(x) {
                        if c.is_zero() {
                            continue;
                        }
                        let m = Monomial::from_pairs(
                            mu.parts()
                                .iter()
                                .map(|&k| (Variable::c_e(k), 1))
                                .chain(nu.parts().iter().map(|&k| (Variable::c_f(k), 1))),
                        );
                        out.add_term(m, c);
                    }
                    return Ok(out);
                }
                Err(SolveError::Inconsistent) => {
                    return Err(LociError::NotPolynomial(format!(
                        "sum for (e,f,r)=({},{},{}) is not a bi-symmetric form of degree {}",
                        self.e,
                        self.f,
                        self.r,
                        self.degree()
                    )))
                }
                Err(SolveError::Underdetermined { .. }) => {
                    // unlucky sample points; draw more
                    target += basis.len();
                }
            }
        }
    }

    /// Randomized checks over `F_p`: polynomial of degree at most `degree()`
    /// along a random line, homogeneous of exact degree, and invariant under
    /// adjacent transpositions of the `alpha`s and of the `beta`s.
    pub fn check_properties(&self, seed: u64) -> Result<PropertyReport, LociError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rand_vec = |n: u32, rng: &mut ChaCha8Rng| -> Vec<Fp> { (0..n).map(|_| Fp::new(rng.gen())).collect() };
        let deg = self.degree();
        let (x_a, x_b) = (rand_vec(self.e, &mut rng), rand_vec(self.f, &mut rng));
        let (v_a, v_b) = (rand_vec(self.e, &mut rng), rand_vec(self.f, &mut rng));

        let line: Vec<Fp> = (0..deg as i64 + 4)
            .map(|t| {
                let tt = Fp::from_i64(t);
                let a: Vec<Fp> = x_a.iter().zip(&v_a).map(|(x, v)| x.add(&v.mul(&tt))).collect();
                let b: Vec<Fp> = x_b.iter().zip(&v_b).map(|(x, v)| x.add(&v.mul(&tt))).collect();
                self.evaluate(&a, &b)
            })
            .collect::<Result<_, _>>()?;
        let mut diffs = line;
        for _ in 0..=deg {
            diffs = diffs.windows(2).map(|w| w[1].sub(&w[0])).collect();
        }
        let polynomial = diffs.iter().all(|x| x.is_zero());

        let base = self.evaluate(&x_a, &x_b)?;
        let lambda = Fp::new(rng.gen());
        let scaled = self.evaluate(
            &x_a.iter().map(|x| x.mul(&lambda)).collect::<Vec<_>>(),
            &x_b.iter().map(|x| x.mul(&lambda)).collect::<Vec<_>>(),
        )?;
        let homogeneous = scaled == base.mul(&lambda.pow(deg as u64));

        let mut symmetric_alpha = true;
        for i in 0..x_a.len().saturating_sub(1) {
            let mut a = x_a.clone();
            a.swap(i, i + 1);
            symmetric_alpha &= self.evaluate(&a, &x_b)? == base;
        }
        let mut symmetric_beta = true;
        for j in 0..x_b.len().saturating_sub(1) {
            let mut b = x_b.clone();
            b.swap(j, j + 1);
            symmetric_beta &= self.evaluate(&x_a, &b)? == base;
        }
        Ok(PropertyReport { degree: deg, polynomial, homogeneous, symmetric_alpha, symmetric_beta })
    }
}

/// `[e_0, e_1, ..., e_n]` of the given values.
pub fn elementary_values<F: Field>(xs: &[F]) -> Vec<F> {
    let mut e = vec![F::one()];
    for x in xs {
        e.push(F::zero());
        for k in (1..e.len()).rev() {
            let t = e[k - 1].mul(x);
            e[k] = e[k].add(&t);
        }
    }
    e
}

/// The class of `Sigma^r_{e,f}` in the roots `alpha_i`, `beta_j`.
pub fn localization_class(e: u32, f: u32, r: u32) -> Result<Polynomial, LociError> {
    localization_class_with(e, f, r, LocalizationMethod::Interpolation)
}

pub fn localization_class_with(e: u32, f: u32, r: u32, method: LocalizationMethod) -> Result<Polynomial, LociError> {
    let sum = LocalizationSum::new(e, f, r)?;
    match method {
        LocalizationMethod::Symbolic => sum.sum_symbolic(),
        LocalizationMethod::Interpolation => {
            let chern = sum.interpolate_chern(DEFAULT_SEED)?;
            Ok(expand_chern(&expand_chern(&chern, Alphabet::Alpha, e), Alphabet::Beta, f))
        }
    }
}

/// The class in the Chern symbols `c_i(E)`, `c_j(F)`.
pub fn localization_class_chern(e: u32, f: u32, r: u32) -> Result<Polynomial, LociError> {
    LocalizationSum::new(e, f, r)?.interpolate_chern(DEFAULT_SEED)
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn worked_two_by_two_example() {
        let s = localization_class_with(2, 2, 1, LocalizationMethod::Symbolic).unwrap();
        let a = |i| Polynomial::var(Variable::alpha(i));
        let b = |j| Polynomial::var(Variable::beta(j));
        let expected = &(&a(1) + &a(2)).scale(&int(-4)) + &(&b(1) + &b(2)).scale(&int(2));
        assert_eq!(s, expected);
        assert_eq!(localization_class(2, 2, 1).unwrap(), expected);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LocalizationSum::new(2, 2, 3).is_err());
        assert!(LocalizationSum::new(3, 6, 1).is_err()); // d = 0
        assert!(LocalizationSum::new(3, 3, 1).is_err()); // d = 3 > 1
    }

    #[test]
    fn term_counts() {
        assert_eq!(LocalizationSum::new(5, 12, 2).unwrap().term_count(), 1365);
        assert_eq!(LocalizationSum::new(2, 2, 1).unwrap().term_count(), 3);
    }

    #[test]
    fn elementary_values_small() {
        let e = elementary_values(&[int(1), int(2), int(3)]);
        assert_eq!(e, vec![int(1), int(6), int(11), int(6)]);
    }
}
