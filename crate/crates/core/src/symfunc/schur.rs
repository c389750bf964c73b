use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{binomial, binomial_q, determinant, Alphabet, Polynomial, Rational};

use super::chern::ChernSeries;
use super::partition::Partition;
use super::SymError;

/// `s_lambda(c) = det(c_{lambda_i + j - i})`.
pub fn schur(lambda: &Partition, c: &ChernSeries) -> Result<Polynomial, SymError> {
    let n = lambda.len();
    let mut m = Vec::with_capacity(n);
    for (i, &li) in lambda.parts().iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(c.get(li as i64 + j as i64 - i as i64)?);
        }
        m.push(row);
    }
    Ok(determinant(&m))
}

/// Giambelli–Thom–Porteous class of the locus where `A -> B` (ranks `n`,
/// `n + ell`) has rank at most `n - r`: `s_{(r+ell)^r}(c(B - A))`.
pub fn gtp_class(r: u32, ell: u32, a: &ChernSeries, b: &ChernSeries) -> Result<Polynomial, SymError> {
    if r == 0 {
        return Ok(Polynomial::one());
    }
    let needed = (r + ell + r - 1) as usize;
    let c = b.quotient(a, needed)?;
    schur(&Partition::rectangle(r, r + ell), &c)
}

/// `h_r = 2^r s_{(r, r-1, ..., 1)}` of the roots of `E` (rank `e`).
pub fn sym_degeneracy_class(r: u32, e: u32) -> Result<Polynomial, SymError> {
    let c = ChernSeries::of_alphabet(Alphabet::Alpha, e);
    Ok(schur(&Partition::staircase(r), &c)?.scale(&pow2(r as i64)))
}

/// `h_r` written in the formal Chern classes `c_i(E)`.
pub fn sym_degeneracy_class_chern(r: u32, e: u32) -> Result<Polynomial, SymError> {
    let c = ChernSeries::generic(Alphabet::Alpha, e);
    Ok(schur(&Partition::staircase(r), &c)?.scale(&pow2(r as i64)))
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AMethod {
    Product,
    Determinant,
}

/// Degree of the locus of corank-`r` quadrics in `P(Sym^2 C^e)`.
///
/// Product: `prod_{i<r} C(e+i, r-i) / C(2i+1, i)`.
/// Determinant: `2^{-C(r,2)} det(C(e, r+1-2i+j))_{i,j=1..r}`.
pub fn a_const(e: u32, r: u32, method: AMethod) -> Result<Rational, SymError> {
    if r > e {
        return Err(SymError::InvalidRange(format!("A_e^r needs r <= e, got e={e}, r={r}")));
    }
    let (e, r) = (e as i64, r as i64);
    match method {
        AMethod::Product => {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for i in 0..r {
                num *= binomial(e + i, r - i);
                den *= binomial(2 * i + 1, i);
            }
            Ok(Rational::new(num, den))
        }
        AMethod::Determinant => {
            let m: Vec<Vec<Rational>> = (1..=r)
                .map(|i| (1..=r).map(|j| binomial_q(e, r + 1 - 2 * i + j)).collect())
                .collect();
            Ok(determinant(&m) * pow2(-(r * (r - 1) / 2)))
        }
    }
}

/// `B_e^r = -(2/e) C(r+1, 2) A_e^r`.
pub fn b_const(e: u32, r: u32) -> Result<Rational, SymError> {
    let a = a_const(e, r, AMethod::Product)?;
    Ok(a * Rational::new(binomial(r as i64 + 1, 2) * BigInt::from(-2), BigInt::from(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, pv, Variable};

    #[test]
    fn gtp_small_examples() {
        let a1 = ChernSeries::generic(Alphabet::Alpha, 1);
        let b1 = ChernSeries::generic(Alphabet::Beta, 1);
        let cls = gtp_class(1, 0, &a1, &b1).unwrap();
        assert_eq!(cls, &pv(Variable::c_f(1)) - &pv(Variable::c_e(1)));
        let b2 = ChernSeries::generic(Alphabet::Beta, 2);
        let cls = gtp_class(1, 1, &a1, &b2).unwrap();
        let (a, b, bb) = (pv(Variable::c_e(1)), pv(Variable::c_f(1)), pv(Variable::c_f(2)));
        assert_eq!(cls, &(&bb - &(&a * &b)) + &a.pow(2));
    }

    #[test]
    fn h1_is_twice_c1() {
        let h = sym_degeneracy_class(1, 2).unwrap();
        assert_eq!(h, (&pv(Variable::alpha(1)) + &pv(Variable::alpha(2))).scale(&int(2)));
    }

    #[test]
    fn a_values() {
        assert_eq!(a_const(2, 1, AMethod::Product).unwrap(), int(2));
        assert_eq!(a_const(5, 2, AMethod::Determinant).unwrap(), int(20));
        assert_eq!(a_const(7, 4, AMethod::Product).unwrap(), int(672));
        assert_eq!(a_const(4, 0, AMethod::Determinant).unwrap(), int(1));
        assert!(a_const(2, 3, AMethod::Product).is_err());
        assert_eq!(b_const(2, 1).unwrap(), int(-2));
    }
}
