//! Minimal ring and field abstractions shared by determinants, linear
//! solves and numeric evaluation of large sums.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

pub trait Ring: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

pub trait Field: Ring + PartialEq + std::fmt::Debug {
    fn inv(&self) -> Option<Self>;
    /// `None` when the denominator vanishes in this field.
    fn from_rational(q: &Rational) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
}

/// Element of the prime field of order `2^61 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Fp {
        Fp(v % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let p = Self::MODULUS as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        let v = folded as u64;
        if v >= Self::MODULUS {
            v - Self::MODULUS
        } else {
            v
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            base = Ring::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(n: &BigInt) -> Fp {
        let m = BigInt::from(Self::MODULUS);
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            Fp(self.0 - other.0)
        } else {
            Fp(self.0 + Self::MODULUS - other.0)
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(Self::reduce(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(Self::MODULUS - self.0)
        }
    }
    fn from_i64(n: i64) -> Self {
        let m = Self::MODULUS as i128;
        Fp((((n as i128) % m + m) % m) as u64)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(Self::MODULUS - 2))
        }
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let n = Fp::from_bigint(q.numer());
        let d = Fp::from_bigint(q.denom());
        d.inv().map(|di| Ring::mul(&n, &di))
    }
}

/// Determinant by Laplace expansion over column subsets; division free, so it
/// works over any commutative ring. Cost `O(2^n n)` ring operations.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    assert!(n <= 20, "determinant: matrix too large for subset expansion");
    let mut layer: Vec<(u32, R)> = vec![(0, R::one())];
    for row in m.iter().take(n) {
        let mut next: std::collections::BTreeMap<u32, R> = std::collections::BTreeMap::new();
        for (mask, val) in &layer {
            for (c, entry) in row.iter().enumerate().take(n) {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let term = val.mul(entry);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let slot = next.entry(mask | (1 << c)).or_insert_with(R::zero);
                *slot = slot.add(&term);
            }
        }
        layer = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if layer.is_empty() {
            return R::zero();
        }
    }
    layer.into_iter().next().map(|(_, v)| v).unwrap_or_else(R::zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Inconsistent,
    Underdetermined { rank: usize, unknowns: usize },
}

/// Solves the (possibly overdetermined) system `rows * x = rhs` exactly.
pub fn solve_linear<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Result<Vec<F>, SolveError> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        let Some(sel) = (prow..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(prow, sel);
        let inv = a[prow][col].inv().expect("nonzero pivot");
        for x in a[prow].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..a.len() {
            if i != prow && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in col..=ncols {
                    let delta = factor.mul(&a[prow][j]);
                    a[i][j] = a[i][j].sub(&delta);
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    if a[prow..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    if pivots.len() < ncols {
        return Err(SolveError::Underdetermined {
            rank: pivots.len(),
            unknowns: ncols,
        });
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][ncols].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn fp_inverse_and_rationals() {
        let x = Fp::from_i64(-7);
        assert_eq!(Ring::mul(&x, &x.inv().unwrap()), Fp::one());
        let half = Fp::from_rational(&rat(1, 2)).unwrap();
        assert_eq!(Ring::add(&half, &half), Fp::one());
        assert_eq!(Fp::from_rational(&rat(-3, 4)).unwrap(), Ring::mul(&Fp::from_i64(-3), &Fp::from_i64(4).inv().unwrap()));
    }

    #[test]
    fn determinant_matches_hand_values() {
        let m = vec![vec![int(10), int(10)], vec![int(1), int(5)]];
        assert_eq!(determinant(&m), int(40));
        let m3 = vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(2)],
            vec![int(1), int(1), int(1)],
        ];
        assert_eq!(determinant(&m3), int(2 * (3 - 2) + (1 - 3)));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]];
        let ok = solve_linear(&rows, &[int(3), int(1), int(4)]).unwrap();
        assert_eq!(ok, vec![int(2), int(1)]);
        assert_eq!(
            solve_linear(&rows, &[int(3), int(1), int(5)]),
            Err(SolveError::Inconsistent)
        );
        let under = vec![vec![int(1), int(1)]];
        assert!(matches!(
            solve_linear(&under, &[int(1)]),
            Err(SolveError::Underdetermined { .. })
        ));
    }
}
