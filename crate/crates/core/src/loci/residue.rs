//! Constant-term form of the localization sum.
//!
//! Writing `h_r(alpha - z/2) = sum_k H_k z^k` and `c = c(F^dual - Sym^2 E^dual)`,
//! the `z^0` coefficient forces `m_1 + ... + m_d = k - d + 1` for the
//! geometric-series exponents of `(1 - u_j/z)^{-1}`. The remaining `u^0`
//! coefficient of `prod u_j^{m_j} prod_{i<j} (1 - u_i/u_j) prod_j c(1/u_j)`
//! is `det(c_{m_i + j - i})`, since `prod_{i<j}(1 - u_i/u_j)` is the
//! Vandermonde determinant divided by `prod u_j^{j-1}`.

use itertools::Itertools;

use crate::algebra::{binomial, determinant, rat, Alphabet, Polynomial, Rational, Variable};
use crate::symfunc::{schur, shifted_chern, sym2_series, ChernSeries, Partition};

use super::closed::divisorial_f;
use super::weights::sym2_weights;
use super::LociError;

/// `c(F^dual - Sym^2 E^dual)` up to `order`, in the roots `alpha`, `beta`.
pub fn chern_difference(e: u32, f: u32, order: usize) -> Result<ChernSeries, LociError> {
    let f_dual: Vec<Polynomial> = (1..=f).map(|j| -&Polynomial::var(Variable::beta(j))).collect();
    let s_dual: Vec<Polynomial> = sym2_weights(e).forms().iter().map(|w| -w).collect();
    let num = ChernSeries::from_roots(&f_dual);
    let den = ChernSeries::from_roots(&s_dual);
    Ok(num.quotient(&den, order)?)
}

/// `c(F^dual - Sym^2 E^dual)` up to `order`, in the symbols `c_i(E)`, `c_j(F)`.
pub fn chern_difference_chern(e: u32, f: u32, order: usize) -> Result<ChernSeries, LociError> {
    let cf = ChernSeries::generic(Alphabet::Beta, f).dual();
    let cs = sym2_series(&ChernSeries::generic(Alphabet::Alpha, e), e, order)?.dual();
    Ok(cf.quotient(&cs, order)?)
}

/// Coefficients `H_k` of `z^k` in `h_r(alpha - z/2)`, in Chern symbols of `E`.
fn shifted_h(r: u32, e: u32) -> Result<Vec<Polynomial>, LociError> {
    let z = Polynomial::var(Variable::Z);
    let w = z.scale(&rat(-1, 2));
    let c = shifted_chern(&ChernSeries::generic(Alphabet::Alpha, e), e, &w)?;
    let h = schur(&Partition::staircase(r), &c)?.scale(&Rational::from_integer(num_bigint::BigInt::from(1u64) << r));
    let top = (r * (r + 1) / 2) as usize;
    let coeffs = h.coefficients_in(&Variable::Z);
    Ok((0..=top).map(|k| coeffs.get(&(k as u32)).cloned().unwrap_or_else(Polynomial::zero)).collect())
}

/// The class of `Sigma^r_{e,f}` in Chern symbols by constant-term extraction.
pub fn residue_class(e: u32, f: u32, r: u32) -> Result<Polynomial, LociError> {
    if r == 0 || r > e {
        return Err(LociError::InvalidParameters(format!("need 1 <= r <= e, got r={r}, e={e}")));
    }
    let w = i64::try_from(binomial(e as i64 + 1, 2)).unwrap();
    let top = i64::try_from(binomial(r as i64 + 1, 2)).unwrap();
    let d = w - f as i64;
    if d < 1 || d > top {
        return Err(LociError::InvalidParameters(format!(
            "need 1 <= d <= C(r+1,2), got d={d} for (e,f,r)=({e},{f},{r})"
        )));
    }
    let (d, top) = (d as usize, top as usize);
    let degree = top + 1 - d;
    let hk = shifted_h(r, e)?;
    let c = chern_difference_chern(e, f, degree)?;

    let mut total = Polynomial::zero();
    for (k, h) in hk.iter().enumerate() {
        if h.is_zero() || k + 1 < d {
            continue;
        }
        let m_total = k + 1 - d;
        let mut inner = Polynomial::zero();
        for m in compositions(m_total, d) {
            // every nonzero permutation term has indices summing to
            // `m_total`, so entries above it never contribute
            let entry = |i: usize, j: usize| {
                let idx = m[i] as i64 + j as i64 - i as i64;
                if idx > m_total as i64 {
                    Ok(Polynomial::zero())
                } else {
                    c.get(idx)
                }
            };
            let mat: Vec<Vec<Polynomial>> = (0..d)
                .map(|i| (0..d).map(|j| entry(i, j)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            inner += &determinant(&mat);
        }
        total += &(h * &inner);
    }
    if d % 2 == 0 {
        total = -&total;
    }
    Ok(total)
}

/// Residue form in the divisorial case `f = C(e+1,2) - C(r+1,2)`.
pub fn residue_divisor_class(e: u32, r: u32) -> Result<Polynomial, LociError> {
    let f = divisorial_f(e, r)?;
    residue_class(e, f, r)
}

/// Weak compositions of `n` into `parts` parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    // stars and bars: positions of the `parts - 1` bars among `n + parts - 1` slots
    (0..n + parts - 1)
        .combinations(parts - 1)
        .map(|bars| {
            let mut out = Vec::with_capacity(parts);
            let mut prev = 0;
            for b in bars.iter().copied().chain(std::iter::once(n + parts - 1)) {
                out.push(b - prev);
                prev = b + 1;
            }
            out
        })
        .collect()
}
