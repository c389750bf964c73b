use crate::algebra::{binomial, Polynomial, Rational, Variable};
use crate::symfunc::{a_const, b_const, AMethod};

use super::LociError;

/// `f = C(e+1,2) - C(r+1,2)`, the rank of `F` making `Sigma^r_{e,f}` a
/// divisor. Fails when it is not positive.
pub fn divisorial_f(e: u32, r: u32) -> Result<u32, LociError> {
    if r > e {
        return Err(LociError::InvalidParameters(format!("need r <= e, got e={e}, r={r}")));
    }
    let f = binomial(e as i64 + 1, 2) - binomial(r as i64 + 1, 2);
    let f = i64::try_from(f).expect("small binomial");
    if f < 1 {
        return Err(LociError::NotDivisorial { e, r, f });
    }
    Ok(f as u32)
}

fn linear(c_e: Rational, c_f: Rational) -> Polynomial {
    &Polynomial::var(Variable::c_e(1)).scale(&c_e) + &Polynomial::var(Variable::c_f(1)).scale(&c_f)
}

/// `A_e^r (c_1(F) - (2f/e) c_1(E))`.
pub fn closed_divisor_class(e: u32, r: u32) -> Result<Polynomial, LociError> {
    let f = divisorial_f(e, r)?;
    let a = a_const(e, r, AMethod::Product)?;
    let ratio = Rational::new((2 * f as i64).into(), (e as i64).into());
    Ok(linear(-(&a * ratio), a))
}

/// The same class before using the divisorial condition:
/// `A c_1(F) - (A (e+1) + B) c_1(E)`.
pub fn closed_divisor_class_from_constants(e: u32, r: u32) -> Result<Polynomial, LociError> {
    divisorial_f(e, r)?;
    let a = a_const(e, r, AMethod::Determinant)?;
    let b = b_const(e, r)?;
    let ce = -(&a * Rational::from_integer((e as i64 + 1).into()) + b);
    Ok(linear(ce, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_examples() {
        assert_eq!(closed_divisor_class(3, 1).unwrap().to_string(), "-10*c1E + 3*c1F");
        assert_eq!(closed_divisor_class(4, 2).unwrap().to_string(), "-35*c1E + 10*c1F");
        assert_eq!(closed_divisor_class(5, 2).unwrap().to_string(), "-96*c1E + 20*c1F");
    }

    #[test]
    fn two_forms_agree() {
        for e in 1..=8 {
            for r in 1..=e {
                if divisorial_f(e, r).is_ok() {
                    assert_eq!(closed_divisor_class(e, r).unwrap(), closed_divisor_class_from_constants(e, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn non_divisorial() {
        assert!(matches!(closed_divisor_class(2, 2), Err(LociError::NotDivisorial { f: 0, .. })));
    }
}
