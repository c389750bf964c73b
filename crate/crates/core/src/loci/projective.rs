use std::collections::BTreeMap;

use crate::algebra::{Polynomial, Rational, Variable};

use super::weights::{ScalarData, WeightSet};
use super::LociError;

fn shift_alphas(cls: &Polynomial, scalars: &ScalarData, by: &Polynomial) -> Polynomial {
    let map: BTreeMap<Variable, Polynomial> = scalars
        .r
        .iter()
        .enumerate()
        .map(|(i, &ri)| {
            let v = Variable::alpha(i as u32 + 1);
            let coeff = Rational::new(ri.into(), scalars.total.into());
            (v.clone(), &Polynomial::var(v) - &by.scale(&coeff))
        })
        .collect();
    cls.substitute(&map)
}

/// Class of the projectivization: `alpha_i -> alpha_i - (r_i / r) xi`.
pub fn projectivize(cls: &Polynomial, weights: &WeightSet, scalars: &ScalarData) -> Result<Polynomial, LociError> {
    scalars.validate(weights)?;
    Ok(shift_alphas(cls, scalars, &Polynomial::var(Variable::Xi)))
}

/// Restriction of the projectivized class to the fixed point of weight `j`.
pub fn fixed_point_restriction(
    cls: &Polynomial,
    weights: &WeightSet,
    j: usize,
    scalars: &ScalarData,
) -> Result<Polynomial, LociError> {
    scalars.validate(weights)?;
    let w = weights
        .forms()
        .get(j)
        .ok_or_else(|| LociError::InvalidParameters(format!("no weight with index {j}")))?;
    Ok(shift_alphas(cls, scalars, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Polynomial, WeightSet, ScalarData) {
        let w = WeightSet::from_matrix(&[vec![3, -1, 1], vec![1, 2, 2]]);
        (w.forms()[1].clone(), w, ScalarData::new(vec![2, 1, 1], 6))
    }

    #[test]
    fn example_two_weights() {
        let (cls, w, s) = setup();
        assert_eq!(projectivize(&cls, &w, &s).unwrap().to_string(), "alpha1 + 2*alpha2 + 2*alpha3 - xi");
        assert_eq!(fixed_point_restriction(&cls, &w, 0, &s).unwrap().to_string(), "-2*alpha1 + 3*alpha2 + alpha3");
        assert!(fixed_point_restriction(&cls, &w, 1, &s).unwrap().is_zero());
    }

    #[test]
    fn restriction_is_xi_substitution() {
        let (cls, w, s) = setup();
        let sq = &cls * &cls;
        let p = projectivize(&sq, &w, &s).unwrap();
        for j in 0..w.len() {
            let via_xi = p.substitute(&BTreeMap::from([(Variable::Xi, w.forms()[j].clone())]));
            assert_eq!(via_xi, fixed_point_restriction(&sq, &w, j, &s).unwrap());
        }
        let at_zero = p.substitute(&BTreeMap::from([(Variable::Xi, Polynomial::zero())]));
        assert_eq!(at_zero, sq);
    }

    #[test]
    fn bad_scalars_rejected() {
        let (cls, w, _) = setup();
        assert!(projectivize(&cls, &w, &ScalarData::new(vec![1, 1, 1], 6)).is_err());
        assert_eq!(projectivize(&Polynomial::one(), &w, &setup().2).unwrap(), Polynomial::one());
    }
}
