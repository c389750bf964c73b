use num_traits::Zero;

use crate::algebra::{Polynomial, Rational, Variable};

use super::LociError;

/// Ordered list of torus weights, each a linear form in the `alpha_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSet {
    forms: Vec<Polynomial>,
}

impl WeightSet {
    pub fn new(forms: Vec<Polynomial>) -> Self {
        WeightSet { forms }
    }

    /// Weights `sum_i s[j][i] alpha_i` of a representation given by its
    /// integer weight matrix.
    pub fn from_matrix(s: &[Vec<i64>]) -> Self {
        let forms = s
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(Polynomial::zero(), |acc, (i, &c)| {
                    &acc + &Polynomial::var(Variable::alpha(i as u32 + 1)).scale(&Rational::from_integer(c.into()))
                })
            })
            .collect();
        WeightSet { forms }
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Coefficient of `alpha_i` (1-based) in weight `j` (0-based).
    pub fn coefficient(&self, j: usize, i: u32) -> Rational {
        self.forms[j].linear_coefficient(&Variable::alpha(i))
    }
}

/// Index pairs `(i, j)`, `i <= j`, in lexicographic order.
pub fn sym2_pairs(e: u32) -> Vec<(u32, u32)> {
    (1..=e).flat_map(|i| (i..=e).map(move |j| (i, j))).collect()
}

/// Weights `alpha_i + alpha_j` of `Sym^2 E`.
pub fn sym2_weights(e: u32) -> WeightSet {
    WeightSet::new(
        sym2_pairs(e)
            .into_iter()
            .map(|(i, j)| &Polynomial::var(Variable::alpha(i)) + &Polynomial::var(Variable::alpha(j)))
            .collect(),
    )
}

/// Scalar action data: `GL` factor `i` acts on the scalars through
/// `r_i`, and scalars of the representation have weight `total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarData {
    pub r: Vec<i64>,
    pub total: i64,
}

impl ScalarData {
    pub fn new(r: Vec<i64>, total: i64) -> Self {
        ScalarData { r, total }
    }

    /// Every weight must satisfy `sum_i r_i s_{j,i} = total`.
    pub fn validate(&self, weights: &WeightSet) -> Result<(), LociError> {
        if self.total == 0 {
            return Err(LociError::InvalidParameters("scalar weight r must be nonzero".into()));
        }
        for j in 0..weights.len() {
            let got = self
                .r
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, &ri)| acc + weights.coefficient(j, i as u32 + 1) * Rational::from_integer(ri.into()));
            if got != Rational::from_integer(self.total.into()) {
                return Err(LociError::ScalarMismatch { weight: j, got: got.to_string(), expected: self.total });
            }
        }
        Ok(())
    }
}
