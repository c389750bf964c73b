//! JSON documents for computed classes. Rationals are written as `"p/q"`
//! strings, symbolic coefficients as expressions in the class grammar.

use std::collections::BTreeMap;

use quadloci::algebra::{Polynomial, Rational, RationalFunction};
use quadloci::grr::TautClass;
use serde::{Deserialize, Serialize};

use crate::expr::{parse_class, ExprError};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub basis: Vec<String>,
    pub coefficients: BTreeMap<String, String>,
    /// Scalar result such as a slope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// Auxiliary classes, keyed by name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub related: BTreeMap<String, BTreeMap<String, String>>,
    pub metadata: Metadata,
}

pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

fn coefficient_string(c: &RationalFunction) -> String {
    c.as_constant().map_or_else(|| c.to_string(), |q| rational_string(&q))
}

/// `monomial -> coefficient` for a polynomial, monomials printed as in the grammar.
pub fn polynomial_map(p: &Polynomial) -> BTreeMap<String, String> {
    p.terms().map(|(m, c)| (m.to_string(), rational_string(c))).collect()
}

pub fn taut_map(c: &TautClass) -> BTreeMap<String, String> {
    c.terms().map(|(s, k)| (s.to_string(), coefficient_string(k))).collect()
}

impl ClassDocument {
    pub fn new(command: &str) -> Self {
        Self { metadata: Metadata { command: command.into(), ..Metadata::default() }, ..Self::default() }
    }

    pub fn with_coefficients(mut self, coefficients: BTreeMap<String, String>) -> Self {
        self.basis = coefficients.keys().cloned().collect();
        self.coefficients = coefficients;
        self
    }

    pub fn polynomial(command: &str, p: &Polynomial) -> Self {
        Self::new(command).with_coefficients(polynomial_map(p))
    }

    pub fn taut(command: &str, c: &TautClass) -> Self {
        Self::new(command).with_coefficients(taut_map(c))
    }

    pub fn param(mut self, name: &str, value: impl ToString) -> Self {
        self.metadata.parameters.insert(name.into(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.metadata.notes.push(note.into());
        self
    }

    pub fn value(mut self, v: impl ToString) -> Self {
        self.value = Some(v.to_string());
        self
    }

    pub fn related(mut self, name: &str, coefficients: BTreeMap<String, String>) -> Self {
        self.related.insert(name.into(), coefficients);
        self
    }

    /// Rebuilds the class as `sum coefficient * basis element`; symbols
    /// absent from `coefficients` count as zero.
    pub fn class(&self) -> Result<RationalFunction, ExprError> {
        let none = BTreeMap::new();
        let mut total = RationalFunction::zero();
        for (k, c) in &self.coefficients {
            let basis = parse_class(k)?.evaluate(&none)?;
            let coeff = parse_class(c)?.evaluate(&none)?;
            total = &total + &(&basis * &coeff);
        }
        Ok(total)
    }

    /// Text form: the class, then the value, then notes.
    pub fn render_text(&self) -> String {
        let mut lines = Vec::new();
        if !self.coefficients.is_empty() {
            lines.push(
                self.class()
                    .map(|c| c.to_string())
                    .unwrap_or_else(|_| format!("{:?}", self.coefficients)),
            );
        }
        if let Some(v) = &self.value {
            lines.push(v.clone());
        }
        for (name, coeffs) in &self.related {
            let mut d = ClassDocument::default();
            d.coefficients = coeffs.clone();
            let body = d.class().map(|c| c.to_string()).unwrap_or_else(|_| format!("{coeffs:?}"));
            lines.push(format!("{name}: {body}"));
        }
        for n in &self.metadata.notes {
            lines.push(format!("note: {n}"));
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadloci::algebra::{int, rat, Variable};
    use quadloci::grr::TautSymbol;

    #[test]
    fn polynomial_round_trip() {
        let p = &Polynomial::var(Variable::c_e(1)).scale(&int(-35)) + &Polynomial::var(Variable::c_f(1)).scale(&rat(10, 3));
        let d = ClassDocument::polynomial("test", &p);
        assert_eq!(d.coefficients["c1F"], "10/3");
        let json = serde_json::to_string(&d).unwrap();
        let back: ClassDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.class().unwrap(), RationalFunction::from_poly(p));
    }

    #[test]
    fn taut_round_trip() {
        let c = TautClass::from_terms([
            (TautSymbol::Lambda, RationalFunction::constant(rat(-7, 2))),
            (TautSymbol::Delta(0), RationalFunction::int(1)),
        ]);
        let d = ClassDocument::taut("test", &c);
        assert_eq!(d.basis, vec!["delta0".to_string(), "lambda".to_string()]);
        assert_eq!(d.coefficients["lambda"], "-7/2");
        let expected = parse_class("delta0 - 7/2*lambda").unwrap().evaluate(&BTreeMap::new()).unwrap();
        assert_eq!(d.class().unwrap(), expected);
    }
}
