use std::fmt;

use num_traits::Zero;

use crate::algebra::{Rational, RationalFunction};
use crate::grr::{TautClass, TautSymbol};

use super::ModuliError;

/// Boundary part of a divisor `a lambda - sum b_i delta_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Every `delta_i` with the same coefficient `b`.
    Uniform(RationalFunction),
    /// `b_0, b_1, ...`; `ellipsis` marks further unspecified terms.
    Explicit { coeffs: Vec<RationalFunction>, ellipsis: bool },
}

/// `prefactor * (a lambda - sum b_i delta_i)` on the moduli space of curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliDivisor {
    pub genus: RationalFunction,
    pub prefactor: RationalFunction,
    pub lambda: RationalFunction,
    pub boundary: Boundary,
}

impl ModuliDivisor {
    pub fn uniform(genus: RationalFunction, prefactor: RationalFunction, a: RationalFunction, b: RationalFunction) -> Self {
        Self { genus, prefactor, lambda: a, boundary: Boundary::Uniform(b) }
    }

    pub fn explicit(
        genus: RationalFunction,
        prefactor: RationalFunction,
        a: RationalFunction,
        b: Vec<RationalFunction>,
        ellipsis: bool,
    ) -> Self {
        Self { genus, prefactor, lambda: a, boundary: Boundary::Explicit { coeffs: b, ellipsis } }
    }

    /// `b_0`, the coefficient that survives on the partial compactification.
    pub fn delta0(&self) -> &RationalFunction {
        match &self.boundary {
            Boundary::Uniform(b) => b,
            Boundary::Explicit { coeffs, .. } => &coeffs[0],
        }
    }

    /// The class with the prefactor multiplied in. A uniform boundary becomes
    /// `delta`; an explicit one becomes `delta0, delta1, ...`.
    pub fn to_taut(&self) -> TautClass {
        let p = &self.prefactor;
        let mut out = TautClass::term(TautSymbol::Lambda, p * &self.lambda);
        match &self.boundary {
            Boundary::Uniform(b) => out.add_term(TautSymbol::DeltaTotal, -(p * b)),
            Boundary::Explicit { coeffs, .. } => {
                for (i, b) in coeffs.iter().enumerate() {
                    out.add_term(TautSymbol::Delta(i as u32), -(p * b));
                }
            }
        }
        out
    }

    /// Restriction to the partial compactification: `prefactor * (a lambda - b_0 delta0)`.
    pub fn partial(&self) -> TautClass {
        let p = &self.prefactor;
        TautClass::from_terms([(TautSymbol::Lambda, p * &self.lambda), (TautSymbol::Delta(0), -(p * self.delta0()))])
    }

    /// `a / b_0`; for symbolic parameters this is the only computable slope.
    pub fn slope_partial(&self) -> Result<RationalFunction, ModuliError> {
        if self.delta0().is_zero() {
            return Err(ModuliError::BoundaryCoefficientNonpositive("b_0 = 0".into()));
        }
        Ok(&self.lambda / self.delta0())
    }

    /// `a / min b_i` over the boundary coefficients that are present.
    pub fn slope(&self) -> Result<Rational, ModuliError> {
        let a = constant(&self.lambda)?;
        let bs: Vec<Rational> = match &self.boundary {
            Boundary::Uniform(b) => vec![constant(b)?],
            Boundary::Explicit { coeffs, .. } => coeffs.iter().map(constant).collect::<Result<_, _>>()?,
        };
        let min = bs.into_iter().min().ok_or_else(|| ModuliError::BoundaryCoefficientNonpositive("no boundary term".into()))?;
        if min <= Rational::zero() {
            return Err(ModuliError::BoundaryCoefficientNonpositive(format!("min b_i = {min}")));
        }
        Ok(a / min)
    }
}

fn constant(c: &RationalFunction) -> Result<Rational, ModuliError> {
    c.as_constant().ok_or_else(|| ModuliError::UnsupportedParam(format!("coefficient {c} is not numeric")))
}

/// `a / min b_i` of a class written in `lambda`, `delta`, `delta_i`.
pub fn slope(cls: &TautClass) -> Result<Rational, ModuliError> {
    let a = constant(&cls.coefficient(&TautSymbol::Lambda))?;
    let mut min: Option<Rational> = None;
    for (s, c) in cls.terms() {
        if matches!(s, TautSymbol::Delta(_) | TautSymbol::DeltaTotal) {
            let b = -constant(c)?;
            min = Some(match min {
                Some(m) if m <= b => m,
                _ => b,
            });
        }
    }
    match min {
        Some(m) if m > Rational::zero() => Ok(a / m),
        Some(m) => Err(ModuliError::BoundaryCoefficientNonpositive(format!("min b_i = {m}"))),
        None => Err(ModuliError::BoundaryCoefficientNonpositive("no boundary term".into())),
    }
}

impl fmt::Display for ModuliDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = format!("({})*lambda", self.lambda);
        match &self.boundary {
            Boundary::Uniform(b) => body.push_str(&format!(" - ({b})*delta")),
            Boundary::Explicit { coeffs, ellipsis } => {
                for (i, b) in coeffs.iter().enumerate() {
                    body.push_str(&format!(" - ({b})*delta{i}"));
                }
                if *ellipsis {
                    body.push_str(" - ...");
                }
            }
        }
        write!(f, "{}*[{body}]", self.prefactor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn rf(n: i64) -> RationalFunction {
        RationalFunction::int(n)
    }

    #[test]
    fn slopes() {
        let d = ModuliDivisor::uniform(rf(4), rf(1), rf(34), rf(4));
        assert_eq!(d.slope().unwrap(), rat(17, 2));
        let h = ModuliDivisor::explicit(rf(5), rf(1), rf(24), vec![rf(3), rf(12), rf(18)], false);
        assert_eq!(h.slope().unwrap(), rat(8, 1));
        let mut c = TautClass::symbol(TautSymbol::Lambda);
        c.add_term(TautSymbol::Delta(0), rf(-1));
        assert_eq!(slope(&c).unwrap(), rat(1, 1));
    }

    #[test]
    fn nonpositive_boundary() {
        let d = ModuliDivisor::uniform(rf(4), rf(1), rf(34), rf(0));
        assert!(matches!(d.slope(), Err(ModuliError::BoundaryCoefficientNonpositive(_))));
        assert!(slope(&TautClass::symbol(TautSymbol::Lambda)).is_err());
    }

    #[test]
    fn taut_forms() {
        let d = ModuliDivisor::explicit(rf(5), rf(4), rf(33), vec![rf(4), rf(15)], false);
        assert_eq!(d.to_taut().to_string(), "132*lambda - 16*delta0 - 60*delta1");
        assert_eq!(d.partial().to_string(), "132*lambda - 16*delta0");
    }
}
