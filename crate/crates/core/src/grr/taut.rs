use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraError, RationalFunction, Variable};

/// Atoms of codimension-one tautological classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TautSymbol {
    Lambda,
    Delta(u32),
    DeltaTotal,
    Kappa1,
    FrakA,
    FrakB,
    /// The twist-invariant class of the ambient space: `b - ((2k-2)/k) a` on
    /// Hurwitz spaces, `kappa30 - ((g-1)/4) kappa11` on K3 moduli.
    Gamma,
    Kappa30,
    Kappa11,
    D0,
    D2,
    D3,
    D11,
    C1V,
    HrkDiv,
    Unknown(String),
}

impl TautSymbol {
    pub fn name(&self) -> String {
        match self {
            TautSymbol::Lambda => "lambda".into(),
            TautSymbol::Delta(i) => format!("delta{i}"),
            TautSymbol::DeltaTotal => "delta".into(),
            TautSymbol::Kappa1 => "kappa1".into(),
            TautSymbol::FrakA => "frak_a".into(),
            TautSymbol::FrakB => "frak_b".into(),
            TautSymbol::Gamma => "gamma".into(),
            TautSymbol::Kappa30 => "kappa30".into(),
            TautSymbol::Kappa11 => "kappa11".into(),
            TautSymbol::D0 => "D0".into(),
            TautSymbol::D2 => "D2".into(),
            TautSymbol::D3 => "D3".into(),
            TautSymbol::D11 => "D11".into(),
            TautSymbol::C1V => "c1V".into(),
            TautSymbol::HrkDiv => "Hrk4".into(),
            TautSymbol::Unknown(s) => s.clone(),
        }
    }

    /// Inverse of [`TautSymbol::name`]; anything unrecognised is `Unknown`.
    pub fn from_name(s: &str) -> TautSymbol {
        match s {
            "lambda" => TautSymbol::Lambda,
            "delta" => TautSymbol::DeltaTotal,
            "kappa1" => TautSymbol::Kappa1,
            "frak_a" => TautSymbol::FrakA,
            "frak_b" => TautSymbol::FrakB,
            "gamma" => TautSymbol::Gamma,
            "kappa30" => TautSymbol::Kappa30,
            "kappa11" => TautSymbol::Kappa11,
            "D0" => TautSymbol::D0,
            "D2" => TautSymbol::D2,
            "D3" => TautSymbol::D3,
            "D11" => TautSymbol::D11,
            "c1V" => TautSymbol::C1V,
            "Hrk4" => TautSymbol::HrkDiv,
            _ => match s.strip_prefix("delta").and_then(|i| i.parse().ok()) {
                Some(i) => TautSymbol::Delta(i),
                None => TautSymbol::Unknown(s.to_string()),
            },
        }
    }
}

impl fmt::Display for TautSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A finite linear combination of [`TautSymbol`]s with rational-function
/// coefficients in the formal parameters. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TautClass {
    coeffs: BTreeMap<TautSymbol, RationalFunction>,
}

impl TautClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(s: TautSymbol) -> Self {
        Self::term(s, RationalFunction::one())
    }

    pub fn term(s: TautSymbol, c: impl Into<RationalFunction>) -> Self {
        let mut out = Self::zero();
        out.add_term(s, c.into());
        out
    }

    pub fn from_terms(it: impl IntoIterator<Item = (TautSymbol, RationalFunction)>) -> Self {
        let mut out = Self::zero();
        for (s, c) in it {
            out.add_term(s, c);
        }
        out
    }

    pub fn add_term(&mut self, s: TautSymbol, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&s) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(s, sum);
        }
    }

    pub fn coefficient(&self, s: &TautSymbol) -> RationalFunction {
        self.coeffs.get(s).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TautSymbol, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &TautSymbol> {
        self.coeffs.keys()
    }

    pub fn contains(&self, s: &TautSymbol) -> bool {
        self.coeffs.contains_key(s)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(s, x)| (s.clone(), x * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalFunction::int(-1)))
    }

    /// Replaces every occurrence of `s` by `by`.
    pub fn substitute_symbol(&self, s: &TautSymbol, by: &TautClass) -> Self {
        let mut out = self.clone();
        if let Some(c) = out.coeffs.remove(s) {
            out = out.add(&by.scale(&c));
        }
        out
    }

    /// Substitutes formal parameters in every coefficient.
    pub fn substitute_params(&self, map: &BTreeMap<Variable, RationalFunction>) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for (s, c) in &self.coeffs {
            out.add_term(s.clone(), c.substitute(map)?);
        }
        Ok(out)
    }

    /// Drops the listed symbols.
    pub fn without(&self, drop: &[TautSymbol]) -> Self {
        Self::from_terms(self.coeffs.iter().filter(|(s, _)| !drop.contains(s)).map(|(s, c)| (s.clone(), c.clone())))
    }
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (idx, (s, c)) in self.coeffs.iter().enumerate() {
            let (neg, body) = match c.as_constant() {
                Some(q) => {
                    let neg = q < num_traits::Zero::zero();
                    let a = if neg { -q } else { q };
                    let body = if num_traits::One::is_one(&a) {
                        s.to_string()
                    } else {
                        format!("{}*{s}", crate::algebra::rational::format_rational(&a))
                    };
                    (neg, body)
                }
                None => (false, format!("({c})*{s}")),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{param, Param};

    #[test]
    fn display_and_cancellation() {
        let mut c = TautClass::term(TautSymbol::Lambda, RationalFunction::int(13));
        c.add_term(TautSymbol::DeltaTotal, RationalFunction::int(-1));
        assert_eq!(c.to_string(), "13*lambda - delta");
        let d = c.sub(&TautClass::term(TautSymbol::Lambda, RationalFunction::int(13)));
        assert_eq!(d.to_string(), "-delta");
        assert!(d.add(&TautClass::symbol(TautSymbol::DeltaTotal)).is_zero());
    }

    #[test]
    fn names_round_trip() {
        for s in [
            TautSymbol::Lambda,
            TautSymbol::Delta(3),
            TautSymbol::DeltaTotal,
            TautSymbol::FrakA,
            TautSymbol::Gamma,
            TautSymbol::Kappa11,
            TautSymbol::D3,
            TautSymbol::Unknown("alpha".into()),
        ] {
            assert_eq!(TautSymbol::from_name(&s.name()), s);
        }
    }

    #[test]
    fn symbol_substitution() {
        let k = param(Param::K);
        let c = TautClass::from_terms([(TautSymbol::FrakB, RationalFunction::one()), (TautSymbol::FrakA, -&k)]);
        let by = TautClass::term(TautSymbol::FrakA, k.clone());
        let out = c.substitute_symbol(&TautSymbol::FrakB, &by);
        assert!(out.is_zero());
    }
}
