//! The Petri divisor and the previously known divisor classes it is compared with.

use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{binomial_q, int, param, rat, rational::factorial, Param, Rational, RationalFunction};
use crate::symfunc::{a_const, AMethod};

use super::divisor::ModuliDivisor;
use super::ModuliError;

fn rf(q: Rational) -> RationalFunction {
    RationalFunction::constant(q)
}

fn pow2(e: u32) -> Rational {
    int(1i64 << e)
}

/// `A_g^{g-3} ((7g+6)/g lambda - delta)`.
pub fn petri_class(g: u32) -> Result<ModuliDivisor, ModuliError> {
    if g < 4 {
        return Err(ModuliError::UnsupportedParam(format!("Petri divisor needs g >= 4, got {g}")));
    }
    let a = a_const(g, g - 3, AMethod::Product)?;
    let gq = int(g as i64);
    Ok(ModuliDivisor::uniform(rf(gq.clone()), rf(a), rf((int(7) * &gq + int(6)) / gq), rf(int(1))))
}

/// The Petri class for symbolic `g`, divided by `A_g^{g-3}`.
pub fn petri_class_symbolic() -> ModuliDivisor {
    let g = param(Param::G);
    let a = &(&(&g * &RationalFunction::int(7)) + &RationalFunction::int(6)) / &g;
    ModuliDivisor::uniform(g, RationalFunction::one(), a, RationalFunction::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownKind {
    /// `D_{g,g-1}`: curves with a vanishing even theta-characteristic; parameter `g`.
    Theta,
    /// `D_{2k-1,k}`: the Hurwitz divisor of `k`-gonal curves; parameter `k`.
    Gonality,
    /// `D_{2k,k+1}`: branch divisor of degree-`(k+1)` covers; parameter `k`.
    Branch,
    /// `D_{2k-1,k+1}`: only the slope is known; parameter `k`.
    NextGonality,
}

impl KnownKind {
    pub fn genus(self, n: u32) -> u32 {
        match self {
            KnownKind::Theta => n,
            KnownKind::Gonality | KnownKind::NextGonality => 2 * n - 1,
            KnownKind::Branch => 2 * n,
        }
    }

    /// `k` in `D_{g,k}`.
    pub fn pencil_degree(self, n: u32) -> u32 {
        match self {
            KnownKind::Theta => n - 1,
            KnownKind::Gonality => n,
            KnownKind::Branch | KnownKind::NextGonality => n + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnownValue {
    Class(ModuliDivisor),
    Slope(Rational),
}

impl KnownValue {
    pub fn slope(&self) -> Result<Rational, ModuliError> {
        match self {
            KnownValue::Class(d) => d.slope(),
            KnownValue::Slope(s) => Ok(s.clone()),
        }
    }
}

pub fn known_divisor(kind: KnownKind, n: u32) -> Result<KnownValue, ModuliError> {
    let min = match kind {
        KnownKind::Theta => 3,
        _ => 2,
    };
    if n < min || n > 60 {
        return Err(ModuliError::UnsupportedParam(format!("{kind:?} needs {min} <= parameter <= 60, got {n}")));
    }
    let k = n as i64;
    let genus = rf(int(kind.genus(n) as i64));
    Ok(match kind {
        KnownKind::Theta => {
            let g = n;
            let mut b = vec![rf(pow2(g - 3))];
            for i in 1..=g / 2 {
                b.push(rf((pow2(g - i) - int(1)) * (pow2(i) - int(1))));
            }
            KnownValue::Class(ModuliDivisor::explicit(genus, rf(pow2(g - 3)), rf(pow2(g) + int(1)), b, false))
        }
        KnownKind::Gonality => {
            let pre = binomial_q(2 * k - 2, k - 1) / int((2 * k - 2) * (2 * k - 3));
            let mut b = vec![rf(int(k))];
            for i in 1..k {
                b.push(rf(int(3 * i * (2 * k - i - 1))));
            }
            KnownValue::Class(ModuliDivisor::explicit(genus, rf(pre), rf(int(6 * (k + 1))), b, false))
        }
        KnownKind::Branch => {
            let num = factorial(2 * n as u64 - 2) * 2;
            let den = factorial(n as u64 - 1) * factorial(n as u64 + 1);
            let pre = Rational::new(num, den);
            let b = vec![rf(int(k * (k + 1))), rf(int((2 * k - 1) * (3 * k + 1)))];
            KnownValue::Class(ModuliDivisor::explicit(genus, rf(pre), rf(int(6 * k * k + 13 * k + 1)), b, true))
        }
        KnownKind::NextGonality => KnownValue::Slope(rat(6 * k * k + 14 * k + 3, k * (k + 1))),
    })
}

/// `(lambda, delta0)` coefficients on the partial compactification.
pub type PartialClass = (Rational, Rational);

fn partial_of(d: &ModuliDivisor) -> Result<PartialClass, ModuliError> {
    let c = d.partial();
    let get = |s| {
        c.coefficient(&s)
            .as_constant()
            .ok_or_else(|| ModuliError::UnsupportedParam("symbolic class".into()))
    };
    Ok((get(crate::grr::TautSymbol::Lambda)?, -get(crate::grr::TautSymbol::Delta(0))?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PetriComponent {
    pub k: u32,
    pub source: KnownKind,
    /// Conjectured multiplicity `4^{g-1-k}`.
    pub weight: Rational,
    pub class: Option<PartialClass>,
    pub slope: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PetriDecomposition {
    pub g: u32,
    pub petri: PartialClass,
    pub petri_slope: Rational,
    pub components: Vec<PetriComponent>,
    /// The Petri slope lies in the closed range of the component slopes.
    pub slopes_consistent: bool,
    /// Whether the weighted sum of known classes equals the Petri class,
    /// when every component class is known.
    pub combination_matches: Option<bool>,
    /// `(k, m)`: the multiplicity of `D_{g,k}` that the Petri class forces
    /// when the other components carry their conjectured weights.
    pub implied_multiplicity: Option<(u32, Rational)>,
    /// `(k, implied, known)`: slope of the one component known only by slope,
    /// as forced by the Petri class, next to its known value.
    pub implied_slope: Option<(u32, Rational, Rational)>,
}

impl PetriDecomposition {
    /// No coefficient-level tension beyond what slopes can see.
    pub fn fully_consistent(&self) -> bool {
        self.slopes_consistent
            && self.combination_matches != Some(false)
            && self.implied_slope.as_ref().map_or(true, |(_, a, b)| a == b)
    }
}

fn component(g: u32, k: u32) -> Result<(KnownKind, KnownValue), ModuliError> {
    if k == g - 1 {
        return Ok((KnownKind::Theta, known_divisor(KnownKind::Theta, g)?));
    }
    if g.is_odd() && k == (g + 1) / 2 {
        return Ok((KnownKind::Gonality, known_divisor(KnownKind::Gonality, k)?));
    }
    if g.is_even() && k == g / 2 + 1 {
        return Ok((KnownKind::Branch, known_divisor(KnownKind::Branch, g / 2)?));
    }
    if g.is_odd() && k == (g + 1) / 2 + 1 {
        return Ok((KnownKind::NextGonality, known_divisor(KnownKind::NextGonality, (g + 1) / 2)?));
    }
    Err(ModuliError::UnsupportedParam(format!("no known formula for D_{{{g},{k}}}")))
}

fn scale(c: &PartialClass, w: &Rational) -> PartialClass {
    (&c.0 * w, &c.1 * w)
}

/// Compares the Petri class with its known components for `4 <= g <= 7`.
pub fn petri_decomposition_report(g: u32) -> Result<PetriDecomposition, ModuliError> {
    if !(4..=7).contains(&g) {
        return Err(ModuliError::UnsupportedParam(format!("decomposition known only for 4 <= g <= 7, got {g}")));
    }
    let petri_div = petri_class(g)?;
    let petri = partial_of(&petri_div)?;
    let petri_slope = &petri.0 / &petri.1;

    let mut components = Vec::new();
    for k in ((g + 2) / 2..g).rev() {
        let (source, value) = component(g, k)?;
        let class = match &value {
            KnownValue::Class(d) => Some(partial_of(d)?),
            KnownValue::Slope(_) => None,
        };
        let slope = match &class {
            Some(c) => &c.0 / &c.1,
            None => value.slope()?,
        };
        components.push(PetriComponent { k, source, weight: int(4).pow((g - 1 - k) as i32), slope, class });
    }

    let lo = components.iter().map(|c| &c.slope).min().unwrap().clone();
    let hi = components.iter().map(|c| &c.slope).max().unwrap().clone();
    let slopes_consistent = lo <= petri_slope && petri_slope <= hi;

    let mut combination_matches = None;
    let mut implied_multiplicity = None;
    let mut implied_slope = None;
    let unknown: Vec<&PetriComponent> = components.iter().filter(|c| c.class.is_none()).collect();
    let residual_without = |skip: u32| {
        components.iter().filter(|c| c.k != skip).fold(petri.clone(), |acc, c| {
            let w = scale(c.class.as_ref().unwrap(), &c.weight);
            (acc.0 - w.0, acc.1 - w.1)
        })
    };
    if unknown.is_empty() {
        let sum = components.iter().fold((Rational::zero(), Rational::zero()), |acc, c| {
            let w = scale(c.class.as_ref().unwrap(), &c.weight);
            (acc.0 + w.0, acc.1 + w.1)
        });
        let matches = sum == petri;
        combination_matches = Some(matches);
        if !matches && components.len() > 1 {
            let last = components.last().unwrap();
            let res = residual_without(last.k);
            let cls = last.class.as_ref().unwrap();
            let m = &res.0 / &cls.0;
            if &res.1 / &cls.1 == m {
                implied_multiplicity = Some((last.k, m));
            }
        }
    } else if unknown.len() == 1 {
        let u = unknown[0];
        let res = residual_without(u.k);
        implied_slope = Some((u.k, &res.0 / &res.1, u.slope.clone()));
    }

    Ok(PetriDecomposition {
        g,
        petri,
        petri_slope,
        components,
        slopes_consistent,
        combination_matches,
        implied_multiplicity,
        implied_slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petri_examples() {
        assert_eq!(petri_class(4).unwrap().to_taut().to_string(), "34*lambda - 4*delta");
        assert_eq!(petri_class(7).unwrap().to_taut().to_string(), "5280*lambda - 672*delta");
        assert_eq!(petri_class(6).unwrap().to_taut().to_string(), "896*lambda - 112*delta");
        assert_eq!(petri_class(5).unwrap().to_taut().to_string(), "164*lambda - 20*delta");
        assert!(petri_class(3).is_err());
    }

    #[test]
    fn petri_symbolic_slope() {
        let s = petri_class_symbolic().slope_partial().unwrap();
        for g in 4..12 {
            assert_eq!(s.evaluate(&|_| Rational::from_integer(g.into())).unwrap(), petri_class(g as u32).unwrap().slope().unwrap());
        }
    }

    #[test]
    fn known_examples() {
        let KnownValue::Class(t) = known_divisor(KnownKind::Theta, 5).unwrap() else { panic!() };
        assert_eq!(t.partial().to_string(), "132*lambda - 16*delta0");
        let KnownValue::Class(h) = known_divisor(KnownKind::Gonality, 3).unwrap() else { panic!() };
        assert_eq!(h.prefactor, rf(rat(1, 2)));
        assert_eq!(h.slope().unwrap(), int(8));
        let KnownValue::Class(b) = known_divisor(KnownKind::Branch, 2).unwrap() else { panic!() };
        assert_eq!(b.partial().to_string(), "34*lambda - 4*delta0");
        assert_eq!(known_divisor(KnownKind::NextGonality, 4).unwrap().slope().unwrap(), rat(31, 4));
        assert!(known_divisor(KnownKind::Theta, 2).is_err());
    }

    #[test]
    fn gonality_two() {
        let KnownValue::Class(h) = known_divisor(KnownKind::Gonality, 2).unwrap() else { panic!() };
        assert_eq!(h.to_taut().to_string(), "18*lambda - 2*delta0 - 6*delta1");
    }

    #[test]
    fn decompositions() {
        let r4 = petri_decomposition_report(4).unwrap();
        assert_eq!(r4.petri_slope, rat(17, 2));
        assert_eq!(r4.combination_matches, Some(true));
        let r5 = petri_decomposition_report(5).unwrap();
        assert_eq!(r5.petri_slope, rat(41, 5));
        assert!(r5.slopes_consistent);
        assert_eq!(r5.combination_matches, Some(false));
        assert_eq!(r5.implied_multiplicity, Some((3, rat(8, 3))));
        let r6 = petri_decomposition_report(6).unwrap();
        assert!(r6.fully_consistent());
        let r7 = petri_decomposition_report(7).unwrap();
        assert_eq!(r7.petri_slope, rat(55, 7));
        assert!(r7.slopes_consistent);
        assert_eq!(r7.implied_slope, Some((5, rat(543, 70), rat(31, 4))));
    }
}
