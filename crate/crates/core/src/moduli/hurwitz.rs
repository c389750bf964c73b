//! Divisor classes and canonical-class identities on the partial
//! compactification of the Hurwitz space of degree-`k` covers.

use num_integer::Integer;

use crate::algebra::{int, rat, Rational, RationalFunction};
use crate::grr::{hurwitz_sheaf_chern, jet_porteous_d3, to_hurwitz_gamma_basis, TautClass, TautSymbol};
use crate::symfunc::{a_const, AMethod, Partition};

use super::ModuliError;

fn rf(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

fn q(c: Rational) -> RationalFunction {
    RationalFunction::constant(c)
}

/// Coefficient of `[E_{i:mu}]` in the Hodge class on the admissible-cover
/// compactification, for symbolic `k`:
/// `lcm(mu) (i(6k-4-i)/(8(6k-5)) - (k - sum 1/mu_j)/12)`.
///
/// `special` lists the parts of `mu` different from 1; the rest are ones, so
/// `k - sum 1/mu_j = sum (m - 1/m)` over `special`.
pub fn hodge_coeff_symbolic(i: i64, special: &[u32], k: &RationalFunction) -> RationalFunction {
    let lcm = special.iter().fold(1u64, |l, &m| l.lcm(&(m as u64)));
    let defect: Rational = special.iter().map(|&m| int(m as i64) - rat(1, m as i64)).sum();
    let six_k_5 = &(k * &rf(6)) - &rf(5);
    let main = &(&(&(k * &rf(6)) - &rf(4 + i)) * &rf(i)) / &(&six_k_5 * &rf(8));
    &(&main - &q(defect / int(12))) * &rf(lcm as i64)
}

/// The same coefficient for a numeric partition `mu` of `k`.
pub fn hodge_admissible_coeff(i: i64, mu: &Partition, k: i64) -> Result<Rational, ModuliError> {
    if k < 1 || mu.size() as i64 != k {
        return Err(ModuliError::NotPartitionOfK);
    }
    if i < 2 || i > 3 * k - 2 {
        return Err(ModuliError::UnsupportedParam(format!("need 2 <= i <= 3k-2, got i={i}, k={k}")));
    }
    let special: Vec<u32> = mu.parts().iter().copied().filter(|&m| m > 1).collect();
    Ok(hodge_coeff_symbolic(i, &special, &rf(k)).as_constant().expect("numeric k"))
}

/// The Hodge class on the partial compactification in terms of
/// `[D_0], [D_2], [D_3]`, both as derived from the admissible-cover
/// coefficients and as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgePart {
    pub derived: TautClass,
    pub printed: TautClass,
}

impl HodgePart {
    pub fn agrees_on(&self, s: &TautSymbol) -> bool {
        self.derived.coefficient(s) == self.printed.coefficient(s)
    }
}

/// Pullbacks `q^* D0 = 2 E0`, `q^* D2 = E2`, `q^* D3 = 2 E3`; the strata are
/// `E0 = E_{2:(1^k)}`, `E2 = E_{2:(2,2,1^{k-4})}`, `E3 = E_{2:(3,1^{k-3})}`.
pub fn hodgepart(k: &RationalFunction) -> HodgePart {
    let half = q(rat(1, 2));
    let derived = TautClass::from_terms([
        (TautSymbol::D0, &hodge_coeff_symbolic(2, &[], k) * &half),
        (TautSymbol::D2, hodge_coeff_symbolic(2, &[2, 2], k)),
        (TautSymbol::D3, &hodge_coeff_symbolic(2, &[3], k) * &half),
    ]);
    let six_k_5 = &(k * &rf(6)) - &rf(5);
    let printed = TautClass::from_terms([
        (TautSymbol::D0, &(&(k - &rf(1)) * &rf(3)) / &(&six_k_5 * &rf(4))),
        (TautSymbol::D2, -(&rf(1) / &(&six_k_5 * &rf(4)))),
        (TautSymbol::D3, &(&(k * &rf(3)) - &rf(7)) / &(&six_k_5 * &rf(12))),
    ]);
    HodgePart { derived, printed }
}

/// `K = 8 lambda + D3/6 - 3 D0/2` obtained from the stack canonical class
/// `-(2/(6k-5)) D2 - ((6k-3)/(2(6k-5))) D0 + ((6k-11)/(2(6k-5))) D3` after
/// eliminating `D2` with a given Hodge-class expression.
pub fn canonical_from_hodge(k: &RationalFunction, hodge: &TautClass) -> Result<TautClass, ModuliError> {
    let six_k_5 = &(k * &rf(6)) - &rf(5);
    let c2 = hodge.coefficient(&TautSymbol::D2);
    if c2.is_zero() {
        return Err(ModuliError::IdentityFailed("Hodge class has no D2 term".into()));
    }
    // D2 = (lambda - c0 D0 - c3 D3) / c2
    let d2 = TautClass::symbol(TautSymbol::Lambda)
        .sub(&hodge.without(&[TautSymbol::D2]))
        .scale(&(&rf(1) / &c2));
    let stack = TautClass::from_terms([
        (TautSymbol::D0, -(&(&(k * &rf(6)) - &rf(3)) / &(&six_k_5 * &rf(2)))),
        (TautSymbol::D3, &(&(k * &rf(6)) - &rf(11)) / &(&six_k_5 * &rf(2))),
    ]);
    Ok(stack.add(&d2.scale(&-(&rf(2) / &six_k_5))))
}

/// `[H^rk4] / A_k^{k-4} = c1F - (4(2k-3)/k) c1E` in the `(lambda, gamma, D0)` basis.
pub fn partclass(k: &RationalFunction) -> Result<TautClass, ModuliError> {
    let (e, f) = hurwitz_sheaf_chern(k)?;
    let ratio = &(&(&(k * &rf(2)) - &rf(3)) * &rf(4)) / k;
    Ok(to_hurwitz_gamma_basis(&f.sub(&e.scale(&ratio)), k)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzReport {
    pub hodge: HodgePart,
    /// `8 lambda + D3/6 - 3 D0/2`.
    pub canonical_printed: TautClass,
    /// The canonical class recomputed from the printed Hodge class.
    pub canonical_from_hodge: TautClass,
    /// `D3 = 24 lambda + 6 gamma - 3 D0`.
    pub d3: TautClass,
    /// `K` in the `(lambda, gamma, D0)` basis.
    pub canonical: TautClass,
    /// `[H^rk4] / A_k^{k-4}`.
    pub partclass: TautClass,
    /// `(k-6) K - (k-12)(7 lambda - D0) - (k/A) [H^rk4]`; zero when the identity holds.
    pub identity_residual: TautClass,
    /// Coefficient `k / A` of `[H^rk4]` in the identity, divided out by `A`
    /// when `k` is symbolic: this field holds `k` and `prefactor` holds `A`.
    pub h_coefficient_times_a: RationalFunction,
    pub prefactor: Option<Rational>,
    pub printed_h_coefficient: Rational,
    /// `alpha = k - 6`.
    pub alpha: RationalFunction,
}

impl HurwitzReport {
    pub fn identity_holds(&self) -> bool {
        self.identity_residual.is_zero()
    }

    /// `k / A_k^{k-4}`, when `k` is numeric.
    pub fn h_coefficient(&self) -> Option<Rational> {
        let a = self.prefactor.as_ref()?;
        Some(self.h_coefficient_times_a.as_constant()? / a)
    }

    /// Whether the derived coefficient on `[H^rk4]` equals the printed `1/6`.
    pub fn h_coefficient_matches_printed(&self) -> Option<bool> {
        self.h_coefficient().map(|c| c == self.printed_h_coefficient)
    }
}

/// All Hurwitz-side identities for symbolic or numeric `k`.
pub fn hurwitz_report(k: &RationalFunction) -> Result<HurwitzReport, ModuliError> {
    let hodge = hodgepart(k);
    let canonical_printed = TautClass::from_terms([
        (TautSymbol::Lambda, rf(8)),
        (TautSymbol::D3, q(rat(1, 6))),
        (TautSymbol::D0, q(rat(-3, 2))),
    ]);
    let canonical_from_hodge = canonical_from_hodge(k, &hodge.printed)?;
    let d3 = jet_porteous_d3(k)?.d3;
    let canonical = canonical_printed.substitute_symbol(&TautSymbol::D3, &d3);

    let pc = partclass(k)?;
    let seven = TautClass::from_terms([(TautSymbol::Lambda, rf(7)), (TautSymbol::D0, rf(-1))]);
    let identity_residual = canonical
        .scale(&(k - &rf(6)))
        .sub(&seven.scale(&(k - &rf(12))))
        .sub(&pc.scale(k));

    let prefactor = match k.as_constant() {
        Some(c) if c.is_integer() && c >= int(4) => {
            let kk: u32 = c.to_integer().try_into().map_err(|_| ModuliError::UnsupportedParam(format!("k = {c}")))?;
            Some(a_const(kk, kk - 4, AMethod::Product)?)
        }
        _ => None,
    };
    Ok(HurwitzReport {
        hodge,
        canonical_printed,
        canonical_from_hodge,
        d3,
        canonical,
        partclass: pc,
        identity_residual,
        h_coefficient_times_a: k.clone(),
        prefactor,
        printed_h_coefficient: rat(1, 6),
        alpha: k - &rf(6),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{param, Param, Variable};
    use crate::loci::closed_divisor_class;

    #[test]
    fn admissible_coefficients() {
        for k in 4..12i64 {
            let six = 6 * k - 5;
            let ones = Partition::new(vec![1; k as usize]);
            assert_eq!(hodge_admissible_coeff(2, &ones, k).unwrap(), rat(3 * (k - 1), 2 * six));
            let mut t = vec![3];
            t.extend(vec![1; k as usize - 3]);
            assert_eq!(hodge_admissible_coeff(2, &Partition::new(t), k).unwrap(), rat(3 * k - 7, 6 * six));
            let mut d = vec![2, 2];
            d.extend(vec![1; k as usize - 4]);
            assert_eq!(hodge_admissible_coeff(2, &Partition::new(d), k).unwrap(), rat(-1, 2 * six));
        }
        assert!(matches!(
            hodge_admissible_coeff(2, &Partition::new(vec![2, 1]), 4),
            Err(ModuliError::NotPartitionOfK)
        ));
    }

    #[test]
    fn hodgepart_d0_d3_agree() {
        let h = hodgepart(&param(Param::K));
        assert!(h.agrees_on(&TautSymbol::D0));
        assert!(h.agrees_on(&TautSymbol::D3));
        assert!(!h.agrees_on(&TautSymbol::D2));
        let ratio = &h.derived.coefficient(&TautSymbol::D2) / &h.printed.coefficient(&TautSymbol::D2);
        assert_eq!(ratio, rf(2));
    }

    #[test]
    fn canonical_class() {
        let k = param(Param::K);
        let r = hurwitz_report(&k).unwrap();
        assert_eq!(r.canonical_from_hodge, r.canonical_printed);
        assert_eq!(r.canonical.to_string(), "12*lambda + gamma - 2*D0");
        assert!(r.identity_holds());
        assert_eq!(r.alpha, &k - &rf(6));
    }

    #[test]
    fn partclass_symbolic() {
        let k = param(Param::K);
        let pc = partclass(&k).unwrap();
        let expected = TautClass::from_terms([
            (TautSymbol::Lambda, &(&(&k * &rf(5)) + &rf(12)) / &k),
            (TautSymbol::Gamma, &(&k - &rf(6)) / &k),
            (TautSymbol::D0, rf(-1)),
        ]);
        assert_eq!(pc, expected);
    }

    #[test]
    fn partclass_matches_closed_form() {
        for k in 6..10u32 {
            let cls = closed_divisor_class(k, k - 4).unwrap();
            let a = a_const(k, k - 4, AMethod::Product).unwrap();
            assert_eq!(cls.linear_coefficient(&Variable::c_f(1)), a);
            let ce = cls.linear_coefficient(&Variable::c_e(1));
            assert_eq!(ce, -(a * rat(4 * (2 * k as i64 - 3), k as i64)));
        }
    }

    #[test]
    fn numeric_h_coefficient() {
        let r = hurwitz_report(&rf(6)).unwrap();
        assert_eq!(r.prefactor, Some(a_const(6, 2, AMethod::Product).unwrap()));
        assert_eq!(r.h_coefficient(), Some(int(6) / a_const(6, 2, AMethod::Product).unwrap()));
        assert_eq!(r.h_coefficient_matches_printed(), Some(false));
        assert_eq!(r.canonical.coefficient(&TautSymbol::Gamma), rf(1));
    }
}
