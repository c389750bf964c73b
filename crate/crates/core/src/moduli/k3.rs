//! Divisors on the moduli space of polarized K3 surfaces of genus `g`: the
//! rank-4 quadric divisor and the Koszul divisor.

use crate::algebra::{binomial_q, int, rat, Rational, RationalFunction, Variable};
use crate::grr::{chern_un, rank_un, to_k3_gamma_basis, TautClass, TautSymbol};
use crate::symfunc::{a_const, AMethod};

use super::ModuliError;

fn rf(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

fn q(c: Rational) -> RationalFunction {
    RationalFunction::constant(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank4Report {
    pub c1u1: TautClass,
    pub c1u2: TautClass,
    /// `c1(U_2) - ((8g-4)/(g+1)) c1(U_1)`, the class divided by `A_{g+1}^{g-3}`.
    pub raw: TautClass,
    /// The same in the `(lambda, gamma)` basis.
    pub class: TautClass,
    /// `((2g^2-13g+9)/(g+1)) lambda + (2/(g+1)) gamma`.
    pub expected: TautClass,
}

/// Divisor of K3 surfaces lying on a rank-4 quadric, divided by
/// `A_{g+1}^{g-3}`, for symbolic or numeric `g`.
pub fn k3_rank4_class(g: &RationalFunction) -> Result<Rank4Report, ModuliError> {
    let c1u1 = chern_un(&rf(1), g)?;
    let c1u2 = chern_un(&rf(2), g)?;
    let g1 = g + &rf(1);
    let ratio = &(&(g * &rf(8)) - &rf(4)) / &g1;
    let raw = c1u2.sub(&c1u1.scale(&ratio));
    let class = to_k3_gamma_basis(&raw, g)?;
    let lam = &(&(&(g * g) * &rf(2)) - &(&(g * &rf(13)) - &rf(9))) / &g1;
    let expected = TautClass::from_terms([(TautSymbol::Lambda, lam), (TautSymbol::Gamma, &rf(2) / &g1)]);
    if class != expected {
        return Err(ModuliError::IdentityFailed(format!("rank-4 class {class} differs from {expected}")));
    }
    Ok(Rank4Report { c1u1, c1u2, raw, class, expected })
}

/// `A_{g+1}^{g-3}`, the prefactor of the rank-4 class for numeric `g >= 3`.
pub fn k3_rank4_prefactor(g: u32) -> Result<Rational, ModuliError> {
    if g < 3 {
        return Err(ModuliError::UnsupportedParam(format!("rank-4 divisor needs g >= 3, got {g}")));
    }
    Ok(a_const(g + 1, g - 3, AMethod::Product)?)
}

fn binom(n: i64, k: i64) -> Rational {
    binomial_q(n, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszReport {
    pub i: u32,
    pub g: u32,
    pub rank_g: Rational,
    pub rank_h: Rational,
    /// `(i+1) C(2i+5, i+2)`.
    pub rank_expected: Rational,
    pub c1g: TautClass,
    pub c1h: TautClass,
    /// `c1(G) - c1(H)` in the `(lambda, gamma)` basis plus `alpha D11`.
    pub class: TautClass,
    /// `(4/(i+2)) C(2i-1,i) ((i^2-4i-3) lambda + gamma/2)`.
    pub theorem: TautClass,
    /// `C(g-2,(g-3)/2) ((2(g^2-14g+21)/(g+1)) lambda + (4/(g+1)) gamma)`.
    pub intro: TautClass,
}

impl KoszReport {
    pub fn ranks_agree(&self) -> bool {
        self.rank_g == self.rank_h && self.rank_g == self.rank_expected
    }

    fn lambda_gamma(c: &TautClass) -> TautClass {
        c.without(&[TautSymbol::D11])
    }

    pub fn matches_theorem(&self) -> bool {
        Self::lambda_gamma(&self.class) == self.theorem
    }

    pub fn theorem_matches_intro(&self) -> bool {
        self.theorem == self.intro
    }

    /// `intro / theorem`, when the two are proportional.
    pub fn intro_over_theorem(&self) -> Option<Rational> {
        let l = &self.intro.coefficient(&TautSymbol::Lambda) / &self.theorem.coefficient(&TautSymbol::Lambda);
        let gm = &self.intro.coefficient(&TautSymbol::Gamma) / &self.theorem.coefficient(&TautSymbol::Gamma);
        (l == gm).then(|| l.as_constant()).flatten()
    }
}

/// The Koszul divisor of K3 surfaces of genus `g = 2i + 3`, from the
/// alternating sums over the resolutions of `G_{i,2}` and `H_{i,2}`.
pub fn kosz_class(i: u32) -> Result<KoszReport, ModuliError> {
    if !(1..=40).contains(&i) {
        return Err(ModuliError::UnsupportedParam(format!("need 1 <= i <= 40, got {i}")));
    }
    let (ii, g) = (i as i64, 2 * i as i64 + 3);
    let grf = rf(g);
    let rk_u = |n: i64| rank_un(&rf(n), &grf).map(|r| r.as_constant().expect("numeric rank"));
    let c1u1 = chern_un(&rf(1), &grf)?;

    let mut rank_g = int(0);
    let mut rank_h = int(0);
    let mut c1g = TautClass::zero();
    let mut c1h = TautClass::zero();
    for j in 0..=ii {
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        let m = ii - j;
        let p = j + 2;
        // c1(wedge^m U1 (x) W) = rk W C(g, m-1) c1 U1 + C(g+1, m) c1 W, rk U1 = g + 1
        let rk_up = rk_u(p)?;
        rank_g += &sign * binom(g + 1, m) * &rk_up;
        let c1up = chern_un(&rf(p), &grf)?;
        c1g = c1g
            .add(&c1u1.scale(&q(&sign * &rk_up * binom(g, m - 1))))
            .add(&c1up.scale(&q(&sign * binom(g + 1, m))));
        // Sym^p U1 has rank C(g+p, p) and c1 = C(g+p, p-1) c1 U1
        let rk_sym = binom(g + p, p);
        rank_h += &sign * binom(g + 1, m) * &rk_sym;
        let coeff = &rk_sym * binom(g, m - 1) + binom(g + 1, m) * binom(g + p, p - 1);
        c1h = c1h.add(&c1u1.scale(&q(&sign * coeff)));
    }
    let diff = to_k3_gamma_basis(&c1g.sub(&c1h), &grf)?;
    let alpha = RationalFunction::var(Variable::Named("alpha".into()));
    let class = diff.add(&TautClass::term(TautSymbol::D11, alpha));

    let pre = rat(4, ii + 2) * binom(2 * ii - 1, ii);
    let theorem = TautClass::from_terms([
        (TautSymbol::Lambda, q(&pre * int(ii * ii - 4 * ii - 3))),
        (TautSymbol::Gamma, q(&pre * rat(1, 2))),
    ]);
    let pre_intro = binom(g - 2, (g - 3) / 2);
    let intro = TautClass::from_terms([
        (TautSymbol::Lambda, q(&pre_intro * rat(2 * (g * g - 14 * g + 21), g + 1))),
        (TautSymbol::Gamma, q(&pre_intro * rat(4, g + 1))),
    ]);
    Ok(KoszReport {
        i,
        g: g as u32,
        rank_g,
        rank_h,
        rank_expected: int(ii + 1) * binom(2 * ii + 5, ii + 2),
        c1g,
        c1h,
        class,
        theorem,
        intro,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{param, Param};

    #[test]
    fn rank4_symbolic() {
        let g = param(Param::G);
        let r = k3_rank4_class(&g).unwrap();
        let k11 = r.raw.coefficient(&TautSymbol::Kappa11);
        let expected = -(&(&g - &rf(1)) / &(&(&g + &rf(1)) * &rf(2)));
        assert_eq!(k11, expected);
    }

    #[test]
    fn rank4_numeric() {
        for g in 3..10 {
            assert!(k3_rank4_class(&rf(g)).is_ok());
        }
        assert_eq!(k3_rank4_prefactor(7).unwrap(), a_const(8, 4, AMethod::Determinant).unwrap());
    }

    #[test]
    fn koszul_small() {
        let r = kosz_class(2).unwrap();
        assert_eq!(r.rank_expected, int(378));
        assert!(r.ranks_agree());
        assert!(r.matches_theorem());
        assert_eq!(r.intro_over_theorem(), Some(rat(10, 3)));
        let r1 = kosz_class(1).unwrap();
        assert_eq!(r1.rank_g, int(70));
    }
}
