//! Virtual divisors of curves whose `g^r_d` lies on a quadric of small rank,
//! and the degenerate-pencil divisor in genus 12.

use std::collections::BTreeMap;

use crate::algebra::{int, param, rat, Param, Polynomial, Rational, RationalFunction, Variable};
use crate::grr::{curve_rules, grr_c1, BundleCharacter, Tag, TagPoly, TautClass, TautSymbol};
use crate::loci::pencil_class_chern;

use super::ModuliError;

fn rf(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

fn q(c: Rational) -> RationalFunction {
    RationalFunction::constant(c)
}

/// Integers with `g = rs + s`, `d = rs + r` and `2(r-1)s = a(2r-1-a)`, so that
/// quadrics of rank at most `a + 2` cut out a virtual divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesParams {
    pub r: i64,
    pub s: i64,
    pub a: i64,
    pub g: i64,
    pub d: i64,
}

impl SeriesParams {
    pub fn new(r: i64, s: i64, a: i64) -> Result<Self, ModuliError> {
        if r < 3 || s < 1 || a < 1 {
            return Err(ModuliError::InvariantViolated(format!("need r >= 3, s >= 1, a >= 1, got ({r},{s},{a})")));
        }
        if 2 * (r - 1) * s != a * (2 * r - 1 - a) {
            return Err(ModuliError::InvariantViolated(format!(
                "2(r-1)s = {} but a(2r-1-a) = {}",
                2 * (r - 1) * s,
                a * (2 * r - 1 - a)
            )));
        }
        let p = Self { r, s, a, g: r * s + s, d: r * s + r };
        debug_assert_eq!(p.brill_noether_number(), 0);
        Ok(p)
    }

    /// `g^r_d` with `g = rs + s`, `d = rs + r`, outside the quadric-rank
    /// family; `a` is set to zero.
    pub fn linear_series(r: i64, s: i64) -> Self {
        Self { r, s, a: 0, g: r * s + s, d: r * s + r }
    }

    /// `rho(g, r, d) = g - (r+1)(g - d + r)`.
    pub fn brill_noether_number(&self) -> i64 {
        self.g - (self.r + 1) * (self.g - self.d + self.r)
    }

    /// `rk F = 2d + 1 - g`.
    pub fn f_rank(&self) -> i64 {
        2 * self.d + 1 - self.g
    }
}

/// The two infinite families, indexed by `ell >= 1`.
pub fn series_params(series: u8, ell: i64) -> Result<SeriesParams, ModuliError> {
    if ell < 1 {
        return Err(ModuliError::InvariantViolated(format!("ell must be positive, got {ell}")));
    }
    match series {
        1 => SeriesParams::new(9 * ell - 2, 4 * ell - 1, 2 * (3 * ell - 1)),
        2 => SeriesParams::new(8 * ell + 3, 3 * ell + 1, 4 * ell + 1),
        _ => Err(ModuliError::UnsupportedParam(format!("series must be 1 or 2, got {series}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeForm {
    /// `a(ell) / b(ell)`.
    Closed,
    /// `6 + 12/(g+1)` minus a positive correction.
    Deficit,
}

/// Polynomial in `ell` from coefficients, highest degree first.
fn ell_poly(coeffs: &[i64]) -> Polynomial {
    let l = Polynomial::var(Variable::Param(Param::Ell));
    coeffs.iter().fold(Polynomial::zero(), |acc, &c| &(&acc * &l) + &Polynomial::int(c))
}

fn eval(p: &Polynomial, ell: &RationalFunction) -> Result<RationalFunction, ModuliError> {
    let map = BTreeMap::from([(Variable::Param(Param::Ell), ell.clone())]);
    Ok(crate::algebra::substitute(p, &map)?)
}

fn product(factors: &[&[i64]], ell: &RationalFunction) -> Result<RationalFunction, ModuliError> {
    factors.iter().try_fold(rf(1), |acc, f| Ok(&acc * &eval(&ell_poly(f), ell)?))
}

fn brill_noether_bound(g: &RationalFunction) -> RationalFunction {
    &rf(6) + &(&rf(12) / &(g + &rf(1)))
}

/// Slope of the virtual divisor of the given series as a function of `ell`,
/// which may be symbolic or numeric.
pub fn pelda_slope(series: u8, ell: &RationalFunction, form: SlopeForm) -> Result<RationalFunction, ModuliError> {
    const SEXTIC_1: &[i64] = &[15552, -25920, 17484, -6102, 1181, -107, 2];
    match (series, form) {
        (1, SlopeForm::Closed) => {
            let a = eval(
                &ell_poly(&[15116544, -30233088, 26605584, -13594392, 4419720, -899433, 105656, -6101, 122]),
                ell,
            )?;
            let b = product(&[&[2], &[9, -2], &[9, -1], SEXTIC_1], ell)?;
            Ok(&a / &b)
        }
        (1, SlopeForm::Deficit) => {
            let g = product(&[&[4, -1], &[9, -1]], ell)?;
            let num = product(&[&[13, -2], &[36, -13], &[27, -19, 2], &[36, -13, -1]], ell)?;
            let den = product(&[&[2], &[9, -2], &[9, -1], SEXTIC_1, &[36, -13, 2]], ell)?;
            Ok(&brill_noether_bound(&g) - &(&num / &den))
        }
        (2, SlopeForm::Deficit) => {
            let g = product(&[&[4], &[3, 1], &[2, 1]], ell)?;
            let num = product(&[&[11, 5], &[2, -1], &[12, 10, 1], &[24, 20, 3]], ell)?;
            let den = product(&[&[3, 2], &[8, 3], &[2304, 4128, 2992, 1128, 248, 41, 5], &[24, 20, 5]], ell)?;
            Ok(&brill_noether_bound(&g) - &(&num / &den))
        }
        (2, SlopeForm::Closed) => Err(ModuliError::UnsupportedParam("series 2 has only the deficit form".into())),
        _ => Err(ModuliError::UnsupportedParam(format!("series must be 1 or 2, got {series}"))),
    }
}

/// `c1(F)` for `F = p_*(L^2)` on the space of linear series:
/// `lambda - frak_b + 2 frak_a`, with `lambda` pulled back from the moduli space.
pub fn series_c1f() -> Result<TautClass, ModuliError> {
    let rules = curve_rules(&param(Param::G), &param(Param::D));
    let l2 = BundleCharacter::line_bundle(&TagPoly::tag(Tag::C1L).scale_q(int(2)));
    Ok(grr_c1(&l2, &rules)?)
}

/// How `sigma_* sigma^* lambda = N lambda` and the sign of the `delta0` term
/// of `sigma_*(frak_a)` are read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub n_over_beta: Rational,
    /// `+1` reads the displayed formula literally, `-1` flips the `delta0` term.
    pub a_delta_sign: i8,
}

/// Pushforwards to the moduli space, all carrying the formal factor `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardTable {
    pub sigma_lambda: TautClass,
    pub sigma_a: TautClass,
    pub sigma_b: TautClass,
    pub sigma_c1e: TautClass,
}

fn lambda_delta0(l: Rational, d: Rational, beta: &RationalFunction) -> TautClass {
    TautClass::from_terms([(TautSymbol::Lambda, beta * &q(l)), (TautSymbol::Delta(0), beta * &q(d))])
}

pub fn pushforward_table(p: &SeriesParams, cal: &Calibration) -> PushforwardTable {
    let beta = param(Param::Beta);
    let (r, s, g, d) = (p.r, p.s, p.g, p.d);
    let fa = rat(d, (g - 1) * (g - 2));
    let a_l = &fa * int(d * g * g - 2 * g * g + 8 * d - 8 * g + 4);
    let a_d = -(&fa * int(d * g - 2 * g * g + 4 * d - 3 * g + 2)) * int(cal.a_delta_sign as i64);
    let fb = rat(d, g - 1);
    let den = (r + s + 1) * (r * s + s - 2) * (r * s + s - 1);
    let e_l = -rat(
        r * (r + 2)
            * (r * r * s * s * s + 2 * r * s * s * s - r * r * s + 6 * r * s * s + s * s * s - 2 * r * s + 6 * s * s - 8 * r
                + 3 * s
                - 8),
        2 * den,
    );
    let e_d = rat(r * (s - 1) * (s + 1) * (r + 2) * (r + 1) * (r * s + s + 4), 12 * den);
    PushforwardTable {
        sigma_lambda: TautClass::term(TautSymbol::Lambda, &beta * &q(cal.n_over_beta.clone())),
        sigma_a: lambda_delta0(a_l, a_d, &beta),
        sigma_b: lambda_delta0(&fb * int(6), -(&fb * rat(1, 2)), &beta),
        sigma_c1e: lambda_delta0(e_l, e_d, &beta),
    }
}

/// `sigma_*(f c1(F) - e c1(E))` with `c1(F) = sigma^* lambda - frak_b + 2 frak_a`.
pub fn virtual_pushforward(p: &SeriesParams, f: &Rational, e: &Rational, cal: &Calibration) -> TautClass {
    let t = pushforward_table(p, cal);
    let c1f = t.sigma_lambda.sub(&t.sigma_b).add(&t.sigma_a.scale(&rf(2)));
    c1f.scale(&q(f.clone())).sub(&t.sigma_c1e.scale(&q(e.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualSlope {
    pub slope: Rational,
    /// Whether the class has the form `a lambda - b delta0` with `b > 0`.
    pub boundary_positive: bool,
}

/// `lambda`-coefficient over the negated `delta0`-coefficient of the pushed
/// class; the factor `beta` must cancel.
pub fn virtual_slope(p: &SeriesParams, f: &Rational, e: &Rational, cal: &Calibration) -> Result<VirtualSlope, ModuliError> {
    let cls = virtual_pushforward(p, f, e, cal);
    let b = -cls.coefficient(&TautSymbol::Delta(0));
    if b.is_zero() {
        return Err(ModuliError::BoundaryCoefficientNonpositive("delta0 coefficient vanishes".into()));
    }
    let ratio = &cls.coefficient(&TautSymbol::Lambda) / &b;
    let slope = ratio.as_constant().ok_or_else(|| ModuliError::BetaDidNotCancel(ratio.to_string()))?;
    let beta_one = BTreeMap::from([(Variable::Param(Param::Beta), rf(1))]);
    let b_val = b.substitute(&beta_one)?.as_constant().expect("numeric once beta = 1");
    Ok(VirtualSlope { slope, boundary_positive: b_val > int(0) })
}

/// Virtual class `c1(F) - (2(2d+1-g)/(r+1)) c1(E)` pushed to the moduli space.
pub fn virtual_slope_from_pushforward(p: &SeriesParams, cal: &Calibration) -> Result<VirtualSlope, ModuliError> {
    virtual_slope(p, &int(1), &rat(2 * p.f_rank(), p.r + 1), cal)
}

/// `N / beta` making the slope of `f c1(F) - e c1(E)` equal `target`.
pub fn fit_n_over_beta(p: &SeriesParams, f: &Rational, e: &Rational, sign: i8, target: &Rational) -> Rational {
    let zero = Calibration { n_over_beta: int(0), a_delta_sign: sign };
    let cls = virtual_pushforward(p, f, e, &zero);
    let at_one = |s: TautSymbol| {
        let c = cls.coefficient(&s);
        c.substitute(&BTreeMap::from([(Variable::Param(Param::Beta), rf(1))])).unwrap().as_constant().unwrap()
    };
    let (xl, xd) = (at_one(TautSymbol::Lambda), at_one(TautSymbol::Delta(0)));
    // target = (f N + xl) / (-xd)
    (-(target * &xd) - xl) / f
}

/// One calibration datum: a class `f c1(F) - e c1(E)` with a known slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeDatum {
    pub label: &'static str,
    pub params: SeriesParams,
    pub f: Rational,
    pub e: Rational,
    pub expected: Rational,
}

pub fn calibration_data() -> Result<Vec<SlopeDatum>, ModuliError> {
    let ser1 = series_params(1, 1)?;
    let ser2 = series_params(2, 1)?;
    let one = RationalFunction::one();
    let constant = |x: RationalFunction| x.as_constant().expect("numeric ell");
    Ok(vec![
        SlopeDatum {
            label: "D_{7,3} on M_24",
            params: ser1,
            f: int(1),
            e: rat(2 * ser1.f_rank(), ser1.r + 1),
            expected: constant(pelda_slope(1, &one, SlopeForm::Closed)?),
        },
        SlopeDatum {
            label: "D_{11,4} on M_48",
            params: ser2,
            f: int(1),
            e: rat(2 * ser2.f_rank(), ser2.r + 1),
            expected: constant(pelda_slope(2, &one, SlopeForm::Deficit)?),
        },
        SlopeDatum {
            label: "Dp_12 on M_12",
            params: SeriesParams::linear_series(5, 2),
            f: int(6),
            e: int(38),
            expected: dp12_slope().slope,
        },
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibrationTrial {
    pub sign: i8,
    /// `N/beta` fitted on the first datum.
    pub n_over_beta: Rational,
    /// `(label, computed, expected)` for the remaining data.
    pub checks: Vec<(&'static str, Rational, Rational)>,
}

impl CalibrationTrial {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|(_, got, want)| got == want)
    }
}

/// Fits `N/beta` on the genus-24 slope for each sign reading and checks the
/// fit against the other two known slopes.
pub fn calibration_report() -> Result<Vec<CalibrationTrial>, ModuliError> {
    let data = calibration_data()?;
    let mut out = Vec::new();
    for sign in [1i8, -1] {
        let first = &data[0];
        let n = fit_n_over_beta(&first.params, &first.f, &first.e, sign, &first.expected);
        let cal = Calibration { n_over_beta: n.clone(), a_delta_sign: sign };
        let mut checks = Vec::new();
        for d in &data[1..] {
            let got = virtual_slope(&d.params, &d.f, &d.e, &cal)?.slope;
            checks.push((d.label, got, d.expected.clone()));
        }
        out.push(CalibrationTrial { sign, n_over_beta: n, checks });
    }
    Ok(out)
}

/// The calibration fitted on the genus-24 slope with the literal sign reading.
pub fn default_calibration() -> Result<Calibration, ModuliError> {
    let d = &calibration_data()?[0];
    Ok(Calibration { n_over_beta: fit_n_over_beta(&d.params, &d.f, &d.e, 1, &d.expected), a_delta_sign: 1 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dp12Report {
    pub slope: Rational,
    /// `6 + 12/13`.
    pub bound: Rational,
    /// `(e-1)(e c1(F) - (e^2+e-4) c1(E))` at `e = 6`.
    pub pencil_class: Polynomial,
    pub theorem_prefactor: i64,
    pub proof_prefactor: i64,
    /// `(6, 38)`: the class divided by its prefactor.
    pub f_coeff: Rational,
    pub e_coeff: Rational,
}

impl Dp12Report {
    pub fn below_bound(&self) -> bool {
        self.slope < self.bound
    }

    pub fn prefactors_agree(&self) -> bool {
        self.theorem_prefactor == self.proof_prefactor
    }
}

/// The degenerate-pencil divisor on the moduli space of genus-12 curves.
pub fn dp12_slope() -> Dp12Report {
    let e = 6i64;
    let pencil = pencil_class_chern(e as u32).expect("pencil class for e = 6");
    let pre = int(e - 1);
    let f_coeff = pencil.linear_coefficient(&Variable::c_f(1)) / &pre;
    let e_coeff = -pencil.linear_coefficient(&Variable::c_e(1)) / &pre;
    Dp12Report {
        slope: rat(373, 54),
        bound: int(6) + rat(12, 13),
        pencil_class: pencil,
        theorem_prefactor: e - 1,
        proof_prefactor: 10,
        f_coeff,
        e_coeff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_examples() {
        assert_eq!(series_params(1, 1).unwrap(), SeriesParams { r: 7, s: 3, a: 4, g: 24, d: 28 });
        assert_eq!(series_params(2, 1).unwrap(), SeriesParams { r: 11, s: 4, a: 5, g: 48, d: 55 });
        assert_eq!(series_params(1, 2).unwrap().g, 119);
        assert!(SeriesParams::new(7, 3, 3).is_err());
        assert!(series_params(3, 1).is_err());
    }

    #[test]
    fn genus_24_slope() {
        let s = pelda_slope(1, &rf(1), SlopeForm::Closed).unwrap();
        assert_eq!(s.as_constant().unwrap(), rat(34423, 5320));
        let a = ell_poly(&[15116544, -30233088, 26605584, -13594392, 4419720, -899433, 105656, -6101, 122]);
        assert_eq!(a.evaluate(&|_| int(1)).unwrap(), int(1514612));
    }

    #[test]
    fn closed_equals_deficit() {
        let ell = param(Param::Ell);
        assert_eq!(
            pelda_slope(1, &ell, SlopeForm::Closed).unwrap(),
            pelda_slope(1, &ell, SlopeForm::Deficit).unwrap()
        );
    }

    #[test]
    fn c1f_by_grr() {
        assert_eq!(series_c1f().unwrap().to_string(), "lambda + 2*frak_a - frak_b");
    }

    #[test]
    fn beta_cancels_and_scaling() {
        let p = series_params(1, 1).unwrap();
        let cal = Calibration { n_over_beta: rat(3, 7), a_delta_sign: 1 };
        let s1 = virtual_slope(&p, &int(1), &int(2), &cal).unwrap().slope;
        let s2 = virtual_slope(&p, &int(5), &int(10), &cal).unwrap().slope;
        assert_eq!(s1, s2);
    }

    #[test]
    fn fit_reproduces_target() {
        let cal = default_calibration().unwrap();
        let p = series_params(1, 1).unwrap();
        assert_eq!(virtual_slope_from_pushforward(&p, &cal).unwrap().slope, rat(34423, 5320));
    }

    #[test]
    fn dp12() {
        let r = dp12_slope();
        assert!(r.below_bound());
        assert_eq!((r.f_coeff.clone(), r.e_coeff.clone()), (int(6), int(38)));
        assert!(!r.prefactors_agree());
    }
}
