//! Tautological identities on the moduli space of quasi-polarized K3 surfaces.

use crate::algebra::{rat, RationalFunction};

use super::character::{grr_c1, grr_rank, BundleCharacter};
use super::rules::k3_rules;
use super::tags::{Tag, TagPoly};
use super::taut::{TautClass, TautSymbol};
use super::GrrError;

fn rf(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

fn l_power(n: &RationalFunction) -> BundleCharacter {
    BundleCharacter::line_bundle(&TagPoly::tag(Tag::C1L).scale(n))
}

/// `c_1` of `U_n = pi_* L^n` for a genus-`g` K3 family.
pub fn chern_un(n: &RationalFunction, g: &RationalFunction) -> Result<TautClass, GrrError> {
    grr_c1(&l_power(n), &k3_rules(g))
}

/// `rk U_n = chi(L^n) = 2 + n^2 (g - 1)`.
pub fn rank_un(n: &RationalFunction, g: &RationalFunction) -> Result<RationalFunction, GrrError> {
    grr_rank(&l_power(n), &k3_rules(g))
}

/// The twist-invariant class `gamma = kappa30 - ((g-1)/4) kappa11`.
pub fn k3_gamma(g: &RationalFunction) -> TautClass {
    let c = (g - &rf(1)) * RationalFunction::constant(rat(-1, 4));
    TautClass::from_terms([(TautSymbol::Kappa30, RationalFunction::one()), (TautSymbol::Kappa11, c)])
}

/// Rewrites `kappa30` through `gamma`; fails if a `kappa11` term survives.
pub fn to_k3_gamma_basis(cls: &TautClass, g: &RationalFunction) -> Result<TautClass, GrrError> {
    let c = (g - &rf(1)) * RationalFunction::constant(rat(1, 4));
    let kappa30 = TautClass::from_terms([(TautSymbol::Gamma, RationalFunction::one()), (TautSymbol::Kappa11, c)]);
    let out = cls.substitute_symbol(&TautSymbol::Kappa30, &kappa30);
    if out.contains(&TautSymbol::Kappa11) {
        return Err(GrrError::NotInBasis(format!("{cls} is not a combination of lambda and gamma")));
    }
    Ok(out)
}

/// `(kappa30, kappa11)` recomputed after `L -> L (x) pi^* alpha`.
pub fn k3_twisted_kappas(g: &RationalFunction, alpha: &TautSymbol) -> Result<(TautClass, TautClass), GrrError> {
    let rules = k3_rules(g);
    let l = &TagPoly::tag(Tag::C1L) + &TagPoly::tag(Tag::Pull(alpha.clone()));
    let k30 = rules.push(&l.pow(3))?;
    let k11 = rules.push(&(&l * &TagPoly::tag(Tag::C2T)))?;
    Ok((k30, k11))
}

/// The computation showing `lambda = 0` on K3 surfaces of genus `2i` carrying
/// a rank-2 bundle `E` with `c_1 = L`, `h^0 = i + 2` and no higher cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaRelation {
    /// `pi_*(c2 E)` as printed: `(2g-2)/2 + 24/12 - (i+2) = i - 1`.
    pub push_c2e_printed: RationalFunction,
    /// `pi_*(c2 E)` solved from GRR for `rk pi_* E = i + 2`.
    pub push_c2e_grr: RationalFunction,
    /// `ch_3(E (x) E^dual)`; vanishes identically.
    pub ch3_end: TagPoly,
    /// `c_1(pi_!(E (x) E^dual))` with the printed value of `pi_*(c2 E)`.
    pub rhs: TautClass,
    /// The same with the GRR value.
    pub rhs_grr: TautClass,
}

impl LambdaRelation {
    /// `rhs - lambda`; a nonzero multiple of `lambda` forces `lambda = 0`.
    pub fn residual(&self) -> TautClass {
        self.rhs.sub(&TautClass::symbol(TautSymbol::Lambda))
    }
}

pub fn lm_lambda_relation(i: &RationalFunction) -> Result<LambdaRelation, GrrError> {
    let g = i * &rf(2);
    let two_g_minus_two = &(&g * &rf(2)) - &rf(2);
    let h0 = i + &rf(2);
    let printed = &(&(&two_g_minus_two * &RationalFunction::constant(rat(1, 2))) + &rf(2)) - &h0;

    let l = TagPoly::tag(Tag::C1L);
    let e = BundleCharacter::from_chern(2, &l, &TagPoly::tag(Tag::C2E), &TagPoly::zero());
    // rk pi_! E is affine in x = pi_*(c2 E)
    let r0 = grr_rank(&e, &k3_rules(&g).with_c2e(RationalFunction::zero()))?;
    let r1 = grr_rank(&e, &k3_rules(&g).with_c2e(RationalFunction::one()))?;
    let solved = (&h0 - &r0) / (&r1 - &r0);

    let end = e.tensor(&e.dual());
    let rhs = grr_c1(&end, &k3_rules(&g).with_c2e(printed.clone()))?;
    let rhs_grr = grr_c1(&end, &k3_rules(&g).with_c2e(solved.clone()))?;
    Ok(LambdaRelation { push_c2e_printed: printed, push_c2e_grr: solved, ch3_end: end.ch[2].clone(), rhs, rhs_grr })
}
