//! The symmetry breaking operator families Ã, ÃÃ, B̃, B̃B̃, C̃ and the
//! normalized Knapp–Stein operators: closed-form actions on spherical and
//! K-finite vectors, kernel descriptors, residue constants q, functional
//! constants p, and image/kernel classification.
//!
//! All closed-form actions return exact Gamma monomials (or sums), so that
//! statements like "vanishes exactly on L_even" are decidable assertions.
//! Values of the renormalized families at L_even are λ-directional limits
//! with ν fixed, computed by the leading-order Laurent calculus of
//! [`crate::gamma::EpsProduct`].

use crate::gamma::{
    double_factorial, factorial, is_natural, is_nonpositive_integer, pochhammer, rat_i, EpsProduct,
    GammaError, GammaMonomial, GammaSum, Rat,
};
use crate::params::{classify, ParamError, ParamPoint};
use crate::poly::{Poly1, Poly2};
use crate::polyops::{juhl_operator, DiffOp, PolyOpsError};
use crate::specfun::SpecFunError;
use num::ToPrimitive;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SboError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    PolyOps(#[from] PolyOpsError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("operator {0} is not defined at (λ,ν) = ({1}, {2}): {3}")]
    DomainViolation(String, String, String, String),
    #[error("image classification requires ν ∈ -N or ν-(n-1) ∈ N")]
    NotReducibleNu,
    #[error("sample points must stay at least {0} away from the singular set")]
    SingularSample(f64),
}

/// The operator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    /// The (generically) regular family Ã_{λ,ν}, entire in (λ,ν).
    A,
    /// The renormalized ÃÃ_{λ,ν} = Γ((λ−ν)/2)·Ã, for ν ∈ −ℕ.
    AA,
    /// The singular family B̃_{λ,ν}, for (λ,ν) ∈ \\.
    B,
    /// The renormalized B̃B̃_{λ,ν}, for (λ,ν) ∈ L_even with n odd.
    BB,
    /// The Juhl differential family C̃_{λ,ν}, for (λ,ν) ∈ //.
    C,
    /// The normalized Knapp–Stein operator of G' = O(n,1): J(ν) → J(n−1−ν).
    KsGPrime,
    /// The normalized Knapp–Stein operator of G = O(n+1,1): I(λ) → I(n−λ).
    KsG,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorKind::A => "A",
            OperatorKind::AA => "AA",
            OperatorKind::B => "B",
            OperatorKind::BB => "BB",
            OperatorKind::C => "C",
            OperatorKind::KsGPrime => "KS_Gprime",
            OperatorKind::KsG => "KS_G",
        };
        write!(f, "{}", s)
    }
}

/// The K-finite test vector F_λ[C̃̃_N^{n/2−1}(ω_n), h].  Pairings with odd N
/// vanish identically; the spherical vector is (N = 0, h = 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KFiniteVector {
    pub n_degree: u32,
    pub h: Poly1,
}

impl KFiniteVector {
    pub fn new(n_degree: u32, h: Poly1) -> Self {
        KFiniteVector { n_degree, h }
    }

    pub fn spherical() -> Self {
        KFiniteVector {
            n_degree: 0,
            h: Poly1::one(),
        }
    }
}

/// Region/domain bookkeeping shared by the operator constants.
struct Region {
    n: i64,
    lambda: Rat,
    nu: Rat,
    /// k with λ+ν = n−1−2k when (λ,ν) ∈ \\.
    k: Option<u64>,
    /// l with ν−λ = 2l when (λ,ν) ∈ //.
    l: Option<u64>,
    leven: bool,
}

fn region(p: &ParamPoint) -> Result<Region, SboError> {
    let lambda = p.exact_lambda()?.clone();
    let nu = p.exact_nu()?.clone();
    let r = classify(p);
    Ok(Region {
        n: p.n,
        lambda,
        nu,
        k: r.k,
        l: r.l,
        leven: r.in_leven.holds(),
    })
}

fn domain_err(kind: OperatorKind, p: &ParamPoint, why: &str) -> SboError {
    SboError::DomainViolation(
        kind.to_string(),
        p.lambda.to_string(),
        p.nu.to_string(),
        why.to_string(),
    )
}

fn require(kind: OperatorKind, p: &ParamPoint, r: &Region) -> Result<(), SboError> {
    match kind {
        OperatorKind::A | OperatorKind::KsGPrime | OperatorKind::KsG => Ok(()),
        OperatorKind::AA => {
            if is_nonpositive_integer(&r.nu) {
                Ok(())
            } else {
                Err(domain_err(kind, p, "requires ν ∈ -N"))
            }
        }
        OperatorKind::B => {
            if r.k.is_some() {
                Ok(())
            } else {
                Err(domain_err(kind, p, "requires λ+ν ∈ n-1-2N"))
            }
        }
        OperatorKind::BB => {
            if r.leven && r.n % 2 == 1 {
                Ok(())
            } else {
                Err(domain_err(kind, p, "requires (λ,ν) ∈ L_even with n odd"))
            }
        }
        OperatorKind::C => {
            if r.l.is_some() {
                Ok(())
            } else {
                Err(domain_err(kind, p, "requires ν-λ ∈ 2N"))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Spherical actions
// ---------------------------------------------------------------------------

/// The constant c in T(1_λ) = c·1_ν (or 1_{n−1−ν}, 1_{n−λ} for the
/// Knapp–Stein kinds).
pub fn spherical_action(kind: OperatorKind, p: &ParamPoint) -> Result<GammaMonomial, SboError> {
    let r = region(p)?;
    require(kind, p, &r)?;
    let m = r.n - 1;
    let pi_m = GammaMonomial::pi_half_power(m);
    Ok(match kind {
        OperatorKind::A => pi_m.mul(&GammaMonomial::inv_gamma(r.lambda.clone())),
        OperatorKind::B => {
            let k = r.k.unwrap();
            let c = kind_b_prefactor(k);
            pi_m.mul(&GammaMonomial::inv_gamma(r.lambda.clone()))
                .scale(&c)
        }
        OperatorKind::C => {
            let l = r.l.unwrap();
            let sign = if l % 2 == 0 { rat_i(1) } else { rat_i(-1) };
            let c = sign * num::pow::pow(rat_i(2), 2 * l as usize) * pochhammer(&r.lambda, 2 * l)
                / factorial(l);
            GammaMonomial::from_rational(c)
        }
        OperatorKind::AA => {
            // λ-directional limit of π^{m/2} Γ((λ−ν)/2) / Γ(λ), exact at
            // L_even via the Laurent calculus.
            EpsProduct::one()
                .mul_const(&pi_m)
                .mul_gamma(&((&r.lambda - &r.nu) / rat_i(2)), &crate::gamma::rat(1, 2))
                .mul_inv_gamma(&r.lambda, &rat_i(1))
                .value()?
        }
        OperatorKind::BB => {
            // B̃B̃ = (1/q^A_B) ÃÃ by the pointwise kernel identity.
            let k = r.k.unwrap();
            let aa = spherical_action(OperatorKind::AA, p)?;
            aa.scale(&kind_b_prefactor(k))
        }
        OperatorKind::KsGPrime => {
            GammaMonomial::pi_half_power(m).mul(&GammaMonomial::inv_gamma(r.nu.clone()))
        }
        OperatorKind::KsG => {
            GammaMonomial::pi_half_power(r.n).mul(&GammaMonomial::inv_gamma(r.lambda.clone()))
        }
    })
}

/// (−1)^k 2^k (2k−1)!! = 1/q^A_B, the B-vs-A proportionality.
fn kind_b_prefactor(k: u64) -> Rat {
    let sign = if k.is_multiple_of(2) {
        rat_i(1)
    } else {
        rat_i(-1)
    };
    sign * num::pow::pow(rat_i(2), k as usize) * double_factorial(2 * k as i64 - 1)
}

/// Whether the spherical vector lies in the kernel of the operator.
pub fn spherical_in_kernel(kind: OperatorKind, p: &ParamPoint) -> Result<bool, SboError> {
    Ok(spherical_action(kind, p)?.is_zero())
}

// ---------------------------------------------------------------------------
// K-finite pairings
// ---------------------------------------------------------------------------

/// The three factors of the unreduced K-finite closed form for kind A:
/// prefactor c, the P_{a,b}(h) value, and the finite product V.
pub struct PairingParts {
    pub prefactor: GammaMonomial,
    pub p_value: GammaSum,
    pub v_product: Rat,
}

/// Unreduced factors of ⟨K̃^A, F_λ[C̃̃_N^{n/2−1}, h]⟩ (kind A only, generic
/// parameters; each factor separately testable).
pub fn kfinite_pairing_parts(p: &ParamPoint, v: &KFiniteVector) -> Result<PairingParts, SboError> {
    let r = region(p)?;
    let n = r.n;
    let cap_n = v.n_degree;
    let a = (&r.lambda - &r.nu + rat_i(cap_n as i64)) / rat_i(2);
    let b = (&r.lambda + &r.nu + rat_i(cap_n as i64)) / rat_i(2);
    let prefactor = GammaMonomial::two_power(rat_i(3) - &r.lambda - rat_i(n))
        .mul(&GammaMonomial::pi_half_power(n))
        .mul(&GammaMonomial::gamma(rat_i(n + cap_n as i64 - 1)))
        .mul(&GammaMonomial::inv_gamma(rat_i(n - 1) / rat_i(2)))
        .mul(&GammaMonomial::inv_gamma(rat_i(cap_n as i64 + 1)));
    let p_value = crate::specfun::pab(&a, &b, &v.h);
    let mut v_product = rat_i(1);
    for j in 0..(cap_n / 2) as i64 {
        v_product *= (&r.lambda - &r.nu) / rat_i(2) + rat_i(j);
        v_product *= (&r.lambda + &r.nu - rat_i(n)) / rat_i(2) - rat_i(j);
    }
    Ok(PairingParts {
        prefactor,
        p_value,
        v_product,
    })
}

/// ⟨kernel of `kind`, F_λ[C̃̃_N^{n/2−1}(ω_n), h]⟩ as an exact Gamma sum.
///
/// Kinds A and B are entire along their parameter sets; the renormalized
/// kinds AA and BB are λ-directional limits with ν fixed, evaluated per
/// g_{l1,l2}-basis vector so each limit is of a pure product.  Odd N pairs
/// to exactly zero.
pub fn kfinite_pairing(
    kind: OperatorKind,
    p: &ParamPoint,
    v: &KFiniteVector,
) -> Result<GammaSum, SboError> {
    let r = region(p)?;
    require(kind, p, &r)?;
    let scale = match kind {
        OperatorKind::A => rat_i(1),
        OperatorKind::B => kind_b_prefactor(r.k.unwrap()),
        OperatorKind::AA => rat_i(1),
        OperatorKind::BB => kind_b_prefactor(r.k.unwrap()),
        _ => {
            return Err(domain_err(
                kind,
                p,
                "K-finite pairings exist for A, AA, B, BB",
            ));
        }
    };
    let renormalized = matches!(kind, OperatorKind::AA | OperatorKind::BB);
    if v.n_degree % 2 == 1 {
        return Ok(GammaSum::zero());
    }
    let n = r.n;
    let cap_n = v.n_degree;
    let lam = &r.lambda;
    let nu = &r.nu;
    let half = crate::gamma::rat(1, 2);
    let one = rat_i(1);
    let a0 = (lam - nu + rat_i(cap_n as i64)) / rat_i(2);
    let b0 = (lam + nu + rat_i(cap_n as i64)) / rat_i(2);
    let prefactor = GammaMonomial::two_power(rat_i(3) - lam - rat_i(n))
        .mul(&GammaMonomial::pi_half_power(n))
        .mul(&GammaMonomial::gamma(rat_i(n + cap_n as i64 - 1)))
        .mul(&GammaMonomial::inv_gamma(rat_i(n - 1) / rat_i(2)))
        .mul(&GammaMonomial::inv_gamma(rat_i(cap_n as i64 + 1)))
        .scale(&scale);

    let mut acc = GammaSum::zero();
    for ((l1, l2), coeff) in v.h.g_basis_expansion() {
        let mut term = EpsProduct::one().mul_const(&prefactor.scale(&coeff));
        if renormalized {
            term = term.mul_gamma(&((lam - nu) / rat_i(2)), &half);
        }
        // P_{a,b}(g_{l1,l2}) = 2^{a+b+l1+l2−1} ∏(a+i) ∏(b+j) / Γ(a+b+l1+l2)
        term = term.mul_const(&GammaMonomial::two_power(
            &a0 + &b0 + rat_i((l1 + l2) as i64) - rat_i(1),
        ));
        for i in 0..l1 as i64 {
            term = term.mul_linear(&(&a0 + rat_i(i)), &half);
        }
        for j in 0..l2 as i64 {
            term = term.mul_linear(&(&b0 + rat_i(j)), &half);
        }
        term = term.mul_inv_gamma(&(&a0 + &b0 + rat_i((l1 + l2) as i64)), &one);
        // V = ∏_{j<N/2} ((λ−ν)/2 + j)((λ+ν−n)/2 − j)
        for j in 0..(cap_n / 2) as i64 {
            term = term.mul_linear(&((lam - nu) / rat_i(2) + rat_i(j)), &half);
            term = term.mul_linear(&((lam + nu - rat_i(n)) / rat_i(2) - rat_i(j)), &half);
        }
        acc.add_monomial(term.value()?);
    }
    Ok(acc)
}

/// `kfinite_pairing` reduced to a single canonical monomial.
pub fn kfinite_pairing_monomial(
    kind: OperatorKind,
    p: &ParamPoint,
    v: &KFiniteVector,
) -> Result<GammaMonomial, SboError> {
    Ok(kfinite_pairing(kind, p, v)?.as_monomial()?)
}

// ---------------------------------------------------------------------------
// Residue and functional constants
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueWhich {
    /// q^A_B with Ã = q^A_B B̃ on \\.
    BOfA,
    /// q^A_C with Ã = q^A_C C̃ on //.
    COfA,
    /// q^B_C with B̃ = q^B_C C̃ on 𝕏.
    COfB,
}

/// The residue constants q of the operator hierarchy.
pub fn residue_constant(which: ResidueWhich, p: &ParamPoint) -> Result<GammaMonomial, SboError> {
    let r = region(p)?;
    let m = r.n - 1;
    match which {
        ResidueWhich::BOfA => {
            let k =
                r.k.ok_or_else(|| domain_err(OperatorKind::B, p, "q^A_B needs (λ,ν) ∈ \\\\"))?;
            let sign = if k % 2 == 0 { rat_i(1) } else { rat_i(-1) };
            Ok(GammaMonomial::from_rational(
                sign / (num::pow::pow(rat_i(2), k as usize) * double_factorial(2 * k as i64 - 1)),
            ))
        }
        ResidueWhich::COfA => {
            let l =
                r.l.ok_or_else(|| domain_err(OperatorKind::C, p, "q^A_C needs (λ,ν) ∈ //"))?;
            let sign = if l % 2 == 0 { rat_i(1) } else { rat_i(-1) };
            Ok(GammaMonomial::pi_half_power(m)
                .mul(&GammaMonomial::inv_gamma(r.nu.clone()))
                .scale(&(sign * factorial(l) / num::pow::pow(rat_i(2), 2 * l as usize))))
        }
        ResidueWhich::COfB => {
            let (Some(k), Some(l)) = (r.k, r.l) else {
                return Err(domain_err(OperatorKind::B, p, "q^B_C needs (λ,ν) ∈ 𝕏"));
            };
            let sign = if (l as i64 - k as i64) % 2 == 0 {
                rat_i(1)
            } else {
                rat_i(-1)
            };
            let c = sign
                * factorial(l)
                * double_factorial(2 * k as i64 - 1)
                * num::pow::pow(rat_i(2), k as usize)
                / num::pow::pow(rat_i(2), 2 * l as usize);
            Ok(GammaMonomial::pi_half_power(m)
                .mul(&GammaMonomial::inv_gamma(r.nu.clone()))
                .scale(&c))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalWhich {
    /// p^{TA}_A: T̃_{ν,m−ν} ∘ Ã_{λ,ν} = p · Ã_{λ,m−ν}, all (λ,ν).
    TAfterA,
    /// p^{TB}_C: T̃_{ν,m−ν} ∘ B̃_{λ,ν} = p · C̃_{λ,m−ν}, (λ,ν) ∈ \\.
    TAfterB,
    /// p^{TC}_B: T̃_{ν,m−ν} ∘ C̃_{λ,ν} = p · B̃_{λ,m−ν}, (λ,ν) ∈ //.
    TAfterCToB,
    /// p^{TC}_C: T̃_{ν,m−ν} ∘ C̃_{λ,ν} = p · C̃_{λ,m−ν}, (λ,ν) ∈ 𝕏.
    TAfterCToC,
    /// Ã_{n−λ,ν} ∘ T̃_{λ,n−λ} = p · Ã_{λ,ν}, all (λ,ν).
    AAfterTG,
    /// T̃_{ν,m−ν} ∘ ÃÃ_{λ,ν} = 0 for ν ∈ −ℕ.
    AAAfterT,
}

/// The functional-equation constants p.
pub fn functional_constant(
    which: FunctionalWhich,
    p: &ParamPoint,
) -> Result<GammaMonomial, SboError> {
    let r = region(p)?;
    let m = r.n - 1;
    match which {
        FunctionalWhich::TAfterA => {
            Ok(GammaMonomial::pi_half_power(m).mul(&GammaMonomial::inv_gamma(r.nu.clone())))
        }
        FunctionalWhich::TAfterB => {
            let k =
                r.k.ok_or_else(|| domain_err(OperatorKind::B, p, "p^{TB}_C needs (λ,ν) ∈ \\\\"))?;
            let c = factorial(2 * k) / num::pow::pow(rat_i(2), 2 * k as usize);
            Ok(GammaMonomial::pi_half_power(2 * m)
                .mul(&GammaMonomial::inv_gamma(r.nu.clone()))
                .mul(&GammaMonomial::inv_gamma(rat_i(m) - &r.nu))
                .scale(&c))
        }
        FunctionalWhich::TAfterCToB => {
            let l =
                r.l.ok_or_else(|| domain_err(OperatorKind::C, p, "p^{TC}_B needs (λ,ν) ∈ //"))?;
            Ok(GammaMonomial::from_rational(
                num::pow::pow(rat_i(2), 2 * l as usize) / factorial(2 * l),
            ))
        }
        FunctionalWhich::TAfterCToC => {
            let (Some(k), Some(l)) = (r.k, r.l) else {
                return Err(domain_err(OperatorKind::C, p, "p^{TC}_C needs (λ,ν) ∈ 𝕏"));
            };
            // p^{TC}_C = p^{TC}_B(λ,ν) q^B_C(λ, m−ν)
            //          = (−1)^{k+l} k! π^{m/2} / (2^{2k−2l} l! Γ(m−ν))
            let sign = if (k + l) % 2 == 0 {
                rat_i(1)
            } else {
                rat_i(-1)
            };
            let c = sign * factorial(k) * num::pow::pow(rat_i(2), 2 * l as usize)
                / (factorial(l) * num::pow::pow(rat_i(2), 2 * k as usize));
            Ok(GammaMonomial::pi_half_power(m)
                .mul(&GammaMonomial::inv_gamma(rat_i(m) - &r.nu))
                .scale(&c))
        }
        FunctionalWhich::AAfterTG => Ok(GammaMonomial::pi_half_power(r.n)
            .mul(&GammaMonomial::inv_gamma(rat_i(r.n) - &r.lambda))),
        FunctionalWhich::AAAfterT => {
            if !is_nonpositive_integer(&r.nu) {
                return Err(domain_err(OperatorKind::AA, p, "requires ν ∈ -N"));
            }
            Ok(GammaMonomial::zero())
        }
    }
}

// ---------------------------------------------------------------------------
// Kernel descriptors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Support {
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "hyperplane_S^{n-1}")]
    Hyperplane,
    #[serde(rename = "point_p+")]
    Point,
    #[serde(rename = "zero")]
    Zero,
}

#[derive(Debug, Clone, Serialize)]
pub enum KernelForm {
    /// normalization · |x_n|^{λ+ν−n} (|x|²+x_n²)^{−ν}
    Density { normalization: GammaMonomial },
    /// normalization · Σ_i coeff_i |x|^{−2ν−2i} δ^{(2k−2i)}(x_n)
    DeltaTransverse {
        normalization: GammaMonomial,
        terms: Vec<(u32, GammaMonomial)>,
    },
    /// A point-supported kernel: the dual differential operator.
    DeltaPoint { op: DiffOp },
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelDescriptor {
    pub kind: OperatorKind,
    pub params: ParamPoint,
    pub form: KernelForm,
    pub support: Support,
}

/// Kernel form and support of the operator at the given parameters.
pub fn kernel_descriptor(kind: OperatorKind, p: &ParamPoint) -> Result<KernelDescriptor, SboError> {
    let r = region(p)?;
    require(kind, p, &r)?;
    let in_ss = r.k.is_some();
    let in_par = r.l.is_some();
    let in_x = in_ss && in_par;
    let n_odd = r.n % 2 == 1;
    let form;
    let support;
    match kind {
        OperatorKind::A => {
            let normalization =
                GammaMonomial::inv_gamma((&r.lambda + &r.nu - rat_i(r.n) + rat_i(1)) / rat_i(2))
                    .mul(&GammaMonomial::inv_gamma((&r.lambda - &r.nu) / rat_i(2)));
            form = KernelForm::Density { normalization };
            support = if r.leven {
                Support::Zero
            } else if in_ss && !in_x {
                Support::Hyperplane
            } else if in_par {
                Support::Point
            } else {
                Support::Full
            };
        }
        OperatorKind::AA => {
            let normalization =
                GammaMonomial::inv_gamma((&r.lambda + &r.nu - rat_i(r.n) + rat_i(1)) / rat_i(2));
            form = KernelForm::Density { normalization };
            support = if in_ss {
                Support::Hyperplane
            } else {
                Support::Full
            };
        }
        OperatorKind::B | OperatorKind::BB => {
            let k = r.k.unwrap() as u32;
            let normalization = if kind == OperatorKind::B {
                GammaMonomial::inv_gamma((&r.lambda - &r.nu) / rat_i(2))
            } else {
                GammaMonomial::one()
            };
            let mut terms = Vec::new();
            for i in 0..=k {
                let sign = if i % 2 == 0 { rat_i(1) } else { rat_i(-1) };
                let c = sign * factorial(2 * k as u64) * pochhammer(&r.nu, i as u64)
                    / (factorial((2 * k - 2 * i) as u64) * factorial(i as u64));
                let c = GammaMonomial::from_rational(c);
                if !c.is_zero() {
                    terms.push((i, c));
                }
            }
            form = KernelForm::DeltaTransverse {
                normalization,
                terms,
            };
            support = if kind == OperatorKind::BB {
                Support::Hyperplane
            } else if r.leven && n_odd {
                Support::Zero
            } else if in_x {
                Support::Point
            } else {
                Support::Hyperplane
            };
        }
        OperatorKind::C => {
            let op = juhl_operator(r.n, &r.lambda, &r.nu)?;
            form = KernelForm::DeltaPoint { op };
            support = Support::Point;
        }
        OperatorKind::KsGPrime | OperatorKind::KsG => {
            // Riesz kernel; a differential residue when the order is natural.
            let (dim, par) = if kind == OperatorKind::KsGPrime {
                (r.n - 1, r.nu.clone())
            } else {
                (r.n, r.lambda.clone())
            };
            let j = rat_i(dim) / rat_i(2) - &par;
            if is_natural(&j) && j.to_integer().to_u32().is_some() {
                let op =
                    crate::polyops::knapp_stein_residue_op(dim, j.to_integer().to_u32().unwrap());
                form = KernelForm::DeltaPoint { op };
                support = Support::Point;
            } else {
                form = KernelForm::Density {
                    normalization: GammaMonomial::inv_gamma(&par - rat_i(dim) / rat_i(2)),
                };
                support = Support::Full;
            }
        }
    }
    Ok(KernelDescriptor {
        kind,
        params: p.clone(),
        form,
        support,
    })
}

// ---------------------------------------------------------------------------
// Images
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImageClass {
    #[serde(rename = "zero")]
    Zero,
    /// The finite-dimensional composition factor F(j).
    F(u64),
    /// The infinite-dimensional composition factor T(j).
    T(u64),
    /// All of J(ν) (as a (g',K')-module).
    FullJ,
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageClass::Zero => write!(f, "0"),
            ImageClass::F(j) => write!(f, "F({})", j),
            ImageClass::T(j) => write!(f, "T({})", j),
            ImageClass::FullJ => write!(f, "J"),
        }
    }
}

/// Image of I(λ)_K under the operator, for reducible ν (ν ∈ −ℕ or
/// ν − (n−1) ∈ ℕ).
pub fn image_of(kind: OperatorKind, p: &ParamPoint) -> Result<ImageClass, SboError> {
    let r = region(p)?;
    require(kind, p, &r)?;
    let n_odd = r.n % 2 == 1;
    let m = r.n - 1;
    if is_nonpositive_integer(&r.nu) {
        let j = (-&r.nu)
            .to_integer()
            .to_u64()
            .ok_or(SboError::NotReducibleNu)?;
        return Ok(match kind {
            OperatorKind::A => {
                if r.leven {
                    ImageClass::Zero
                } else {
                    ImageClass::F(j)
                }
            }
            OperatorKind::AA => ImageClass::F(j),
            OperatorKind::B => {
                if r.leven && n_odd {
                    ImageClass::Zero
                } else {
                    ImageClass::F(j)
                }
            }
            OperatorKind::BB => ImageClass::F(j),
            OperatorKind::C => ImageClass::FullJ,
            _ => return Err(SboError::NotReducibleNu),
        });
    }
    let shifted = &r.nu - rat_i(m);
    if is_natural(&shifted) {
        let j = shifted
            .to_integer()
            .to_u64()
            .ok_or(SboError::NotReducibleNu)?;
        // λ + j ∈ −2ℕ ⟺ (λ, −j) ∈ L_even
        let lam_plus_j = &r.lambda + rat_i(j as i64);
        let tcase = is_nonpositive_integer(&lam_plus_j)
            && num::Zero::is_zero(&(lam_plus_j.to_integer() % num::BigInt::from(2)));
        return Ok(match kind {
            OperatorKind::A => {
                if tcase {
                    ImageClass::T(j)
                } else {
                    ImageClass::FullJ
                }
            }
            OperatorKind::B => ImageClass::T(j),
            OperatorKind::C => {
                if tcase && n_odd {
                    ImageClass::T(j)
                } else {
                    ImageClass::FullJ
                }
            }
            _ => return Err(SboError::NotReducibleNu),
        });
    }
    Err(SboError::NotReducibleNu)
}

// ---------------------------------------------------------------------------
// Fourier side
// ---------------------------------------------------------------------------

/// The Fourier transform of the normalized A-kernel at (|ξ|, ξ_n) with
/// |ξ_n| < |ξ|, through the ₂F₁ series:
/// π^{(n−1)/2} |ξ|^{ν−λ} / (Γ(ν) 2^{ν−λ}) · ₂F₁((λ−ν)/2, (λ+ν+1−n)/2; 1/2; −ξ_n²/|ξ|²).
pub fn fourier_a_kernel(p: &ParamPoint, xi_norm: f64, xi_n: f64) -> Result<f64, SboError> {
    let r = region(p)?;
    let lam = crate::gamma::rat_to_f64(&r.lambda);
    let nu = crate::gamma::rat_to_f64(&r.nu);
    let z = -(xi_n / xi_norm).powi(2);
    let f = crate::specfun::hyp2f1_real(
        (lam - nu) / 2.0,
        (lam + nu + 1.0 - r.n as f64) / 2.0,
        0.5,
        z,
    )?;
    let front = std::f64::consts::PI.powf((r.n - 1) as f64 / 2.0) * xi_norm.powf(nu - lam)
        / (crate::gamma::gamma_f64(nu) * 2f64.powf(nu - lam));
    Ok(front * f)
}

/// The exact polynomial Fourier transform of the point-supported C-kernel:
/// (−1)^l C̃_{2l}^{λ−(n−1)/2}(−|ξ|², ξ_n), returned as a polynomial in
/// (S, T) = (|ξ|², ξ_n).
pub fn fourier_c_kernel(p: &ParamPoint) -> Result<Poly2, SboError> {
    let r = region(p)?;
    let l =
        r.l.ok_or_else(|| domain_err(OperatorKind::C, p, "requires (λ,ν) ∈ //"))? as u32;
    let mu = &r.lambda - rat_i(r.n - 1) / rat_i(2);
    let ct = crate::specfun::c_tilde(l, &mu);
    // substitute s := −S and multiply by (−1)^l
    let terms = ct.terms().map(|(&(i, j), c)| {
        let sign = if (l + i).is_multiple_of(2) {
            rat_i(1)
        } else {
            rat_i(-1)
        };
        ((i, j), c * sign)
    });
    Ok(Poly2::from_terms(terms))
}

/// The terminating ₂F₁ route of the Fourier-transformed A-kernel on //, as
/// the pair (prefactor, polynomial in (S, T) = (|ξ|², ξ_n)):
/// F(K̃^A) = π^{(n−1)/2}/(Γ(ν) 2^{2l}) · Σ_j (−l)_j ((λ+ν+1−n)/2)_j / ((1/2)_j j!) (−1)^j T^{2j} S^{l−j}.
pub fn fourier_a_poly(p: &ParamPoint) -> Result<(GammaMonomial, Poly2), SboError> {
    let r = region(p)?;
    let l =
        r.l.ok_or_else(|| domain_err(OperatorKind::A, p, "polynomial route requires (λ,ν) ∈ //"))?
            as u32;
    let front = GammaMonomial::pi_half_power(r.n - 1)
        .mul(&GammaMonomial::inv_gamma(r.nu.clone()))
        .mul(&GammaMonomial::two_power(rat_i(-2 * (l as i64))));
    let b0 = (&r.lambda + &r.nu + rat_i(1) - rat_i(r.n)) / rat_i(2);
    let mut terms = Vec::new();
    for j in 0..=l {
        let c = pochhammer(&rat_i(-(l as i64)), j as u64) * pochhammer(&b0, j as u64)
            / (pochhammer(&crate::gamma::rat(1, 2), j as u64) * factorial(j as u64));
        let sign = if j % 2 == 0 { rat_i(1) } else { rat_i(-1) };
        terms.push(((l - j, 2 * j), c * sign));
    }
    Ok((front, Poly2::from_terms(terms)))
}

// ---------------------------------------------------------------------------
// PDE residual check
// ---------------------------------------------------------------------------

/// Central-difference residuals of the defining system on the unnormalized
/// A-kernel |x_n|^{λ+ν−n}(|x|²+x_n²)^{−ν} at explicit sample points:
/// homogeneity (E − (λ−ν−n))F = 0 and the n−1 equations
/// ((λ−n)x_j − x_j E + ½(|x|²+x_n²)∂_j)F = 0.  Points closer than 0.1 to
/// {x_n = 0} ∪ {0} are rejected.
pub fn pde_residual_at(
    p: &ParamPoint,
    sample_points: &[Vec<f64>],
    fd_step: f64,
) -> Result<f64, SboError> {
    let r = region(p)?;
    let n = r.n as usize;
    let lam = crate::gamma::rat_to_f64(&r.lambda);
    let nu = crate::gamma::rat_to_f64(&r.nu);
    let kernel = |x: &[f64]| -> f64 {
        let xn = x[n - 1];
        let r2: f64 = x.iter().map(|v| v * v).sum();
        xn.abs().powf(lam + nu - r.n as f64) * r2.powf(-nu)
    };
    let mut max_res: f64 = 0.0;
    for x in sample_points {
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if x.len() != n || x[n - 1].abs() < 0.1 || norm < 0.1 {
            return Err(SboError::SingularSample(0.1));
        }
        let partial = |x: &[f64], j: usize| -> f64 {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[j] += fd_step;
            xm[j] -= fd_step;
            (kernel(&xp) - kernel(&xm)) / (2.0 * fd_step)
        };
        let f = kernel(x);
        let euler: f64 = (0..n).map(|j| x[j] * partial(x, j)).sum();
        let res_a = euler - (lam - nu - r.n as f64) * f;
        max_res = max_res.max(res_a.abs());
        let r2: f64 = x.iter().map(|v| v * v).sum();
        for j in 0..n - 1 {
            let res = (lam - r.n as f64) * x[j] * f - x[j] * euler + 0.5 * r2 * partial(x, j);
            max_res = max_res.max(res.abs());
        }
    }
    Ok(max_res)
}

/// `pde_residual_at` over `samples` seeded random points of the annulus
/// 0.5 < |x̃| < 2 with |x_n| ≥ 0.1 and |x| ≥ 0.1.
pub fn pde_residual(
    p: &ParamPoint,
    samples: usize,
    fd_step: f64,
    seed: u64,
) -> Result<f64, SboError> {
    use rand::{Rng, SeedableRng};
    let n = p.n as usize;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(samples);
    let mut guard = 0usize;
    while points.len() < samples {
        guard += 1;
        if guard > samples * 1000 {
            return Err(SboError::SingularSample(0.1));
        }
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let tang: f64 = x[..n - 1].iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(0.5..=2.0).contains(&norm) || x[n - 1].abs() < 0.1 || tang < 0.1 {
            continue;
        }
        points.push(x);
    }
    pde_residual_at(p, &points, fd_step)
}
