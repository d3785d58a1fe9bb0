//! Exact classification of the parameter point (n, λ, ν): membership in the
//! special parameter sets, octants of the reducible lattice, multiplicity
//! tables and operator-basis tables.

use crate::gamma::{is_integer, rat_i, Rat};
use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// An exact rational or an inexact complex parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Exact(Rat),
    Complex { re: f64, im: f64 },
}

impl ParamValue {
    pub fn exact_i(v: i64) -> Self {
        ParamValue::Exact(rat_i(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ParamValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            ParamValue::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn re(&self) -> f64 {
        match self {
            ParamValue::Exact(r) => crate::gamma::rat_to_f64(r),
            ParamValue::Complex { re, .. } => *re,
        }
    }

    pub fn im(&self) -> f64 {
        match self {
            ParamValue::Exact(_) => 0.0,
            ParamValue::Complex { im, .. } => *im,
        }
    }

    /// Parse "p/q", an integer, a decimal, or "a+bi"/"a-bi"/"bi".
    pub fn parse(s: &str) -> Result<Self, ParamError> {
        let s = s.trim();
        let bad = || ParamError::Parse(s.to_string());
        if let Some(stripped) = s.strip_suffix('i') {
            // complex literal: "a+bi", "a-bi", "bi"
            let body = stripped.trim();
            // split at the last +/- that is not the leading sign
            let mut split_at = None;
            for (idx, ch) in body.char_indices().skip(1) {
                if ch == '+' || ch == '-' {
                    split_at = Some(idx);
                }
            }
            let (re_s, im_s) = match split_at {
                Some(idx) => (&body[..idx], &body[idx..]),
                None => ("0", body),
            };
            let re: f64 = re_s.trim().parse().map_err(|_| bad())?;
            let im_s = im_s.trim();
            let im: f64 = if im_s.is_empty() || im_s == "+" {
                1.0
            } else if im_s == "-" {
                -1.0
            } else {
                im_s.parse().map_err(|_| bad())?
            };
            return Ok(ParamValue::Complex { re, im });
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(ParamValue::Exact(Rat::new(p, q)));
        }
        if let Ok(p) = s.parse::<BigInt>() {
            return Ok(ParamValue::Exact(Rat::from_integer(p)));
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        Ok(ParamValue::Complex { re: v, im: 0.0 })
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Exact(r) => write!(f, "{}", r),
            ParamValue::Complex { re, im } if *im == 0.0 => write!(f, "{}", re),
            ParamValue::Complex { re, im } if *im >= 0.0 => write!(f, "{}+{}i", re, im),
            ParamValue::Complex { re, im } => write!(f, "{}{}i", re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("ambient dimension must satisfy n >= 2, got {0}")]
    DimensionTooSmall(i64),
    #[error("cannot parse parameter value: {0:?}")]
    Parse(String),
    #[error("operation requires exact rational parameters")]
    InexactParameters,
    #[error("({0}, {1}) lies outside the reducible lattice")]
    OutsideLattice(String, String),
}

/// The universal input: a parameter pair (λ, ν) with the ambient dimension n.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoint {
    pub n: i64,
    pub lambda: ParamValue,
    pub nu: ParamValue,
    pub exact: bool,
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ParamPoint", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lambda", &self.lambda.to_string())?;
        st.serialize_field("nu", &self.nu.to_string())?;
        st.serialize_field("exact", &self.exact)?;
        st.end()
    }
}

impl ParamPoint {
    pub fn new(n: i64, lambda: ParamValue, nu: ParamValue) -> Result<Self, ParamError> {
        if n < 2 {
            return Err(ParamError::DimensionTooSmall(n));
        }
        let exact = lambda.is_exact() && nu.is_exact();
        Ok(ParamPoint {
            n,
            lambda,
            nu,
            exact,
        })
    }

    /// Exact integer point.
    pub fn from_ints(n: i64, lambda: i64, nu: i64) -> Result<Self, ParamError> {
        Self::new(n, ParamValue::exact_i(lambda), ParamValue::exact_i(nu))
    }

    /// Exact rational point.
    pub fn from_rats(n: i64, lambda: Rat, nu: Rat) -> Result<Self, ParamError> {
        Self::new(n, ParamValue::Exact(lambda), ParamValue::Exact(nu))
    }

    /// m = n − 1, the dimension on the J(ν) side.
    pub fn m(&self) -> i64 {
        self.n - 1
    }

    pub fn exact_lambda(&self) -> Result<&Rat, ParamError> {
        self.lambda.as_exact().ok_or(ParamError::InexactParameters)
    }

    pub fn exact_nu(&self) -> Result<&Rat, ParamError> {
        self.nu.as_exact().ok_or(ParamError::InexactParameters)
    }
}

/// Tri-state set membership: exact inputs answer in/out, inexact inputs can
/// only be out or within the 1e−12 tolerance of the defining linear forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    WithinTolerance,
}

impl Membership {
    pub fn holds(self) -> bool {
        self == Membership::In
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Membership::In
        } else {
            Membership::Out
        }
    }
}

impl Serialize for Membership {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Membership::In => s.serialize_bool(true),
            Membership::Out => s.serialize_bool(false),
            Membership::WithinTolerance => s.serialize_str("within-tolerance"),
        }
    }
}

/// Octants of the reducible parameter lattice, boundary conventions as listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Octant {
    IA,
    IB,
    IIA,
    IIB,
    IIIA,
    IIIB,
    IVA,
    IVB,
}

impl fmt::Display for Octant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Octant::IA => "I.A",
            Octant::IB => "I.B",
            Octant::IIA => "II.A",
            Octant::IIB => "II.B",
            Octant::IIIA => "III.A",
            Octant::IIIB => "III.B",
            Octant::IVA => "IV.A",
            Octant::IVB => "IV.B",
        };
        write!(f, "{}", s)
    }
}

impl Serialize for Octant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeylClass {
    #[serde(rename = "L_even-orbit")]
    LEvenOrbit,
    #[serde(rename = "L_odd-orbit")]
    LOddOrbit,
    #[serde(rename = "non-reducible-pair")]
    NonReduciblePair,
}

impl fmt::Display for WeylClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WeylClass::LEvenOrbit => "L_even-orbit",
            WeylClass::LOddOrbit => "L_odd-orbit",
            WeylClass::NonReduciblePair => "non-reducible-pair",
        };
        write!(f, "{}", s)
    }
}

/// Full region classification of a parameter point.
#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub in_slashslash: Membership,
    pub in_parallel: Membership,
    #[serde(rename = "in_X")]
    pub in_x: Membership,
    #[serde(rename = "in_Leven")]
    pub in_leven: Membership,
    #[serde(rename = "in_Lodd")]
    pub in_lodd: Membership,
    pub k: Option<u64>,
    pub l: Option<u64>,
    #[serde(rename = "in_Omega0")]
    pub in_omega0: bool,
    #[serde(rename = "in_Omega1")]
    pub in_omega1: bool,
    #[serde(rename = "in_Omega2")]
    pub in_omega2: bool,
    pub octant: Option<Octant>,
    pub weyl_class: WeylClass,
}

/// Distance of the real part of `v` to the nearest point of the arithmetic
/// progression {start, start+step, start+2·step, …} (step < 0 allowed).
fn progression_distance(re: f64, start: f64, step: f64) -> f64 {
    let t = (re - start) / step;
    if t < 0.0 {
        (re - start).abs()
    } else {
        (t - t.round()).abs() * step.abs()
    }
}

/// λ − ν ∈ {0, −2, −4, …}  (the set //), exact side.
fn exact_in_parallel(lambda: &Rat, nu: &Rat) -> Option<u64> {
    let d = nu - lambda; // 2l with l ∈ ℕ
    if !is_integer(&d) || d.is_negative() {
        return None;
    }
    let v = d.numer();
    if (v % BigInt::from(2)).is_zero() {
        (v / BigInt::from(2)).to_u64()
    } else {
        None
    }
}

/// λ + ν ∈ {n−1, n−3, …}  (the set \\), exact side.
fn exact_in_slashslash(n: i64, lambda: &Rat, nu: &Rat) -> Option<u64> {
    let d = rat_i(n - 1) - lambda - nu; // 2k with k ∈ ℕ
    if !is_integer(&d) || d.is_negative() {
        return None;
    }
    let v = d.numer();
    if (v % BigInt::from(2)).is_zero() {
        (v / BigInt::from(2)).to_u64()
    } else {
        None
    }
}

fn exact_in_leven(lambda: &Rat, nu: &Rat) -> bool {
    if !is_integer(lambda) || !is_integer(nu) {
        return false;
    }
    let l = lambda.numer();
    let v = nu.numer();
    !l.is_positive() && !v.is_positive() && l <= v && ((l - v) % BigInt::from(2)).is_zero()
}

fn exact_in_lodd(lambda: &Rat, nu: &Rat) -> bool {
    if !is_integer(lambda) || !is_integer(nu) {
        return false;
    }
    let l = lambda.numer();
    let v = nu.numer();
    !l.is_positive() && !v.is_positive() && l <= v && !((l - v) % BigInt::from(2)).is_zero()
}

/// Both I(λ) and J(ν) reducible: integer pair with λ ∉ (0,n), ν ∉ (0,n−1).
pub fn in_reducible_lattice(p: &ParamPoint) -> bool {
    let (Some(l), Some(v)) = (p.lambda.as_exact(), p.nu.as_exact()) else {
        return false;
    };
    if !is_integer(l) || !is_integer(v) {
        return false;
    }
    let (Some(li), Some(vi)) = (l.to_i64(), v.to_i64()) else {
        return false;
    };
    (li <= 0 || li >= p.n) && (vi <= 0 || vi >= p.n - 1)
}

fn octant_of(n: i64, lambda: i64, nu: i64) -> Option<Octant> {
    if lambda <= 0 {
        if nu < lambda {
            Some(Octant::IA)
        } else if nu <= 0 {
            Some(Octant::IB)
        } else if nu > n - 1 - lambda {
            Some(Octant::IIA)
        } else if nu >= n - 1 {
            Some(Octant::IIB)
        } else {
            None
        }
    } else if lambda >= n {
        if nu > lambda - 1 {
            Some(Octant::IIIA)
        } else if nu >= n - 1 {
            Some(Octant::IIIB)
        } else if nu < n - lambda {
            Some(Octant::IVA)
        } else if nu <= 0 {
            Some(Octant::IVB)
        } else {
            None
        }
    } else {
        None
    }
}

/// Orbit of the nonpositive same-parity pairs under the Weyl group generated
/// by (λ,ν) ↦ (n−λ, ν) and (λ,ν) ↦ (λ, n−1−ν).
fn weyl_orbit_of_l_even(n: i64, lambda: i64, nu: i64) -> bool {
    let images = [
        (lambda, nu),
        (n - lambda, nu),
        (lambda, n - 1 - nu),
        (n - lambda, n - 1 - nu),
    ];
    images
        .iter()
        .any(|&(a, b)| a <= 0 && b <= 0 && (a - b) % 2 == 0)
}

/// Classify (λ, ν): membership in //, \\, 𝕏, L_even, L_odd, the Ω-regions,
/// the octant and the Weyl orbit class.
pub fn classify(p: &ParamPoint) -> RegionReport {
    let n = p.n;
    let (in_par, in_ss, l, k, in_le, in_lo);
    match (p.lambda.as_exact(), p.nu.as_exact()) {
        (Some(lam), Some(nu)) => {
            l = exact_in_parallel(lam, nu);
            k = exact_in_slashslash(n, lam, nu);
            in_par = Membership::from_bool(l.is_some());
            in_ss = Membership::from_bool(k.is_some());
            in_le = Membership::from_bool(exact_in_leven(lam, nu));
            in_lo = Membership::from_bool(exact_in_lodd(lam, nu));
        }
        _ => {
            let eps = crate::MEMBERSHIP_EPS;
            let (lre, lim) = (p.lambda.re(), p.lambda.im());
            let (vre, vim) = (p.nu.re(), p.nu.im());
            let im_ok = lim.abs() <= eps && vim.abs() <= eps;
            let near_par = im_ok && progression_distance(vre - lre, 0.0, 2.0) <= eps;
            let near_ss =
                im_ok && progression_distance((n - 1) as f64 - lre - vre, 0.0, 2.0) <= eps;
            let near_int = |x: f64| (x - x.round()).abs() <= eps;
            let near_le = im_ok
                && near_int(lre)
                && near_int(vre)
                && lre.round() <= 0.0
                && vre.round() <= 0.0
                && lre.round() <= vre.round()
                && ((lre.round() - vre.round()) as i64) % 2 == 0;
            let near_lo = im_ok
                && near_int(lre)
                && near_int(vre)
                && lre.round() <= 0.0
                && vre.round() <= 0.0
                && lre.round() <= vre.round()
                && ((lre.round() - vre.round()) as i64) % 2 != 0;
            let tri = |b: bool| {
                if b {
                    Membership::WithinTolerance
                } else {
                    Membership::Out
                }
            };
            in_par = tri(near_par);
            in_ss = tri(near_ss);
            in_le = tri(near_le);
            in_lo = tri(near_lo);
            l = None;
            k = None;
        }
    }
    let in_x = match (in_ss, in_par) {
        (Membership::In, Membership::In) => Membership::In,
        (Membership::Out, _) | (_, Membership::Out) => Membership::Out,
        _ => Membership::WithinTolerance,
    };
    let re_diff = p.lambda.re() - p.nu.re();
    let re_sum = p.lambda.re() + p.nu.re();
    let in_omega1 = re_diff > 0.0;
    let in_omega0 = in_omega1 && re_sum > (n - 1) as f64;
    let in_omega2 = in_omega1 && re_sum < n as f64;
    let (octant, weyl_class) = if in_reducible_lattice(p) {
        let li = p.lambda.as_exact().unwrap().to_i64().unwrap();
        let vi = p.nu.as_exact().unwrap().to_i64().unwrap();
        let wc = if weyl_orbit_of_l_even(n, li, vi) {
            WeylClass::LEvenOrbit
        } else {
            WeylClass::LOddOrbit
        };
        (octant_of(n, li, vi), wc)
    } else {
        (None, WeylClass::NonReduciblePair)
    };
    RegionReport {
        in_slashslash: in_ss,
        in_parallel: in_par,
        in_x,
        in_leven: in_le,
        in_lodd: in_lo,
        k,
        l,
        in_omega0,
        in_omega1,
        in_omega2,
        octant,
        weyl_class,
    }
}

/// Multiplicity m(I(λ), J(ν)): 2 on L_even, 1 elsewhere.
pub fn multiplicity_principal(p: &ParamPoint) -> Result<u32, ParamError> {
    let lam = p.exact_lambda()?;
    let nu = p.exact_nu()?;
    Ok(if exact_in_leven(lam, nu) { 2 } else { 1 })
}

/// Multiplicities between the irreducible composition factors T(·), F(·).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorMultiplicities {
    #[serde(rename = "mTT")]
    pub m_tt: u32,
    #[serde(rename = "mTF")]
    pub m_tf: u32,
    #[serde(rename = "mFF")]
    pub m_ff: u32,
}

/// m(T(i),T(j)), m(T(i),F(j)), m(F(i),F(j)).  The i = j diagonal follows the
/// i ≥ j even-parity row.
pub fn multiplicity_factors(_n: i64, i: u64, j: u64) -> FactorMultiplicities {
    if i >= j {
        if (i + j).is_multiple_of(2) {
            FactorMultiplicities {
                m_tt: 1,
                m_tf: 0,
                m_ff: 1,
            }
        } else {
            FactorMultiplicities {
                m_tt: 0,
                m_tf: 1,
                m_ff: 0,
            }
        }
    } else {
        FactorMultiplicities {
            m_tt: 0,
            m_tf: 1,
            m_ff: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorTarget {
    F,
    T,
}

/// m(I(λ), F(j)) = 1 always; m(I(λ), T(j)) = 1 iff λ + j ∈ −2ℕ.
pub fn multiplicity_i_to_factor(_n: i64, lambda: &Rat, j: u64, target: FactorTarget) -> u32 {
    match target {
        FactorTarget::F => 1,
        FactorTarget::T => {
            let s = lambda + rat_i(j as i64);
            if is_integer(&s) && !s.is_positive() && (s.numer() % BigInt::from(2)).is_zero() {
                1
            } else {
                0
            }
        }
    }
}

/// Basis labels for Hom(I(λ), J(ν)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisOp {
    A,
    AA,
    B,
    BB,
    C,
}

impl fmt::Display for BasisOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisOp::A => "A",
            BasisOp::AA => "AA",
            BasisOp::B => "B",
            BasisOp::BB => "BB",
            BasisOp::C => "C",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    #[serde(rename = "dim_H")]
    pub dim_h: u32,
    #[serde(rename = "dim_H_sing")]
    pub dim_h_sing: u32,
    #[serde(rename = "dim_H_diff")]
    pub dim_h_diff: u32,
    pub basis: Vec<BasisOp>,
}

/// Explicit basis and graded dimensions of Hom(I(λ), J(ν)).
pub fn basis_of_h(p: &ParamPoint) -> Result<BasisReport, ParamError> {
    let lam = p.exact_lambda()?;
    let nu = p.exact_nu()?;
    let n = p.n;
    let leven = exact_in_leven(lam, nu);
    let par = exact_in_parallel(lam, nu).is_some();
    let ss = exact_in_slashslash(n, lam, nu).is_some();
    let xx = par && ss;
    let n_odd = n % 2 != 0;

    let basis = if leven {
        if n_odd {
            vec![BasisOp::BB, BasisOp::C]
        } else {
            vec![BasisOp::AA, BasisOp::C]
        }
    } else if par {
        vec![BasisOp::C]
    } else if ss && !xx {
        vec![BasisOp::B]
    } else {
        vec![BasisOp::A]
    };

    let dim_h = if leven { 2 } else { 1 };
    let dim_h_sing = if n_odd {
        if leven {
            2
        } else if par || ss {
            1
        } else {
            0
        }
    } else if par || ss {
        1
    } else {
        0
    };
    let dim_h_diff = if par { 1 } else { 0 };
    Ok(BasisReport {
        dim_h,
        dim_h_sing,
        dim_h_diff,
        basis,
    })
}

/// Weyl-group orbit class of an integer point of the reducible lattice.
pub fn weyl_orbit_class(p: &ParamPoint) -> Result<WeylClass, ParamError> {
    if !in_reducible_lattice(p) {
        return Err(ParamError::OutsideLattice(
            p.lambda.to_string(),
            p.nu.to_string(),
        ));
    }
    let li = p.lambda.as_exact().unwrap().to_i64().unwrap();
    let vi = p.nu.as_exact().unwrap().to_i64().unwrap();
    Ok(if weyl_orbit_of_l_even(p.n, li, vi) {
        WeylClass::LEvenOrbit
    } else {
        WeylClass::LOddOrbit
    })
}
