//! Exact Gamma-monomial arithmetic.
//!
//! A [`GammaMonomial`] is a constant of the form
//!
//! ```text
//!     coeff · 2^e · π^(h/2) · ∏ Γ(aᵢ) / ∏ Γ(bⱼ)
//! ```
//!
//! with `coeff` an exact rational, `e` an exact rational, `h` an integer and
//! all Γ-arguments exact rationals.  Canonical form shifts every argument into
//! (0, 1] via Γ(z+1) = z·Γ(z), absorbs Γ(1) = 1 and Γ(1/2) = √π, and extracts
//! the 2-adic content of `coeff` into the exponent `e`.  Arguments in −ℕ are
//! recorded as pole markers with multiplicity; a monomial with net denominator
//! poles is the exact scalar 0, one with net numerator poles is an error value
//! on evaluation.
//!
//! The companion [`GammaSum`] holds finite sums of monomials and the
//! [`EpsProduct`] implements a leading-order Laurent calculus used for the
//! renormalized operator values at the exceptional parameter set.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = Ratio<BigInt>;

/// Shorthand for an exact rational from an integer pair.
pub fn rat(p: i64, q: i64) -> Rat {
    Ratio::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an exact integer rational.
pub fn rat_i(p: i64) -> Rat {
    Ratio::from_integer(BigInt::from(p))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// z ∈ −ℕ = {0, −1, −2, …}
pub fn is_nonpositive_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_positive()
}

/// z ∈ ℕ = {0, 1, 2, …}
pub fn is_natural(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}

/// Exact factorial as a rational.
pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Ratio::from_integer(acc)
}

/// Double factorial with the convention (−1)!! = 1.
pub fn double_factorial(n: i64) -> Rat {
    if n <= 0 {
        return rat_i(1);
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    Ratio::from_integer(acc)
}

/// Exact integer power of two as a rational.
pub fn two_pow(e: i64) -> Rat {
    if e >= 0 {
        Ratio::from_integer(BigInt::from(2).pow(e as u32))
    } else {
        Ratio::new(BigInt::one(), BigInt::from(2).pow((-e) as u32))
    }
}

/// Pochhammer symbol (x)_k = x(x+1)⋯(x+k−1), exact.
pub fn pochhammer(x: &Rat, k: u64) -> Rat {
    let mut acc = rat_i(1);
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= &cur;
        cur += rat_i(1);
    }
    acc
}

/// Errors from the exact-constant layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GammaError {
    #[error("evaluation of a monomial with net numerator Gamma poles")]
    Pole,
    #[error("indeterminate value (zero times a Gamma pole)")]
    Indeterminate,
    #[error("division by an exact zero")]
    DivisionByZero,
    #[error("divergent limit: Laurent order {0} < 0")]
    DivergentLimit(i64),
    #[error("sum of monomials does not reduce to a single canonical monomial")]
    NotMonomial,
}

/// Value class of a canonical monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmState {
    Zero,
    Finite,
    Infinite,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMonomial {
    /// Rational coefficient with its 2-adic content removed (odd/odd), except
    /// for the exact zero where everything else is cleared.
    coeff: Rat,
    /// Exponent of 2 (rational: the closed-form constants contain 2^{±λ}).
    two_exp: Rat,
    /// Exponent h in π^{h/2}.
    pi_half: i64,
    /// Canonical numerator Γ-arguments, each in (0,1) \ {1/2}, sorted.
    gamma_num: Vec<Rat>,
    /// Canonical denominator Γ-arguments, likewise.
    gamma_den: Vec<Rat>,
    /// Nonpositive-integer numerator arguments (pole markers), sorted.
    pole_num: Vec<Rat>,
    /// Nonpositive-integer denominator arguments, sorted.
    pole_den: Vec<Rat>,
}

fn sort_rats(v: &mut [Rat]) {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
}

/// Split `r` as (odd/odd rational, exponent of 2).
fn extract_two_content(r: &Rat) -> (Rat, i64) {
    if r.is_zero() {
        return (Rat::zero(), 0);
    }
    let two = BigInt::from(2);
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut e: i64 = 0;
    while (&num % &two).is_zero() {
        num /= &two;
        e += 1;
    }
    while (&den % &two).is_zero() {
        den /= &two;
        e -= 1;
    }
    (Ratio::new(num, den), e)
}

impl GammaMonomial {
    /// The canonical exact zero.
    pub fn zero() -> Self {
        GammaMonomial {
            coeff: Rat::zero(),
            two_exp: Rat::zero(),
            pi_half: 0,
            gamma_num: vec![],
            gamma_den: vec![],
            pole_num: vec![],
            pole_den: vec![],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(rat_i(1))
    }

    pub fn from_rational(c: Rat) -> Self {
        Self::new(c, Rat::zero(), 0, &[], &[])
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(rat_i(c))
    }

    /// Build and canonicalize `coeff · 2^two_exp · π^(pi_half/2) · ∏Γ(num)/∏Γ(den)`.
    pub fn new(coeff: Rat, two_exp: Rat, pi_half: i64, num: &[Rat], den: &[Rat]) -> Self {
        let mut gm = GammaMonomial {
            coeff,
            two_exp,
            pi_half,
            gamma_num: vec![],
            gamma_den: vec![],
            pole_num: vec![],
            pole_den: vec![],
        };
        for a in num {
            gm.push_gamma(a.clone(), true);
        }
        for b in den {
            gm.push_gamma(b.clone(), false);
        }
        gm.normalize();
        gm
    }

    /// A single Γ(z).
    pub fn gamma(z: Rat) -> Self {
        Self::new(rat_i(1), Rat::zero(), 0, &[z], &[])
    }

    /// 1/Γ(z).
    pub fn inv_gamma(z: Rat) -> Self {
        Self::new(rat_i(1), Rat::zero(), 0, &[], &[z])
    }

    /// π^(h/2).
    pub fn pi_half_power(h: i64) -> Self {
        Self::new(rat_i(1), Rat::zero(), h, &[], &[])
    }

    /// 2^e with rational e.
    pub fn two_power(e: Rat) -> Self {
        Self::new(rat_i(1), e, 0, &[], &[])
    }

    /// Multiply in one Γ(z) factor (numerator) or 1/Γ(z) (denominator),
    /// shifting the argument into canonical position.
    fn push_gamma(&mut self, mut z: Rat, numerator: bool) {
        if is_nonpositive_integer(&z) {
            if numerator {
                self.pole_num.push(z);
            } else {
                self.pole_den.push(z);
            }
            return;
        }
        // Γ(z) = (z−1)Γ(z−1) downward, Γ(z) = Γ(z+1)/z upward.
        let one = rat_i(1);
        while z > one {
            z -= &one;
            if numerator {
                self.coeff *= &z;
            } else {
                self.coeff /= &z;
            }
        }
        while z <= Rat::zero() {
            if numerator {
                self.coeff /= &z;
            } else {
                self.coeff *= &z;
            }
            z += &one;
        }
        if z == one {
            return; // Γ(1) = 1
        }
        if z == rat(1, 2) {
            // Γ(1/2) = √π
            self.pi_half += if numerator { 1 } else { -1 };
            return;
        }
        if numerator {
            self.gamma_num.push(z);
        } else {
            self.gamma_den.push(z);
        }
    }

    fn normalize(&mut self) {
        // Cancel identical arguments across numerator/denominator.
        sort_rats(&mut self.gamma_num);
        sort_rats(&mut self.gamma_den);
        let mut num = Vec::new();
        let mut den = std::mem::take(&mut self.gamma_den);
        for a in std::mem::take(&mut self.gamma_num) {
            if let Some(idx) = den.iter().position(|b| *b == a) {
                den.remove(idx);
            } else {
                num.push(a);
            }
        }
        self.gamma_num = num;
        self.gamma_den = den;
        sort_rats(&mut self.pole_num);
        sort_rats(&mut self.pole_den);
        // Cancel identical pole markers (Γ(−q)/Γ(−q) is indeterminate as a
        // value; we do NOT cancel those — keep both so the state is honest).
        let (c, e) = extract_two_content(&self.coeff);
        if c.is_zero() {
            // Exact rational zero: clear everything except pole markers in the
            // numerator (0·∞ stays indeterminate).
            self.coeff = Rat::zero();
            self.two_exp = Rat::zero();
            self.pi_half = 0;
            self.gamma_num.clear();
            self.gamma_den.clear();
            self.pole_den.clear();
            return;
        }
        self.coeff = c;
        self.two_exp += rat_i(e);
        // A monomial with net denominator poles is an exact zero; the markers
        // stay (they record why it vanishes) and eq_value treats all exact
        // zeros as equal.
    }

    pub fn state(&self) -> GmState {
        let np = !self.pole_num.is_empty();
        let dp = !self.pole_den.is_empty();
        if np && (dp || self.coeff.is_zero()) {
            GmState::Indeterminate
        } else if np {
            GmState::Infinite
        } else if dp || self.coeff.is_zero() {
            GmState::Zero
        } else {
            GmState::Finite
        }
    }

    pub fn is_zero(&self) -> bool {
        self.state() == GmState::Zero
    }

    /// Net pole order: (#numerator poles) − (#denominator poles).
    pub fn total_order(&self) -> i64 {
        self.pole_num.len() as i64 - self.pole_den.len() as i64
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GammaMonomial {
            coeff: &self.coeff * &other.coeff,
            two_exp: &self.two_exp + &other.two_exp,
            pi_half: self.pi_half + other.pi_half,
            gamma_num: [self.gamma_num.clone(), other.gamma_num.clone()].concat(),
            gamma_den: [self.gamma_den.clone(), other.gamma_den.clone()].concat(),
            pole_num: [self.pole_num.clone(), other.pole_num.clone()].concat(),
            pole_den: [self.pole_den.clone(), other.pole_den.clone()].concat(),
        };
        out.normalize();
        out
    }

    /// Multiplicative inverse; error on inverting an exact zero.
    pub fn inv(&self) -> Result<Self, GammaError> {
        if self.coeff.is_zero() {
            return Err(GammaError::DivisionByZero);
        }
        let mut out = GammaMonomial {
            coeff: self.coeff.recip(),
            two_exp: -self.two_exp.clone(),
            pi_half: -self.pi_half,
            gamma_num: self.gamma_den.clone(),
            gamma_den: self.gamma_num.clone(),
            pole_num: self.pole_den.clone(),
            pole_den: self.pole_num.clone(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self, GammaError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul(&GammaMonomial::from_rational(c.clone()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat_i(-1))
    }

    /// Exact equality of values: all exact zeros are equal; otherwise the
    /// canonical fields must match.  Complete for monomials whose Γ-arguments
    /// differ by integers (the only case arising from the closed forms here);
    /// conservative in general.
    pub fn eq_value(&self, other: &Self) -> bool {
        match (self.state(), other.state()) {
            (GmState::Zero, GmState::Zero) => true,
            _ => {
                self.coeff == other.coeff
                    && self.two_exp == other.two_exp
                    && self.pi_half == other.pi_half
                    && self.gamma_num == other.gamma_num
                    && self.gamma_den == other.gamma_den
                    && self.pole_num == other.pole_num
                    && self.pole_den == other.pole_den
            }
        }
    }

    /// A finite monomial with no Γ, π or fractional 2-power content is a
    /// plain rational; exact zeros count.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.state() {
            GmState::Zero => Some(Rat::zero()),
            GmState::Finite
                if self.pi_half == 0
                    && self.gamma_num.is_empty()
                    && self.gamma_den.is_empty()
                    && is_integer(&self.two_exp) =>
            {
                use num::ToPrimitive;
                let e = self.two_exp.numer().to_i64()?;
                Some(&self.coeff * two_pow(e))
            }
            _ => None,
        }
    }

    /// Double-precision value.  Exact zeros evaluate to 0; net numerator
    /// poles and indeterminate forms are reported errors, never NaN.
    pub fn eval_f64(&self) -> Result<f64, GammaError> {
        match self.state() {
            GmState::Zero => Ok(0.0),
            GmState::Infinite => Err(GammaError::Pole),
            GmState::Indeterminate => Err(GammaError::Indeterminate),
            GmState::Finite => {
                let mut log = rat_to_f64(&self.two_exp) * std::f64::consts::LN_2
                    + self.pi_half as f64 * 0.5 * std::f64::consts::PI.ln();
                let mut sign = self.coeff.is_negative();
                log += ln_abs_rat(&self.coeff);
                for a in &self.gamma_num {
                    let (l, s) = ln_abs_gamma(rat_to_f64(a));
                    log += l;
                    sign ^= s;
                }
                for b in &self.gamma_den {
                    let (l, s) = ln_abs_gamma(rat_to_f64(b));
                    log -= l;
                    sign ^= s;
                }
                let v = log.exp();
                Ok(if sign { -v } else { v })
            }
        }
    }

    /// Pretty form, e.g. `(-3/2)·2^(1/2)·π^(3/2)·Γ(1/3)/Γ(2/3)`.  Integer
    /// powers of 2 are folded back into the printed coefficient.
    pub fn pretty(&self) -> String {
        match self.state() {
            GmState::Zero => return "0".to_string(),
            GmState::Indeterminate => return "indeterminate".to_string(),
            _ => {}
        }
        use num::ToPrimitive;
        let int_part = self.two_exp.floor();
        let frac_part = &self.two_exp - &int_part;
        let e = int_part.numer().to_i64().unwrap_or(0);
        let display_coeff = &self.coeff * two_pow(e);
        let mut parts: Vec<String> = Vec::new();
        if display_coeff != rat_i(1)
            || (frac_part.is_zero()
                && self.pi_half == 0
                && self.gamma_num.is_empty()
                && self.gamma_den.is_empty()
                && self.pole_num.is_empty())
        {
            parts.push(format!("({})", display_coeff));
        }
        if !frac_part.is_zero() {
            parts.push(format!("2^({})", frac_part));
        }
        if self.pi_half != 0 {
            if self.pi_half % 2 == 0 {
                parts.push(format!("π^{}", self.pi_half / 2));
            } else {
                parts.push(format!("π^({}/2)", self.pi_half));
            }
        }
        for a in self.gamma_num.iter().chain(self.pole_num.iter()) {
            parts.push(format!("Γ({})", a));
        }
        let mut s = parts.join("·");
        for b in self.gamma_den.iter().chain(self.pole_den.iter()) {
            s.push_str(&format!("/Γ({})", b));
        }
        s
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Serialize for GammaMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GammaMonomial", 7)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("two", &self.two_exp.to_string())?;
        st.serialize_field("pi2", &self.pi_half)?;
        let nums: Vec<String> = self.gamma_num.iter().map(|r| r.to_string()).collect();
        let dens: Vec<String> = self.gamma_den.iter().map(|r| r.to_string()).collect();
        st.serialize_field("num", &nums)?;
        st.serialize_field("den", &dens)?;
        let pn: Vec<String> = self.pole_num.iter().map(|r| r.to_string()).collect();
        let pd: Vec<String> = self.pole_den.iter().map(|r| r.to_string()).collect();
        st.serialize_field("num_poles", &pn)?;
        st.serialize_field("den_poles", &pd)?;
        st.end()
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Exact conversion through the integer parts; adequate for the argument
    // sizes appearing here.
    let num = r.numer();
    let den = r.denom();
    bigint_to_f64(num) / bigint_to_f64(den)
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    use num::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}

fn ln_abs_rat(r: &Rat) -> f64 {
    bigint_to_f64(&r.numer().abs()).ln() - bigint_to_f64(&r.denom().abs()).ln()
}

/// (ln|Γ(x)|, sign-is-negative) for real non-pole x, Lanczos g=7, n=9.
pub fn ln_abs_gamma(x: f64) -> (f64, bool) {
    if x > 0.0 {
        (ln_gamma_pos(x), false)
    } else {
        // Reflection: Γ(x)Γ(1−x) = π/sin(πx)
        let s = (std::f64::consts::PI * x).sin();
        let l = std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x);
        (l, s < 0.0)
    }
}

/// Γ(x) for real non-pole x.
pub fn gamma_f64(x: f64) -> f64 {
    let (l, neg) = ln_abs_gamma(x);
    let v = l.exp();
    if neg {
        -v
    } else {
        v
    }
}

fn ln_gamma_pos(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.5203681218851,
        -1259.1392167224028,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507343278686905,
        -0.13857109526572012,
        9.984_369_578_019_572e-6,
        1.5056327351493116e-7,
    ];
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, &c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

// ---------------------------------------------------------------------------
// Sums of monomials
// ---------------------------------------------------------------------------

/// A finite sum of Gamma monomials with like-term combination.  Two terms are
/// like iff their π-power, Γ-multisets, pole markers and the fractional part
/// of the 2-exponent coincide; their rational parts then add exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSum {
    terms: Vec<GammaMonomial>,
}

impl GammaSum {
    pub fn zero() -> Self {
        GammaSum { terms: vec![] }
    }

    pub fn from_monomial(m: GammaMonomial) -> Self {
        let mut s = GammaSum { terms: vec![m] };
        s.normalize();
        s
    }

    pub fn add_monomial(&mut self, m: GammaMonomial) {
        self.terms.push(m);
        self.normalize();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = GammaSum {
            terms: [self.terms.clone(), other.terms.clone()].concat(),
        };
        s.normalize();
        s
    }

    pub fn mul_monomial(&self, m: &GammaMonomial) -> Self {
        let mut s = GammaSum {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        };
        s.normalize();
        s
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul_monomial(&GammaMonomial::from_rational(c.clone()))
    }

    fn normalize(&mut self) {
        let mut kept: Vec<GammaMonomial> = Vec::new();
        for t in std::mem::take(&mut self.terms) {
            if t.is_zero() {
                continue;
            }
            let mut combined = false;
            for k in kept.iter_mut() {
                let diff = &t.two_exp - &k.two_exp;
                if t.pi_half == k.pi_half
                    && t.gamma_num == k.gamma_num
                    && t.gamma_den == k.gamma_den
                    && t.pole_num == k.pole_num
                    && t.pole_den == k.pole_den
                    && is_integer(&diff)
                {
                    // t = coeff_t·2^{e_k + d}·(...) with integer d.
                    use num::ToPrimitive;
                    let d = diff.numer().to_i64().expect("two-exponent overflow");
                    let newc = &k.coeff + &t.coeff * two_pow(d);
                    let mut merged = k.clone();
                    merged.coeff = newc;
                    merged.normalize();
                    *k = merged;
                    combined = true;
                    break;
                }
            }
            if !combined {
                kept.push(t);
            }
        }
        kept.retain(|t| !t.is_zero());
        self.terms = kept;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[GammaMonomial] {
        &self.terms
    }

    /// Collapse to a single canonical monomial if possible.
    pub fn as_monomial(&self) -> Result<GammaMonomial, GammaError> {
        match self.terms.len() {
            0 => Ok(GammaMonomial::zero()),
            1 => Ok(self.terms[0].clone()),
            _ => Err(GammaError::NotMonomial),
        }
    }

    pub fn eval_f64(&self) -> Result<f64, GammaError> {
        let mut acc = 0.0;
        for t in &self.terms {
            acc += t.eval_f64()?;
        }
        Ok(acc)
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        // a − b = 0 under the like-term normalization
        let negated = other.scale(&rat_i(-1));
        self.add(&negated).is_zero()
    }
}

// ---------------------------------------------------------------------------
// Leading-order Laurent calculus
// ---------------------------------------------------------------------------

/// Leading term of a product of explicit factors along a one-parameter
/// deformation ε → 0: the product is `lead · ε^ord · (1 + O(ε))`.
///
/// Used for the values of renormalized operators at the exceptional set,
/// where a Γ-pole of a normalizing factor meets a zero of the underlying
/// family.  Only products are supported; sums must be split into per-term
/// products first (see `kfinite_pairing`).
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // short-lived accumulator, never stored
pub enum EpsProduct {
    /// Identically zero for every ε (an exactly-zero constant factor).
    Null,
    Term {
        ord: i64,
        lead: GammaMonomial,
    },
}

impl EpsProduct {
    pub fn one() -> Self {
        EpsProduct::Term {
            ord: 0,
            lead: GammaMonomial::one(),
        }
    }

    /// Multiply by an ε-independent constant.
    pub fn mul_const(self, c: &GammaMonomial) -> Self {
        match self {
            EpsProduct::Null => EpsProduct::Null,
            EpsProduct::Term { ord, lead } => {
                if c.is_zero() {
                    EpsProduct::Null
                } else {
                    EpsProduct::Term {
                        ord,
                        lead: lead.mul(c),
                    }
                }
            }
        }
    }

    /// Multiply by the linear factor `c0 + c1·ε`.
    pub fn mul_linear(self, c0: &Rat, c1: &Rat) -> Self {
        match self {
            EpsProduct::Null => EpsProduct::Null,
            EpsProduct::Term { ord, lead } => {
                if !c0.is_zero() {
                    EpsProduct::Term {
                        ord,
                        lead: lead.scale(c0),
                    }
                } else if !c1.is_zero() {
                    EpsProduct::Term {
                        ord: ord + 1,
                        lead: lead.scale(c1),
                    }
                } else {
                    EpsProduct::Null
                }
            }
        }
    }

    /// Multiply by Γ(z0 + slope·ε).
    pub fn mul_gamma(self, z0: &Rat, slope: &Rat) -> Self {
        match self {
            EpsProduct::Null => EpsProduct::Null,
            EpsProduct::Term { ord, lead } => {
                if is_nonpositive_integer(z0) {
                    // Γ(−q + u) ~ (−1)^q / (q!·u)
                    use num::ToPrimitive;
                    let q = (-z0).numer().to_u64().expect("pole order overflow");
                    let sign = if q.is_multiple_of(2) {
                        rat_i(1)
                    } else {
                        rat_i(-1)
                    };
                    let c = sign / (factorial(q) * slope.clone());
                    EpsProduct::Term {
                        ord: ord - 1,
                        lead: lead.scale(&c),
                    }
                } else {
                    EpsProduct::Term {
                        ord,
                        lead: lead.mul(&GammaMonomial::gamma(z0.clone())),
                    }
                }
            }
        }
    }

    /// Multiply by 1/Γ(z0 + slope·ε).
    pub fn mul_inv_gamma(self, z0: &Rat, slope: &Rat) -> Self {
        match self {
            EpsProduct::Null => EpsProduct::Null,
            EpsProduct::Term { ord, lead } => {
                if is_nonpositive_integer(z0) {
                    // 1/Γ(−q + u) ~ (−1)^q·q!·u
                    use num::ToPrimitive;
                    let q = (-z0).numer().to_u64().expect("pole order overflow");
                    let sign = if q.is_multiple_of(2) {
                        rat_i(1)
                    } else {
                        rat_i(-1)
                    };
                    let c = sign * factorial(q) * slope.clone();
                    EpsProduct::Term {
                        ord: ord + 1,
                        lead: lead.scale(&c),
                    }
                } else {
                    EpsProduct::Term {
                        ord,
                        lead: lead.mul(&GammaMonomial::inv_gamma(z0.clone())),
                    }
                }
            }
        }
    }

    /// Value at ε = 0: exact zero if the product vanishes to positive order,
    /// the leading monomial at order 0, an error on a genuine divergence.
    pub fn value(self) -> Result<GammaMonomial, GammaError> {
        match self {
            EpsProduct::Null => Ok(GammaMonomial::zero()),
            EpsProduct::Term { ord, lead } => match ord.cmp(&0) {
                Ordering::Greater => Ok(GammaMonomial::zero()),
                Ordering::Equal => Ok(lead),
                Ordering::Less => Err(GammaError::DivergentLimit(ord)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_five_canonicalizes_to_factorial() {
        // Γ(5) = 24
        let g = GammaMonomial::gamma(rat_i(5));
        assert!(g.eq_value(&GammaMonomial::from_int(24)));
        assert_eq!(g.pretty(), "(24)");
    }

    #[test]
    fn reciprocal_pole_is_exact_zero() {
        // π^m / (Γ(m−ν)Γ(ν)) at m=2, ν=0
        let g = GammaMonomial::new(rat_i(1), Rat::zero(), 4, &[], &[rat_i(2), rat_i(0)]);
        assert!(g.is_zero());
        assert_eq!(g.eval_f64().unwrap(), 0.0);
    }

    #[test]
    fn numerator_pole_is_error() {
        let g = GammaMonomial::gamma(rat_i(-3));
        assert_eq!(g.state(), GmState::Infinite);
        assert!(g.eval_f64().is_err());
    }

    #[test]
    fn duplication_formula_mu_three_halves() {
        // Γ(2μ) = 2^{2μ−1} π^{−1/2} Γ(μ) Γ(μ+1/2) at μ = 3/2
        let mu = rat(3, 2);
        let lhs = GammaMonomial::gamma(&mu * rat_i(2));
        let rhs = GammaMonomial::new(
            rat_i(1),
            &mu * rat_i(2) - rat_i(1),
            -1,
            &[mu.clone(), &mu + rat(1, 2)],
            &[],
        );
        assert!(lhs.eq_value(&rhs));
    }

    #[test]
    fn half_integer_gamma_absorbs_sqrt_pi() {
        // Γ(5/2) = (3/4)√π
        let g = GammaMonomial::gamma(rat(5, 2));
        let expect = GammaMonomial::new(rat(3, 4), Rat::zero(), 1, &[], &[]);
        assert!(g.eq_value(&expect));
        // Γ(−1/2) = −2√π
        let g = GammaMonomial::gamma(rat(-1, 2));
        let expect = GammaMonomial::new(rat_i(-2), Rat::zero(), 1, &[], &[]);
        assert!(g.eq_value(&expect));
    }

    #[test]
    fn eval_matches_known_values() {
        let g = GammaMonomial::gamma(rat(1, 2));
        assert!((g.eval_f64().unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        let g = GammaMonomial::new(rat(3, 7), rat(1, 2), 3, &[rat(1, 3)], &[rat(2, 3)]);
        let expect =
            3.0 / 7.0 * 2f64.powf(0.5) * std::f64::consts::PI.powf(1.5) * gamma_f64(1.0 / 3.0)
                / gamma_f64(2.0 / 3.0);
        assert!((g.eval_f64().unwrap() - expect).abs() / expect.abs() < 1e-13);
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        // Γ(x+k)/Γ(x) = (x)_k for x = 7/3, k = 4, through canonicalization
        let x = rat(7, 3);
        let ratio = GammaMonomial::new(
            rat_i(1),
            Rat::zero(),
            0,
            &[&x + rat_i(4)],
            std::slice::from_ref(&x),
        );
        assert!(ratio.eq_value(&GammaMonomial::from_rational(pochhammer(&x, 4))));
    }

    #[test]
    fn sum_combines_like_terms() {
        let a = GammaMonomial::new(rat(1, 3), Rat::zero(), 2, &[rat(1, 3)], &[]);
        let b = GammaMonomial::new(rat(5, 3), rat_i(1), 2, &[rat(1, 3)], &[]);
        // a + b = (1/3 + 2·5/3)·π·Γ(1/3) = (11/3)·π·Γ(1/3)
        let mut s = GammaSum::from_monomial(a);
        s.add_monomial(b);
        let m = s.as_monomial().unwrap();
        assert!(m.eq_value(&GammaMonomial::new(
            rat(11, 3),
            Rat::zero(),
            2,
            &[rat(1, 3)],
            &[]
        )));
    }

    #[test]
    fn eps_product_gamma_pole_against_inverse_gamma_zero() {
        // lim_{ε→0} Γ(−1+ε/2)/Γ(−2+ε) = lim (−1/(ε/2))·... = 2·(−1)^{1+2}·2!/1!·(1/2)...
        // computed: Γ(−1+ε/2) ~ −2/ε, 1/Γ(−2+ε) ~ 2ε  ⇒  product → −4
        let v = EpsProduct::one()
            .mul_gamma(&rat_i(-1), &rat(1, 2))
            .mul_inv_gamma(&rat_i(-2), &rat_i(1))
            .value()
            .unwrap();
        assert!(v.eq_value(&GammaMonomial::from_int(-4)));
    }

    #[test]
    fn eps_product_positive_order_is_zero() {
        let v = EpsProduct::one()
            .mul_linear(&rat_i(0), &rat(1, 2))
            .value()
            .unwrap();
        assert!(v.is_zero());
    }
}
