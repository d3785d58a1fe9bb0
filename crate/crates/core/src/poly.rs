//! One- and two-variable polynomials over exact rationals.

use crate::gamma::{rat_i, Rat};
use crate::Real;
use num::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// Polynomial in one variable with exact rational coefficients, constant
/// term first.  Trailing zeros are trimmed; the zero polynomial has no
/// coefficients and degree `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Serialize for Poly1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly1::from_coeffs(vec![rat_i(1)])
    }

    /// The monomial s.
    pub fn s() -> Self {
        Poly1::from_coeffs(vec![rat_i(0), rat_i(1)])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly1::from_coeffs(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly1::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly1::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_real<F: Real>(&self, x: F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + F::from_f64(crate::gamma::rat_to_f64(c)).unwrap();
        }
        acc
    }

    /// Expand in the basis g_{l1,l2}(s) = (1−s)^{l1} (1+s)^{l2}: returns
    /// pairs ((l1, l2), coefficient).  Uses s^d = 2^{−d} ((1+s) − (1−s))^d.
    pub fn g_basis_expansion(&self) -> Vec<((u32, u32), Rat)> {
        use std::collections::BTreeMap;
        let mut acc: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..=d {
                let b = binomial(d as u64, i as u64);
                let sign = if (d - i) % 2 == 0 {
                    rat_i(1)
                } else {
                    rat_i(-1)
                };
                let coeff = c * b * sign / num::pow::pow(rat_i(2), d);
                let key = ((d - i) as u32, i as u32);
                *acc.entry(key).or_insert_with(Rat::zero) += coeff;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut acc = rat_i(1);
    for i in 0..k {
        acc = acc * rat_i((n - i) as i64) / rat_i((i + 1) as i64);
    }
    acc
}

/// Generalized binomial coefficient binom(x, k) for rational x.
pub fn binomial_rat(x: &Rat, k: u64) -> Rat {
    let mut acc = rat_i(1);
    for i in 0..k {
        acc = acc * (x - rat_i(i as i64)) / rat_i((i + 1) as i64);
    }
    acc
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "s")?,
                1 => write!(f, "{}·s", a)?,
                _ if a.is_one() => write!(f, "s^{}", k)?,
                _ => write!(f, "{}·s^{}", a, k)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Polynomial in two variables (s, t) with exact rational coefficients,
/// stored as a coefficient map on (s-degree, t-degree).  Carries the
/// homogeneity convention deg(s) = 2, deg(t) = 1 used by the inflated
/// Gegenbauer polynomials C_N(s, t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    terms: std::collections::BTreeMap<(u32, u32), Rat>,
}

impl Serialize for Poly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| serde_json::json!({"s": i, "t": j, "coeff": c.to_string()}))
            .collect();
        terms.serialize(s)
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 {
            terms: Default::default(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (k, c) in terms {
            if !c.is_zero() {
                *map.entry(k).or_insert_with(Rat::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Poly2 { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s_deg: u32, t_deg: u32) -> Rat {
        self.terms
            .get(&(s_deg, t_deg))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly2::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Poly2::from_terms(
            self.terms
                .iter()
                .map(|(k, v)| (*k, v.clone()))
                .chain(other.terms.iter().map(|(k, v)| (*k, v.clone()))),
        )
    }

    pub fn eval(&self, s: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * num::pow::pow(s.clone(), i as usize) * num::pow::pow(t.clone(), j as usize);
        }
        acc
    }

    /// Weighted degree with deg(s) = 2, deg(t) = 1, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for &(i, j) in self.terms.keys() {
            let d = 2 * i + j;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Specialize s := 1, yielding a one-variable polynomial in t.
    pub fn at_s_one(&self) -> Poly1 {
        let maxd = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); maxd as usize + 1];
        for (&(_, j), c) in &self.terms {
            coeffs[j as usize] += c;
        }
        Poly1::from_coeffs(coeffs)
    }
}
