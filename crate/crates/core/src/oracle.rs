//! Independent numerical verification: tanh-sinh and Gauss–Legendre
//! quadrature of the defining integrals, the 2D Knapp–Stein convolution
//! check, Fourier-side K-Bessel identities, and the Taylor-expansion route
//! to the Juhl spherical constant.
//!
//! Every oracle here is deterministic given its inputs and configuration;
//! none of them share code with the closed forms they check.

use crate::gamma::{rat_i, rat_to_f64, Rat};
use crate::params::{classify, ParamPoint};
use crate::polyops::{juhl_operator, taylor_coeffs_conformal_factor, PolyOpsError};
use crate::sbo::KFiniteVector;
use crate::specfun::{c_renorm_real, kbessel_renorm, SpecFunError};
use crate::Real;
use num::ToPrimitive;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("quad_pairing requires (λ,ν) ∈ Ω₀ (Re(λ−ν) > 0 and Re(λ+ν) > n−1)")]
    OutsideOmega0,
    #[error("convolution check requires m = 2 and m/2 < ν < m")]
    ConvolutionDomain,
    #[error("K-Bessel identity requires non-integer 0 < ν < m and positive samples")]
    BesselDomain,
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    PolyOps(#[from] PolyOpsError),
    #[error(transparent)]
    Param(#[from] crate::params::ParamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadMethod {
    #[serde(rename = "tanh_sinh")]
    TanhSinh,
    #[serde(rename = "gauss_legendre")]
    GaussLegendre,
}

/// Quadrature configuration.  `split_points` are mandatory interior splits
/// (always split at 0 for |t|^p integrands).
#[derive(Debug, Clone, Serialize)]
pub struct QuadConfig {
    pub method: QuadMethod,
    /// tanh-sinh refinement levels, or Gauss–Legendre node count.
    pub levels: u32,
    pub rel_tol: f64,
    pub split_points: Vec<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            method: QuadMethod::TanhSinh,
            levels: 12,
            rel_tol: 1e-13,
            split_points: vec![],
        }
    }
}

/// Quadrature value with its self-estimated error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadResult<F> {
    pub value: F,
    pub est_error: F,
    pub evals: usize,
}

/// Serializable oracle report: value, error estimate, configuration, seed.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub value: f64,
    pub est_error: f64,
    pub config: QuadConfig,
    pub seed: Option<u64>,
}

/// `quad_pairing` with the quadrature bookkeeping attached.
pub fn quad_pairing_report(
    p: &ParamPoint,
    v: &KFiniteVector,
    cfg: &QuadConfig,
) -> Result<OracleReport, OracleError> {
    let value = quad_pairing(p, v, cfg)?;
    Ok(OracleReport {
        value,
        est_error: cfg.rel_tol * value.abs(),
        config: cfg.clone(),
        seed: None,
    })
}

/// Integrate over (a, b), splitting at the configured interior points.
pub fn integrate<F: Real>(f: impl Fn(F) -> F, a: F, b: F, cfg: &QuadConfig) -> QuadResult<F> {
    integrate_weighted(f, F::zero(), F::zero(), a, b, cfg)
}

/// Integrate w(x)·f(x) over (a, b) where w(x) = (x−a)^α (b−x)^β, α, β > −1,
/// and f is smooth.  The endpoint distances enter the weight in a
/// cancellation-free form, so integrable endpoint singularities converge to
/// full precision.
pub fn integrate_weighted<F: Real>(
    f: impl Fn(F) -> F,
    alpha: F,
    beta: F,
    a: F,
    b: F,
    cfg: &QuadConfig,
) -> QuadResult<F> {
    let mut cuts: Vec<F> = vec![a];
    for &s in &cfg.split_points {
        let s = F::from_f64(s).unwrap();
        if s > a && s < b {
            cuts.push(s);
        }
    }
    cuts.push(b);
    let mut value = F::zero();
    let mut err = F::zero();
    let mut evals = 0;
    let last = cuts.len() - 2;
    for (idx, w) in cuts.windows(2).enumerate() {
        // the α-weight is singular on the leftmost panel only, the β-weight
        // on the rightmost; elsewhere they are smooth factors of x
        let g = |x: F, da: F, db: F| -> F {
            let mut v = f(x);
            v = v * if idx == 0 {
                da.powf(alpha)
            } else {
                (x - a).powf(alpha)
            };
            v = v * if idx == last {
                db.powf(beta)
            } else {
                (b - x).powf(beta)
            };
            v
        };
        let r = match cfg.method {
            QuadMethod::TanhSinh => tanh_sinh(g, w[0], w[1], cfg),
            QuadMethod::GaussLegendre => {
                gauss_legendre(|x| g(x, x - w[0], w[1] - x), w[0], w[1], cfg)
            }
        };
        value = value + r.value;
        err = err + r.est_error;
        evals += r.evals;
    }
    QuadResult {
        value,
        est_error: err,
        evals,
    }
}

/// Tanh-sinh (double-exponential) rule on (a, b).  The integrand receives
/// (x, x−a, b−x) with the distances computed without cancellation, so
/// endpoint singularities like (1±s)^α, α > −1, integrate to full precision.
fn tanh_sinh<F: Real>(f: impl Fn(F, F, F) -> F, a: F, b: F, cfg: &QuadConfig) -> QuadResult<F> {
    let half = F::from_f64(0.5).unwrap();
    let rad = (b - a) * half;
    let pi_2 = F::FRAC_PI_2();
    let t_max = 4.3f64;
    let eval = |t: F| -> F {
        // x = mid + rad·tanh(π/2·sinh t); 1∓tanh computed exponential-stably
        let sh = t.sinh();
        let arg = pi_2 * sh;
        let e2 = (-(arg.abs() + arg.abs())).exp(); // e^{−2|arg|}
        let denom = F::one() + e2;
        let near = rad * (e2 + e2) / denom; // rad·(1 − |tanh|)
        let far = rad * (F::one() + F::one()) / denom; // rad·(1 + |tanh|)
        let (da, db) = if t >= F::zero() {
            (far, near)
        } else {
            (near, far)
        };
        if near == F::zero() {
            return F::zero();
        }
        let x = if t >= F::zero() { b - near } else { a + near };
        let sech = F::one() / arg.cosh();
        let w = pi_2 * t.cosh() * sech * sech;
        let v = f(x, da, db) * w;
        if v.is_finite() {
            v
        } else {
            F::zero()
        }
    };

    let mut evals = 0usize;
    // level 0: h = 1
    let mut h = F::one();
    let mut n_steps = t_max.floor() as i64;
    let mut sum = eval(F::zero());
    evals += 1;
    for j in 1..=n_steps {
        let t = F::from_i64(j).unwrap();
        sum = sum + eval(t) + eval(-t);
        evals += 2;
    }
    let mut prev = sum * h * rad;
    let mut best = prev;
    let mut est = prev.abs();
    for level in 1..=cfg.levels {
        h = h * half;
        n_steps *= 2;
        // add the odd multiples of the new h
        let mut add = F::zero();
        let mut j = 1i64;
        while j <= n_steps {
            let t = F::from_i64(j).unwrap() * h;
            add = add + eval(t) + eval(-t);
            evals += 2;
            j += 2;
        }
        sum = sum + add;
        let cur = sum * h * rad;
        est = (cur - prev).abs();
        best = cur;
        let tol = F::from_f64(cfg.rel_tol).unwrap() * cur.abs().max(F::from_f64(1e-300).unwrap());
        if level >= 4 && est <= tol {
            break;
        }
        prev = cur;
    }
    QuadResult {
        value: best,
        est_error: est,
        evals,
    }
}

/// Composite Gauss–Legendre with nodes found by Newton iteration on P_n.
fn gauss_legendre<F: Real>(f: impl Fn(F) -> F, a: F, b: F, cfg: &QuadConfig) -> QuadResult<F> {
    let n = cfg.levels.max(4) as usize;
    let (nodes, weights) = legendre_nodes::<F>(n);
    let half = F::from_f64(0.5).unwrap();
    let mid = (a + b) * half;
    let rad = (b - a) * half;
    let mut acc = F::zero();
    for (x, w) in nodes.iter().zip(&weights) {
        acc = acc + *w * f(mid + rad * *x);
    }
    let value = acc * rad;
    // crude error estimate: compare against the (n/2)-point rule
    let m = (n / 2).max(2);
    let (n2, w2) = legendre_nodes::<F>(m);
    let mut acc2 = F::zero();
    for (x, w) in n2.iter().zip(&w2) {
        acc2 = acc2 + *w * f(mid + rad * *x);
    }
    QuadResult {
        value,
        est_error: (value - acc2 * rad).abs(),
        evals: n + m,
    }
}

fn legendre_nodes<F: Real>(n: usize) -> (Vec<F>, Vec<F>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev initial guess
        let mut x =
            F::from_f64((std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos())
                .unwrap();
        for _ in 0..100 {
            let (p, dp) = legendre_p_dp(n, x);
            let dx = p / dp;
            x = x - dx;
            if dx.abs() < F::from_f64(1e-16).unwrap() {
                break;
            }
        }
        let (_, dp) = legendre_p_dp(n, x);
        let w = F::from_f64(2.0).unwrap() / ((F::one() - x * x) * dp * dp);
        nodes.push(x);
        weights.push(w);
    }
    (nodes, weights)
}

fn legendre_p_dp<F: Real>(n: usize, x: F) -> (F, F) {
    let mut p0 = F::one();
    let mut p1 = x;
    for k in 1..n {
        let kf = F::from_usize(k).unwrap();
        let two = F::from_f64(2.0).unwrap();
        let p2 = ((two * kf + F::one()) * x * p1 - kf * p0) / (kf + F::one());
        p0 = p1;
        p1 = p2;
    }
    let nf = F::from_usize(n).unwrap();
    let dp = nf * (x * p1 - p0) / (x * x - F::one());
    (p1, dp)
}

// ---------------------------------------------------------------------------
// K-finite pairing by direct integration
// ---------------------------------------------------------------------------

/// ⟨K̃^A_{λ,ν}, F_λ[C̃̃_N^{n/2−1}(ω_n), h]⟩ by direct 1D quadrature of the
/// radial and spherical factors:
///
/// ```text
/// R = ∫_{−1}^1 (1−s)^{(λ−ν+N−2)/2} (1+s)^{(λ+ν+N−2)/2} h(s) ds,
/// S = vol(S^{n−2}) ∫_{−1}^1 |t|^{λ+ν−n} (1−t²)^{(n−3)/2} C̃̃_N^{n/2−1}(t) dt,
/// value = 2^{−λ} R S / (Γ((λ+ν−n+1)/2) Γ((λ−ν)/2)).
/// ```
///
/// Requires (λ,ν) ∈ Ω₀ so the kernel is locally integrable.
pub fn quad_pairing(
    p: &ParamPoint,
    v: &KFiniteVector,
    cfg: &QuadConfig,
) -> Result<f64, OracleError> {
    let r = classify(p);
    if !r.in_omega0 {
        return Err(OracleError::OutsideOmega0);
    }
    let lam = rat_to_f64(p.exact_lambda()?);
    let nu = rat_to_f64(p.exact_nu()?);
    let n = p.n;
    let cap_n = v.n_degree;
    let h = v.h.clone();

    // R = ∫ (1−s)^{(λ−ν+N−2)/2} (1+s)^{(λ+ν+N−2)/2} h(s) ds
    let r_exp_m = (lam - nu + cap_n as f64 - 2.0) / 2.0;
    let r_exp_p = (lam + nu + cap_n as f64 - 2.0) / 2.0;
    let r_int = integrate_weighted(|s: f64| h.eval_real(s), r_exp_p, r_exp_m, -1.0, 1.0, cfg);

    // S in two panels around the interior |t|-singularity at t = 0
    let mu = Rat::new(num::BigInt::from(n - 2), num::BigInt::from(2));
    let t_exp = lam + nu - n as f64;
    let w_exp = (n as f64 - 3.0) / 2.0;
    let ctt = |t: f64| c_renorm_real(cap_n, &mu, t).unwrap_or(f64::NAN);
    let s_neg = integrate_weighted(
        |t: f64| (1.0 - t).powf(w_exp) * ctt(t),
        w_exp,
        t_exp,
        -1.0,
        0.0,
        cfg,
    );
    let s_pos = integrate_weighted(
        |t: f64| (1.0 + t).powf(w_exp) * ctt(t),
        t_exp,
        w_exp,
        0.0,
        1.0,
        cfg,
    );
    let vol_sn2 = 2.0 * std::f64::consts::PI.powf((n - 1) as f64 / 2.0)
        / crate::gamma::gamma_f64((n - 1) as f64 / 2.0);
    let norm = crate::gamma::gamma_f64((lam + nu - n as f64 + 1.0) / 2.0)
        * crate::gamma::gamma_f64((lam - nu) / 2.0);
    Ok(2f64.powf(-lam) * r_int.value * vol_sn2 * (s_neg.value + s_pos.value) / norm)
}

// ---------------------------------------------------------------------------
// Knapp–Stein convolution check (m = 2)
// ---------------------------------------------------------------------------

/// Per-sample ratio (|x−y|^{2(ν−m)} ∗ (1+|x|²)^{−ν})(y) / (1+|y|²)^{ν−m}
/// for m = 2.  Constancy across samples, with common value
/// Γ(ν−m/2)·π^{m/2}/Γ(ν), verifies the Knapp–Stein spherical constant.
pub fn quad_ks_convolution(
    m: i64,
    nu: f64,
    y_samples: &[(f64, f64)],
    cfg: &QuadConfig,
) -> Result<Vec<f64>, OracleError> {
    if m != 2 || nu <= 1.0 || nu >= 2.0 {
        return Err(OracleError::ConvolutionDomain);
    }
    let mut out = Vec::with_capacity(y_samples.len());
    for &(y0, y1) in y_samples {
        // polar around y; the θ-integral of a smooth periodic function by
        // the trapezoid rule, the ρ-integral by the configured 1D rule on
        // (0, R) plus a 1/ρ-substituted tail.
        let n_theta = 256;
        let theta_avg = |rho: f64| -> f64 {
            let mut acc = 0.0;
            for it in 0..n_theta {
                let th = 2.0 * std::f64::consts::PI * it as f64 / n_theta as f64;
                let x0 = y0 + rho * th.cos();
                let x1 = y1 + rho * th.sin();
                acc += (1.0 + x0 * x0 + x1 * x1).powf(-nu);
            }
            acc * 2.0 * std::f64::consts::PI / n_theta as f64
        };
        let inner = |rho: f64| rho.powf(2.0 * (nu - m as f64) + 1.0) * theta_avg(rho);
        let r_split = 8.0f64;
        let near = integrate(inner, 0.0, r_split, cfg);
        // ρ = 1/u: ∫_{R}^∞ g(ρ) dρ = ∫_0^{1/R} g(1/u)/u² du
        let far = integrate(
            |u: f64| {
                if u == 0.0 {
                    0.0
                } else {
                    inner(1.0 / u) / (u * u)
                }
            },
            0.0,
            1.0 / r_split,
            cfg,
        );
        let conv = near.value + far.value;
        out.push(conv / (1.0 + y0 * y0 + y1 * y1).powf(nu - m as f64));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Fourier-side K-Bessel identity
// ---------------------------------------------------------------------------

/// Maximum relative error, over the positive samples ξ, of the Fourier-side
/// spherical identity
///
/// ```text
/// 2^{2ν−m} π^{m/2} (1/Γ(m−ν)) |ξ|^{m−2ν} (2π^{m/2}/Γ(ν)) K̃_{m/2−ν}(|ξ|)
///   = (π^{m/2}/Γ(ν)) (2π^{m/2}/Γ(m−ν)) K̃_{ν−m/2}(|ξ|),
/// ```
///
/// with both K̃ orders evaluated by their own series.
pub fn kbessel_t1_identity(m: i64, nu: &Rat, xi_samples: &[f64]) -> Result<f64, OracleError> {
    let nu_f = rat_to_f64(nu);
    if nu_f <= 0.0 || nu_f >= m as f64 || crate::gamma::is_integer(nu) {
        return Err(OracleError::BesselDomain);
    }
    let order_plus = nu - rat_i(m) / rat_i(2); // ν − m/2
    let order_minus = rat_i(m) / rat_i(2) - nu; // m/2 − ν
    if crate::gamma::is_integer(&order_plus) {
        return Err(OracleError::BesselDomain);
    }
    let g_nu = crate::gamma::gamma_f64(nu_f);
    let g_mnu = crate::gamma::gamma_f64(m as f64 - nu_f);
    let pi_m2 = std::f64::consts::PI.powf(m as f64 / 2.0);
    let mut max_rel: f64 = 0.0;
    for &xi in xi_samples {
        if xi <= 0.0 {
            return Err(OracleError::BesselDomain);
        }
        let lhs = 2f64.powf(2.0 * nu_f - m as f64) * pi_m2 / g_mnu
            * xi.powf(m as f64 - 2.0 * nu_f)
            * (2.0 * pi_m2 / g_nu)
            * kbessel_renorm(&order_minus, xi)?;
        let rhs = pi_m2 / g_nu * (2.0 * pi_m2 / g_mnu) * kbessel_renorm(&order_plus, xi)?;
        let rel = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
        max_rel = max_rel.max(rel);
    }
    Ok(max_rel)
}

// ---------------------------------------------------------------------------
// Taylor-expansion route to the Juhl spherical constant
// ---------------------------------------------------------------------------

/// C̃_{λ,ν}(1+|x|²+x_n²)^{−λ} at the origin, exactly, using only the Taylor
/// oracle and the operator calculus (independent of the closed form).
pub fn taylor_apply_juhl(n: i64, lambda: &Rat, nu: &Rat) -> Result<Rat, OracleError> {
    let op = juhl_operator(n, lambda, nu)?;
    let l = ((nu - lambda) / rat_i(2))
        .to_integer()
        .to_u32()
        .unwrap_or(0);
    let taylor = taylor_coeffs_conformal_factor(n, lambda, 2 * l)?;
    Ok(op.apply(&taylor)?.at_zero())
}
