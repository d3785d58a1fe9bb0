//! Property tests for the exact layers: Gamma-monomial arithmetic, the
//! Gegenbauer normalizations, and the operator calculus.

use proptest::prelude::*;
use sbo_core::gamma::{rat, rat_i, GammaMonomial, Rat};
use sbo_core::polyops::{taylor_coeffs_conformal_factor, DiffOp, MultiPoly};
use sbo_core::specfun::{c_tilde, gegenbauer2, gegenbauer_poly};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn gamma_monomial() -> impl Strategy<Value = GammaMonomial> {
    (
        (-20i64..=20, 1i64..=6),
        -6i64..=6,
        -3i64..=3,
        prop::collection::vec(small_rat(), 0..3),
        prop::collection::vec(small_rat(), 0..3),
    )
        .prop_map(|((cp, cq), te, ph, num, den)| {
            GammaMonomial::new(rat(cp, cq), rat_i(te), ph, &num, &den)
        })
}

proptest! {
    #[test]
    fn gm_eq_is_reflexive_and_mul_commutes(a in gamma_monomial(), b in gamma_monomial()) {
        prop_assert!(a.eq_value(&a));
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        prop_assert!(ab.eq_value(&ba));
        // canonicalization is stable under multiplying by the identity
        prop_assert!(a.mul(&GammaMonomial::one()).eq_value(&a));
    }

    #[test]
    fn gm_eval_is_multiplicative(a in gamma_monomial(), b in gamma_monomial()) {
        let ab = a.mul(&b);
        if let (Ok(va), Ok(vb), Ok(vab)) = (a.eval_f64(), b.eval_f64(), ab.eval_f64()) {
            let prod = va * vb;
            if prod.abs() > 1e-280 && prod.is_finite() {
                prop_assert!(
                    (vab - prod).abs() <= 1e-12 * prod.abs().max(1.0),
                    "{} * {} -> {} vs {}", va, vb, vab, prod
                );
            }
        }
    }

    #[test]
    fn gm_mul_by_inverse_is_one(a in gamma_monomial()) {
        if a.state() == sbo_core::gamma::GmState::Finite {
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).eq_value(&GammaMonomial::one()));
        }
    }

    #[test]
    fn gegenbauer_inflation_specializes_at_s_one(n in 0u32..=10, mu_num in 1i64..=4) {
        // C_N^μ(1, t) = C_N^μ(t) for μ ∈ {1/2, 1, 3/2, 2}
        let mu = rat(mu_num, 2);
        let p2 = gegenbauer2(n, &mu);
        prop_assert_eq!(p2.at_s_one(), gegenbauer_poly(n, &mu));
    }

    #[test]
    fn gegenbauer_inflation_is_homogeneous(n in 0u32..=10, mu_num in 1i64..=4,
                                           s in -3i64..=3, t in -3i64..=3) {
        // C_N^μ(r²s, rt) = r^N C_N^μ(s,t) at r = 2, exactly
        let mu = rat(mu_num, 2);
        let p2 = gegenbauer2(n, &mu);
        let lhs = p2.eval(&rat_i(4 * s), &rat_i(2 * t));
        let rhs = num::pow::pow(rat_i(2), n as usize) * p2.eval(&rat_i(s), &rat_i(t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn c_tilde_homogeneity(l in 0u32..=5, mu_num in -3i64..=5) {
        let mu = rat(mu_num, 2);
        let p = c_tilde(l, &mu);
        if !p.is_zero() {
            prop_assert_eq!(p.homogeneous_degree(), Some(2 * l));
        }
    }

    #[test]
    fn diffop_apply_respects_composition(
        j1 in 0u32..=2, i1 in 0u32..=2, j2 in 0u32..=1, i2 in 0u32..=2,
        c1 in -5i64..=5, c2 in -5i64..=5, lam_num in -6i64..=6,
    ) {
        // apply(compose(A,B), p) = apply(A, apply(B, p)), exactly
        let n = 3i64;
        let mut a = DiffOp::new(n, false);
        a.add_term(j1, i1, GammaMonomial::from_int(c1));
        let mut b = DiffOp::new(n, false);
        b.add_term(j2, i2, GammaMonomial::from_int(c2));
        let p = taylor_coeffs_conformal_factor(n, &rat(lam_num, 2), 6).unwrap();
        let lhs = DiffOp::compose(&a, &b).unwrap().apply(&p).unwrap();
        let rhs = a.apply(&b.apply(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laplacian_is_linear(c in -9i64..=9) {
        let n = 4usize;
        let x0 = MultiPoly::var(n, 0);
        let x3 = MultiPoly::var(n, 3);
        let p = x0.mul(&x0).mul(&x3).scale(&rat_i(c));
        let q = x3.mul(&x3).mul(&x3);
        let vars: Vec<usize> = (0..n - 1).collect();
        let lhs = sbo_core::polyops::laplacian(&p.add(&q), &vars);
        let rhs = sbo_core::polyops::laplacian(&p, &vars)
            .add(&sbo_core::polyops::laplacian(&q, &vars));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn pab_zero_set_is_exactly_the_negative_lattice() {
    // On (a,b) ∈ [−4,4]²: pab vanishes for all deg ≤ 6 iff (−a,−b) ∈ ℕ²
    use sbo_core::poly::Poly1;
    use sbo_core::specfun::pab;
    let hs: Vec<Poly1> = (0..=6)
        .map(|d| {
            let mut c = vec![Rat::from_integer(0.into()); d + 1];
            c[d] = rat_i(1);
            Poly1::from_coeffs(c)
        })
        .collect();
    for a in -4..=4i64 {
        for b in -4..=4i64 {
            let vanishes = hs.iter().all(|h| pab(&rat_i(a), &rat_i(b), h).is_zero());
            let expected = a <= 0 && b <= 0;
            assert_eq!(vanishes, expected, "a={a} b={b}");
        }
    }
}
