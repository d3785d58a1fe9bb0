//! Acceptance suite: one verdict line per criterion.  Exactness is asserted
//! in every build; the wall-clock budgets are enforced in release builds
//! (run `cargo test --release -p sbo-cli --test acceptance -- --nocapture`).

use sbo_cli::{rows_to_csv, run_sweep, SweepOutput, SweepSpec};
use sbo_core::checks;
use sbo_core::gamma::{factorial, rat, rat_i, two_pow, GammaMonomial, Rat};
use sbo_core::oracle;
use sbo_core::params::{basis_of_h, multiplicity_principal, ParamPoint};
use sbo_core::polyops::{laplacian, taylor_coeffs_conformal_factor};
use sbo_core::sbo::{fourier_a_poly, fourier_c_kernel, spherical_action, OperatorKind};
use std::time::Instant;

struct Verdicts {
    lines: Vec<(String, bool)>,
}

impl Verdicts {
    fn new() -> Self {
        Verdicts { lines: vec![] }
    }

    fn record(&mut self, id: &str, pass: bool, detail: String) {
        let line = format!(
            "{} criterion {:>2}: {}",
            if pass { "PASS" } else { "FAIL" },
            id,
            detail
        );
        println!("{line}");
        self.lines.push((line, pass));
    }

    fn finish(self) {
        let failures: Vec<_> = self.lines.iter().filter(|(_, p)| !p).collect();
        assert!(
            failures.is_empty(),
            "acceptance failures:\n{}",
            failures
                .iter()
                .map(|(l, _)| l.as_str())
                .collect::<Vec<_>>()
                .join("\n")
        );
    }
}

fn budget_ok(elapsed: std::time::Duration, seconds: f64) -> bool {
    if cfg!(debug_assertions) {
        true // budgets are release-build figures
    } else {
        elapsed.as_secs_f64() < seconds
    }
}

/// Reference dimension tables straight from the classification theorem,
/// written independently of the library's basis_of_h.
fn reference_dims(n: i64, lam: i64, nu: i64) -> (u32, u32, u32) {
    let leven = lam <= 0 && nu <= 0 && lam <= nu && (lam - nu) % 2 == 0;
    let par = nu >= lam && (nu - lam) % 2 == 0;
    let ss = lam + nu < n && (n - 1 - lam - nu) % 2 == 0;
    let dim_h = if leven { 2 } else { 1 };
    let dim_sing = if n % 2 == 1 {
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
    let dim_diff = if par { 1 } else { 0 };
    (dim_h, dim_sing, dim_diff)
}

#[test]
fn acceptance() {
    let mut v = Verdicts::new();

    // 1. Multiplicity and dimension tables
    let t0 = Instant::now();
    let mut mult_ok = true;
    for n in [2i64, 3, 4, 5] {
        for lam in -12..=16i64 {
            for nu in -12..=15i64 {
                let p = ParamPoint::from_ints(n, lam, nu).unwrap();
                let leven = lam <= 0 && nu <= 0 && lam <= nu && (lam - nu) % 2 == 0;
                let expect = if leven { 2 } else { 1 };
                if multiplicity_principal(&p).unwrap() != expect {
                    mult_ok = false;
                }
                let b = basis_of_h(&p).unwrap();
                if (b.dim_h, b.dim_h_sing, b.dim_h_diff) != reference_dims(n, lam, nu) {
                    mult_ok = false;
                }
            }
        }
    }
    let dt = t0.elapsed();
    v.record(
        "1",
        mult_ok && budget_ok(dt, 1.0),
        format!("multiplicity/dimension tables on [-12,16]x[-12,15], n=2..5 ({dt:.2?})"),
    );

    // 2. Quadrature oracle vs closed form, 20 combos, rel <= 1e-7
    let t0 = Instant::now();
    let r = checks::oracle_suite(1e-7);
    let dt = t0.elapsed();
    v.record(
        "2",
        r.passed && budget_ok(dt, 60.0),
        format!(
            "quadrature vs closed form, {} cases, {} failed ({dt:.2?})",
            r.cases_total, r.cases_failed
        ),
    );

    // 3. Vanishing set on [-8,0]^2 for n in {3,4}, plus nonzero witnesses
    let r = checks::vanishing_suite();
    v.record(
        "3",
        r.passed,
        format!(
            "L_even zero set + witnesses, {} cases, {} failed",
            r.cases_total, r.cases_failed
        ),
    );

    // 4. Residue formulae as exact identities
    let r = checks::residues_suite();
    v.record(
        "4",
        r.passed,
        format!(
            "residue formulae (reduction 1-4), {} cases, {} failed",
            r.cases_total, r.cases_failed
        ),
    );

    // 5. Functional identities, 50 lattice samples per region
    let r = checks::functional_suite(50);
    v.record(
        "5",
        r.passed,
        format!(
            "functional identities incl. pole degenerations, {} cases, {} failed",
            r.cases_total, r.cases_failed
        ),
    );

    // 6. Operator factorizations as exact DiffOp identities
    let t0 = Instant::now();
    let r = checks::factorization_suite();
    let dt = t0.elapsed();
    v.record(
        "6",
        r.passed && budget_ok(dt, 5.0),
        format!(
            "factorization identities, {} cases, {} failed ({dt:.2?})",
            r.cases_total, r.cases_failed
        ),
    );

    // 7. Juhl/Taylor cross-check, exact rationals
    let mut juhl_ok = true;
    for n in [3i64, 4] {
        for l in 0..=3u32 {
            for lam in [rat(1, 2), rat_i(1), rat_i(3)] {
                let nu = &lam + rat_i(2 * l as i64);
                let p = ParamPoint::from_rats(n, lam.clone(), nu.clone()).unwrap();
                let closed = spherical_action(OperatorKind::C, &p).unwrap();
                let taylor = oracle::taylor_apply_juhl(n, &lam, &nu).unwrap();
                if !closed.eq_value(&GammaMonomial::from_rational(taylor)) {
                    juhl_ok = false;
                }
            }
        }
    }
    v.record(
        "7",
        juhl_ok,
        "Juhl spherical constant vs Taylor oracle, l<=3, exact".to_string(),
    );

    // 8. Fourier polynomial identity for l <= 4, exact
    let mut fourier_ok = true;
    for l in 0..=4u32 {
        for lam in [rat(1, 2), rat(5, 3), rat_i(2), rat_i(-1)] {
            for n in [3i64, 4] {
                let nu = &lam + rat_i(2 * l as i64);
                let p = ParamPoint::from_rats(n, lam.clone(), nu).unwrap();
                let (_, f_poly) = fourier_a_poly(&p).unwrap();
                let c_poly = fourier_c_kernel(&p).unwrap();
                let sign = if l % 2 == 0 { rat_i(1) } else { rat_i(-1) };
                if f_poly != c_poly.scale(&(sign * factorial(l as u64))) {
                    fourier_ok = false;
                }
            }
        }
    }
    v.record(
        "8",
        fourier_ok,
        "terminating 2F1 route vs Gegenbauer polynomial route, l<=4, exact".to_string(),
    );

    // 9. Knapp-Stein: composition constant exact, convolution to 1e-5,
    //    K-Bessel identity to 1e-11 at 3 orders, Laplacian-power action exact
    let mut ks_ok = true;
    for (n, nu) in [
        (3i64, rat(1, 3)),
        (3, rat_i(1)),
        (4, rat(5, 2)),
        (3, rat_i(-2)),
    ] {
        let m = n - 1;
        let p1 = ParamPoint::from_rats(n, rat_i(0), nu.clone()).unwrap();
        let p2 = ParamPoint::from_rats(n, rat_i(0), rat_i(m) - &nu).unwrap();
        let lhs = spherical_action(OperatorKind::KsGPrime, &p1)
            .unwrap()
            .mul(&spherical_action(OperatorKind::KsGPrime, &p2).unwrap());
        let rhs = GammaMonomial::pi_half_power(2 * m)
            .mul(&GammaMonomial::inv_gamma(nu.clone()))
            .mul(&GammaMonomial::inv_gamma(rat_i(m) - &nu));
        if !lhs.eq_value(&rhs) {
            ks_ok = false;
        }
    }
    let cfg = oracle::QuadConfig::default();
    let ratios =
        oracle::quad_ks_convolution(2, 1.3, &[(0.0, 0.0), (0.5, 0.0), (0.3, 0.4)], &cfg).unwrap();
    let expect =
        sbo_core::gamma::gamma_f64(0.3) * std::f64::consts::PI / sbo_core::gamma::gamma_f64(1.3);
    for r in &ratios {
        if (r - expect).abs() / expect > 1e-5 {
            ks_ok = false;
        }
    }
    for (m, nu) in [(2i64, rat(1, 3)), (2, rat(3, 4)), (4, rat(3, 2))] {
        if oracle::kbessel_t1_identity(m, &nu, &[0.5, 1.0, 2.0]).unwrap() > 1e-11 {
            ks_ok = false;
        }
    }
    // Laplacian-power action on spherical vectors vs the Taylor oracle
    for m in [2i64, 3, 4] {
        for j in [1u32, 2] {
            let nu = Rat::new(m.into(), 2.into()) - rat_i(j as i64);
            let p = taylor_coeffs_conformal_factor(m, &nu, 2 * j + 2).unwrap();
            let vars: Vec<usize> = (0..m as usize).collect();
            let mut q = p;
            for _ in 0..j {
                q = laplacian(&q, &vars);
            }
            let expect = GammaMonomial::gamma(Rat::new(m.into(), 2.into()) + rat_i(j as i64))
                .mul(&GammaMonomial::inv_gamma(
                    Rat::new(m.into(), 2.into()) - rat_i(j as i64),
                ))
                .scale(&(if j % 2 == 0 { rat_i(1) } else { rat_i(-1) } * two_pow(2 * j as i64)))
                .as_rational()
                .unwrap();
            if q.at_zero() != expect {
                ks_ok = false;
            }
        }
    }
    v.record(
        "9",
        ks_ok,
        "Knapp-Stein composition, convolution (1e-5), K-Bessel (1e-11), Laplacian action"
            .to_string(),
    );

    // 10. PDE residual on the unnormalized A-kernel at (3,5,1)
    let p = ParamPoint::from_ints(3, 5, 1).unwrap();
    let res = sbo_core::sbo::pde_residual(&p, 20, 1e-5, 20260101).unwrap();
    v.record(
        "10",
        res <= 1e-6,
        format!("finite-difference residual of the defining system: {res:.2e} <= 1e-6"),
    );

    // 11. Sweep regression: octant partition, image table, Z_8 geometry,
    //     byte-stable across runs
    let mut sweep_ok = true;
    let spec = SweepSpec {
        n: 3,
        lambda_range: (-8, 8),
        nu_range: (-8, 8),
        outputs: vec![
            SweepOutput::Region,
            SweepOutput::Mult,
            SweepOutput::Octant,
            SweepOutput::ImageA,
            SweepOutput::SupportA,
        ],
        zn_degree: 8,
    };
    let cols = spec.schema();
    let rows1 = run_sweep(&spec).unwrap();
    let rows2 = run_sweep(&spec).unwrap();
    let csv1 = rows_to_csv(&cols, &rows1);
    let csv2 = rows_to_csv(&cols, &rows2);
    if csv1 != csv2 {
        sweep_ok = false;
    }
    // octant column: exactly the doubly-reducible points carry a tag
    let octant_idx = cols.iter().position(|c| *c == "octant").unwrap();
    let mult_idx = cols.iter().position(|c| *c == "mult").unwrap();
    let leven_idx = cols.iter().position(|c| *c == "in_Leven").unwrap();
    for row in &rows1 {
        let (lam, nu): (i64, i64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        let reducible = (lam <= 0 || lam >= 3) && (nu <= 0 || nu >= 2);
        if reducible != !row[octant_idx].is_empty() {
            sweep_ok = false;
        }
        // the mult column carries 2 exactly on the L_even rows
        let expect_mult = if row[leven_idx] == "true" { "2" } else { "1" };
        if row[mult_idx] != expect_mult {
            sweep_ok = false;
        }
    }
    // all eight octants appear on this window
    let mut seen = std::collections::BTreeSet::new();
    for row in &rows1 {
        if !row[octant_idx].is_empty() {
            seen.insert(row[octant_idx].clone());
        }
    }
    if seen.len() != 8 {
        sweep_ok = false;
    }
    // image table spot checks across the reducible rows
    let image_idx = cols.iter().position(|c| *c == "image_A").unwrap();
    for row in &rows1 {
        let (lam, nu): (i64, i64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        let img = &row[image_idx];
        if nu <= 0 {
            let leven = lam <= 0 && lam <= nu && (lam - nu) % 2 == 0;
            let expect = if leven {
                "0".to_string()
            } else {
                format!("F({})", -nu)
            };
            if img != &expect {
                sweep_ok = false;
            }
        } else if nu >= 2 {
            // ν = m + j with m = 2
            let j = nu - 2;
            let expect = if lam + j <= 0 && (lam + j) % 2 == 0 {
                format!("T({})", j)
            } else {
                "J".to_string()
            };
            if img != &expect {
                sweep_ok = false;
            }
        } else if !img.is_empty() {
            sweep_ok = false;
        }
    }
    // Z_8 geometry through the zn sweep column
    let zn_spec = SweepSpec {
        n: 3,
        lambda_range: (-10, 10),
        nu_range: (-10, 10),
        outputs: vec![SweepOutput::Zn],
        zn_degree: 8,
    };
    let zn_cols = zn_spec.schema();
    let zn_rows = run_sweep(&zn_spec).unwrap();
    let zn_idx = zn_cols.iter().position(|c| *c == "zn_zero").unwrap();
    for row in &zn_rows {
        let (lam, nu): (i64, i64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        let computed = row[zn_idx] == "true";
        let a = lam + 8;
        let in_lambda_n = a - nu <= 0 && (a - nu) % 2 == 0 && a + nu <= 0 && (a + nu) % 2 == 0;
        let on_lines = (0..4).any(|j| lam - nu == -2 * j || lam + nu == 3 + 2 * j);
        if computed != (in_lambda_n || on_lines) {
            sweep_ok = false;
        }
    }
    let zn_csv1 = rows_to_csv(&zn_cols, &zn_rows);
    let zn_csv2 = rows_to_csv(&zn_cols, &run_sweep(&zn_spec).unwrap());
    if zn_csv1 != zn_csv2 {
        sweep_ok = false;
    }
    v.record(
        "11",
        sweep_ok,
        "sweep: octant partition, image tables, Z_8 geometry, byte-stable".to_string(),
    );

    v.finish();
}
