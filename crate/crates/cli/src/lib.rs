//! Plumbing for the `sbo` command line tool: parameter parsing, evaluation
//! reports, the check-suite driver, and the deterministic lattice sweep.

use sbo_core::checks::{self, CheckReport};
use sbo_core::gamma::GammaMonomial;
use sbo_core::params::{
    basis_of_h, classify, in_reducible_lattice, multiplicity_principal, ParamPoint, ParamValue,
};
use sbo_core::poly::Poly1;
use sbo_core::sbo::{
    image_of, kernel_descriptor, kfinite_pairing, spherical_action, KFiniteVector, OperatorKind,
    SboError,
};
use serde::Serialize;
use serde_json::json;

/// CSV schema version; bump when the column set or order changes.
pub const SWEEP_SCHEMA_VERSION: &str = "sbo-sweep-v1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Domain(String),
    #[error("check suite failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Domain(_) => 3,
            CliError::CheckFailed(_) => 4,
        }
    }
}

pub fn parse_param(s: &str) -> Result<ParamValue, CliError> {
    ParamValue::parse(s).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn make_point(n: i64, lambda: &str, nu: &str) -> Result<ParamPoint, CliError> {
    let l = parse_param(lambda)?;
    let v = parse_param(nu)?;
    ParamPoint::new(n, l, v).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn parse_kind(s: &str) -> Result<OperatorKind, CliError> {
    match s.to_uppercase().as_str() {
        "A" => Ok(OperatorKind::A),
        "AA" => Ok(OperatorKind::AA),
        "B" => Ok(OperatorKind::B),
        "BB" => Ok(OperatorKind::BB),
        "C" => Ok(OperatorKind::C),
        "T" | "KS_GPRIME" | "KS-GPRIME" => Ok(OperatorKind::KsGPrime),
        "TG" | "KS_G" | "KS-G" => Ok(OperatorKind::KsG),
        other => Err(CliError::Validation(format!(
            "unknown operator kind {other:?}"
        ))),
    }
}

fn domain_err(e: SboError) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parse an h polynomial given as comma-separated rational coefficients,
/// constant term first, e.g. "1,0,-3/2".
pub fn parse_h(s: &str) -> Result<Poly1, CliError> {
    let mut coeffs = Vec::new();
    for part in s.split(',') {
        let v = parse_param(part)?;
        match v {
            ParamValue::Exact(r) => coeffs.push(r),
            _ => {
                return Err(CliError::Validation(
                    "h coefficients must be exact rationals".to_string(),
                ))
            }
        }
    }
    Ok(Poly1::from_coeffs(coeffs))
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub kind: String,
    pub n: i64,
    pub lambda: String,
    pub nu: String,
    pub input: serde_json::Value,
    pub value: serde_json::Value,
    pub pretty: String,
    pub float: Option<f64>,
}

/// Evaluate the spherical action or a K-finite pairing.
pub fn eval_report(
    kind: OperatorKind,
    p: &ParamPoint,
    kfinite: Option<(u32, &Poly1)>,
) -> Result<EvalReport, CliError> {
    let (value_json, pretty, float, input) = match kfinite {
        None => {
            let v = spherical_action(kind, p).map_err(domain_err)?;
            let f = v.eval_f64().ok();
            (json!(v), v.pretty(), f, json!("spherical"))
        }
        Some((cap_n, h)) => {
            let v = kfinite_pairing(kind, p, &KFiniteVector::new(cap_n, h.clone()))
                .map_err(domain_err)?;
            let f = v.eval_f64().ok();
            let pretty = match v.as_monomial() {
                Ok(m) => m.pretty(),
                Err(_) => v
                    .terms()
                    .iter()
                    .map(GammaMonomial::pretty)
                    .collect::<Vec<_>>()
                    .join(" + "),
            };
            (json!(v.terms()), pretty, f, json!({"N": cap_n, "h": h}))
        }
    };
    Ok(EvalReport {
        kind: kind.to_string(),
        n: p.n,
        lambda: p.lambda.to_string(),
        nu: p.nu.to_string(),
        input,
        value: value_json,
        pretty,
        float,
    })
}

/// Run a named check suite.  `all` runs every suite.
pub fn run_check(suite: &str, seed: u64, tol: f64) -> Result<Vec<CheckReport>, CliError> {
    let reports = match suite {
        "residues" => vec![checks::residues_suite()],
        "functional" => vec![checks::functional_suite(50)],
        "vanishing" => vec![checks::vanishing_suite()],
        "oracle" => vec![checks::oracle_suite(tol)],
        "factorization" => vec![checks::factorization_suite()],
        "pde" => vec![checks::pde_suite(seed)],
        "all" => vec![
            checks::residues_suite(),
            checks::functional_suite(50),
            checks::vanishing_suite(),
            checks::oracle_suite(tol),
            checks::factorization_suite(),
            checks::pde_suite(seed),
        ],
        other => {
            return Err(CliError::Validation(format!(
                "unknown check suite {other:?}; expected one of residues, functional, vanishing, oracle, factorization, pde, all"
            )))
        }
    };
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Lattice sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepOutput {
    Region,
    Mult,
    Basis,
    Octant,
    ImageA,
    SupportA,
    Zn,
}

impl SweepOutput {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "region" => Ok(SweepOutput::Region),
            "mult" => Ok(SweepOutput::Mult),
            "basis" => Ok(SweepOutput::Basis),
            "octant" => Ok(SweepOutput::Octant),
            "image_A" | "image_a" => Ok(SweepOutput::ImageA),
            "support_A" | "support_a" => Ok(SweepOutput::SupportA),
            "zn" => Ok(SweepOutput::Zn),
            other => Err(CliError::Validation(format!(
                "unknown sweep output {other:?}"
            ))),
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            SweepOutput::Region => &[
                "in_slashslash",
                "in_parallel",
                "in_X",
                "in_Leven",
                "in_Lodd",
                "k",
                "l",
            ],
            SweepOutput::Mult => &["mult"],
            SweepOutput::Basis => &["dim_H", "dim_H_sing", "dim_H_diff", "basis"],
            SweepOutput::Octant => &["octant", "weyl_class"],
            SweepOutput::ImageA => &["image_A"],
            SweepOutput::SupportA => &["support_A"],
            SweepOutput::Zn => &["zn_zero"],
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub n: i64,
    pub lambda_range: (i64, i64),
    pub nu_range: (i64, i64),
    pub outputs: Vec<SweepOutput>,
    /// Fixed even harmonic degree for the `zn` column.
    pub zn_degree: u32,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let ((l0, l1), (v0, v1)) = (self.lambda_range, self.nu_range);
        if l0 > l1 || v0 > v1 {
            return Err(CliError::Validation("empty sweep range".to_string()));
        }
        for bound in [l0, l1, v0, v1] {
            if bound.abs() > 100 {
                return Err(CliError::Validation(
                    "sweep ranges are bounded by ±100".to_string(),
                ));
            }
        }
        if self.n < 2 {
            return Err(CliError::Validation(format!(
                "ambient dimension must satisfy n >= 2, got {}",
                self.n
            )));
        }
        if self.outputs.contains(&SweepOutput::Zn) && !self.zn_degree.is_multiple_of(2) {
            return Err(CliError::Validation("zn degree must be even".to_string()));
        }
        Ok(())
    }

    pub fn schema(&self) -> Vec<&'static str> {
        let mut cols = vec!["n", "lambda", "nu"];
        for o in &self.outputs {
            cols.extend_from_slice(o.columns());
        }
        cols
    }
}

fn membership_str(m: sbo_core::params::Membership) -> &'static str {
    match m {
        sbo_core::params::Membership::In => "true",
        sbo_core::params::Membership::Out => "false",
        sbo_core::params::Membership::WithinTolerance => "within-tolerance",
    }
}

/// One row per lattice point, λ ascending then ν ascending; emitted in
/// deterministic order with a fixed column set, so output is byte-stable.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<Vec<String>>, CliError> {
    spec.validate()?;
    let mut rows = Vec::new();
    let zn_monomials: Vec<Poly1> = (0..=6)
        .map(|d| {
            let mut c = vec![sbo_core::gamma::rat_i(0); d + 1];
            c[d] = sbo_core::gamma::rat_i(1);
            Poly1::from_coeffs(c)
        })
        .collect();
    for lam in spec.lambda_range.0..=spec.lambda_range.1 {
        for nu in spec.nu_range.0..=spec.nu_range.1 {
            let p = ParamPoint::from_ints(spec.n, lam, nu)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let r = classify(&p);
            let mut row = vec![spec.n.to_string(), lam.to_string(), nu.to_string()];
            for o in &spec.outputs {
                match o {
                    SweepOutput::Region => {
                        row.push(membership_str(r.in_slashslash).to_string());
                        row.push(membership_str(r.in_parallel).to_string());
                        row.push(membership_str(r.in_x).to_string());
                        row.push(membership_str(r.in_leven).to_string());
                        row.push(membership_str(r.in_lodd).to_string());
                        row.push(r.k.map(|k| k.to_string()).unwrap_or_default());
                        row.push(r.l.map(|l| l.to_string()).unwrap_or_default());
                    }
                    SweepOutput::Mult => {
                        let m = multiplicity_principal(&p)
                            .map_err(|e| CliError::Validation(e.to_string()))?;
                        row.push(m.to_string());
                    }
                    SweepOutput::Basis => {
                        let b = basis_of_h(&p).map_err(|e| CliError::Validation(e.to_string()))?;
                        row.push(b.dim_h.to_string());
                        row.push(b.dim_h_sing.to_string());
                        row.push(b.dim_h_diff.to_string());
                        row.push(
                            b.basis
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join("+"),
                        );
                    }
                    SweepOutput::Octant => {
                        row.push(r.octant.map(|o| o.to_string()).unwrap_or_default());
                        row.push(if in_reducible_lattice(&p) {
                            r.weyl_class.to_string()
                        } else {
                            String::new()
                        });
                    }
                    SweepOutput::ImageA => {
                        row.push(match image_of(OperatorKind::A, &p) {
                            Ok(img) => img.to_string(),
                            Err(_) => String::new(),
                        });
                    }
                    SweepOutput::SupportA => {
                        let d = kernel_descriptor(OperatorKind::A, &p).map_err(domain_err)?;
                        row.push(
                            serde_json::to_value(d.support)
                                .unwrap()
                                .as_str()
                                .unwrap()
                                .to_string(),
                        );
                    }
                    SweepOutput::Zn => {
                        let zero = zn_monomials.iter().all(|h| {
                            kfinite_pairing(
                                OperatorKind::A,
                                &p,
                                &KFiniteVector::new(spec.zn_degree, h.clone()),
                            )
                            .map(|v| v.is_zero())
                            .unwrap_or(false)
                        });
                        row.push(zero.to_string());
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn rows_to_csv(schema: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&schema.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn rows_to_json(schema: &[&str], rows: &[Vec<String>]) -> String {
    let objs: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let map: serde_json::Map<String, serde_json::Value> = schema
                .iter()
                .zip(row)
                .map(|(k, v)| ((*k).to_string(), json!(v)))
                .collect();
            serde_json::Value::Object(map)
        })
        .collect();
    serde_json::to_string_pretty(&objs).unwrap()
}
