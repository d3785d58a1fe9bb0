use clap::{Args, Parser, Subcommand};
use sbo_cli::{
    eval_report, make_point, parse_h, parse_kind, parse_param, rows_to_csv, rows_to_json,
    run_check, run_sweep, CliError, SweepOutput, SweepSpec, SWEEP_SCHEMA_VERSION,
};
use sbo_core::params::{
    basis_of_h, classify, multiplicity_factors, multiplicity_i_to_factor, multiplicity_principal,
    FactorTarget, ParamValue,
};
use std::io::Write;
use std::process::ExitCode;

/// Symmetry breaking operators between spherical principal series of
/// O(n+1,1) and O(n,1): classification, exact evaluation, identity checks
/// and lattice sweeps.
#[derive(Parser)]
#[command(name = "sbo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointArgs {
    /// Ambient dimension n ≥ 2
    #[arg(long)]
    n: i64,
    /// λ as "p/q", an integer, a decimal, or "a+bi"
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// ν in the same formats
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
}

#[derive(Subcommand)]
enum Command {
    /// Region classification of (n, λ, ν) as JSON
    Classify(PointArgs),
    /// Multiplicities: principal (default), composition factors, or I→factor
    Mult {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// composition factor index i (with --j: the m(T(i),·) table)
        #[arg(long)]
        i: Option<u64>,
        /// composition factor index j
        #[arg(long)]
        j: Option<u64>,
        /// target for m(I(λ), ·): F or T (with --lambda and --j)
        #[arg(long)]
        target: Option<String>,
    },
    /// Basis and graded dimensions of Hom(I(λ), J(ν))
    Basis(PointArgs),
    /// Evaluate an operator on the spherical vector or a K-finite vector
    Eval {
        /// Operator kind: A, AA, B, BB, C, T (Knapp–Stein of G'), TG (of G)
        kind: String,
        #[command(flatten)]
        point: PointArgs,
        /// Evaluate on the normalized spherical vector
        #[arg(long, default_value_t = false)]
        spherical: bool,
        /// K-finite vector: harmonic degree N and h coefficients "c0,c1,..."
        #[arg(long, num_args = 2, value_names = ["N", "H_COEFFS"])]
        kfinite: Option<Vec<String>>,
    },
    /// Run an identity-check suite (residues, functional, vanishing, oracle,
    /// factorization, pde, all); nonzero exit on failure
    Check {
        suite: String,
        #[arg(long, default_value_t = 20260101)]
        seed: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Lattice sweep emitting CSV or JSON rows
    Sweep {
        #[arg(long)]
        n: i64,
        /// λ range "a:b" (inclusive)
        #[arg(long, allow_hyphen_values = true)]
        lambda_range: String,
        /// ν range "a:b" (inclusive)
        #[arg(long, allow_hyphen_values = true)]
        nu_range: String,
        /// Comma-separated outputs: region,mult,basis,octant,image_A,support_A,zn
        #[arg(long, default_value = "region,mult")]
        outputs: String,
        /// Harmonic degree for the zn output (even)
        #[arg(long, default_value_t = 8)]
        zn: u32,
        /// csv or json
        #[arg(long, default_value = "csv")]
        format: String,
        /// Print the CSV column schema and exit
        #[arg(long, default_value_t = false)]
        schema: bool,
        /// Write to FILE instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| CliError::Validation(format!("range must be \"a:b\", got {s:?}")))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("bad range bound {a:?}")))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("bad range bound {b:?}")))?;
    Ok((a, b))
}

fn emit(out: &Option<String>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Validation(format!("cannot write {path}: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(args) => {
            let p = make_point(args.n, &args.lambda, &args.nu)?;
            let report = classify(&p);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Mult {
            n,
            lambda,
            nu,
            i,
            j,
            target,
        } => {
            let value = match (&lambda, &nu, i, j, &target) {
                (Some(l), Some(v), None, None, None) => {
                    let p = make_point(n, l, v)?;
                    let m = multiplicity_principal(&p)
                        .map_err(|e| CliError::Validation(e.to_string()))?;
                    serde_json::json!({"multiplicity": m})
                }
                (None, None, Some(i), Some(j), None) => {
                    serde_json::json!(multiplicity_factors(n, i, j))
                }
                (Some(l), None, None, Some(j), Some(t)) => {
                    let lam = match parse_param(l)? {
                        ParamValue::Exact(r) => r,
                        _ => {
                            return Err(CliError::Validation(
                                "λ must be exact for factor multiplicities".into(),
                            ))
                        }
                    };
                    let target = match t.as_str() {
                        "F" | "f" => FactorTarget::F,
                        "T" | "t" => FactorTarget::T,
                        other => {
                            return Err(CliError::Validation(format!(
                                "target must be F or T, got {other:?}"
                            )))
                        }
                    };
                    serde_json::json!({
                        "multiplicity": multiplicity_i_to_factor(n, &lam, j, target)
                    })
                }
                _ => {
                    return Err(CliError::Validation(
                        "use --lambda/--nu, or --i/--j, or --lambda/--j/--target".into(),
                    ))
                }
            };
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            Ok(())
        }
        Command::Basis(args) => {
            let p = make_point(args.n, &args.lambda, &args.nu)?;
            let report = basis_of_h(&p).map_err(|e| CliError::Validation(e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Eval {
            kind,
            point,
            spherical,
            kfinite,
        } => {
            let kind = parse_kind(&kind)?;
            let p = make_point(point.n, &point.lambda, &point.nu)?;
            let parsed_kf = match (&kfinite, spherical) {
                (Some(args), _) => {
                    let cap_n: u32 = args[0]
                        .parse()
                        .map_err(|_| CliError::Validation(format!("bad N {:?}", args[0])))?;
                    Some((cap_n, parse_h(&args[1])?))
                }
                (None, _) => None,
            };
            let report = eval_report(kind, &p, parsed_kf.as_ref().map(|(n, h)| (*n, h)))?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Check { suite, seed, tol } => {
            let reports = run_check(&suite, seed, tol)?;
            let all_pass = reports.iter().all(|r| r.passed);
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            if all_pass {
                Ok(())
            } else {
                Err(CliError::CheckFailed(
                    reports
                        .iter()
                        .filter(|r| !r.passed)
                        .map(|r| r.suite.clone())
                        .collect::<Vec<_>>()
                        .join(", "),
                ))
            }
        }
        Command::Sweep {
            n,
            lambda_range,
            nu_range,
            outputs,
            zn,
            format,
            schema,
            out,
        } => {
            let outputs = outputs
                .split(',')
                .map(SweepOutput::parse)
                .collect::<Result<Vec<_>, _>>()?;
            let spec = SweepSpec {
                n,
                lambda_range: parse_range(&lambda_range)?,
                nu_range: parse_range(&nu_range)?,
                outputs,
                zn_degree: zn,
            };
            spec.validate()?;
            let cols = spec.schema();
            if schema {
                println!("{} {}", SWEEP_SCHEMA_VERSION, cols.join(","));
                return Ok(());
            }
            let rows = run_sweep(&spec)?;
            let content = match format.as_str() {
                "csv" => rows_to_csv(&cols, &rows),
                "json" => rows_to_json(&cols, &rows),
                other => {
                    return Err(CliError::Validation(format!(
                        "format must be csv or json, got {other:?}"
                    )))
                }
            };
            emit(&out, &content)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
