//! Symmetry breaking operators between the spherical principal series
//! representations I(λ) of O(n+1,1) and J(ν) of O(n,1).
//!
//! The crate computes, classifies and numerically verifies the operator
//! families Ã, ÃÃ, B̃, B̃B̃, C̃ and the Knapp–Stein operators: parameter-space
//! classification and multiplicities, exact operator constants carried as
//! Gamma monomials, the differential-operator calculus behind the Juhl
//! family, and independent quadrature/Taylor oracles for every closed form.
//!
//! Exact data lives on `num::BigRational`; the numeric kernel (quadrature,
//! Gegenbauer/Chebyshev evaluation, K-Bessel and ₂F₁ series) is generic over
//! the scalar type through [`Real`], with `f64` entry points re-exported at
//! the crate root.

pub mod checks;
pub mod gamma;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod polyops;
pub mod sbo;
pub mod specfun;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar bound for the numeric kernel: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + std::fmt::Debug {}
impl<T: Float + FloatConst + FromPrimitive + std::fmt::Debug> Real for T {}

pub use gamma::{GammaError, GammaMonomial, GammaSum, Rat};
pub use params::{BasisReport, ParamPoint, ParamValue, RegionReport};
pub use polyops::{DiffOp, MultiPoly};
pub use sbo::{ImageClass, KFiniteVector, KernelDescriptor, OperatorKind};

/// Default tolerance for set membership of inexact parameters.
pub const MEMBERSHIP_EPS: f64 = 1e-12;
