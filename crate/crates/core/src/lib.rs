//! Toric varieties from complete simplicial fans.
//!
//! Given integer ray generators and the maximal cones of a complete
//! simplicial fan, this crate computes the quotient presentation
//! `X = (C^d \ Z(Σ)) / G`, the Kähler cone inequalities and the kernel
//! `ω = conj(h(z)) ∧ dz / g(z, z̄)` of the associated integral representation,
//! all in exact arithmetic. [`numeric`] checks the representation by Monte
//! Carlo integration over the cycle `Γ(ρ)`.
//!
//! ```
//! use torkernel::{build_kernel, parse_fan, NuMode};
//!
//! let fan = parse_fan(r#"{"n":2,"generators":[[1,0],[0,1],[-1,-1]],"max_cones":[[1,2],[2,3],[3,1]]}"#)?;
//! let report = build_kernel(&fan, NuMode::Normalized)?;
//! assert_eq!(report.rank(), 1);
//! # Ok::<(), torkernel::Error>(())
//! ```

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod fan;
pub mod kernel;
pub mod linalg;
pub mod numeric;
pub mod report;
pub mod scalar;

/// Arbitrary-precision integer used for relation matrices and minors.
pub type Integer = num_bigint::BigInt;
/// Exact rational scalar of the symbolic pipeline.
pub type Rational = num_rational::BigRational;
/// Complex scalar of the numeric verifier.
pub type Complex64 = num_complex::Complex<f64>;

/// Cycle parametrization over `f64`.
pub type CycleSpec64 = numeric::CycleSpec<f64>;
/// Monte Carlo statistics over `f64`.
pub type SampleStats64 = numeric::SampleStats<f64>;

pub use combinatorics::{permut, prim_coll, set_of_all_subsets, subsets_minus1, PrimitiveCollections};
pub use error::{Error, LinalgError, Result};
pub use fan::{parse_fan, validate_fan, Fan, ValidationReport};
pub use kernel::{
    build_kernel, denominator_g, exceptional_set, group_action, kahler_cone, kahler_derivations, numerator_h,
    nu_sigma, w_forms, KernelReport, LinearFormRho, NuMode,
};
pub use linalg::{det, det_exact, lin_rel, solve_in_basis, RelationBasis};
pub use numeric::{cycle_parametrization, estimate_c, integrand_omega, verify_representation, MonteCarloConfig};
pub use report::{parse_structured, render, Format, RenderOptions};
pub use scalar::{Field, Scalar};
