//! Exact Foldy–Wouthuysen transformation operators in two backends.
//!
//! * [`algebra`]: canonical-form operator algebra over `β`, `E`, `O` and the
//!   grading parameter `μ = 1/(mc²)`, with a text grammar.
//! * [`symbolic`]: semirelativistic series for `λ`, the exponential
//!   generator `S_FW`, the transformed Hamiltonian and BCH composition.
//! * [`numeric`]: spectral-calculus realization of the same operators on
//!   finite block matrices, plus concrete model Hamiltonians.
//! * [`report`]: machine-readable verification reports.
//!
//! Both backends are generic over their scalar type; the aliases below fix
//! the usual choices (exact rationals, `f64`).

pub mod algebra;
pub mod numeric;
pub mod report;
pub mod scalar;
pub mod symbolic;

pub use num_rational::BigRational;

/// Exact Gaussian-rational operator expression.
pub type Expr = algebra::OperatorExpr<BigRational>;
/// Approximate operator expression with `f64` coefficients.
pub type ExprF64 = algebra::OperatorExpr<f64>;
/// Complex matrix in double precision.
pub type CMatrix = numeric::CMatrix<f64>;
pub type Hamiltonian = numeric::BlockHamiltonian<f64>;
pub type FwResult = numeric::TransformResult<f64>;
