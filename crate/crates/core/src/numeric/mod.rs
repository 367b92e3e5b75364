//! Matrix realization of the exact transformation on finite block Hamiltonians.
//!
//! Every matrix function (sign, square root, arcsin, exp) is evaluated by
//! spectral calculus. Units are `ħ = c = 1`; the rest energy `mc²` is part of
//! each [`BlockHamiltonian`].

mod bridge;
mod export;
mod hamiltonian;
mod linalg;
mod models;
mod transform;

use thiserror::Error;

use crate::scalar::Real;

pub use bridge::{convergence_order, evaluate_symbolic, Convergence};
pub use export::matrix_to_json;
pub use hamiltonian::{BetaStructure, BlockHamiltonian, HermiticityMode};
pub use linalg::{
    anticommutator, c, commutator, dagger, hermitian_apply, hermitize, identity, max_abs, norm, CMatrix,
    GeneralEigen, HermitianEigen,
};
pub use models::{make_model, ModelSpec, SPIN1_MAX_DRAWS};
pub use transform::{
    eriksen_u, fw_transform, s_fw_exact, sign_lambda, sin_two_theta, u_from_sin, Diagnostic, Transform,
    TransformResult,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("eigenvalue {min_abs:.3e} of H lies within {threshold:.3e} of zero; the sign operator is undefined")]
    NearSingular { min_abs: f64, threshold: f64 },
    #[error("spectrum is not real (max |Im| = {max_imag:.3e}); pseudo-Hermiticity broken")]
    ComplexSpectrum { max_imag: f64 },
    #[error("2 + βλ + λβ has eigenvalue {min_eig:.3e}; transformation branch is degenerate")]
    NonPositiveDenominator { min_eig: f64 },
    #[error("sin 2Θ has eigenvalue of modulus {max_abs:.6} outside [-1, 1]")]
    SpectrumOutOfRange { max_abs: f64 },
    #[error("matrix violates {mode:?} symmetry (relative residual {residual:.3e})")]
    SymmetryBroken { mode: HermiticityMode, residual: f64 },
    #[error("decomposition failed: {0}")]
    DecompositionFailed(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Numerical thresholds. All are relative; see each field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|eigenvalue(H)| < singular · spectral radius` is rejected.
    pub singular: f64,
    /// Slack for `|sin 2Θ| ≤ 1` before clamping.
    pub clamp: f64,
    /// Largest allowed `|Im λ| / spectral radius` in pseudo-Hermitian mode.
    pub real_spectrum: f64,
    /// Smallest admissible eigenvalue of `2 + βλ + λβ`.
    pub denominator: f64,
    /// Exact identities (`λ² = 1` is additionally scaled by the dimension).
    pub strict: f64,
    /// Equivalence of the three constructions, block-diagonality, spectra.
    pub check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { singular: 1e-10, clamp: 1e-9, real_spectrum: 1e-8, denominator: 1e-12, strict: 1e-12, check: 1e-10 }
    }
}

impl Tolerances {
    /// Defaults rescaled to the machine epsilon of `T` (identity for `f64`).
    pub fn for_precision<T: Real>() -> Self {
        let f = (T::eps().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON).max(1.0);
        let d = Self::default();
        Tolerances {
            singular: d.singular * f,
            clamp: d.clamp * f,
            real_spectrum: d.real_spectrum * f,
            denominator: d.denominator * f,
            strict: d.strict * f,
            check: d.check * f,
        }
    }

    /// Sets every residual tolerance (`strict`, `check`) to `tol`.
    pub fn with_check(mut self, tol: f64) -> Self {
        self.strict = tol;
        self.check = tol;
        self
    }
}
