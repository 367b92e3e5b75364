use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::linalg::{c, norm, CMatrix};
use super::NumericError;
use crate::scalar::{lit, Real};

/// `β = diag(+1 × n_upper, −1 × n_lower)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaStructure {
    pub n_upper: usize,
    pub n_lower: usize,
}

impl BetaStructure {
    pub fn new(n_upper: usize, n_lower: usize) -> Result<Self, NumericError> {
        if n_upper == 0 || n_lower == 0 {
            return Err(NumericError::InvalidInput("both spinor blocks must be non-empty".into()));
        }
        Ok(BetaStructure { n_upper, n_lower })
    }

    /// Equal upper and lower blocks of total dimension `dim`.
    pub fn symmetric(dim: usize) -> Result<Self, NumericError> {
        if dim % 2 != 0 {
            return Err(NumericError::InvalidInput(format!("dimension {dim} is not even")));
        }
        Self::new(dim / 2, dim / 2)
    }

    pub fn dim(&self) -> usize {
        self.n_upper + self.n_lower
    }

    pub fn sign(&self, i: usize) -> f64 {
        if i < self.n_upper {
            1.0
        } else {
            -1.0
        }
    }

    pub fn matrix<T: Real>(&self) -> CMatrix<T> {
        let d = DVector::from_fn(self.dim(), |i, _| c(lit::<T>(self.sign(i))));
        CMatrix::from_diagonal(&d)
    }

    /// `βMβ` without a matrix product: flips the sign of the off-diagonal blocks.
    pub fn conjugate<T: Real>(&self, m: &CMatrix<T>) -> CMatrix<T> {
        CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
            if self.sign(i) == self.sign(j) {
                m[(i, j)]
            } else {
                -m[(i, j)]
            }
        })
    }

    pub fn even_part<T: Real>(&self, m: &CMatrix<T>) -> CMatrix<T> {
        CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
            if self.sign(i) == self.sign(j) {
                m[(i, j)]
            } else {
                c(T::zero())
            }
        })
    }

    pub fn odd_part<T: Real>(&self, m: &CMatrix<T>) -> CMatrix<T> {
        m - self.even_part(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HermiticityMode {
    /// `H = H†` (fermions).
    Hermitian,
    /// `H = βH†β` (bosons).
    BetaPseudoHermitian,
}

/// A finite block Hamiltonian `H = βmc² + E + O`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockHamiltonian<T: Real> {
    matrix: CMatrix<T>,
    beta: BetaStructure,
    mode: HermiticityMode,
    rest_energy: T,
}

/// Relative tolerance for the hermiticity check at construction.
const SYMMETRY_TOL: f64 = 1e-10;

impl<T: Real> BlockHamiltonian<T> {
    pub fn new(
        matrix: CMatrix<T>,
        beta: BetaStructure,
        mode: HermiticityMode,
        rest_energy: T,
    ) -> Result<Self, NumericError> {
        if !matrix.is_square() || matrix.nrows() != beta.dim() {
            return Err(NumericError::InvalidInput(format!(
                "matrix is {}x{}, block structure needs {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                beta.dim(),
                beta.dim()
            )));
        }
        if rest_energy <= T::zero() {
            return Err(NumericError::InvalidInput("rest energy must be positive".into()));
        }
        let partner = match mode {
            HermiticityMode::Hermitian => matrix.adjoint(),
            HermiticityMode::BetaPseudoHermitian => beta.conjugate(&matrix.adjoint()),
        };
        let scale = norm(&matrix).max(T::one());
        let residual = norm(&(&matrix - partner)) / scale;
        if residual > lit(SYMMETRY_TOL) {
            return Err(NumericError::SymmetryBroken { mode, residual: residual.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(BlockHamiltonian { matrix, beta, mode, rest_energy })
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn beta(&self) -> BetaStructure {
        self.beta
    }

    pub fn beta_matrix(&self) -> CMatrix<T> {
        self.beta.matrix()
    }

    pub fn mode(&self) -> HermiticityMode {
        self.mode
    }

    pub fn rest_energy(&self) -> T {
        self.rest_energy
    }

    pub fn dim(&self) -> usize {
        self.beta.dim()
    }

    /// `X‡`: the adjoint appropriate to the mode (`X†` or `βX†β`).
    pub fn adjoint(&self, x: &CMatrix<T>) -> CMatrix<T> {
        match self.mode {
            HermiticityMode::Hermitian => x.adjoint(),
            HermiticityMode::BetaPseudoHermitian => self.beta.conjugate(&x.adjoint()),
        }
    }

    /// `(E, O)` with `H = βmc² + E + O`, `E` even and `O` odd.
    pub fn split_even_odd(&self) -> (CMatrix<T>, CMatrix<T>) {
        let even = self.beta.even_part(&self.matrix);
        let odd = &self.matrix - &even;
        let e = even - self.beta_matrix() * c(self.rest_energy);
        (e, odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::linalg::max_abs;
    use num_complex::Complex;

    #[test]
    fn split_of_pure_mass_term_is_zero() {
        let beta = BetaStructure::symmetric(4).unwrap();
        let h = BlockHamiltonian::new(beta.matrix::<f64>() * c(2.0), beta, HermiticityMode::Hermitian, 2.0).unwrap();
        let (e, o) = h.split_even_odd();
        assert_eq!(max_abs(&e), 0.0);
        assert_eq!(max_abs(&o), 0.0);
    }

    #[test]
    fn split_reconstructs_and_respects_parity() {
        let beta = BetaStructure::new(1, 2).unwrap();
        let m = CMatrix::<f64>::from_fn(3, 3, |i, j| {
            let v = Complex::new((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.2);
            if i == j {
                Complex::new(v.re, 0.0)
            } else {
                v
            }
        });
        let m = (&m + m.adjoint()) * c(0.5);
        let h = BlockHamiltonian::new(m.clone(), beta, HermiticityMode::Hermitian, 1.0).unwrap();
        let (e, o) = h.split_even_odd();
        let b = h.beta_matrix();
        assert_eq!(&b * c(1.0) + &e + &o, m);
        assert!(max_abs(&(&b * &e - &e * &b)) < 1e-15);
        assert!(max_abs(&(&b * &o + &o * &b)) < 1e-15);
    }

    #[test]
    fn rejects_broken_symmetry() {
        let beta = BetaStructure::symmetric(2).unwrap();
        let mut m = beta.matrix::<f64>();
        m[(0, 1)] = c(0.5);
        assert!(matches!(
            BlockHamiltonian::new(m.clone(), beta, HermiticityMode::Hermitian, 1.0),
            Err(NumericError::SymmetryBroken { .. })
        ));
        // β-pseudo-Hermitian needs m[(1,0)] = −conj(m[(0,1)])
        m[(1, 0)] = c(-0.5);
        assert!(BlockHamiltonian::new(m, beta, HermiticityMode::BetaPseudoHermitian, 1.0).is_ok());
        assert!(BetaStructure::symmetric(3).is_err());
    }
}
