//! Spectral calculus on complex matrices.
//!
//! Hermitian matrices go through `SymmetricEigen`. Diagonalizable non-normal
//! matrices (the β-pseudo-Hermitian case) go through a complex Schur form
//! followed by triangular back-substitution for the eigenvectors.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex;

use super::NumericError;
use crate::scalar::{lit, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;

pub fn c<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Modulus of a complex scalar.
pub fn cabs<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

pub fn dagger<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    m.adjoint()
}

/// Frobenius norm.
pub fn norm<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(cabs(*z)))
}

pub fn commutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b - b * a
}

pub fn anticommutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b + b * a
}

/// `(M + M†)/2`, removing round-off asymmetry before a Hermitian solve.
pub fn hermitize<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()) * c(lit::<T>(0.5))
}

pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn new(m: &CMatrix<T>) -> Self {
        let eig = SymmetricEigen::new(hermitize(m));
        HermitianEigen { values: eig.eigenvalues.iter().copied().collect(), vectors: eig.eigenvectors }
    }

    /// `V diag(f(λ)) V†`.
    pub fn apply(&self, f: impl Fn(T) -> Complex<T>) -> CMatrix<T> {
        let v = &self.vectors;
        let mut scaled = v.clone();
        for (j, &x) in self.values.iter().enumerate() {
            let fx = f(x);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fx);
        }
        scaled * v.adjoint()
    }

    pub fn sorted_values(&self) -> Vec<T> {
        let mut vals = self.values.clone();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        vals
    }
}

pub fn hermitian_apply<T: Real>(m: &CMatrix<T>, f: impl Fn(T) -> Complex<T>) -> CMatrix<T> {
    HermitianEigen::new(m).apply(f)
}

/// Eigendecomposition `M = V diag(λ) V⁻¹` of a diagonalizable matrix.
pub struct GeneralEigen<T: Real> {
    pub values: Vec<Complex<T>>,
    pub vectors: CMatrix<T>,
    pub inverse: CMatrix<T>,
}

impl<T: Real> GeneralEigen<T> {
    pub fn new(m: &CMatrix<T>) -> Result<Self, NumericError> {
        let n = m.nrows();
        let schur = Schur::try_new(m.clone(), T::eps(), 10_000 * n.max(1))
            .ok_or(NumericError::DecompositionFailed("Schur iteration did not converge"))?;
        let (q, t) = schur.unpack();
        let values: Vec<Complex<T>> = (0..n).map(|k| t[(k, k)]).collect();
        // smallest pivot used in back-substitution for (near-)repeated eigenvalues
        let smin = (T::eps() * norm(m)).max(T::eps() * T::eps());
        let mut y = CMatrix::<T>::zeros(n, n);
        for k in 0..n {
            y[(k, k)] = c(T::one());
            for j in (0..k).rev() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for l in (j + 1)..=k {
                    acc += t[(j, l)] * y[(l, k)];
                }
                let mut den = t[(j, j)] - values[k];
                if cabs(den) < smin {
                    den = c(smin);
                }
                y[(j, k)] = -acc / den;
            }
            let nk = y.column(k).norm();
            y.column_mut(k).iter_mut().for_each(|z| *z /= c(nk));
        }
        let vectors = q * y;
        let inverse = vectors
            .clone()
            .try_inverse()
            .ok_or(NumericError::DecompositionFailed("eigenvector matrix is singular"))?;
        Ok(GeneralEigen { values, vectors, inverse })
    }

    pub fn apply(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> CMatrix<T> {
        let mut scaled = self.vectors.clone();
        for (j, &x) in self.values.iter().enumerate() {
            let fx = f(x);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fx);
        }
        scaled * &self.inverse
    }

    /// Condition number `‖V‖‖V⁻¹‖` (Frobenius) of the eigenvector basis.
    pub fn conditioning(&self) -> T {
        norm(&self.vectors) * norm(&self.inverse)
    }

    pub fn max_imag(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, z| acc.max(z.im.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: [[f64; 2]; 2]) -> CMatrix<f64> {
        CMatrix::from_fn(2, 2, |i, j| c(a[i][j]))
    }

    #[test]
    fn hermitian_square_root() {
        let a = m2([[2.0, 1.0], [1.0, 2.0]]);
        let r = hermitian_apply(&a, |x| c(x.sqrt()));
        assert!(norm(&(&r * &r - &a)) < 1e-14);
    }

    #[test]
    fn general_eigen_of_non_normal_matrix() {
        // upper triangular, non-normal, eigenvalues 1 and 3
        let a = m2([[1.0, 5.0], [0.0, 3.0]]);
        let eig = GeneralEigen::new(&a).unwrap();
        let back = eig.apply(|z| z);
        assert!(norm(&(back - &a)) < 1e-13);
        let sq = eig.apply(|z| z * z);
        assert!(norm(&(sq - &a * &a)) < 1e-12);
        assert!(eig.max_imag() < 1e-14);
        assert!(eig.conditioning() > 2.0);
    }

    #[test]
    fn general_eigen_complex_entries() {
        let a = CMatrix::from_row_slice(
            3,
            3,
            &[
                Complex::new(1.0, 0.5), Complex::new(0.2, -0.1), Complex::new(0.0, 0.3),
                Complex::new(-0.4, 0.0), Complex::new(2.0, 0.0), Complex::new(0.1, 0.1),
                Complex::new(0.3, -0.2), Complex::new(0.0, 0.0), Complex::new(-1.0, 0.2),
            ],
        );
        let eig = GeneralEigen::new(&a).unwrap();
        assert!(norm(&(eig.apply(|z| z) - &a)) < 1e-13);
        let exp_a = eig.apply(|z| z.exp());
        let exp_minus = eig.apply(|z| (-z).exp());
        assert!(norm(&(exp_a * exp_minus - identity::<f64>(3))) < 1e-12);
    }
}
