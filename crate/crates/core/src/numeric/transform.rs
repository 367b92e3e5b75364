use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::hamiltonian::{BlockHamiltonian, HermiticityMode};
use super::linalg::{c, cabs, commutator, hermitize, identity, norm, CMatrix, GeneralEigen, HermitianEigen};
use super::{NumericError, Tolerances};
use crate::scalar::{lit, Real};

/// One residual and the bound it must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub value: f64,
    pub tolerance: f64,
}

impl Diagnostic {
    pub fn passed(&self) -> bool {
        self.value.is_finite() && self.value <= self.tolerance
    }
}

/// Output of [`fw_transform`](Transform::run).
#[derive(Debug, Clone)]
pub struct TransformResult<T: Real> {
    /// Eriksen operator `U_E`.
    pub u: CMatrix<T>,
    pub s_fw: CMatrix<T>,
    /// `U H U⁻¹`.
    pub h_fw: CMatrix<T>,
    pub diagnostics: BTreeMap<String, Diagnostic>,
    /// Non-residual quantities (conditioning, branch margin, ...).
    pub info: BTreeMap<String, f64>,
}

impl<T: Real> TransformResult<T> {
    pub fn passed(&self) -> bool {
        self.diagnostics.values().all(Diagnostic::passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.diagnostics.iter().filter(|(_, d)| !d.passed()).map(|(k, _)| k.as_str()).collect()
    }

    pub fn diagnostic(&self, name: &str) -> f64 {
        self.diagnostics.get(name).map_or(f64::NAN, |d| d.value)
    }
}

/// Spectral data of `sin 2Θ = (λ − βλβ)/2`.
///
/// Hermitian mode stores the eigenvalues `σ` of `sin 2Θ` itself. In
/// pseudo-Hermitian mode `sin 2Θ` is anti-Hermitian and the decomposition is
/// of `y = −i sin 2Θ`, so that `σ = iy`.
struct SinSpectrum<T: Real> {
    eig: HermitianEigen<T>,
    pseudo: bool,
}

/// The exact transformation of one Hamiltonian, with `λ` computed once.
pub struct Transform<'a, T: Real> {
    h: &'a BlockHamiltonian<T>,
    tol: Tolerances,
    beta: CMatrix<T>,
    lambda: CMatrix<T>,
    conditioning: f64,
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `‖res‖ / ‖reference‖`, falling back to the absolute norm for a zero reference.
fn rel<T: Real>(res: &CMatrix<T>, reference: &CMatrix<T>) -> f64 {
    let r = norm(reference);
    let n = norm(res);
    f(if r > T::zero() { n / r } else { n })
}

impl<'a, T: Real> Transform<'a, T> {
    pub fn new(h: &'a BlockHamiltonian<T>, tol: Tolerances) -> Result<Self, NumericError> {
        let (lambda, conditioning) = match h.mode() {
            HermiticityMode::Hermitian => {
                let eig = HermitianEigen::new(h.matrix());
                let radius = eig.values.iter().fold(T::zero(), |a, v| a.max(v.abs()));
                let min_abs = eig.values.iter().fold(radius, |a, v| a.min(v.abs()));
                check_gap(min_abs, radius, &tol)?;
                (eig.apply(|x| c(x.signum())), 1.0)
            }
            HermiticityMode::BetaPseudoHermitian => {
                let eig = GeneralEigen::new(h.matrix())?;
                let radius = eig.values.iter().fold(T::zero(), |a, v| a.max(cabs(*v)));
                let max_imag = eig.max_imag();
                if max_imag > lit::<T>(tol.real_spectrum) * radius.max(T::one()) {
                    return Err(NumericError::ComplexSpectrum { max_imag: f(max_imag) });
                }
                let min_abs = eig.values.iter().fold(radius, |a, v| a.min(cabs(*v)));
                check_gap(min_abs, radius, &tol)?;
                (eig.apply(|z| c(z.re.signum())), f(eig.conditioning()))
            }
        };
        Ok(Transform { h, tol, beta: h.beta_matrix(), lambda, conditioning })
    }

    pub fn hamiltonian(&self) -> &BlockHamiltonian<T> {
        self.h
    }

    /// Sign operator `λ = H/(H²)^{1/2}`.
    pub fn lambda(&self) -> &CMatrix<T> {
        &self.lambda
    }

    /// Condition number of the eigenvector basis used for `λ` (1 in Hermitian mode).
    pub fn conditioning(&self) -> f64 {
        self.conditioning
    }

    fn beta_lambda(&self) -> CMatrix<T> {
        &self.beta * &self.lambda
    }

    fn lambda_beta(&self) -> CMatrix<T> {
        &self.lambda * &self.beta
    }

    /// `2 + βλ + λβ`, Hermitian in both modes.
    pub fn denominator(&self) -> CMatrix<T> {
        identity::<T>(self.h.dim()) * c(lit::<T>(2.0)) + self.beta_lambda() + self.lambda_beta()
    }

    /// `U_E = (1 + βλ)(2 + βλ + λβ)^{−1/2}`.
    pub fn eriksen_u(&self) -> Result<CMatrix<T>, NumericError> {
        Ok(self.eriksen_with_min()?.0)
    }

    fn eriksen_with_min(&self) -> Result<(CMatrix<T>, T), NumericError> {
        let eig = HermitianEigen::new(&self.denominator());
        let min_eig = eig.values.iter().fold(T::max_value().unwrap_or(T::one()), |a, &v| a.min(v));
        if min_eig < lit(self.tol.denominator) {
            return Err(NumericError::NonPositiveDenominator { min_eig: f(min_eig) });
        }
        let inv_sqrt = eig.apply(|x| c(T::one() / x.sqrt()));
        let u = (identity::<T>(self.h.dim()) + self.beta_lambda()) * inv_sqrt;
        Ok((u, min_eig))
    }

    /// `sin 2Θ = (λ − βλβ)/2`, the odd part of `λ`.
    pub fn sin_two_theta(&self) -> CMatrix<T> {
        self.h.beta().odd_part(&self.lambda)
    }

    fn sin_spectrum(&self) -> Result<SinSpectrum<T>, NumericError> {
        let s = self.sin_two_theta();
        match self.h.mode() {
            HermiticityMode::Hermitian => {
                let eig = HermitianEigen::new(&s);
                let max_abs = eig.values.iter().fold(T::zero(), |a, v| a.max(v.abs()));
                if max_abs > T::one() + lit(self.tol.clamp) {
                    return Err(NumericError::SpectrumOutOfRange { max_abs: f(max_abs) });
                }
                Ok(SinSpectrum { eig, pseudo: false })
            }
            HermiticityMode::BetaPseudoHermitian => {
                let y = &s * Complex::new(T::zero(), -T::one());
                Ok(SinSpectrum { eig: HermitianEigen::new(&y), pseudo: true })
            }
        }
    }

    fn u_from_spectrum(&self, sp: &SinSpectrum<T>) -> CMatrix<T> {
        let half = lit::<T>(0.5);
        let two = lit::<T>(2.0);
        let (g, y) = if sp.pseudo {
            let g = sp.eig.apply(|y| c(((T::one() + (T::one() + y * y).sqrt()) * half).sqrt()));
            let y = sp.eig.apply(|y| Complex::new(T::zero(), y / (two * (T::one() + (T::one() + y * y).sqrt())).sqrt()));
            (g, y)
        } else {
            let cos = |s: T| (T::one() - clamp(s) * clamp(s)).max(T::zero()).sqrt();
            let g = sp.eig.apply(|s| c(((T::one() + cos(s)) * half).sqrt()));
            let y = sp.eig.apply(|s| c(clamp(s) / (two * (T::one() + cos(s))).sqrt()));
            (g, y)
        };
        g + &self.beta * y
    }

    /// `U = (1 + √(1 − sin²2Θ) + β sin2Θ) / √(2(1 + √(1 − sin²2Θ)))`.
    pub fn u_from_sin(&self) -> Result<CMatrix<T>, NumericError> {
        Ok(self.u_from_spectrum(&self.sin_spectrum()?))
    }

    fn s_from_spectrum(&self, sp: &SinSpectrum<T>) -> CMatrix<T> {
        let half = lit::<T>(0.5);
        if sp.pseudo {
            // arcsin(iy) = i·asinh(y), so −(i/2)β·arcsin = ½β·asinh(y)
            &self.beta * sp.eig.apply(|y| c(y.asinh() * half))
        } else {
            &self.beta * sp.eig.apply(|s| Complex::new(T::zero(), -half * clamp(s).asin()))
        }
    }

    /// `S_FW = −(iβ/2) arcsin((λ − βλβ)/2)`.
    pub fn s_fw(&self) -> Result<CMatrix<T>, NumericError> {
        Ok(self.s_from_spectrum(&self.sin_spectrum()?))
    }

    /// `exp(iS)` by spectral calculus on a Hermitian form of `S`.
    pub fn exp_i(&self, s: &CMatrix<T>) -> CMatrix<T> {
        match self.h.mode() {
            HermiticityMode::Hermitian => {
                HermitianEigen::new(s).apply(|x| Complex::new(x.cos(), x.sin()))
            }
            // S is anti-Hermitian here, so iS is Hermitian
            HermiticityMode::BetaPseudoHermitian => {
                HermitianEigen::new(&(s * Complex::new(T::zero(), T::one()))).apply(|x| c(x.exp()))
            }
        }
    }

    /// `U⁻¹`: `U†` or `βU†β`.
    pub fn inverse(&self, u: &CMatrix<T>) -> CMatrix<T> {
        self.h.adjoint(u)
    }

    pub fn run(&self) -> Result<TransformResult<T>, NumericError> {
        let n = self.h.dim();
        let nf = n as f64;
        let one = identity::<T>(n);
        let beta = &self.beta;
        let lam = &self.lambda;
        let hm = self.h.matrix();
        let (u, min_den) = self.eriksen_with_min()?;
        let sp = self.sin_spectrum()?;
        let u_sin = self.u_from_spectrum(&sp);
        let s = self.s_from_spectrum(&sp);
        let sin = self.sin_two_theta();
        let u_inv = self.inverse(&u);
        let h_fw = &u * hm * &u_inv;

        let tol = &self.tol;
        let mut diagnostics = BTreeMap::new();
        let mut put = |name: &str, value: f64, tolerance: f64| {
            diagnostics.insert(name.to_string(), Diagnostic { value, tolerance });
        };

        put("lambda_squared", rel(&(lam * lam - &one), &one), tol.strict * nf);
        put("lambda_commute", rel(&commutator(&self.beta_lambda(), &self.lambda_beta()), &one), tol.strict * nf);
        let bl = self.beta_lambda() + self.lambda_beta();
        let quarter = c(lit::<T>(0.25));
        put("eq21", rel(&(&bl * &bl * quarter - (&one - &sin * &sin)), &one), tol.strict * nf);

        match self.h.mode() {
            HermiticityMode::Hermitian => {
                put("unitarity", rel(&(u.adjoint() * &u - &one), &one), tol.strict);
            }
            HermiticityMode::BetaPseudoHermitian => {
                let value = match u.clone().try_inverse() {
                    Some(inv) => rel(&(u.adjoint() - beta * inv * beta), &u),
                    None => f64::INFINITY,
                };
                put("pseudounitarity", value, tol.check);
            }
        }
        put("eriksen_condition", rel(&(beta * &u - self.h.adjoint(&u) * beta), &u), tol.strict);
        put("sin_vs_eriksen", rel(&(&u_sin - &u), &u), tol.check);
        put("exp_vs_eriksen", rel(&(self.exp_i(&s) - &u), &u), tol.check);
        put("sfw_odd", rel(&(beta * &s + &s * beta), &s), tol.strict);
        put("sfw_hermiticity", rel(&(&s - self.h.adjoint(&s)), &s), tol.strict);
        put("off_block", rel(&self.h.beta().odd_part(&h_fw), hm), tol.check);
        put("beta_commutator", rel(&commutator(&h_fw, beta), hm), tol.check);

        let (spec_h, spec_fw) = self.spectra(&h_fw)?;
        let radius = spec_h.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        let spectrum = spec_h.iter().zip(&spec_fw).fold(0.0f64, |a, (x, y)| a.max((x - y).abs())) / radius;
        put("spectrum", spectrum, tol.check);

        let even_u = HermitianEigen::new(&self.h.beta().even_part(&u));
        let even_min = even_u.values.iter().fold(f64::INFINITY, |a, &v| a.min(f(v)));
        put("branch", (std::f64::consts::FRAC_1_SQRT_2 - even_min).max(0.0), tol.check);

        let mut info = BTreeMap::new();
        info.insert("even_u_min_eig".to_string(), even_min);
        info.insert("conditioning".to_string(), self.conditioning);
        info.insert("min_denominator_eig".to_string(), f(min_den));
        let max_sin = sp.eig.values.iter().fold(0.0f64, |a, &v| a.max(f(v).abs()));
        info.insert("max_abs_sin_two_theta".to_string(), max_sin);

        Ok(TransformResult { u, s_fw: s, h_fw, diagnostics, info })
    }

    /// Sorted real spectra of `H` and of `H_FW`.
    fn spectra(&self, h_fw: &CMatrix<T>) -> Result<(Vec<f64>, Vec<f64>), NumericError> {
        let sorted = |mut v: Vec<f64>| {
            v.sort_by(f64::total_cmp);
            v
        };
        match self.h.mode() {
            HermiticityMode::Hermitian => Ok((
                sorted(HermitianEigen::new(self.h.matrix()).values.into_iter().map(f).collect()),
                sorted(HermitianEigen::new(&hermitize(h_fw)).values.into_iter().map(f).collect()),
            )),
            HermiticityMode::BetaPseudoHermitian => {
                let re = |m: &CMatrix<T>| -> Result<Vec<f64>, NumericError> {
                    Ok(sorted(GeneralEigen::new(m)?.values.into_iter().map(|z| f(z.re)).collect()))
                };
                Ok((re(self.h.matrix())?, re(h_fw)?))
            }
        }
    }
}

fn clamp<T: Real>(s: T) -> T {
    s.max(-T::one()).min(T::one())
}

fn check_gap<T: Real>(min_abs: T, radius: T, tol: &Tolerances) -> Result<(), NumericError> {
    let threshold = lit::<T>(tol.singular) * radius;
    if min_abs <= threshold {
        return Err(NumericError::NearSingular { min_abs: f(min_abs), threshold: f(threshold) });
    }
    Ok(())
}

fn default_transform<T: Real>(h: &BlockHamiltonian<T>) -> Result<Transform<'_, T>, NumericError> {
    Transform::new(h, Tolerances::for_precision::<T>())
}

pub fn sign_lambda<T: Real>(h: &BlockHamiltonian<T>) -> Result<CMatrix<T>, NumericError> {
    Ok(default_transform(h)?.lambda)
}

pub fn eriksen_u<T: Real>(h: &BlockHamiltonian<T>) -> Result<CMatrix<T>, NumericError> {
    default_transform(h)?.eriksen_u()
}

pub fn sin_two_theta<T: Real>(h: &BlockHamiltonian<T>) -> Result<CMatrix<T>, NumericError> {
    Ok(default_transform(h)?.sin_two_theta())
}

pub fn u_from_sin<T: Real>(h: &BlockHamiltonian<T>) -> Result<CMatrix<T>, NumericError> {
    default_transform(h)?.u_from_sin()
}

pub fn s_fw_exact<T: Real>(h: &BlockHamiltonian<T>) -> Result<CMatrix<T>, NumericError> {
    default_transform(h)?.s_fw()
}

/// Full transformation with default tolerances.
pub fn fw_transform<T: Real>(h: &BlockHamiltonian<T>) -> Result<TransformResult<T>, NumericError> {
    default_transform(h)?.run()
}
