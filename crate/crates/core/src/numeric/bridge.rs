//! Evaluation of symbolic expressions on concrete models.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::hamiltonian::BlockHamiltonian;
use super::linalg::{c, identity, norm, CMatrix};
use super::models::{make_model, ModelSpec};
use super::transform::Transform;
use super::{NumericError, Tolerances};
use crate::algebra::{Letter, OperatorExpr};
use crate::scalar::{lit, Coeff, Real};
use crate::symbolic::{s_fw_series, SeriesOrder};

/// Substitutes `β`, `E`, `O` by the model's matrices and `μ` by `1/mc²`.
pub fn evaluate_symbolic<R: Coeff, T: Real>(x: &OperatorExpr<R>, h: &BlockHamiltonian<T>) -> CMatrix<T> {
    let n = h.dim();
    let beta = h.beta_matrix();
    let (e, o) = h.split_even_odd();
    let mu = T::one() / h.rest_energy();
    let mut out = CMatrix::<T>::zeros(n, n);
    for (m, coeff) in x.terms() {
        let mut term = if m.beta { beta.clone() } else { identity::<T>(n) };
        for l in &m.word {
            term = match l {
                Letter::E => term * &e,
                Letter::O => term * &o,
            };
        }
        let re = lit::<T>(coeff.re.to_f64().unwrap_or(f64::NAN));
        let im = lit::<T>(coeff.im.to_f64().unwrap_or(f64::NAN));
        out += term * (Complex::new(re, im) * c(mu.powi(m.mu)));
    }
    out
}

/// Result of [`convergence_order`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Convergence {
    /// `log₂(r(s)/r(s/2))`.
    Order { measured: f64, residual: f64, residual_half: f64 },
    /// Raising the order by one does not reduce the residual at this scale,
    /// or the residual is as large as `S_FW` itself.
    Diverged { residual: f64, next_order_residual: f64, relative: f64 },
    /// `r(s/2)` is at round-off level, so no order can be measured.
    NoiseFloor { residual: f64, residual_half: f64 },
}

impl Convergence {
    pub fn measured(&self) -> Option<f64> {
        match *self {
            Convergence::Order { measured, .. } => Some(measured),
            _ => None,
        }
    }
}

/// Relative residual below which `r(s/2)` counts as round-off.
const NOISE_FLOOR: f64 = 1e-13;

fn residual<T: Real>(spec: &ModelSpec, series: &[OperatorExpr<f64>]) -> Result<(Vec<T>, T), NumericError> {
    let h = make_model::<T>(spec)?;
    let exact = Transform::new(&h, Tolerances::for_precision::<T>())?.s_fw()?;
    let res = series.iter().map(|s| norm(&(evaluate_symbolic(s, &h) - &exact))).collect();
    Ok((res, norm(&exact)))
}

/// Truncation-error order of `s_fw_series(order)` against the exact `S_FW`,
/// measured between the spec's scale `s` and `s/2`.
pub fn convergence_order<T: Real>(spec: &ModelSpec, order: SeriesOrder) -> Result<Convergence, NumericError> {
    let scale = match spec {
        ModelSpec::RandomBlock { scale, .. } | ModelSpec::Spin1Pseudo { scale, .. } => *scale,
        _ => return Err(NumericError::InvalidInput(format!("{} has no perturbation scale", spec.kind()))),
    };
    if order.get() == 0 {
        return Err(NumericError::InvalidInput("series order must be at least 1".into()));
    }
    let series = [s_fw_series::<f64>(order), s_fw_series::<f64>(SeriesOrder(order.get() + 1))];
    let f = |x: T| x.to_f64().unwrap_or(f64::NAN);

    let (r, s_norm) = residual::<T>(spec, &series)?;
    let (r_n, r_next) = (f(r[0]), f(r[1]));
    let relative = r_n / f(s_norm).max(f64::MIN_POSITIVE);
    if relative >= 1.0 || r_next >= r_n {
        return Ok(Convergence::Diverged { residual: r_n, next_order_residual: r_next, relative });
    }

    let half = spec.with_scale(scale * 0.5).expect("scaled spec");
    let (r2, s2_norm) = residual::<T>(&half, &series[..1])?;
    let r_half = f(r2[0]);
    let floor = NOISE_FLOOR.max(100.0 * T::eps().to_f64().unwrap_or(f64::EPSILON));
    if r_half <= floor * f(s2_norm).max(1.0) {
        return Ok(Convergence::NoiseFloor { residual: r_n, residual_half: r_half });
    }
    Ok(Convergence::Order { measured: (r_n / r_half).log2(), residual: r_n, residual_half: r_half })
}
