//! Semirelativistic series for the exact exponential FW operator.
//!
//! The Hamiltonian is `H = μ⁻¹β + E + O` with `μ = 1/(mc²)`. All results are
//! formal power series in `μ`, truncated at the requested order.

use num_complex::Complex;

use super::series::{arcsin_series, bch, exp_series, inv_sqrt_series, sqrt_series, SeriesError, SeriesOrder};
use crate::algebra::OperatorExpr;
use crate::scalar::{c_imag, c_real, frac, Coeff};

type X<R> = OperatorExpr<R>;

/// `H = μ⁻¹β + E + O`.
pub fn hamiltonian<R: Coeff>() -> X<R> {
    X::mu(-1).multiply(&X::beta()).add(&X::e()).add(&X::o())
}

/// `x` with `H² = μ⁻²(1 + x)`: `x = 2μβE + μ²(O² + E² + {O,E})`.
pub fn h_squared_deviation<R: Coeff>() -> X<R> {
    let (e, o) = (X::<R>::e(), X::<R>::o());
    let first = X::mu(1).multiply(&X::beta()).multiply(&e).scale(&c_real(2, 1));
    let second = o.multiply(&o).add(&e.multiply(&e)).add(&o.anticommutator(&e));
    first.add(&X::mu(2).multiply(&second))
}

/// Even and odd corrections in `(H²)^{-1/2} = μ(1 + q_E + q_O)`.
pub fn q_parts<R: Coeff>(order: SeriesOrder) -> (X<R>, X<R>) {
    let x = h_squared_deviation::<R>();
    let series = inv_sqrt_series(&x, order).expect("deviation is graded at mu^1");
    let q = series.sub(&X::one());
    (q.even_part(), q.odd_part())
}

/// `λ = ½{H, (H²)^{-1/2}}` through `μ^order`.
pub fn lambda_full<R: Coeff>(order: SeriesOrder) -> X<R> {
    let (qe, qo) = q_parts::<R>(order);
    let inv = X::mu(1).multiply(&X::one().add(&qe).add(&qo));
    hamiltonian::<R>()
        .anticommutator(&inv)
        .scale(&c_real(1, 2))
        .truncate(order.cap())
}

/// `(λ − βλβ)/2 = (μ/2)[2O + {E, q_O} + {O, q_E}]` through `μ^order`.
pub fn lambda_odd<R: Coeff>(order: SeriesOrder) -> X<R> {
    let (qe, qo) = q_parts::<R>(order);
    let (e, o) = (X::<R>::e(), X::<R>::o());
    let inner = o
        .scale(&c_real(2, 1))
        .add(&e.anticommutator(&qo))
        .add(&o.anticommutator(&qe));
    X::mu(1).multiply(&inner).scale(&c_real(1, 2)).truncate(order.cap())
}

/// `S_FW = −(iβ/2) arcsin((λ − βλβ)/2)` through `μ^order`.
pub fn s_fw_series<R: Coeff>(order: SeriesOrder) -> X<R> {
    let arg = lambda_odd::<R>(order);
    let asin = arcsin_series(&arg, order).expect("odd part of lambda starts at mu^1");
    X::beta().multiply(&asin).scale(&c_imag(-1, 2)).truncate(order.cap())
}

/// Nested-commutator series `H + i[S,H] + (i²/2!)[S,[S,H]] + …` for a
/// stationary Hamiltonian, truncated at `μ^order`.
pub fn fw_hamiltonian_series<R: Coeff>(s: &X<R>, order: SeriesOrder) -> Result<X<R>, SeriesError> {
    let h = hamiltonian::<R>();
    let cap = order.cap();
    let Some(s_min) = s.min_mu() else {
        return Ok(h.truncate(cap));
    };
    if s_min < 1 {
        return Err(SeriesError::Ungraded { min_mu: s_min });
    }
    let mut out = h.truncate(cap);
    let mut nested = h;
    // i^k / k!
    let mut weight: Complex<R> = Complex::new(R::one(), R::zero());
    let mut k: i64 = 0;
    loop {
        k += 1;
        nested = s.commutator_upto(&nested, Some(cap));
        if nested.is_zero() {
            break;
        }
        weight = weight * Complex::new(R::zero(), frac::<R>(1, k));
        out = out.add(&nested.scale(&weight));
    }
    Ok(out)
}

/// The three generators of the original iterative method.
#[derive(Debug, Clone, PartialEq)]
pub struct FwIterates<R: Coeff> {
    pub s: X<R>,
    pub s_prime: X<R>,
    pub s_double_prime: X<R>,
}

pub fn fw1950_iterates<R: Coeff>() -> FwIterates<R> {
    let (beta, e, o) = (X::<R>::beta(), X::<R>::e(), X::<R>::o());
    let oe = o.commutator(&e);
    let s = X::mu(1).multiply(&beta).multiply(&o).scale(&c_imag(-1, 2));
    let s_prime = X::mu(2)
        .multiply(&oe)
        .scale(&c_imag(-1, 4))
        .add(&X::mu(3).multiply(&beta).multiply(&o.pow(3)).scale(&c_imag(1, 6)));
    let s_double_prime = X::mu(3).multiply(&beta).multiply(&oe.commutator(&e)).scale(&c_imag(-1, 8));
    FwIterates { s, s_prime, s_double_prime }
}

/// Single exponent `𝔖` with `exp(iS″)exp(iS′)exp(iS) = exp(i𝔖)`.
pub fn fw1950_compose<R: Coeff>(order: SeriesOrder) -> Result<X<R>, SeriesError> {
    if order.get() < 3 {
        return Err(SeriesError::OrderTooLow { required: 3, got: order.get() });
    }
    let it = fw1950_iterates::<R>();
    let i = c_imag::<R>(1, 1);
    let inner = bch(&it.s_prime.scale(&i), &it.s.scale(&i), order)?;
    let outer = bch(&it.s_double_prime.scale(&i), &inner, order)?;
    Ok(outer.scale(&c_imag(-1, 1)))
}

/// `U = (1 + √(1−σ²) + βσ) / √(2(1 + √(1−σ²)))` with `σ = (λ − βλβ)/2`.
pub fn u_from_sin_series<R: Coeff>(order: SeriesOrder) -> X<R> {
    let cap = Some(order.cap());
    let sigma = lambda_odd::<R>(order);
    let sigma2 = sigma.mul_upto(&sigma, cap);
    let cos = sqrt_series(&sigma2.neg(), order).expect("sigma² is graded");
    // 2(1 + C) = 4(1 + (C − 1)/2)
    let half_dev = cos.sub(&X::one()).scale(&c_real(1, 2));
    let inv_den = inv_sqrt_series(&half_dev, order).expect("graded").scale(&c_real(1, 2));
    let num = X::one().add(&cos).add(&X::beta().multiply(&sigma));
    num.mul_upto(&inv_den, cap)
}

/// Eriksen operator `(1 + βλ)/√(2 + βλ + λβ)` as a series.
pub fn eriksen_series<R: Coeff>(order: SeriesOrder) -> X<R> {
    let cap = Some(order.cap());
    let lam = lambda_full::<R>(order);
    let bl = X::beta().multiply(&lam);
    let lb = lam.multiply(&X::beta());
    // 2 + βλ + λβ = 4(1 + (βλ + λβ − 2)/4)
    let dev = bl.add(&lb).sub(&X::one().scale(&c_real(2, 1))).scale(&c_real(1, 4));
    let inv_den = inv_sqrt_series(&dev, order).expect("graded").scale(&c_real(1, 2));
    X::one().add(&bl).mul_upto(&inv_den, cap)
}

/// `exp(i S_FW)` through `μ^order`.
pub fn u_exponential_series<R: Coeff>(order: SeriesOrder) -> X<R> {
    let s = s_fw_series::<R>(order);
    exp_series(&s.scale(&c_imag(1, 1)), order).expect("S_FW is graded")
}

/// Outcome of comparing a proposed exponential generator with `S_FW`.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodVerification<R: Coeff> {
    pub order: SeriesOrder,
    pub candidate: X<R>,
    pub reference: X<R>,
    /// `candidate − S_FW`, truncated.
    pub residual: X<R>,
    /// Lowest `μ`-degree carrying a nonzero residual.
    pub lowest_order: Option<i32>,
    pub lowest_terms: X<R>,
}

impl<R: Coeff> MethodVerification<R> {
    pub fn is_fw(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn verify_exponential_method<R: Coeff>(candidate: &X<R>, order: SeriesOrder) -> MethodVerification<R> {
    let cap = order.cap();
    let reference = s_fw_series::<R>(order);
    let candidate = candidate.truncate(cap);
    let residual = candidate.sub(&reference);
    let lowest_order = residual.min_mu();
    let lowest_terms = lowest_order.map(|k| residual.grade(k)).unwrap_or_else(X::zero);
    MethodVerification { order, candidate, reference, residual, lowest_order, lowest_terms }
}

/// `true` when the expression has no term at or below `μ^order`.
pub fn vanishes_through<R: Coeff>(x: &X<R>, order: i32) -> bool {
    x.truncate(order).is_zero()
}
