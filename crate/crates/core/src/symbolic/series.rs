//! Truncated power series of graded operator expressions.
//!
//! Every argument must have all of its terms at `μ¹` or above, so the
//! `k`-th power starts at `μᵏ` and each series is a finite sum once
//! truncated. Powers of a single expression commute, which makes Horner
//! evaluation valid in the noncommutative setting.

use num_complex::Complex;

use thiserror::Error;

use crate::algebra::OperatorExpr;
use crate::scalar::{frac, Coeff};

/// Highest `μ`-power retained by a series computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeriesOrder(pub u32);

impl SeriesOrder {
    pub fn new(n: u32) -> Self {
        SeriesOrder(n)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn cap(self) -> i32 {
        self.0 as i32
    }
}

impl From<u32> for SeriesOrder {
    fn from(n: u32) -> Self {
        SeriesOrder(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series argument has a term at mu^{min_mu}; every term must be at mu^1 or higher")]
    Ungraded { min_mu: i32 },
    #[error("logarithm argument must have constant term exactly 1")]
    ConstantTermNotOne,
    #[error("operation requires order >= {required}, got {got}")]
    OrderTooLow { required: u32, got: u32 },
}

fn check_graded<R: Coeff>(x: &OperatorExpr<R>) -> Result<(), SeriesError> {
    match x.min_mu() {
        Some(m) if m < 1 => Err(SeriesError::Ungraded { min_mu: m }),
        _ => Ok(()),
    }
}

/// `Σ_{k=0}^{n} c_k x^k` truncated at `μⁿ`, by Horner's rule.
fn power_series<R: Coeff>(x: &OperatorExpr<R>, coeffs: &[R], order: SeriesOrder) -> OperatorExpr<R> {
    let cap = Some(order.cap());
    let mut acc = OperatorExpr::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul_upto(x, cap);
        acc = acc.add(&OperatorExpr::scalar(Complex::new(c.clone(), R::zero())));
    }
    acc.truncate(order.cap())
}

/// Taylor coefficients of `(1+t)^a` up to `tⁿ`.
fn binomial_coeffs<R: Coeff>(a: R, n: u32) -> Vec<R> {
    let mut out = vec![R::one()];
    for k in 1..=n as i64 {
        let prev = out.last().cloned().unwrap();
        let next = prev * (a.clone() - frac::<R>(k - 1, 1)) / frac::<R>(k, 1);
        out.push(next);
    }
    out
}

/// `(1+x)^a` for a rational exponent `a`.
pub fn binomial_series<R: Coeff>(
    x: &OperatorExpr<R>,
    a: R,
    order: SeriesOrder,
) -> Result<OperatorExpr<R>, SeriesError> {
    check_graded(x)?;
    Ok(power_series(x, &binomial_coeffs(a, order.get()), order))
}

/// `(1+x)^{-1/2}`: coefficients `1, −1/2, 3/8, −5/16, …`.
pub fn inv_sqrt_series<R: Coeff>(x: &OperatorExpr<R>, order: SeriesOrder) -> Result<OperatorExpr<R>, SeriesError> {
    binomial_series(x, frac(-1, 2), order)
}

/// `(1+x)^{1/2}`.
pub fn sqrt_series<R: Coeff>(x: &OperatorExpr<R>, order: SeriesOrder) -> Result<OperatorExpr<R>, SeriesError> {
    binomial_series(x, frac(1, 2), order)
}

/// Odd Taylor coefficients of `arcsin`: `1, 1/6, 3/40, 15/336, …`, placed at
/// even positions zero-filled.
fn arcsin_coeffs<R: Coeff>(n: u32) -> Vec<R> {
    let mut out = vec![R::zero(); n as usize + 1];
    // central = (2k)! / (4^k (k!)^2)
    let mut central = R::one();
    let mut k: i64 = 0;
    while 2 * k + 1 <= n as i64 {
        if k > 0 {
            central = central * frac::<R>(2 * k - 1, 2 * k);
        }
        out[(2 * k + 1) as usize] = central.clone() / frac::<R>(2 * k + 1, 1);
        k += 1;
    }
    out
}

pub fn arcsin_series<R: Coeff>(x: &OperatorExpr<R>, order: SeriesOrder) -> Result<OperatorExpr<R>, SeriesError> {
    check_graded(x)?;
    Ok(power_series(x, &arcsin_coeffs(order.get()), order))
}

pub fn exp_series<R: Coeff>(a: &OperatorExpr<R>, order: SeriesOrder) -> Result<OperatorExpr<R>, SeriesError> {
    check_graded(a)?;
    let mut coeffs = vec![R::one()];
    for k in 1..=order.get() as i64 {
        let prev = coeffs.last().cloned().unwrap();
        coeffs.push(prev / frac::<R>(k, 1));
    }
    Ok(power_series(a, &coeffs, order))
}

/// `log(1 + x)` given `1 + x`.
pub fn log_series<R: Coeff>(one_plus_x: &OperatorExpr<R>, order: SeriesOrder) -> Result<OperatorExpr<R>, SeriesError> {
    if one_plus_x.constant_term() != Complex::new(R::one(), R::zero()) {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let x = one_plus_x.sub(&OperatorExpr::one());
    check_graded(&x)?;
    let mut coeffs = vec![R::zero()];
    for k in 1..=order.get() as i64 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        coeffs.push(frac(sign, k));
    }
    Ok(power_series(&x, &coeffs, order))
}

/// Baker–Campbell–Hausdorff composition `log(exp(a)·exp(b))`.
pub fn bch<R: Coeff>(
    a: &OperatorExpr<R>,
    b: &OperatorExpr<R>,
    order: SeriesOrder,
) -> Result<OperatorExpr<R>, SeriesError> {
    let ea = exp_series(a, order)?;
    let eb = exp_series(b, order)?;
    log_series(&ea.mul_upto(&eb, Some(order.cap())), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c_real;
    use crate::Expr;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        frac(n, d)
    }

    fn n(k: u32) -> SeriesOrder {
        SeriesOrder(k)
    }

    /// Commuting stand-in for the argument: `t = μ` (a central element), so
    /// the series must reproduce the scalar Taylor polynomial in `μ`.
    fn scalar_poly(x: &Expr) -> Vec<Q> {
        (0..=8).map(|k| x.coefficient(&crate::algebra::Monomial::new(k, false, vec![])).re).collect()
    }

    #[test]
    fn zero_arguments() {
        assert_eq!(inv_sqrt_series(&Expr::zero(), n(4)).unwrap(), Expr::one());
        assert_eq!(arcsin_series(&Expr::zero(), n(4)).unwrap(), Expr::zero());
        assert_eq!(exp_series(&Expr::zero(), n(4)).unwrap(), Expr::one());
        assert_eq!(log_series(&Expr::one(), n(4)).unwrap(), Expr::zero());
    }

    #[test]
    fn inv_sqrt_of_two_mu_beta_e() {
        // (1+x)^{-1/2} with x = 2μβE: 1 − μβE + (3/8)(2μβE)² = 1 − μβE + (3/2)μ²E²
        let x = Expr::mu(1).multiply(&Expr::beta()).multiply(&Expr::e()).scale(&c_real(2, 1));
        let got = inv_sqrt_series(&x, n(2)).unwrap();
        let want: Expr = crate::algebra::parse("1 - mu*beta*E + 3/2*mu^2*E^2").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn arcsin_of_mu_o() {
        let x = Expr::mu(1).multiply(&Expr::o());
        let got = arcsin_series(&x, n(3)).unwrap();
        let want: Expr = crate::algebra::parse("mu*O + 1/6*mu^3*O^3").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn scalar_reductions_match_taylor_polynomials() {
        let t = Expr::mu(1);
        let order = n(8);
        // (1+t)^{-1/2}
        let inv = scalar_poly(&inv_sqrt_series(&t, order).unwrap());
        let want_inv = [
            q(1, 1), q(-1, 2), q(3, 8), q(-5, 16), q(35, 128), q(-63, 256), q(231, 1024),
            q(-429, 2048), q(6435, 32768),
        ];
        assert_eq!(inv, want_inv);
        // arcsin
        let asin = scalar_poly(&arcsin_series(&t, order).unwrap());
        let want_asin = [
            q(0, 1), q(1, 1), q(0, 1), q(1, 6), q(0, 1), q(3, 40), q(0, 1), q(5, 112), q(0, 1),
        ];
        assert_eq!(asin, want_asin);
        // exp
        let e = scalar_poly(&exp_series(&t, order).unwrap());
        let fact: Vec<Q> = [1, 1, 2, 6, 24, 120, 720, 5040, 40320].iter().map(|f| q(1, *f)).collect();
        assert_eq!(e, fact);
        // log(1+t)
        let l = scalar_poly(&log_series(&Expr::one().add(&t), order).unwrap());
        let want_log = [
            q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4), q(1, 5), q(-1, 6), q(1, 7), q(-1, 8),
        ];
        assert_eq!(l, want_log);
    }

    #[test]
    fn exp_then_log_is_identity() {
        let a: Expr = crate::algebra::parse("i*mu*beta*O + 1/3*mu^2*[O,E] - mu^3*E").unwrap();
        let order = n(5);
        let back = log_series(&exp_series(&a, order).unwrap(), order).unwrap();
        assert_eq!(back, a);
        let prod = exp_series(&a, order).unwrap().mul_upto(&exp_series(&a.neg(), order).unwrap(), Some(5));
        assert_eq!(prod, Expr::one());
    }

    #[test]
    fn bch_trivial_cases() {
        let a: Expr = crate::algebra::parse("mu*O + mu^2*E*O").unwrap();
        assert_eq!(bch(&a, &Expr::zero(), n(4)).unwrap(), a);
        let s = Expr::mu(1).scale(&c_real(2, 1));
        let t = Expr::mu(2).scale(&c_real(-3, 1));
        assert_eq!(bch(&s, &t, n(6)).unwrap(), s.add(&t));
    }

    #[test]
    fn bch_matches_explicit_commutator_form() {
        let a: Expr = crate::algebra::parse("mu*O + mu*beta*E").unwrap();
        let b: Expr = crate::algebra::parse("mu*E + i*mu*beta*O").unwrap();
        let ab = a.commutator(&b);
        let explicit = a
            .add(&b)
            .add(&ab.scale(&c_real(1, 2)))
            .add(&a.commutator(&ab).scale(&c_real(1, 12)))
            .sub(&b.commutator(&ab).scale(&c_real(1, 12)))
            .sub(&a.commutator(&b.commutator(&ab)).scale(&c_real(1, 24)));
        let got = bch(&a, &b, n(4)).unwrap();
        assert_eq!(got, explicit.truncate(4));
    }

    #[test]
    fn preconditions_are_enforced() {
        assert_eq!(exp_series(&Expr::o(), n(2)), Err(SeriesError::Ungraded { min_mu: 0 }));
        assert_eq!(arcsin_series(&Expr::mu(-1), n(2)), Err(SeriesError::Ungraded { min_mu: -1 }));
        assert_eq!(log_series(&Expr::mu(1), n(2)), Err(SeriesError::ConstantTermNotOne));
        assert_eq!(
            log_series(&Expr::one().add(&Expr::o()), n(2)),
            Err(SeriesError::Ungraded { min_mu: 0 })
        );
    }
}
