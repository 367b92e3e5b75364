//! Named operator identities checked term-by-term on the truncated series.

use super::fw::*;
use super::series::{bch, SeriesOrder};
use crate::algebra::OperatorExpr;
use crate::scalar::{c_real, Coeff};

/// Result of one identity check: the identity holds iff `residual` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck<R: Coeff> {
    pub name: &'static str,
    pub order: SeriesOrder,
    pub residual: OperatorExpr<R>,
}

impl<R: Coeff> IdentityCheck<R> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub const IDENTITY_NAMES: &[&str] = &[
    "lambda-squared",
    "lambda-odd",
    "h-squared",
    "q-grading",
    "sin-cos",
    "sfw-odd",
    "hfw-even",
    "exp-eriksen",
    "sin-eriksen",
    "bch",
];

pub fn check_identity<R: Coeff>(name: &str, order: SeriesOrder) -> Option<IdentityCheck<R>> {
    let n = order.cap();
    let one = OperatorExpr::<R>::one();
    let beta = OperatorExpr::<R>::beta();
    let residual = match name {
        // λ² = 1
        "lambda-squared" => {
            let lam = lambda_full::<R>(order);
            lam.mul_upto(&lam, Some(n)).sub(&one)
        }
        // odd part of λ computed both ways
        "lambda-odd" => lambda_full::<R>(order).odd_part().sub(&lambda_odd::<R>(order)),
        // μ²H² − 1 against the closed form of the deviation
        "h-squared" => {
            let h = hamiltonian::<R>();
            OperatorExpr::mu(2)
                .multiply(&h.multiply(&h))
                .sub(&one)
                .sub(&h_squared_deviation::<R>())
        }
        // q_E even and q_O odd, and they reassemble the series
        "q-grading" => {
            let (qe, qo) = q_parts::<R>(order);
            qe.odd_part().add(&qo.even_part())
        }
        // ¼(βλ+λβ)² + (½(λ−βλβ))² = 1
        "sin-cos" => {
            let lam = lambda_full::<R>(order);
            let cos2 = beta.multiply(&lam).add(&lam.multiply(&beta)).scale(&c_real(1, 2));
            let sin2 = lam.sub(&beta.multiply(&lam).multiply(&beta)).scale(&c_real(1, 2));
            cos2.mul_upto(&cos2, Some(n))
                .add(&sin2.mul_upto(&sin2, Some(n)))
                .sub(&one)
        }
        // βS_FW β = −S_FW
        "sfw-odd" => {
            let s = s_fw_series::<R>(order);
            beta.multiply(&s).multiply(&beta).add(&s)
        }
        // odd part of the transformed Hamiltonian. A generator truncated at
        // μⁿ⁺¹ fixes the Hamiltonian through μⁿ because [S, μ⁻¹β] lowers the
        // degree by one.
        "hfw-even" => {
            let s = s_fw_series::<R>(SeriesOrder(order.get() + 1));
            fw_hamiltonian_series(&s, order).expect("graded generator").odd_part()
        }
        "exp-eriksen" => u_exponential_series::<R>(order).sub(&eriksen_series::<R>(order)),
        "sin-eriksen" => u_from_sin_series::<R>(order).sub(&eriksen_series::<R>(order)),
        // log(exp·exp) against the explicit commutators through their degree
        "bch" => {
            let a = OperatorExpr::mu(1).multiply(&beta).multiply(&OperatorExpr::o());
            let b = OperatorExpr::mu(1).multiply(&OperatorExpr::e())
                .add(&OperatorExpr::mu(1).multiply(&OperatorExpr::o()));
            let ab = a.commutator(&b);
            let explicit = a
                .add(&b)
                .add(&ab.scale(&c_real(1, 2)))
                .add(&a.commutator(&ab).scale(&c_real(1, 12)))
                .sub(&b.commutator(&ab).scale(&c_real(1, 12)))
                .sub(&a.commutator(&b.commutator(&ab)).scale(&c_real(1, 24)));
            let cap = n.min(4);
            bch(&a, &b, SeriesOrder(cap as u32)).expect("graded").sub(&explicit.truncate(cap))
        }
        _ => return None,
    };
    let name = IDENTITY_NAMES.iter().copied().find(|k| *k == name)?;
    Some(IdentityCheck { name, order, residual: residual.truncate(n) })
}

pub fn check_all<R: Coeff>(order: SeriesOrder) -> Vec<IdentityCheck<R>> {
    IDENTITY_NAMES
        .iter()
        .map(|name| check_identity::<R>(name, order).expect("known identity"))
        .collect()
}
