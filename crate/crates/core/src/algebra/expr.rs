use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::monomial::{Letter, Monomial};
use crate::scalar::{c_is_zero, Coeff};

/// Element of the graded algebra over `β`, `E`, `O` and the bookkeeping
/// parameter `μ = 1/(mc²)`, stored in canonical form.
///
/// The term map never holds a zero coefficient, so two expressions are equal
/// exactly when their maps are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr<R: Coeff> {
    terms: BTreeMap<Monomial, Complex<R>>,
}

impl<R: Coeff> Default for OperatorExpr<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> OperatorExpr<R> {
    pub fn zero() -> Self {
        OperatorExpr { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::identity(), Complex::one())
    }

    pub fn monomial(m: Monomial, c: Complex<R>) -> Self {
        let mut terms = BTreeMap::new();
        if !c_is_zero(&c) {
            terms.insert(m, c);
        }
        OperatorExpr { terms }
    }

    pub fn beta() -> Self {
        Self::monomial(Monomial::new(0, true, Vec::new()), Complex::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(Monomial::new(0, false, vec![l]), Complex::one())
    }

    pub fn e() -> Self {
        Self::letter(Letter::E)
    }

    pub fn o() -> Self {
        Self::letter(Letter::O)
    }

    /// `μ^k`.
    pub fn mu(k: i32) -> Self {
        Self::monomial(Monomial::new(k, false, Vec::new()), Complex::one())
    }

    pub fn scalar(c: Complex<R>) -> Self {
        Self::monomial(Monomial::identity(), c)
    }

    /// The imaginary unit as an expression.
    pub fn i() -> Self {
        Self::scalar(Complex::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex<R>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Complex<R> {
        self.terms.get(m).cloned().unwrap_or_else(Complex::zero)
    }

    /// Lowest power of `μ` present, `None` for the zero expression.
    pub fn min_mu(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.mu).min()
    }

    pub fn max_mu(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.mu).max()
    }

    /// Coefficient of the identity monomial.
    pub fn constant_term(&self) -> Complex<R> {
        self.coefficient(&Monomial::identity())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Complex<R>) {
        if c_is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if c_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        if c_is_zero(c) {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
            .filter(|(_, v)| !c_is_zero(v))
            .collect();
        OperatorExpr { terms }
    }

    pub fn scale_real(&self, r: R) -> Self {
        self.scale(&Complex::new(r, R::zero()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Complex::new(-R::one(), R::zero()))
    }

    pub fn multiply(&self, other: &Self) -> Self {
        self.mul_upto(other, None)
    }

    /// Product with every term above `μ^max_mu` discarded.
    pub fn mul_upto(&self, other: &Self, max_mu: Option<i32>) -> Self {
        let mut out = Self::zero();
        let rhs_min = match other.min_mu() {
            Some(m) => m,
            None => return out,
        };
        for (ma, ca) in &self.terms {
            if let Some(cap) = max_mu {
                // Terms are sorted by μ-power, so nothing further survives.
                if ma.mu + rhs_min > cap {
                    break;
                }
            }
            for (mb, cb) in &other.terms {
                if let Some(cap) = max_mu {
                    if ma.mu + mb.mu > cap {
                        break;
                    }
                }
                let (m, negate) = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                out.add_term(m, if negate { -c } else { c });
            }
        }
        out
    }

    /// `x^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.multiply(self);
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.multiply(other).sub(&other.multiply(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.multiply(other).add(&other.multiply(self))
    }

    pub fn commutator_upto(&self, other: &Self, max_mu: Option<i32>) -> Self {
        self.mul_upto(other, max_mu).sub(&other.mul_upto(self, max_mu))
    }

    pub fn anticommutator_upto(&self, other: &Self, max_mu: Option<i32>) -> Self {
        self.mul_upto(other, max_mu).add(&other.mul_upto(self, max_mu))
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        OperatorExpr { terms }
    }

    /// Terms with an even number of `O` letters (commute with `β`).
    pub fn even_part(&self) -> Self {
        self.filter(|m| !m.is_odd())
    }

    /// Terms with an odd number of `O` letters (anticommute with `β`).
    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.is_odd())
    }

    /// Drops every term with `μ`-power above `n`.
    pub fn truncate(&self, n: i32) -> Self {
        self.filter(|m| m.mu <= n)
    }

    /// The homogeneous component of `μ`-degree `k`.
    pub fn grade(&self, k: i32) -> Self {
        self.filter(|m| m.mu == k)
    }

    pub fn canonical_equals(&self, other: &Self) -> bool {
        self == other
    }

    /// Maps coefficients into another field (e.g. exact to `f64`).
    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> OperatorExpr<S> {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Complex::new(f(&c.re), f(&c.im)));
        }
        out
    }
}

impl<R: Coeff> From<Letter> for OperatorExpr<R> {
    fn from(l: Letter) -> Self {
        Self::letter(l)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<R: Coeff> $tr<&OperatorExpr<R>> for &OperatorExpr<R> {
            type Output = OperatorExpr<R>;
            fn $method(self, rhs: &OperatorExpr<R>) -> OperatorExpr<R> {
                OperatorExpr::$inner(self, rhs)
            }
        }
        impl<R: Coeff> $tr<OperatorExpr<R>> for OperatorExpr<R> {
            type Output = OperatorExpr<R>;
            fn $method(self, rhs: OperatorExpr<R>) -> OperatorExpr<R> {
                OperatorExpr::$inner(&self, &rhs)
            }
        }
        impl<R: Coeff> $tr<&OperatorExpr<R>> for OperatorExpr<R> {
            type Output = OperatorExpr<R>;
            fn $method(self, rhs: &OperatorExpr<R>) -> OperatorExpr<R> {
                OperatorExpr::$inner(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, multiply);

impl<R: Coeff> Neg for OperatorExpr<R> {
    type Output = OperatorExpr<R>;
    fn neg(self) -> OperatorExpr<R> {
        OperatorExpr::neg(&self)
    }
}

impl<R: Coeff> Neg for &OperatorExpr<R> {
    type Output = OperatorExpr<R>;
    fn neg(self) -> OperatorExpr<R> {
        OperatorExpr::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c_imag, c_real};
    use num_rational::BigRational;

    type X = OperatorExpr<BigRational>;

    fn beta_o() -> X {
        X::beta() * X::o()
    }

    #[test]
    fn beta_squares_to_one() {
        assert_eq!(X::beta() * X::beta(), X::one());
    }

    #[test]
    fn beta_o_squared_is_minus_o_squared() {
        let lhs = beta_o() * beta_o();
        assert_eq!(lhs, -(X::o() * X::o()));
    }

    #[test]
    fn beta_e_times_beta_o_absorbs_beta() {
        let lhs = (X::beta() * X::e()) * beta_o();
        assert_eq!(lhs, X::e() * X::o());
    }

    #[test]
    fn o_beta_normalizes_with_sign() {
        assert_eq!(X::o() * X::beta(), -beta_o());
        assert!((beta_o() + X::o() * X::beta()).is_zero());
    }

    #[test]
    fn scaling_by_i_twice_negates() {
        let x = X::e() * X::o() + X::mu(2) * X::beta();
        let ii = x.scale(&c_imag(1, 1)).scale(&c_imag(1, 1));
        assert_eq!(ii, -x.clone());
        assert!(OperatorExpr::add(&x, &x.scale(&c_real(-1, 1))).is_zero());
    }

    #[test]
    fn commutator_and_anticommutator_basics() {
        assert!(X::e().commutator(&X::e()).is_zero());
        assert!(X::beta().anticommutator(&X::o()).is_zero());
        assert!(X::beta().commutator(&X::e()).is_zero());
        let c = X::o().commutator(&X::e());
        assert_eq!(c.len(), 2);
        assert_eq!(c, X::e().commutator(&X::o()).neg());
    }

    #[test]
    fn parity_projections() {
        let h = X::mu(-1) * X::beta() + X::e() + X::o();
        assert_eq!(h.even_part(), X::mu(-1) * X::beta() + X::e());
        assert_eq!((X::e() * X::o()).odd_part(), X::e() * X::o());
        assert!(X::o().anticommutator(&X::e()).even_part().is_zero());
    }

    #[test]
    fn truncation_keeps_low_grades() {
        let x = X::mu(1) * X::o() + X::mu(2) * X::o().commutator(&X::e());
        assert_eq!(x.truncate(1), X::mu(1) * X::o());
        assert_eq!(x.truncate(100), x);
    }

    #[test]
    fn truncated_product_matches_full_then_truncate() {
        let a = X::mu(1) * X::o() + X::mu(2) * X::e() + X::beta();
        let b = X::mu(1) * X::e() + X::mu(3) * X::o() * X::o();
        assert_eq!(a.mul_upto(&b, Some(3)), a.multiply(&b).truncate(3));
    }
}
