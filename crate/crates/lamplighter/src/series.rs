//! Truncated power series with exact-rational and high-precision-float
//! coefficient backends.
//!
//! Arithmetic on two series of orders N1, N2 yields order min(N1, N2); the
//! exact backend never rounds. The float backend exists because the exact
//! coefficients of the tree generating functions grow super-exponentially in
//! bit size, which makes exact solves impractical beyond order a few hundred.

use crate::bigfloat::BigFloat;
use crate::poly::Rat;
use num_traits::Zero;

/// Coefficient ring for series arithmetic. `Ctx` carries backend
/// configuration (the float precision; nothing for exact rationals).
pub trait Coeff: Clone + PartialEq {
    type Ctx: Copy;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_rat(r: &Rat, ctx: Self::Ctx) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coeff for Rat {
    type Ctx = ();
    fn zero(_: ()) -> Self {
        <Rat as Zero>::zero()
    }
    fn one(_: ()) -> Self {
        <Rat as num_traits::One>::one()
    }
    fn from_rat(r: &Rat, _: ()) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coeff for BigFloat {
    type Ctx = u32;
    fn zero(prec: u32) -> Self {
        BigFloat::zero(prec)
    }
    fn one(prec: u32) -> Self {
        BigFloat::from_i64(1, prec)
    }
    fn from_rat(r: &Rat, prec: u32) -> Self {
        BigFloat::from_rat(r, prec)
    }
    fn add(&self, rhs: &Self) -> Self {
        BigFloat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BigFloat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BigFloat::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        BigFloat::div(self, rhs)
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
}

/// Power series truncated at `order`: coefficients of x^0 .. x^order.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<C>,
    ctx: C::Ctx,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(order: usize, ctx: C::Ctx) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(ctx); order + 1],
            ctx,
        }
    }

    pub fn one(order: usize, ctx: C::Ctx) -> Self {
        let mut s = Self::zero(order, ctx);
        s.coeffs[0] = C::one(ctx);
        s
    }

    /// The series `x` truncated at `order`.
    pub fn x(order: usize, ctx: C::Ctx) -> Self {
        let mut s = Self::zero(order, ctx);
        if order >= 1 {
            s.coeffs[1] = C::one(ctx);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>, ctx: C::Ctx) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs, ctx }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ctx(&self) -> C::Ctx {
        self.ctx
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| C::zero(self.ctx))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    fn common_order(&self, rhs: &Self) -> usize {
        self.order().min(rhs.order())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].add(&rhs.coeffs[i]))
            .collect();
        TruncatedSeries {
            coeffs,
            ctx: self.ctx,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].sub(&rhs.coeffs[i]))
            .collect();
        TruncatedSeries {
            coeffs,
            ctx: self.ctx,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_to_order(rhs, self.common_order(rhs))
    }

    /// Product truncated at `order` (used by the growing-order fixed-point
    /// solver to avoid paying for coefficients not yet converged).
    pub fn mul_to_order(&self, rhs: &Self, order: usize) -> Self {
        let n = self.common_order(rhs).min(order);
        let mut coeffs = vec![C::zero(self.ctx); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let t = self.coeffs[i].mul(&rhs.coeffs[j]);
                coeffs[i + j] = coeffs[i + j].add(&t);
            }
        }
        TruncatedSeries {
            coeffs,
            ctx: self.ctx,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_to_order(e, self.order())
    }

    pub fn pow_to_order(&self, e: u32, order: usize) -> Self {
        let mut acc = Self::one(self.order().min(order), self.ctx);
        for _ in 0..e {
            acc = acc.mul_to_order(self, order);
        }
        acc
    }

    /// Multiply by x (shift up one degree, dropping the top coefficient).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero(self.ctx));
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        TruncatedSeries {
            coeffs,
            ctx: self.ctx,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            ctx: self.ctx,
        }
    }

    pub fn neg(&self) -> Self {
        let z = C::zero(self.ctx);
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| z.sub(a)).collect(),
            ctx: self.ctx,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
            ctx: self.ctx,
        }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Self {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "series with zero constant term has no inverse");
        let n = self.order();
        let mut inv = vec![C::zero(self.ctx); n + 1];
        inv[0] = C::one(self.ctx).div(c0);
        for m in 1..=n {
            let mut acc = C::zero(self.ctx);
            for j in 1..=m {
                let t = self.coeffs[j].mul(&inv[m - j]);
                acc = acc.add(&t);
            }
            inv[m] = C::zero(self.ctx).sub(&acc).div(c0);
        }
        TruncatedSeries {
            coeffs: inv,
            ctx: self.ctx,
        }
    }
}

impl<C: Coeff + std::fmt::Debug> std::fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruncatedSeries{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn exact(coeffs: &[i64]) -> TruncatedSeries<Rat> {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect(), ())
    }

    #[test]
    fn square_of_one_plus_x() {
        let s = exact(&[1, 1, 0]);
        assert_eq!(s.mul(&s), exact(&[1, 2, 1]));
    }

    #[test]
    fn truncation_drops_high_terms() {
        // x * x at order 1 is 0
        let x = exact(&[0, 1]);
        assert_eq!(x.mul(&x), exact(&[0, 0]));
    }

    #[test]
    fn difference_of_squares() {
        let a = exact(&[1, 1, 0]);
        let b = exact(&[1, -1, 0]);
        assert_eq!(a.mul(&b), exact(&[1, 0, -1]));
    }

    #[test]
    fn arithmetic_takes_min_order() {
        let a = exact(&[1, 2, 3, 4]);
        let b = exact(&[1, 1]);
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(a.mul(&b).order(), 1);
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let s = exact(&[1, -1, 0, 0, 0]);
        assert_eq!(s.inverse(), exact(&[1, 1, 1, 1, 1]));
        assert_eq!(s.mul(&s.inverse()), exact(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn float_backend_agrees_with_exact_on_integers() {
        let e = exact(&[1, -3, 2, 7]);
        let f = TruncatedSeries::<BigFloat>::from_coeffs(
            [1i64, -3, 2, 7]
                .iter()
                .map(|&c| BigFloat::from_i64(c, 192))
                .collect(),
            192,
        );
        let e2 = e.mul(&e);
        let f2 = f.mul(&f);
        for n in 0..=3 {
            assert_eq!(f2.coeff(n).to_rat(), e2.coeff(n));
        }
    }

    proptest::proptest! {
        #[test]
        fn exact_ring_laws(a in proptest::collection::vec(-20i64..20, 5),
                           b in proptest::collection::vec(-20i64..20, 5),
                           c in proptest::collection::vec(-20i64..20, 5)) {
            let a = exact(&a); let b = exact(&b); let c = exact(&c);
            proptest::prop_assert_eq!(a.add(&b), b.add(&a));
            proptest::prop_assert_eq!(a.mul(&b), b.mul(&a));
            proptest::prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            proptest::prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        }
    }
}
