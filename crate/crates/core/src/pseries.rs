//! Truncated power series in one variable `t` with big-integer coefficients.
//!
//! A [`TruncatedSeries`] of order `D` stores exactly the coefficients of
//! `t^0, ..., t^D`; everything above is unknown. Binary operations refuse to
//! combine series of different orders, so truncation is always explicit.
//!
//! The only divisions that occur downstream are by `1 - t^k`, which
//! [`TruncatedSeries::geom_div`] performs as multiplication by a geometric
//! series, so integer coefficients suffice.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    // Always `order + 1` entries.
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `t^exponent` at the given order.
    pub fn monomial(exponent: usize, order: usize) -> Result<Self> {
        if exponent > order {
            return Err(Error::ExponentOutOfRange { exponent, order });
        }
        let mut s = Self::zero(order);
        s.coeffs[exponent] = BigInt::one();
        Ok(s)
    }

    /// `t^exponent`, or zero if the exponent lies beyond the order.
    pub fn monomial_or_zero(exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = BigInt::one();
        }
        s
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Returns `None` for an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Option<Self> {
        if coeffs.is_empty() {
            None
        } else {
            Some(Self { coeffs })
        }
    }

    /// Pads or cuts `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs_at(coeffs: impl IntoIterator<Item = BigInt>, order: usize) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, BigInt::zero());
        Self { coeffs: c }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs_at(coeffs.iter().map(|&c| BigInt::from(c)), order)
    }

    /// `1 - t^k` at the given order (`k >= 1`; for `k > order` this is 1).
    pub fn one_minus_t_pow(k: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] -= 1;
        }
        s
    }

    /// `(1 + t)^m` truncated at `order`.
    pub fn binom_pow(m: u64, order: usize) -> Self {
        Self::binom_pow_step(m, 1, order)
    }

    /// `(1 + t^step)^m` truncated at `order`; `step` must be at least 1.
    pub fn binom_pow_step(m: u64, step: usize, order: usize) -> Self {
        assert!(step >= 1, "binomial step must be positive");
        let mut s = Self::zero(order);
        let mut c = BigInt::one();
        let mut k: u64 = 0;
        loop {
            let idx = match usize::try_from(k).ok().and_then(|k| k.checked_mul(step)) {
                Some(i) if i <= order => i,
                _ => break,
            };
            s.coeffs[idx] = c.clone();
            if k == m {
                break;
            }
            // C(m, k+1) = C(m, k) * (m - k) / (k + 1)
            c = c * BigInt::from(m - k) / BigInt::from(k + 1);
            k += 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero-extended is not allowed, so `k` must be in range.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the highest nonzero coefficient, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_order(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(())
    }

    pub fn sub_assign(&mut self, other: &Self) -> Result<()> {
        self.check_order(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn negate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `t^k`, dropping whatever moves past the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        if k <= order {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..=order - k]);
        }
        out
    }

    /// Non-negative integer power.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Re-truncates to a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::CannotExtend {
                from: self.order(),
                to: order,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Divides by `1 - t^k`, i.e. multiplies by `1 + t^k + t^{2k} + ...`.
    pub fn geom_div(&self, k: i64) -> Result<Self> {
        if k <= 0 {
            return Err(Error::NonPositiveStep(k));
        }
        let mut out = self.coeffs.clone();
        let Ok(k) = usize::try_from(k) else {
            return Ok(self.clone());
        };
        // In place: out[i] += out[i - k] runs the recurrence of 1/(1 - t^k).
        for i in k..out.len() {
            let prev = out[i - k].clone();
            out[i] += prev;
        }
        Ok(Self { coeffs: out })
    }

    /// True when every coefficient of index `from_deg..=order` vanishes.
    /// An empty window (`from_deg > order`) is vacuously zero.
    pub fn tail_is_zero(&self, from_deg: usize) -> bool {
        self.coeffs.iter().skip(from_deg).all(Zero::is_zero)
    }

    fn require_polynomial(&self, poly_deg: usize) -> Result<()> {
        match self.coeffs.iter().skip(poly_deg + 1).position(|c| !c.is_zero()) {
            Some(off) => Err(Error::NotPolynomial {
                index: poly_deg + 1 + off,
                degree: poly_deg,
            }),
            None => Ok(()),
        }
    }

    /// Value at `t = -1` of the polynomial of degree `<= poly_deg` this series attests.
    pub fn eval_at_minus_one(&self, poly_deg: usize) -> Result<BigInt> {
        self.require_polynomial(poly_deg)?;
        let mut acc = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate().take(poly_deg + 1) {
            if k % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Ok(acc)
    }

    /// Largest `e` such that `(1 + t)^e` divides the attested polynomial.
    pub fn divisibility_order_at_minus_one(&self, poly_deg: usize) -> Result<usize> {
        self.require_polynomial(poly_deg)?;
        let top = poly_deg.min(self.order());
        let mut poly: Vec<BigInt> = self.coeffs[..=top].to_vec();
        while poly.last().is_some_and(Zero::is_zero) {
            poly.pop();
        }
        if poly.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let mut e = 0;
        loop {
            // Synthetic division by (t + 1), highest degree first.
            let deg = poly.len() - 1;
            if deg == 0 {
                return Ok(e);
            }
            let mut quot = vec![BigInt::zero(); deg];
            let mut carry = BigInt::zero();
            for i in (0..=deg).rev() {
                let v = &poly[i] - &carry;
                if i == 0 {
                    if !v.is_zero() {
                        return Ok(e);
                    }
                } else {
                    quot[i - 1] = v.clone();
                    carry = v;
                }
            }
            poly = quot;
            e += 1;
        }
    }

    /// Whether some coefficient is negative.
    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

/// Human-readable form, e.g. `1 + 4t + 7t^2 + O(t^3)`.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], d: usize) -> TruncatedSeries {
        TruncatedSeries::from_i64s(c, d)
    }

    #[test]
    fn constants() {
        assert_eq!(TruncatedSeries::one(3), s(&[1, 0, 0, 0], 3));
        assert_eq!(TruncatedSeries::monomial(2, 4).unwrap(), s(&[0, 0, 1], 4));
        assert!(TruncatedSeries::zero(0).is_zero());
        assert_eq!(TruncatedSeries::zero(0).order(), 0);
        assert_eq!(
            TruncatedSeries::monomial(5, 4),
            Err(Error::ExponentOutOfRange { exponent: 5, order: 4 })
        );
    }

    #[test]
    fn ring_examples() {
        let p = s(&[1, 1], 3);
        let m = s(&[1, -1], 3);
        assert_eq!(p.mul(&m).unwrap(), s(&[1, 0, -1], 3));
        let t2 = s(&[0, 0, 1], 3);
        assert!(t2.add(&t2.negate()).unwrap().is_zero());
        // (1 + t + t^2 + t^3)(1 - t) = 1 - t^4, which is 1 at order 3.
        assert_eq!(s(&[1, 1, 1, 1], 3).mul(&m).unwrap(), TruncatedSeries::one(3));
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        let err = a.mul(&b).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 3, right: 4 });
        assert!(err.is_contract_violation());
        assert!(a.add(&b).is_err());
        assert!(a.sub(&b).is_err());
    }

    #[test]
    fn geometric_division() {
        assert_eq!(TruncatedSeries::one(5).geom_div(2).unwrap(), s(&[1, 0, 1, 0, 1, 0], 5));
        assert_eq!(s(&[1, 0, -1], 5).geom_div(2).unwrap(), TruncatedSeries::one(5));
        let expect = s(&[0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1], 10);
        assert_eq!(s(&[0, 0, 1], 10).geom_div(4).unwrap(), expect);
        assert_eq!(TruncatedSeries::one(3).geom_div(0), Err(Error::NonPositiveStep(0)));
        assert_eq!(TruncatedSeries::one(3).geom_div(-2), Err(Error::NonPositiveStep(-2)));
        // A step beyond the order leaves the series unchanged.
        assert_eq!(s(&[2, 1], 3).geom_div(9).unwrap(), s(&[2, 1], 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(TruncatedSeries::binom_pow(0, 3), TruncatedSeries::one(3));
        assert_eq!(TruncatedSeries::binom_pow(4, 4), s(&[1, 4, 6, 4, 1], 4));
        assert_eq!(TruncatedSeries::binom_pow(2, 1), s(&[1, 2], 1));
        assert_eq!(TruncatedSeries::binom_pow_step(2, 3, 7), s(&[1, 0, 0, 2, 0, 0, 1], 7));
    }

    #[test]
    fn polynomial_queries() {
        let a = s(&[1, 0, 1], 3);
        assert!(a.tail_is_zero(3));
        assert!(!a.tail_is_zero(2));
        assert!(a.tail_is_zero(9));
        assert_eq!(a.eval_at_minus_one(2).unwrap(), BigInt::from(2));
        assert_eq!(s(&[1, 2, 1], 2).divisibility_order_at_minus_one(2).unwrap(), 2);
        assert_eq!(s(&[1, 2, 1, 0], 3).divisibility_order_at_minus_one(3).unwrap(), 2);
        assert_eq!(s(&[3], 2).divisibility_order_at_minus_one(2).unwrap(), 0);
        // 1 + t^2 + 4t^3 + t^4 + t^6 = (1 + t)^2 (1 - 2t + 4t^2 - 2t^3 + t^4)
        let q = s(&[1, 0, 1, 4, 1, 0, 1], 8);
        assert_eq!(q.divisibility_order_at_minus_one(6).unwrap(), 2);
        assert!(matches!(
            s(&[1, 0, 1], 3).eval_at_minus_one(1),
            Err(Error::NotPolynomial { index: 2, degree: 1 })
        ));
        assert!(s(&[1, 0, 1], 3).divisibility_order_at_minus_one(1).is_err());
        assert_eq!(
            TruncatedSeries::zero(3).divisibility_order_at_minus_one(3),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn shift_pow_truncate() {
        assert_eq!(s(&[1, 2, 3], 3).shift(2), s(&[0, 0, 1, 2], 3));
        assert!(s(&[1, 2, 3], 3).shift(4).is_zero());
        assert_eq!(s(&[1, 1], 5).pow(4), s(&[1, 4, 6, 4, 1], 5));
        assert_eq!(s(&[1, 2, 3, 4], 3).truncate(1).unwrap(), s(&[1, 2], 1));
        assert!(s(&[1], 1).truncate(2).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", s(&[1, -4, 0, 1], 3)), "1 - 4t + t^3 + O(t^4)");
        assert_eq!(alloc::format!("{}", TruncatedSeries::zero(0)), "0 + O(t^1)");
    }
}
