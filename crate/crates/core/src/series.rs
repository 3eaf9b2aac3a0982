//! Truncated formal power series: a Laurent polynomial known exactly through
//! a given order.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{HalfExp, LaurentPoly, Mismatch};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: LaurentPoly,
    order: HalfExp,
}

impl TruncatedSeries {
    /// Truncates `poly` at `order` (inclusive).
    pub fn new(poly: &LaurentPoly, order: HalfExp) -> Self {
        TruncatedSeries {
            poly: poly.truncated(order),
            order,
        }
    }

    pub fn from_owned(poly: LaurentPoly, order: HalfExp) -> Self {
        if poly.max_exp().is_some_and(|e| e > order) {
            return Self::new(&poly, order);
        }
        TruncatedSeries { poly, order }
    }

    pub fn zero(order: HalfExp) -> Self {
        TruncatedSeries {
            poly: LaurentPoly::zero(),
            order,
        }
    }

    pub fn one(order: HalfExp) -> Self {
        Self::new(&LaurentPoly::one(), order)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    pub fn order(&self) -> HalfExp {
        self.order
    }

    pub fn coeff(&self, e: HalfExp) -> BigInt {
        self.poly.coeff(e)
    }

    /// Lowest exponent that can carry a nonzero coefficient.
    fn valuation_bound(&self) -> HalfExp {
        self.poly
            .min_exp()
            .unwrap_or(self.order + HalfExp::from_twice(1))
    }

    /// Same series known through a lower order.
    pub fn restrict(&self, order: HalfExp) -> Self {
        Self::new(&self.poly, order.min(self.order))
    }

    pub fn shift(&self, e: HalfExp) -> Self {
        TruncatedSeries {
            poly: self.poly.shift(e),
            order: self.order + e,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            poly: self.poly.scale(c),
            order: self.order,
        }
    }

    /// Multiplies by an exact polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero(self.order);
        }
        let order = self.order + p.min_exp().unwrap();
        TruncatedSeries {
            poly: self.poly.mul_truncated(p, order),
            order,
        }
    }

    /// Multiplies by `1 + c q^e` with `e > 0`.
    pub fn mul_binomial(&self, c: &BigInt, e: HalfExp) -> Self {
        TruncatedSeries {
            poly: self.poly.mul_binomial(c, e, Some(self.order)),
            order: self.order,
        }
    }

    /// Divides by `1 - q^e` with `e > 0` (multiplies by the geometric series).
    pub fn div_one_minus(&self, e: HalfExp) -> Self {
        assert!(e.is_positive());
        let mut out = LaurentPoly::zero();
        // out[k] = s[k] + out[k - e], ascending
        let Some(lo) = self.poly.min_exp() else {
            return self.clone();
        };
        let mut k = lo;
        while k <= self.order {
            let mut c = self.poly.coeff(k);
            let prev = out.coeff(k - e);
            c += prev;
            out.add_term(k, c);
            k = k + HalfExp::from_twice(1);
        }
        TruncatedSeries {
            poly: out,
            order: self.order,
        }
    }

    /// Multiplicative inverse for a series with valuation 0 and unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.poly.coeff(HalfExp::ZERO);
        if self.poly.min_exp() != Some(HalfExp::ZERO) || !(c0.is_one() || (-&c0).is_one()) {
            return Err(Error::NonUnitSeries);
        }
        if self.order.twice() < 0 {
            return Ok(Self::zero(self.order));
        }
        let step = self
            .poly
            .terms()
            .fold(0i64, |g, (e, _)| g.gcd(&e.twice()));
        if step == 0 {
            return Ok(Self::new(&LaurentPoly::constant(c0), self.order));
        }
        let n = (self.order.twice() / step) as usize;
        let coeffs: Vec<(usize, &BigInt)> = self
            .poly
            .terms()
            .skip(1)
            .map(|(e, c)| ((e.twice() / step) as usize, c))
            .collect();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n + 1);
        inv.push(c0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for (i, c) in &coeffs {
                if *i > k {
                    break;
                }
                acc += *c * &inv[k - i];
            }
            // c0 is its own inverse
            inv.push(-(acc * &c0));
        }
        let poly = LaurentPoly::from_terms(
            inv.into_iter()
                .enumerate()
                .map(|(i, c)| (HalfExp::from_twice(i as i64 * step), c)),
        );
        Ok(TruncatedSeries {
            poly,
            order: self.order,
        })
    }

    /// Lowest mismatching exponent through `up_to` (clamped to both orders).
    pub fn first_mismatch(&self, other: &Self, up_to: Option<HalfExp>) -> Option<Mismatch> {
        let mut limit = self.order.min(other.order);
        if let Some(u) = up_to {
            limit = limit.min(u);
        }
        self.poly.first_mismatch(&other.poly, Some(limit))
    }

    pub fn equal_through(&self, other: &Self, order: HalfExp) -> bool {
        self.first_mismatch(other, Some(order)).is_none()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::new(&(&self.poly + &rhs.poly), order)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::new(&(&self.poly - &rhs.poly), order)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            poly: -&self.poly,
            order: self.order,
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = (self.order + rhs.valuation_bound()).min(rhs.order + self.valuation_bound());
        TruncatedSeries {
            poly: self.poly.mul_truncated(&rhs.poly, order),
            order,
        }
    }
}

pub fn truncate(p: &LaurentPoly, order: HalfExp) -> TruncatedSeries {
    TruncatedSeries::new(p, order)
}

pub fn series_inverse(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.inverse()
}

/// Equality through the smaller of the two orders.
pub fn equal_series(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
    a.first_mismatch(b, None).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn truncate_is_inclusive() {
        let s = truncate(&p(&[1, 1, 0, 0, 0, 1]), HalfExp::int(3));
        assert_eq!(s.poly(), &p(&[1, 1]));
        assert_eq!(s.order(), HalfExp::int(3));
        let z = truncate(&LaurentPoly::zero(), HalfExp::int(10));
        assert!(z.poly().is_zero());
        let b = truncate(&p(&[1, 0, 0, 1]), HalfExp::int(3));
        assert_eq!(b.poly(), &p(&[1, 0, 0, 1]));
    }

    #[test]
    fn geometric_inverse() {
        let s = truncate(&p(&[1, -1]), HalfExp::int(4));
        assert_eq!(series_inverse(&s).unwrap().poly(), &p(&[1, 1, 1, 1, 1]));
        let one = TruncatedSeries::one(HalfExp::int(4));
        assert_eq!(series_inverse(&one).unwrap(), one);
    }

    #[test]
    fn non_unit_rejected() {
        let s = truncate(&p(&[2, 1]), HalfExp::int(4));
        assert_eq!(series_inverse(&s), Err(Error::NonUnitSeries));
        let s = truncate(&p(&[0, 1]), HalfExp::int(4));
        assert_eq!(series_inverse(&s), Err(Error::NonUnitSeries));
    }

    #[test]
    fn equal_beyond_order() {
        let a = truncate(&(LaurentPoly::one() + LaurentPoly::q_pow(99)), HalfExp::int(5));
        let b = truncate(&LaurentPoly::one(), HalfExp::int(5));
        assert!(equal_series(&a, &b));
        let c = truncate(&(LaurentPoly::one() + LaurentPoly::q_pow(5)), HalfExp::int(5));
        assert!(!equal_series(&c, &b));
    }

    #[test]
    fn product_order_is_min() {
        let a = truncate(&p(&[1, 1]), HalfExp::int(6));
        let b = truncate(&p(&[1, 2]), HalfExp::int(3));
        let c = &a * &b;
        assert_eq!(c.order(), HalfExp::int(3));
        assert_eq!(c.poly(), &p(&[1, 3, 2]));
    }

    #[test]
    fn div_one_minus_matches_inverse() {
        let s = truncate(&p(&[1, 0, 3]), HalfExp::int(8));
        let via_div = s.div_one_minus(HalfExp::int(2));
        let inv = series_inverse(&truncate(&p(&[1, 0, -1]), HalfExp::int(8))).unwrap();
        assert_eq!(via_div, &s * &inv);
    }
}
