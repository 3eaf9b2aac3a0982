//! q-Pochhammer symbols, Gaussian binomials, the finite q-exponential sums and
//! theta series, specialized to monomial arguments `±q^s`.
//!
//! Every "base" argument is the step of the product or the variable of the
//! binomial, written as a power of `q`; half-integer bases are allowed.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::poly::{HalfExp, LaurentPoly};
use crate::series::TruncatedSeries;

/// The formal monomial `sign * q^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialArg {
    negative: bool,
    exponent: HalfExp,
}

impl MonomialArg {
    /// `sign` must be `1` or `-1`.
    pub fn new(sign: i8, exponent: HalfExp) -> Self {
        assert!(sign == 1 || sign == -1, "monomial sign must be +1 or -1");
        MonomialArg {
            negative: sign < 0,
            exponent,
        }
    }

    /// `q^e`.
    pub fn q(e: impl Into<HalfExp>) -> Self {
        Self::new(1, e.into())
    }

    /// `-q^e`.
    pub fn neg_q(e: impl Into<HalfExp>) -> Self {
        Self::new(-1, e.into())
    }

    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exponent(self) -> HalfExp {
        self.exponent
    }

    pub fn negated(self) -> Self {
        MonomialArg {
            negative: !self.negative,
            exponent: self.exponent,
        }
    }

    pub fn reciprocal(self) -> Self {
        MonomialArg {
            negative: self.negative,
            exponent: -self.exponent,
        }
    }

    /// Multiplies by `q^e`.
    pub fn times_q(self, e: HalfExp) -> Self {
        MonomialArg {
            negative: self.negative,
            exponent: self.exponent + e,
        }
    }

    /// `self^n` for any integer `n`, as a polynomial.
    pub fn pow(self, n: i64) -> LaurentPoly {
        let sign = if self.negative && n.rem_euclid(2) == 1 { -1 } else { 1 };
        LaurentPoly::monomial(sign, self.exponent * n)
    }

    pub fn as_poly(self) -> LaurentPoly {
        self.pow(1)
    }
}

/// `(a; q^base)_n = prod_{i<n} (1 - a q^{base i})` for `n >= 0`.
pub fn poch_finite(a: MonomialArg, base: impl Into<HalfExp>, n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeIndexNonPolynomial(n));
    }
    let base = base.into();
    let mut acc = LaurentPoly::one();
    let minus_a = BigInt::from(-a.sign());
    for i in 0..n {
        acc = acc.mul_binomial(&minus_a, a.exponent + base * i, None);
    }
    Ok(acc)
}

/// Product of finite Pochhammers sharing one base.
pub fn poch_finite_multi(args: &[MonomialArg], base: impl Into<HalfExp>, n: i64) -> Result<LaurentPoly> {
    let base = base.into();
    let mut acc = LaurentPoly::one();
    for a in args {
        acc = acc * poch_finite(*a, base, n)?;
    }
    Ok(acc)
}

/// `(a; q^base)_∞` known through `order`.
///
/// Factors whose exponent is not positive are multiplied in exactly; the
/// remaining tail is computed deep enough to compensate a negative valuation.
pub fn poch_infinite(a: MonomialArg, base: impl Into<HalfExp>, order: HalfExp) -> Result<TruncatedSeries> {
    let base = base.into();
    if !base.is_positive() {
        return Err(Error::DivergentProduct(base.to_string()));
    }
    let minus_a = BigInt::from(-a.sign());
    let mut head = LaurentPoly::one();
    let mut i = 0i64;
    while (a.exponent + base * i).twice() <= 0 {
        head = head.mul_binomial(&minus_a, a.exponent + base * i, None);
        i += 1;
    }
    let Some(valuation) = head.min_exp() else {
        return Ok(TruncatedSeries::zero(order));
    };
    let tail_order = order - valuation;
    let mut tail = LaurentPoly::one();
    loop {
        let e = a.exponent + base * i;
        if e > tail_order {
            break;
        }
        tail = tail.mul_binomial(&minus_a, e, Some(tail_order));
        i += 1;
    }
    Ok(TruncatedSeries::new(&(&head * &tail), order))
}

/// `(a_1, ..., a_k; q^base)_∞` known through `order`.
pub fn poch_infinite_multi(args: &[MonomialArg], base: impl Into<HalfExp>, order: HalfExp) -> Result<TruncatedSeries> {
    let base = base.into();
    let mut acc = TruncatedSeries::one(order);
    for a in args {
        acc = &acc * &poch_infinite(*a, base, order)?;
    }
    Ok(acc.restrict(order))
}

type BinomCache = RwLock<HashMap<(i64, i64), Arc<Vec<BigInt>>>>;

static BINOM_CACHE: Lazy<BinomCache> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Dense coefficients of `[top choose bottom]_q`, `0 <= bottom <= top - bottom`.
fn binom_dense(top: i64, bottom: i64) -> Arc<Vec<BigInt>> {
    if let Some(hit) = BINOM_CACHE.read().unwrap().get(&(top, bottom)) {
        return Arc::clone(hit);
    }
    // [m+i choose i] = [m+i-1 choose i-1] (1 - q^{m+i}) / (1 - q^i), m = top - bottom
    let m = (top - bottom) as usize;
    let mut c: Vec<BigInt> = vec![BigInt::from(1)];
    for i in 1..=bottom as usize {
        let up = m + i;
        let mut next = vec![BigInt::zero(); c.len() + up];
        for (j, x) in c.iter().enumerate() {
            next[j] += x;
            next[j + up] -= x;
        }
        let new_len = next.len() - i;
        let mut quot: Vec<BigInt> = Vec::with_capacity(new_len);
        for j in 0..new_len {
            let mut v = std::mem::take(&mut next[j]);
            if j >= i {
                v += &quot[j - i];
            }
            quot.push(v);
        }
        c = quot;
    }
    let c = Arc::new(c);
    BINOM_CACHE
        .write()
        .unwrap()
        .insert((top, bottom), Arc::clone(&c));
    c
}

/// Gaussian binomial `[top choose bottom]` in the variable `q^base`; zero
/// unless `0 <= bottom <= top`.
pub fn qbinom(top: i64, bottom: i64, base: impl Into<HalfExp>) -> LaurentPoly {
    if bottom < 0 || top < bottom {
        return LaurentPoly::zero();
    }
    let base = base.into();
    let k = bottom.min(top - bottom);
    let dense = binom_dense(top, k);
    LaurentPoly::from_terms(
        dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (base * i as i64, c.clone())),
    )
}

/// `sum_n q^{base C(n,2)} z^n [L choose n]_{q^base}`, equal to `(-z; q^base)_L`.
pub fn qexp_sum(l: u32, z: MonomialArg, base: impl Into<HalfExp>) -> LaurentPoly {
    let base = base.into();
    (0..=l as i64)
        .map(|n| qexp_term(l, z, base, n))
        .sum()
}

fn qexp_term(l: u32, z: MonomialArg, base: HalfExp, n: i64) -> LaurentPoly {
    let pre = z.pow(n).shift(base * (n * (n - 1) / 2));
    &pre * &qbinom(l as i64, n, base)
}

/// The terms of [`qexp_sum`] with `n ≡ sigma (mod 2)`.
pub fn qexp_sum_parity(l: u32, z: MonomialArg, base: impl Into<HalfExp>, sigma: u8) -> Result<LaurentPoly> {
    if sigma > 1 {
        return Err(Error::InvalidParameter(format!("sigma must be 0 or 1, got {sigma}")));
    }
    let base = base.into();
    Ok((0..=l as i64)
        .filter(|n| n % 2 == sigma as i64)
        .map(|n| qexp_term(l, z, base, n))
        .sum())
}

/// `((-z; q^base)_L + (-1)^sigma (z; q^base)_L) / 2` with exact halving.
pub fn qexp_parity_product(l: u32, z: MonomialArg, base: impl Into<HalfExp>, sigma: u8) -> Result<LaurentPoly> {
    if sigma > 1 {
        return Err(Error::InvalidParameter(format!("sigma must be 0 or 1, got {sigma}")));
    }
    let base = base.into();
    let plus = poch_finite(z.negated(), base, l as i64)?;
    let minus = poch_finite(z, base, l as i64)?;
    let total = if sigma == 0 { plus + minus } else { plus - minus };
    total.halve_coefficients()
}

/// `sum_{j=-M}^{M} q^{base j^2} z^j [2M choose M+j]_{q^{2 base}}`.
pub fn finite_jtp_lhs(m: u32, z: MonomialArg, base: impl Into<HalfExp>) -> LaurentPoly {
    let base = base.into();
    let m = m as i64;
    (-m..=m)
        .map(|j| {
            let pre = z.pow(j).shift(base * (j * j));
            &pre * &qbinom(2 * m, m + j, base * 2)
        })
        .sum()
}

/// `(-z q^base, -q^base / z; q^{2 base})_M`.
pub fn finite_jtp_rhs(m: u32, z: MonomialArg, base: impl Into<HalfExp>) -> LaurentPoly {
    let base = base.into();
    let args = [z.negated().times_q(base), z.reciprocal().negated().times_q(base)];
    poch_finite_multi(&args, base * 2, m as i64).expect("nonnegative index")
}

/// Theta series `sum_j z^j q^{base j^2}` known through `order`.
pub fn jtp_theta(z: MonomialArg, base: impl Into<HalfExp>, order: HalfExp) -> Result<TruncatedSeries> {
    let base = base.into();
    if !base.is_positive() {
        return Err(Error::DivergentTheta(base.to_string()));
    }
    // exponent(j) = base j^2 + s j is convex in j; walk outward from its minimum.
    let exponent = |j: i64| base * (j * j) + z.exponent() * j;
    let centre = (-(z.exponent().twice() as f64) / (2.0 * base.twice() as f64)).round() as i64;
    let mut out = LaurentPoly::zero();
    let mut j = centre;
    while exponent(j) <= order {
        out += z.pow(j).shift(base * (j * j));
        j += 1;
    }
    let mut j = centre - 1;
    while exponent(j) <= order {
        out += z.pow(j).shift(base * (j * j));
        j -= 1;
    }
    Ok(TruncatedSeries::new(&out, order))
}

/// Product side `(q^{2 base}, -z q^base, -q^base / z; q^{2 base})_∞`.
pub fn jtp_product(z: MonomialArg, base: impl Into<HalfExp>, order: HalfExp) -> Result<TruncatedSeries> {
    let base = base.into();
    let args = [
        MonomialArg::q(base * 2),
        z.negated().times_q(base),
        z.reciprocal().negated().times_q(base),
    ];
    poch_infinite_multi(&args, base * 2, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn finite_pochhammer_examples() {
        assert_eq!(poch_finite(MonomialArg::neg_q(1), 2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(poch_finite(MonomialArg::q(1), 1, 0).unwrap(), LaurentPoly::one());
        assert_eq!(poch_finite(MonomialArg::q(1), 1, 2).unwrap(), p(&[1, -1, -1, 1]));
        assert_eq!(
            poch_finite(MonomialArg::q(1), 1, -1),
            Err(Error::NegativeIndexNonPolynomial(-1))
        );
    }

    #[test]
    fn infinite_pochhammer_examples() {
        let euler = poch_infinite(MonomialArg::q(1), 1, HalfExp::int(12)).unwrap();
        let mut expect = p(&[1, -1, -1, 0, 0, 1, 0, 1]);
        expect -= &LaurentPoly::q_pow(12);
        assert_eq!(euler.poly(), &expect);
        let far = poch_infinite(MonomialArg::q(99), 1, HalfExp::int(5)).unwrap();
        assert_eq!(far.poly(), &LaurentPoly::one());
        let odd = poch_infinite(MonomialArg::neg_q(1), 2, HalfExp::int(4)).unwrap();
        assert_eq!(odd.poly(), &p(&[1, 1, 0, 1, 1]));
        assert!(matches!(
            poch_infinite(MonomialArg::q(1), 0, HalfExp::int(4)),
            Err(Error::DivergentProduct(_))
        ));
    }

    #[test]
    fn infinite_pochhammer_with_negative_exponent_argument() {
        // (-q^{-1}; q)_∞ = (1 + q^{-1}) (1 + 1) (-q; q)_∞
        let s = poch_infinite(MonomialArg::neg_q(-1), 1, HalfExp::int(6)).unwrap();
        let tail = poch_infinite(MonomialArg::neg_q(1), 1, HalfExp::int(7)).unwrap();
        let expect = TruncatedSeries::new(
            &tail.poly().mul_truncated(&p(&[2, 2]).shift(HalfExp::int(-1)), HalfExp::int(6)),
            HalfExp::int(6),
        );
        assert_eq!(s, expect);
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(2, 1, 1), p(&[1, 1]));
        assert_eq!(qbinom(4, 2, 1), p(&[1, 1, 2, 1, 1]));
        assert!(qbinom(3, 5, 1).is_zero());
        assert!(qbinom(3, -1, 1).is_zero());
        assert_eq!(qbinom(4, 2, 1).eval_at_one(), BigInt::from(6));
    }

    #[test]
    fn qexp_examples() {
        assert_eq!(qexp_sum(0, MonomialArg::q(5), 1), LaurentPoly::one());
        assert_eq!(qexp_sum(2, MonomialArg::q(1), 1), p(&[1, 1, 1, 1]));
        assert_eq!(qexp_sum(1, MonomialArg::neg_q(1), 1), p(&[1, -1]));
        assert_eq!(qexp_sum_parity(2, MonomialArg::q(1), 1, 0).unwrap(), p(&[1, 0, 0, 1]));
        assert!(qexp_sum_parity(0, MonomialArg::q(1), 1, 1).unwrap().is_zero());
        assert!(qexp_sum_parity(2, MonomialArg::q(1), 1, 2).is_err());
    }

    #[test]
    fn finite_jtp_examples() {
        assert_eq!(finite_jtp_lhs(0, MonomialArg::q(2), 3), LaurentPoly::one());
        let lhs = finite_jtp_lhs(1, MonomialArg::q(2), 3);
        assert_eq!(lhs, p(&[1, 1, 0, 0, 0, 1, 1]));
        assert_eq!(finite_jtp_rhs(1, MonomialArg::q(2), 3), lhs);
        // z = -q^{1/2} at base q^{1/2}: the Kronecker delta
        let z = MonomialArg::neg_q(HalfExp::from_twice(1));
        for m in 1..=6 {
            assert!(finite_jtp_lhs(m, z, HalfExp::from_twice(1)).is_zero(), "M = {m}");
        }
    }

    #[test]
    fn theta_examples() {
        let order = HalfExp::int(40);
        let pent = jtp_theta(MonomialArg::neg_q(HalfExp::from_twice(1)), HalfExp::from_twice(3), order).unwrap();
        assert_eq!(pent, poch_infinite(MonomialArg::q(1), 1, order).unwrap());
        let zero = jtp_theta(MonomialArg::q(2), 3, HalfExp::ZERO).unwrap();
        assert_eq!(zero.poly(), &LaurentPoly::one());
        let z = MonomialArg::q(2);
        assert_eq!(jtp_theta(z, 3, HalfExp::int(30)).unwrap(), jtp_product(z, 3, HalfExp::int(30)).unwrap());
        assert!(matches!(jtp_theta(z, 0, order), Err(Error::DivergentTheta(_))));
    }
}
