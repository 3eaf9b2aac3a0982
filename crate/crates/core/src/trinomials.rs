//! Andrews-Baxter q-trinomial coefficients and Warnaar's refined trinomials.
//!
//! All functions take the effective variable as `q^base` with `base >= 1`.
//! Pochhammer quotients are formed by exact division; a nonzero remainder is
//! reported as [`Error::NonExactDivision`].
//!
//! The limit formulas are checked as truncated identities. Each check computes
//! the window through which the finite object provably agrees with its limit,
//! compares both sides there, and adds a stabilization witness: the next
//! admissible parameter value must agree on the same window.

use crate::error::{Error, Result};
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::{poch_finite, poch_infinite, qbinom, MonomialArg};
use crate::series::TruncatedSeries;
use crate::sums::sum_upward;

/// `(q^base; q^base)_n`.
pub fn q_factorial(n: i64, base: i64) -> LaurentPoly {
    poch_finite(MonomialArg::q(base), base, n).expect("nonnegative index")
}

/// `(q^base; q^base)_num / prod_i (q^base; q^base)_{dens[i]}` by exact division.
///
/// A negative denominator index makes the quotient vanish.
pub fn poch_quotient(num: i64, dens: &[i64], base: i64) -> Result<LaurentPoly> {
    if dens.iter().any(|d| *d < 0) {
        return Ok(LaurentPoly::zero());
    }
    if num < 0 {
        return Err(Error::NegativeIndexNonPolynomial(num));
    }
    let mut p = q_factorial(num, base);
    for &d in dens {
        for i in 1..=d {
            p = p.div_one_minus(HalfExp::int(base * i))?;
        }
    }
    Ok(p)
}

/// The round trinomial `(L, b; a; q^base)_2`.
pub fn round_trinomial(l: i64, b: i64, a: i64, base: i64) -> Result<LaurentPoly> {
    if l < 0 {
        return Ok(LaurentPoly::zero());
    }
    let mut err = None;
    let sum = sum_upward(0, l, |n| {
        if n + a < 0 || l - 2 * n - a < 0 || err.is_some() {
            return LaurentPoly::zero();
        }
        match poch_quotient(l, &[n, n + a, l - 2 * n - a], base) {
            Ok(p) => p.shift(HalfExp::int(base * n * (n + b))),
            Err(e) => {
                err = Some(e);
                LaurentPoly::zero()
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(sum),
    }
}

/// `T_0(L, a; q^base)`: the reflected round trinomial
/// `q^{base (L^2 - a^2) / 2} (L, a; a; q^{-base})_2`.
pub fn t_zero(l: i64, a: i64, base: i64) -> Result<LaurentPoly> {
    if l < 0 || a.abs() > l {
        return Ok(LaurentPoly::zero());
    }
    let reflected = round_trinomial(l, a, a, base)?.substitute_power(-1);
    let out = reflected.shift(HalfExp::from_twice(base * (l * l - a * a)));
    if let Some(lo) = out.min_exp() {
        if lo.twice() < 0 {
            return Err(Error::NegativeExponentResult(lo.to_string()));
        }
    }
    Ok(out)
}

/// Which quadratic exponent the refined T-summand carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TVariant {
    /// `q^{n^2/2}`
    Half,
    /// `q^{n(n-1)/2}`
    Plus,
    /// `q^{n(n+1)/2}`
    Minus,
}

impl TVariant {
    fn twice_exponent(self, n: i64, base: i64) -> i64 {
        base * match self {
            TVariant::Half => n * n,
            TVariant::Plus => n * (n - 1),
            TVariant::Minus => n * (n + 1),
        }
    }
}

/// One summand of the refined T-trinomial; zero when `n` has the wrong parity.
pub fn refined_t_summand(l: i64, m: i64, a: i64, b: i64, base: i64, n: i64, variant: TVariant) -> LaurentPoly {
    if n < 0 || (l - a - n).rem_euclid(2) != 0 {
        return LaurentPoly::zero();
    }
    let k1 = (l - a - n) / 2;
    let k2 = (l + a - n) / 2;
    let first = qbinom(m, n, base);
    if first.is_zero() {
        return first;
    }
    let second = qbinom(m + b + k1, m + b, base);
    if second.is_zero() {
        return second;
    }
    let third = qbinom(m - b + k2, m - b, base);
    if third.is_zero() {
        return third;
    }
    (&(&first * &second) * &third).shift(HalfExp::from_twice(variant.twice_exponent(n, base)))
}

fn refined_t_with(l: i64, m: i64, a: i64, b: i64, base: i64, variant: TVariant) -> LaurentPoly {
    if l < 0 || m < 0 {
        return LaurentPoly::zero();
    }
    sum_upward(0, m, |n| refined_t_summand(l, m, a, b, base, n, variant))
}

/// Warnaar's refined trinomial `T(L, M; a, b; q^base)`.
pub fn refined_t(l: i64, m: i64, a: i64, b: i64, base: i64) -> LaurentPoly {
    refined_t_with(l, m, a, b, base, TVariant::Half)
}

/// `T_{+1}` (`variant = 1`) or `T_{-1}` (`variant = -1`).
pub fn refined_t_pm(l: i64, m: i64, a: i64, b: i64, base: i64, variant: i8) -> Result<LaurentPoly> {
    let v = match variant {
        1 => TVariant::Plus,
        -1 => TVariant::Minus,
        other => return Err(Error::InvalidParameter(format!("variant must be +1 or -1, got {other}"))),
    };
    Ok(refined_t_with(l, m, a, b, base, v))
}

/// One summand of the refined S-trinomial.
pub fn refined_s_summand(l: i64, m: i64, a: i64, b: i64, base: i64, n: i64) -> LaurentPoly {
    if n < 0 {
        return LaurentPoly::zero();
    }
    let first = qbinom(m + l - a - 2 * n, m, base);
    if first.is_zero() {
        return first;
    }
    let second = qbinom(m - a + b, n, base);
    if second.is_zero() {
        return second;
    }
    let third = qbinom(m + a - b, n + a, base);
    if third.is_zero() {
        return third;
    }
    (&(&first * &second) * &third).shift(HalfExp::int(base * n * (n + a)))
}

/// Warnaar's refined trinomial `S(L, M; a, b; q^base)`.
pub fn refined_s(l: i64, m: i64, a: i64, b: i64, base: i64) -> LaurentPoly {
    if l < 0 || m < 0 {
        return LaurentPoly::zero();
    }
    let bound = (m - a + b).min(m - b).max(0);
    sum_upward(0, bound, |n| refined_s_summand(l, m, a, b, base, n))
}

fn agree(a: &LaurentPoly, b: &LaurentPoly, window: HalfExp) -> bool {
    a.first_mismatch(b, Some(window)).is_none()
}

/// `M -> ∞`: `T(L, M) (q;q)_L` agrees with `T_0(L, a)` through
/// `base (M - L - |b|)`, and so does `T(L, M + 1)`.
///
/// Returns `false` when that window is empty (`M_big < L + |b|`).
pub fn check_t_m_stabilization(l: i64, a: i64, b: i64, base: i64, m_big: i64) -> bool {
    let w = m_big - l - b.abs();
    if w < 0 {
        return false;
    }
    let window = HalfExp::int(base * w);
    let Ok(t0) = t_zero(l, a, base) else { return false };
    let fact = q_factorial(l, base);
    let here = refined_t(l, m_big, a, b, base);
    let next = refined_t(l, m_big + 1, a, b, base);
    agree(&here.mul_truncated(&fact, window), &t0, window) && agree(&here, &next, window)
}

/// `L -> ∞` along `L - a ≡ sigma`: `2 T(L, M) (q;q)_{2M}` agrees with
/// `((-q^{1/2};q)_M + (-1)^sigma (q^{1/2};q)_M) [2M choose M-b]` through
/// `base floor((L - |a| - M) / 2)`, and so does `T(L + 2, M)`.
pub fn check_t_l_stabilization(m: i64, a: i64, b: i64, base: i64, sigma: u8, l_big: i64) -> bool {
    if sigma > 1 || (l_big - a - sigma as i64).rem_euclid(2) != 0 {
        return false;
    }
    let w = (l_big - a.abs() - m).div_euclid(2);
    if w < 0 || m < 0 {
        return false;
    }
    let window = HalfExp::int(base * w);
    let half = HalfExp::from_twice(base);
    let plus = poch_finite(MonomialArg::neg_q(half), base, m).expect("m >= 0");
    let minus = poch_finite(MonomialArg::q(half), base, m).expect("m >= 0");
    let parity = if sigma == 0 { plus + minus } else { plus - minus };
    let rhs = &parity * &qbinom(2 * m, m - b, base);
    let here = refined_t(l_big, m, a, b, base);
    let next = refined_t(l_big + 2, m, a, b, base);
    let lhs = here.mul_truncated(&q_factorial(2 * m, base), window).scale_i64(2);
    agree(&lhs, &rhs, window) && agree(&here, &next, window)
}

/// `L -> ∞` along `L - a ≡ sigma`: `2 T_0(L, a) (q;q)_∞` agrees with
/// `(-q^{1/2};q)_∞ + (-1)^sigma (q^{1/2};q)_∞` through `base floor((L - |a|)/2)`,
/// and so does `T_0(L + 2, a)`.
pub fn check_t_zero_l_stabilization(l: i64, a: i64, base: i64) -> bool {
    let w = (l - a.abs()).div_euclid(2);
    if w < 0 {
        return false;
    }
    let sigma = (l - a).rem_euclid(2);
    let window = HalfExp::int(base * w);
    let (Ok(here), Ok(next)) = (t_zero(l, a, base), t_zero(l + 2, a, base)) else {
        return false;
    };
    let half = HalfExp::from_twice(base);
    let euler = poch_infinite(MonomialArg::q(base), base, window).expect("positive base");
    let plus = poch_infinite(MonomialArg::neg_q(half), base, window).expect("positive base");
    let minus = poch_infinite(MonomialArg::q(half), base, window).expect("positive base");
    let rhs = if sigma == 0 { &plus + &minus } else { &plus - &minus };
    let lhs = TruncatedSeries::new(&here, window).mul_poly(&LaurentPoly::constant(2));
    let lhs = &lhs * &euler;
    lhs.equal_through(&rhs, window) && agree(&here, &next, window)
}

/// `L -> ∞` for `a >= 0`: `(L, a; a)_2` agrees with `1/(q;q)_∞` through the
/// smallest exponent at which a truncated or missing summand can differ.
pub fn check_round_l_stabilization(l: i64, a: i64, base: i64) -> bool {
    if a < 0 || l < a {
        return false;
    }
    let top = (l - a) / 2;
    let truncated = (0..=top).map(|n| n * (n + a) + l - 2 * n - a).min().unwrap();
    let missing = (top + 1) * (top + 1 + a) - 1;
    let w = truncated.min(missing);
    if w < 0 {
        return false;
    }
    let window = HalfExp::int(base * w);
    let (Ok(here), Ok(next)) = (round_trinomial(l, a, a, base), round_trinomial(l + 1, a, a, base)) else {
        return false;
    };
    let inv = poch_infinite(MonomialArg::q(base), base, window)
        .and_then(|s| s.inverse())
        .expect("unit series");
    TruncatedSeries::new(&here, window).equal_through(&inv, window) && agree(&here, &next, window)
}

/// Which parameter of `S(L, M; a, b)` tends to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SLimit {
    /// `M -> ∞`: `S (q;q)_L -> (L, a; a)_2`.
    InM,
    /// `L -> ∞`: `S (q;q)_M -> [2M choose M - b]`.
    InL,
}

/// Limit checks for the refined S-trinomial; the parameter named by `which`
/// is the large one, and the witness steps it by one.
pub fn check_s_limits(l: i64, m: i64, a: i64, b: i64, base: i64, which: SLimit) -> bool {
    match which {
        SLimit::InM => {
            let n_top = (l - a).div_euclid(2);
            let w = if n_top < 0.max(-a) {
                m
            } else {
                m.min(m - a + b - n_top).min(m - b - n_top)
            };
            if w < 0 {
                return false;
            }
            let window = HalfExp::int(base * w);
            let Ok(round) = round_trinomial(l, a, a, base) else { return false };
            let here = refined_s(l, m, a, b, base);
            let next = refined_s(l, m + 1, a, b, base);
            agree(&here.mul_truncated(&q_factorial(l, base), window), &round, window)
                && agree(&here, &next, window)
        }
        SLimit::InL => {
            let n_max = (m - a + b).min(m - b);
            let w = if n_max < 0.max(-a) { l } else { l - a - 2 * n_max };
            if w < 0 {
                return false;
            }
            let window = HalfExp::int(base * w);
            let here = refined_s(l, m, a, b, base);
            let next = refined_s(l + 1, m, a, b, base);
            let rhs = qbinom(2 * m, m - b, base);
            agree(&here.mul_truncated(&q_factorial(m, base), window), &rhs, window)
                && agree(&here, &next, window)
        }
    }
}
