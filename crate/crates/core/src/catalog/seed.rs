//! The seed identity, its two limits and the two variants with shifted exponents.

use super::{poly, Binding, SideValue};
use crate::error::Result;
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::{poch_finite, qbinom, MonomialArg};
use crate::sums::{sum_bilateral, sum_upward};
use crate::trinomials::{q_factorial, refined_t, refined_t_pm, t_zero};

/// `sum_{m ≡ L} q^{m^2 + eps m} [3M, m]_{q^2} [2M + (L-m)/2, 2M]_{q^6}`.
pub(crate) fn seed_sum(l: i64, m: i64, eps: i64) -> LaurentPoly {
    sum_upward(0, l.min(3 * m), |k| {
        if (l - k) % 2 != 0 {
            return LaurentPoly::zero();
        }
        let a = qbinom(3 * m, k, 2);
        if a.is_zero() {
            return a;
        }
        let b = qbinom(2 * m + (l - k) / 2, 2 * m, 6);
        (&a * &b).shift(HalfExp::int(k * k + eps * k))
    })
}

fn lm(b: &Binding) -> Result<(i64, i64)> {
    Ok((b.req("L")?, b.req("M")?))
}

pub(super) fn seed_lhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(seed_sum(l, m, 0))
}

/// `sum_j q^{3j^2+2j} T(L, M; j, j; q^6)`.
pub(crate) fn seed_rhs_sum(l: i64, m: i64) -> LaurentPoly {
    sum_bilateral(l.min(m), |j| refined_t(l, m, j, j, 6).shift(HalfExp::int(3 * j * j + 2 * j)))
}

pub(super) fn seed_rhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(seed_rhs_sum(l, m))
}

pub(super) fn plus_lhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(seed_sum(l, m, -1))
}

pub(super) fn minus_lhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(seed_sum(l, m, 1))
}

fn variant_rhs(b: &Binding, variant: i8) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(sum_bilateral(l.min(m), |j| {
        refined_t_pm(l, m, j, j, 6, variant)
            .expect("variant is +1 or -1")
            .shift(HalfExp::int(3 * j * j + j))
    }))
}

pub(super) fn plus_rhs(b: &Binding) -> Result<SideValue> {
    variant_rhs(b, 1)
}

pub(super) fn minus_rhs(b: &Binding) -> Result<SideValue> {
    variant_rhs(b, -1)
}

pub(super) fn lim_m_lhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    let mut acc = LaurentPoly::zero();
    let top = q_factorial(l, 6);
    for m in (l % 2..=l).step_by(2) {
        let mut p = top.clone();
        for i in 1..=m {
            p = p.div_one_minus(HalfExp::int(2 * i))?;
        }
        for i in 1..=(l - m) / 2 {
            p = p.div_one_minus(HalfExp::int(6 * i))?;
        }
        acc += p.shift(HalfExp::int(m * m));
    }
    poly(acc)
}

pub(super) fn lim_m_rhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    let mut acc = LaurentPoly::zero();
    for j in -l..=l {
        acc += t_zero(l, j, 6)?.shift(HalfExp::int(3 * j * j + 2 * j));
    }
    poly(acc)
}

fn sign(sigma: i64) -> i64 {
    if sigma == 0 {
        1
    } else {
        -1
    }
}

pub(super) fn tlim_lhs(b: &Binding) -> Result<SideValue> {
    let (m, sigma) = (b.req("M")?, b.req("sigma")?);
    let plus = poch_finite(MonomialArg::neg_q(1), 2, 3 * m)?;
    let minus = poch_finite(MonomialArg::q(1), 2, 3 * m)?;
    poly(plus + minus.scale_i64(sign(sigma)))
}

pub(super) fn tlim_rhs(b: &Binding) -> Result<SideValue> {
    let (m, sigma) = (b.req("M")?, b.req("sigma")?);
    let theta = |alt: bool| {
        sum_bilateral(m, |j| {
            let t = qbinom(2 * m, m + j, 6).shift(HalfExp::int(3 * j * j + 2 * j));
            if alt && j % 2 != 0 {
                -t
            } else {
                t
            }
        })
    };
    let plus = &poch_finite(MonomialArg::neg_q(3), 6, m)? * &theta(false);
    let minus = &poch_finite(MonomialArg::q(3), 6, m)? * &theta(true);
    poly(plus + minus.scale_i64(sign(sigma)))
}
