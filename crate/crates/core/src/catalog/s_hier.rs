//! The S-hierarchy from the T-to-S transform, its limits and Capparelli's
//! identity.

use std::collections::BTreeMap;

use super::{isqrt, poly, series, series_over, Binding, SideValue};
use crate::error::Result;
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::{poch_infinite, poch_infinite_multi, qbinom, MonomialArg};
use crate::series::TruncatedSeries;
use crate::sums::{for_each_bounded_tuple, suffix_sums, sum_bilateral};
use crate::trinomials::{q_factorial, refined_s, round_trinomial};

/// `C(nu + 2, 2)`.
fn c2(nu: i64) -> i64 {
    (nu + 2) * (nu + 1) / 2
}

/// For fixed `i`, the part of the S-hierarchy summand that does not involve
/// `L` or `M`, summed over `m` and the tuple and grouped by `N_1`.
fn s_inner(nu: i64, i: i64) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for_each_bounded_tuple(nu as usize, i, |n| {
        let big_n = suffix_sums(n);
        let total: i64 = big_n.iter().sum();
        if total > i {
            return;
        }
        let mut chain = LaurentPoly::one();
        let mut prefix = 0;
        for j in 0..n.len() - 1 {
            prefix += big_n[j];
            let f = qbinom(i - prefix + n[j], n[j], 3);
            if f.is_zero() {
                return;
            }
            chain = &chain * &f;
        }
        let n_nu = n[n.len() - 1];
        let sq: i64 = big_n.iter().map(|x| x * x).sum();
        let mut inner = LaurentPoly::zero();
        for m in 0..=(3 * n_nu).min(i - total) {
            if (i + m - total) % 2 != 0 {
                continue;
            }
            let a = qbinom(3 * n_nu, m, 1);
            let b = qbinom(2 * n_nu + (i - m - total) / 2, 2 * n_nu, 3);
            inner += (&a * &b).shift(HalfExp::from_twice(m * m + 3 * (i * i + sq)));
        }
        if !inner.is_zero() {
            *out.entry(big_n[0]).or_insert_with(LaurentPoly::zero) += &chain * &inner;
        }
    });
    out
}

/// `sum_{i <= i_max} sum_{N_1} weight(i, N_1) * s_inner(nu, i)[N_1]`.
fn s_multi_sum(nu: i64, i_max: i64, weight: impl Fn(i64, i64) -> LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for i in 0..=i_max {
        for (n1, p) in s_inner(nu, i) {
            let w = weight(i, n1);
            if !w.is_zero() {
                acc += &w * &p;
            }
        }
    }
    acc
}

pub(crate) fn s_hierarchy_lhs(nu: i64, l: i64, m: i64) -> LaurentPoly {
    s_multi_sum(nu, l.min(m), |i, n1| &qbinom(l + m - i, l, 3) * &qbinom(l - n1, i, 3))
}

pub(crate) fn s_hierarchy_rhs(nu: i64, l: i64, m: i64) -> LaurentPoly {
    let c = c2(nu);
    sum_bilateral(l + m, |j| {
        refined_s(l, m, (nu + 2) * j, (nu + 1) * j, 3).shift(HalfExp::int(3 * c * j * j + j))
    })
}

pub(crate) fn nu0_s_lhs(l: i64, m: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for i in 0..=l.min(m) {
        let lead = qbinom(l + m - i, l, 3);
        for k in (i % 2..=i.min(3 * (l - i))).step_by(2) {
            let a = qbinom(3 * (l - i), k, 1);
            let b = qbinom(2 * (l - i) + (i - k) / 2, 2 * (l - i), 3);
            acc += (&(&lead * &a) * &b).shift(HalfExp::from_twice(k * k + 3 * i * i));
        }
    }
    acc
}

pub(crate) fn nu0_s_rhs(l: i64, m: i64) -> LaurentPoly {
    sum_bilateral(l + m, |j| refined_s(l, m, 2 * j, j, 3).shift(HalfExp::int(3 * j * j + j)))
}

fn lm(b: &Binding) -> Result<(i64, i64)> {
    Ok((b.req("L")?, b.req("M")?))
}

pub(super) fn nu0_lhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(nu0_s_lhs(l, m))
}

pub(super) fn nu0_rhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(nu0_s_rhs(l, m))
}

pub(super) fn hier_lhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(s_hierarchy_lhs(b.req("nu")?, l, m))
}

pub(super) fn hier_rhs(b: &Binding) -> Result<SideValue> {
    let (l, m) = lm(b)?;
    poly(s_hierarchy_rhs(b.req("nu")?, l, m))
}

pub(super) fn lim_m_lhs(b: &Binding) -> Result<SideValue> {
    let (nu, l) = (b.req("nu")?, b.req("L")?);
    poly(s_multi_sum(nu, l, |i, n1| qbinom(l - n1, i, 3)))
}

pub(super) fn lim_m_rhs(b: &Binding) -> Result<SideValue> {
    let (nu, l) = (b.req("nu")?, b.req("L")?);
    let c = c2(nu);
    let mut acc = LaurentPoly::zero();
    // the round trinomial needs n + a >= 0 and L - 2n - a >= 0, so |a| <= L
    for j in -(l / (nu + 2))..=l / (nu + 2) {
        let a = (nu + 2) * j;
        acc += round_trinomial(l, a, a, 3)?.shift(HalfExp::int(3 * c * j * j + j));
    }
    poly(acc)
}

pub(super) fn lim_l_lhs(b: &Binding) -> Result<SideValue> {
    let (nu, m) = (b.req("nu")?, b.req("M")?);
    poly(s_multi_sum(nu, m, |i, _| qbinom(m, i, 3)))
}

pub(super) fn lim_l_rhs(b: &Binding) -> Result<SideValue> {
    let (nu, m) = (b.req("nu")?, b.req("M")?);
    let c = c2(nu);
    poly(sum_bilateral(m, |j| {
        qbinom(2 * m, m + (nu + 1) * j, 3).shift(HalfExp::int(3 * c * j * j + j))
    }))
}

pub(super) fn end_lhs(b: &Binding) -> Result<SideValue> {
    let (nu, order) = (b.req("nu")?, b.order()?);
    let mut acc = TruncatedSeries::zero(order);
    // every summand carries q^{3 i^2 / 2}
    for i in 0..=isqrt(2 * order.floor() / 3) {
        let inner: LaurentPoly = s_inner(nu, i).into_values().sum();
        acc = &acc + &series_over(&inner, &[(3, i)], order);
    }
    series(acc)
}

pub(super) fn end_rhs(b: &Binding) -> Result<SideValue> {
    let (nu, order) = (b.req("nu")?, b.order()?);
    let c = c2(nu);
    let mut s = poch_infinite_multi(
        &[MonomialArg::q(6 * c), MonomialArg::neg_q(3 * c + 1), MonomialArg::neg_q(3 * c - 1)],
        6 * c,
        order,
    )?;
    for i in 1..=order.floor() / 3 {
        s = s.div_one_minus(HalfExp::int(3 * i));
    }
    series(s)
}

fn q_form(m: i64, n: i64) -> i64 {
    2 * m * m + 6 * m * n + 6 * n * n
}

pub(super) fn andrews_k_lhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    let mut acc = LaurentPoly::zero();
    for n in 0..=l / 2 {
        for m in 0..=l - 2 * n {
            let r = l - 2 * n - m;
            let a = qbinom(3 * r, m, 1);
            if a.is_zero() {
                continue;
            }
            acc += (&a * &qbinom(2 * r + n, n, 3)).shift(HalfExp::int(q_form(m, n)));
        }
    }
    poly(acc)
}

pub(super) fn andrews_k_rhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    let mut acc = LaurentPoly::zero();
    for j in -(l / 2)..=l / 2 {
        acc += round_trinomial(l, 2 * j, 2 * j, 3)?.shift(HalfExp::int(3 * j * j + j));
    }
    poly(acc)
}

pub(super) fn andrews_dk_lhs(b: &Binding) -> Result<SideValue> {
    let (m_big, order) = (b.req("M")?, b.order()?);
    let top = q_factorial(m_big, 3);
    let mut acc = TruncatedSeries::zero(order);
    for n in 0..=m_big / 2 {
        for m in 0..=m_big - 2 * n {
            let e = q_form(m, n);
            if HalfExp::int(e) > order {
                break;
            }
            let dens = [(1, m), (3, n), (3, m_big - 2 * n - m)];
            acc = &acc + &series_over(&top.shift(HalfExp::int(e)), &dens, order);
        }
    }
    series(acc)
}

pub(super) fn andrews_dk_rhs(b: &Binding) -> Result<SideValue> {
    let (m, order) = (b.req("M")?, b.order()?);
    let p = sum_bilateral(m, |j| qbinom(2 * m, m + j, 3).shift(HalfExp::int(3 * j * j + j)));
    series(TruncatedSeries::new(&p, order))
}

pub(super) fn kr1_lhs(b: &Binding) -> Result<SideValue> {
    let order = b.order()?;
    let mut acc = TruncatedSeries::zero(order);
    let cap = order.floor();
    for n in 0..=isqrt(cap / 6) {
        for m in 0.. {
            let e = q_form(m, n);
            if e > cap {
                break;
            }
            acc = &acc + &series_over(&LaurentPoly::q_pow(e), &[(1, m), (3, n)], order);
        }
    }
    series(acc)
}

pub(super) fn kr1_rhs(b: &Binding) -> Result<SideValue> {
    let order = b.order()?;
    let a = poch_infinite_multi(&[MonomialArg::neg_q(2), MonomialArg::neg_q(4)], 6, order)?;
    series(&a * &poch_infinite(MonomialArg::neg_q(3), 3, order)?)
}
