//! The T-hierarchy obtained by iterating the T-to-T transform on the seed,
//! and its limits.

use super::{isqrt, poly, series, series_over, Binding, SideValue};
use crate::error::Result;
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::{poch_finite, poch_infinite, poch_infinite_multi, qbinom, MonomialArg};
use crate::series::TruncatedSeries;
use crate::sums::{for_each_bounded_tuple, suffix_sums, sum_bilateral};
use crate::trinomials::{refined_t, t_zero};

/// `prod_{j < nu} [L - (N_1 + .. + N_j) + n_j, n_j]_{q^6}`; zero when any top
/// falls below its bottom.
fn chain_product(l: i64, n: &[i64], big_n: &[i64], base: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut prefix = 0;
    for j in 0..n.len() - 1 {
        prefix += big_n[j];
        let f = qbinom(l - prefix + n[j], n[j], base);
        if f.is_zero() {
            return f;
        }
        acc = &acc * &f;
    }
    acc
}

/// The finite multi-sum of the T-hierarchy. `lead(N_1)` is the leading
/// binomial (or 1 for the M-limit), and `cap` bounds `N_1`.
fn t_multi_sum(nu: i64, l: i64, cap: i64, lead: impl Fn(i64) -> LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for_each_bounded_tuple(nu as usize, cap, |n| {
        let big_n = suffix_sums(n);
        let total: i64 = big_n.iter().sum();
        if total > l {
            return;
        }
        let first = lead(big_n[0]);
        if first.is_zero() {
            return;
        }
        let chain = chain_product(l, n, &big_n, 6);
        if chain.is_zero() {
            return;
        }
        let n_nu = n[n.len() - 1];
        let sq: i64 = big_n.iter().map(|x| x * x).sum();
        let mut inner = LaurentPoly::zero();
        for m in 0..=(3 * n_nu).min(l - total) {
            if (l + m - total) % 2 != 0 {
                continue;
            }
            let a = qbinom(3 * n_nu, m, 2);
            let b = qbinom(2 * n_nu + (l - m - total) / 2, 2 * n_nu, 6);
            inner += (&a * &b).shift(HalfExp::int(m * m + 3 * sq));
        }
        if !inner.is_zero() {
            acc += &(&first * &chain) * &inner;
        }
    });
    acc
}

fn nlm(b: &Binding) -> Result<(i64, i64, i64)> {
    Ok((b.req("nu")?, b.req("L")?, b.req("M")?))
}

pub(crate) fn t_hierarchy_lhs(nu: i64, l: i64, m: i64) -> LaurentPoly {
    t_multi_sum(nu, l, m.min(l), |n1| qbinom(l + m - n1, l, 6))
}

pub(crate) fn t_hierarchy_rhs(nu: i64, l: i64, m: i64) -> LaurentPoly {
    sum_bilateral((l / (nu + 1)).min(m), |j| {
        refined_t(l, m, (nu + 1) * j, j, 6).shift(HalfExp::int(3 * (nu + 1) * j * j + 2 * j))
    })
}

pub(super) fn hier_lhs(b: &Binding) -> Result<SideValue> {
    let (nu, l, m) = nlm(b)?;
    poly(t_hierarchy_lhs(nu, l, m))
}

pub(super) fn hier_rhs(b: &Binding) -> Result<SideValue> {
    let (nu, l, m) = nlm(b)?;
    poly(t_hierarchy_rhs(nu, l, m))
}

pub(super) fn lim_m_lhs(b: &Binding) -> Result<SideValue> {
    let (nu, l) = (b.req("nu")?, b.req("L")?);
    poly(t_multi_sum(nu, l, l, |_| LaurentPoly::one()))
}

pub(super) fn lim_m_rhs(b: &Binding) -> Result<SideValue> {
    let (nu, l) = (b.req("nu")?, b.req("L")?);
    let mut acc = LaurentPoly::zero();
    for j in -(l / (nu + 1))..=l / (nu + 1) {
        acc += t_zero(l, (nu + 1) * j, 6)?.shift(HalfExp::int(3 * (nu + 1) * j * j + 2 * j));
    }
    poly(acc)
}

/// `sum q^{3 sum N^2} (-q;q^2)_{3 n_nu} / (prod_{k<nu} (q^6;q^6)_{n_k} (q^6;q^6)_{2 n_nu})`,
/// with an extra `1/(q^6;q^6)_{M - N_1}` when `m` is given.
fn limit_series(nu: i64, m: Option<i64>, order: HalfExp) -> Result<TruncatedSeries> {
    let cap = match m {
        Some(m) => m,
        None => isqrt(order.floor() / 3),
    };
    let mut acc = TruncatedSeries::zero(order);
    let mut err = None;
    for_each_bounded_tuple(nu as usize, cap, |n| {
        let big_n = suffix_sums(n);
        let e: i64 = 3 * big_n.iter().map(|x| x * x).sum::<i64>();
        if HalfExp::int(e) > order || err.is_some() {
            return;
        }
        let n_nu = n[n.len() - 1];
        let num = match poch_finite(MonomialArg::neg_q(1), 2, 3 * n_nu) {
            Ok(p) => p.shift(HalfExp::int(e)),
            Err(x) => {
                err = Some(x);
                return;
            }
        };
        let mut dens: Vec<(i64, i64)> = n[..n.len() - 1].iter().map(|&k| (6, k)).collect();
        dens.push((6, 2 * n_nu));
        if let Some(m) = m {
            dens.push((6, m - big_n[0]));
        }
        acc = &acc + &series_over(&num, &dens, order);
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

fn lim_l_rhs_series(nu: i64, m: i64, order: HalfExp) -> Result<TruncatedSeries> {
    let theta = sum_bilateral(m, |j| {
        qbinom(2 * m, m + j, 6).shift(HalfExp::int(3 * (nu + 1) * j * j + 2 * j))
    });
    let num = &poch_finite(MonomialArg::neg_q(3), 6, m)? * &theta;
    Ok(series_over(&num, &[(6, 2 * m)], order))
}

pub(super) fn lim_l_lhs(b: &Binding) -> Result<SideValue> {
    series(limit_series(b.req("nu")?, Some(b.req("M")?), b.order()?)?)
}

pub(super) fn lim_l_rhs(b: &Binding) -> Result<SideValue> {
    series(lim_l_rhs_series(b.req("nu")?, b.req("M")?, b.order()?)?)
}

pub(super) fn nu1_lim_l_lhs(b: &Binding) -> Result<SideValue> {
    series(limit_series(1, Some(b.req("M")?), b.order()?)?)
}

pub(super) fn nu1_lim_l_rhs(b: &Binding) -> Result<SideValue> {
    series(lim_l_rhs_series(1, b.req("M")?, b.order()?)?)
}

pub(super) fn end_lhs(b: &Binding) -> Result<SideValue> {
    series(limit_series(b.req("nu")?, None, b.order()?)?)
}

pub(super) fn end_rhs(b: &Binding) -> Result<SideValue> {
    let (nu, order) = (b.req("nu")?, b.order()?);
    let k = 6 * (nu + 1);
    let jtp = poch_infinite_multi(
        &[MonomialArg::q(k), MonomialArg::neg_q(3 * nu + 1), MonomialArg::neg_q(3 * nu + 5)],
        k,
        order,
    )?;
    let mut s = &jtp * &poch_infinite(MonomialArg::neg_q(3), 3, order)?;
    for i in 1..=order.floor() / 12 {
        s = s.div_one_minus(HalfExp::int(12 * i));
    }
    series(s)
}
