//! Iterated-binomial warm-ups, Euler, Rogers-Ramanujan, Andrews-Gordon and
//! the finite Jacobi triple product.

use super::{binom2, isqrt, poly, series, series_over, signed_q, Binding, SideValue};
use crate::error::Result;
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::{finite_jtp_lhs, finite_jtp_rhs, poch_finite_multi, poch_infinite, qbinom, MonomialArg};
use crate::series::TruncatedSeries;
use crate::sums::{for_each_bounded_tuple, suffix_sums, sum_bilateral};
use crate::trinomials::poch_quotient;

pub(super) fn intro_lhs(b: &Binding) -> Result<SideValue> {
    let (j, l) = (b.req("j")?, b.req("L")?);
    let mut acc = LaurentPoly::zero();
    for r in 0..=l {
        let bin = qbinom(2 * r, r - j, 1);
        if bin.is_zero() {
            continue;
        }
        let w = poch_quotient(2 * l, &[l - r, 2 * r], 1)?;
        acc += (&w * &bin).shift(HalfExp::int(r * r));
    }
    poly(acc)
}

pub(super) fn intro_rhs(b: &Binding) -> Result<SideValue> {
    let (j, l) = (b.req("j")?, b.req("L")?);
    poly(qbinom(2 * l, l - j, 1).shift(HalfExp::int(j * j)))
}

/// `sum_j (-1)^j q^{quad(j)} [2L, L+j]`.
fn alternating_binomial_sum(l: i64, quad: impl Fn(i64) -> i64) -> LaurentPoly {
    sum_bilateral(l, |j| {
        let bin = qbinom(2 * l, l + j, 1);
        if bin.is_zero() {
            return bin;
        }
        &bin * &signed_q(j % 2 != 0, 2 * quad(j))
    })
}

pub(super) fn kronecker_lhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    poly(if l == 0 { LaurentPoly::one() } else { LaurentPoly::zero() })
}

pub(super) fn kronecker_rhs(b: &Binding) -> Result<SideValue> {
    poly(alternating_binomial_sum(b.req("L")?, binom2))
}

pub(super) fn first_lhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    poly(poch_quotient(2 * l, &[l], 1)?)
}

pub(super) fn first_rhs(b: &Binding) -> Result<SideValue> {
    poly(alternating_binomial_sum(b.req("L")?, |j| j * j + binom2(j)))
}

pub(super) fn second_lhs(b: &Binding) -> Result<SideValue> {
    let l = b.req("L")?;
    let inner: LaurentPoly = (0..=l).map(|r| qbinom(l, r, 1).shift(HalfExp::int(r * r))).sum();
    poly(&poch_quotient(2 * l, &[l], 1)? * &inner)
}

pub(super) fn second_rhs(b: &Binding) -> Result<SideValue> {
    poly(alternating_binomial_sum(b.req("L")?, |j| 2 * j * j + binom2(j)))
}

pub(super) fn pentagonal_lhs(b: &Binding) -> Result<SideValue> {
    series(poch_infinite(MonomialArg::q(1), 1, b.order()?)?)
}

pub(super) fn pentagonal_rhs(b: &Binding) -> Result<SideValue> {
    let order = b.order()?;
    let s = sum_bilateral(0, |j| {
        let e = (3 * j * j - j) / 2;
        if HalfExp::int(e) > order {
            return LaurentPoly::zero();
        }
        signed_q(j % 2 != 0, 2 * e)
    });
    series(TruncatedSeries::new(&s, order))
}

pub(super) fn rr_lhs(b: &Binding) -> Result<SideValue> {
    let order = b.order()?;
    let mut acc = TruncatedSeries::zero(order);
    for r in 0..=isqrt(order.floor()) {
        acc = &acc + &series_over(&LaurentPoly::q_pow(r * r), &[(1, r)], order);
    }
    series(acc)
}

/// `prod 1/(1 - q^n)` over `1 <= n <= order` with `keep(n)`.
fn restricted_partition_product(order: HalfExp, keep: impl Fn(i64) -> bool) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for n in 1..=order.floor() {
        if keep(n) {
            s = s.div_one_minus(HalfExp::int(n));
        }
    }
    s
}

pub(super) fn rr_rhs(b: &Binding) -> Result<SideValue> {
    series(restricted_partition_product(b.order()?, |n| matches!(n % 5, 1 | 4)))
}

pub(super) fn ag_lhs(b: &Binding) -> Result<SideValue> {
    let (nu, order) = (b.req("nu")?, b.order()?);
    let mut acc = TruncatedSeries::zero(order);
    for_each_bounded_tuple(nu as usize, isqrt(order.floor()), |n| {
        let e: i64 = suffix_sums(n).iter().map(|x| x * x).sum();
        if HalfExp::int(e) > order {
            return;
        }
        let dens: Vec<(i64, i64)> = n.iter().map(|&k| (1, k)).collect();
        acc = &acc + &series_over(&LaurentPoly::q_pow(e), &dens, order);
    });
    series(acc)
}

pub(super) fn ag_rhs(b: &Binding) -> Result<SideValue> {
    let nu = b.req("nu")?;
    let modulus = 2 * nu + 3;
    series(restricted_partition_product(b.order()?, |n| {
        let r = n % modulus;
        r != 0 && r != nu + 1 && r != nu + 2
    }))
}

fn jtp_arg(b: &Binding) -> Result<(u32, MonomialArg)> {
    let (m, s, neg) = (b.req("M")?, b.req("s")?, b.req("neg")?);
    Ok((m as u32, MonomialArg::new(if neg == 1 { -1 } else { 1 }, HalfExp::int(s))))
}

pub(super) fn fjtp_lhs(b: &Binding) -> Result<SideValue> {
    let (m, z) = jtp_arg(b)?;
    poly(finite_jtp_lhs(m, z, 1))
}

pub(super) fn fjtp_rhs(b: &Binding) -> Result<SideValue> {
    let (m, z) = jtp_arg(b)?;
    poly(finite_jtp_rhs(m, z, 1))
}

pub(super) fn fjtp_q6_lhs(b: &Binding) -> Result<SideValue> {
    let m = b.req("M")?;
    poly(sum_bilateral(m, |j| qbinom(2 * m, m + j, 6).shift(HalfExp::int(3 * j * j + 2 * j))))
}

pub(super) fn fjtp_q6_rhs(b: &Binding) -> Result<SideValue> {
    let m = b.req("M")?;
    poly(poch_finite_multi(&[MonomialArg::neg_q(1), MonomialArg::neg_q(5)], 6, m)?)
}
