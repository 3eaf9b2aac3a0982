//! Recurrences for the seed identity: the summand recurrences for `G` and `F`,
//! the six-term recurrence for the summed sides `Ŝ(L, M)`, the boundary rows,
//! and reconstruction of `Ŝ` on a window from recurrence plus boundaries alone.

use std::collections::BTreeMap;

use crate::catalog::{seed_left, seed_right};
use crate::error::Result;
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::qbinom;

/// `G(L, M, k) = q^{(L-2k)^2} [3M, L-2k]_{q^2} [2M+k, k]_{q^6}`.
pub fn summand_g(l: i64, m: i64, k: i64) -> LaurentPoly {
    let r = l - 2 * k;
    if k < 0 || r < 0 || m < 0 {
        return LaurentPoly::zero();
    }
    let a = qbinom(3 * m, r, 2);
    if a.is_zero() {
        return a;
    }
    (&a * &qbinom(2 * m + k, k, 6)).shift(HalfExp::int(r * r))
}

/// `F(L, M, k, j) = q^{3j^2+2j+3(L-j-2k)^2} [M, L-j-2k]_{q^6} [M+j+k, k]_{q^6} [M+k, k+j]_{q^6}`.
pub fn summand_f(l: i64, m: i64, k: i64, j: i64) -> LaurentPoly {
    let r = l - j - 2 * k;
    if m < 0 || k < 0 {
        return LaurentPoly::zero();
    }
    let a = qbinom(m, r, 6);
    if a.is_zero() {
        return a;
    }
    let b = qbinom(m + j + k, k, 6);
    if b.is_zero() {
        return b;
    }
    let c = qbinom(m + k, k + j, 6);
    if c.is_zero() {
        return c;
    }
    (&(&a * &b) * &c).shift(HalfExp::int(3 * j * j + 2 * j + 3 * r * r))
}

/// One term of a linear recurrence: `coeff * X(L + dl, M + dm, k + dk, j + dj)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecTerm {
    pub coeff: LaurentPoly,
    pub dl: i64,
    pub dm: i64,
    pub dk: i64,
    pub dj: i64,
}

fn q(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

/// `1 - q^e`.
fn om(e: i64) -> LaurentPoly {
    LaurentPoly::one() - q(e)
}

fn term(coeff: LaurentPoly, dl: i64, dm: i64, dk: i64, dj: i64) -> RecTerm {
    RecTerm { coeff, dl, dm, dk, dj }
}

fn one_q2_q4() -> LaurentPoly {
    LaurentPoly::from_coeffs(&[1, 0, 1, 0, 1])
}

/// The six coefficients shared by the `G` and `Ŝ` recurrences, in the order
/// `Ŝ(L,M), Ŝ(L+1,M), Ŝ(L+2,M), Ŝ(L+3,M+1), Ŝ(L+3,M), Ŝ(L+1,M+1)`.
fn six_coeffs(l: i64, m: i64) -> [LaurentPoly; 6] {
    [
        &q(9 + 18 * m) * &om(12 + 6 * l + 6 * m),
        -(&(&q(4 + 12 * m) * &one_q2_q4()) * &(q(18 + 6 * l + 12 * m) - LaurentPoly::one())),
        &(&q(1 + 6 * m) * &om(24 + 6 * l + 18 * m)) * &one_q2_q4(),
        -om(12 + 24 * m),
        om(30 + 6 * l + 24 * m),
        &(&q(6 + 12 * m) * &LaurentPoly::from_coeffs(&[1, 0, 0, 0, 0, 0, 1])) * &om(6 + 12 * m),
    ]
}

/// Summand recurrence for `G`; the last term is `G(L+1, M+1, k-1)`.
pub fn g_terms(l: i64, m: i64) -> Vec<RecTerm> {
    let [c0, c1, c2, c3, c4, c5] = six_coeffs(l, m);
    vec![
        term(c0, 0, 0, 0, 0),
        term(c1, 1, 0, 0, 0),
        term(c2, 2, 0, 0, 0),
        term(c3, 3, 1, 0, 0),
        term(c4, 3, 0, 0, 0),
        term(c5, 1, 1, -1, 0),
    ]
}

/// The recurrence for the summed sides `Ŝ(L, M)`.
pub fn sum_terms(l: i64, m: i64) -> Vec<RecTerm> {
    g_terms(l, m)
        .into_iter()
        .map(|t| RecTerm { dk: 0, ..t })
        .collect()
}

/// Ten-term summand recurrence for `F`.
pub fn f_terms(l: i64, m: i64) -> Vec<RecTerm> {
    let a = 12 + 6 * l + 6 * m;
    let b = 18 + 6 * l + 12 * m;
    let c = 24 + 6 * l + 18 * m;
    let d = 30 + 6 * l + 24 * m;
    vec![
        term(&q(9 + 18 * m) * &om(a), 0, 0, -1, -1),
        term(&q(4 + 12 * m) * &om(b), 1, 0, -1, 0),
        term(&q(6 + 12 * m) * &om(b), 1, 0, -1, -1),
        term(-om(12 + 24 * m), 3, 1, 0, -1),
        term(&q(3 + 6 * m) * &om(c), 2, 0, 0, -1),
        term(&q(5 + 6 * m) * &om(c), 2, 0, 0, -2),
        term(&q(1 + 6 * m) * &om(c), 2, 0, -1, 0),
        term(om(d), 3, 0, 0, -1),
        term(
            &(&LaurentPoly::from_coeffs(&[1, 0, 0, 0, 0, 0, 1]) * &q(6 + 12 * m)) * &om(6 + 12 * m),
            1,
            1,
            -1,
            -1,
        ),
        term(&q(8 + 12 * m) * &om(b), 1, 0, 0, -2),
    ]
}

/// `sum coeff * x(L + dl, M + dm, k + dk, j + dj)`.
pub fn residual(terms: &[RecTerm], l: i64, m: i64, k: i64, j: i64, x: impl Fn(i64, i64, i64, i64) -> LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for t in terms {
        let v = x(l + t.dl, m + t.dm, k + t.dk, j + t.dj);
        if !v.is_zero() {
            acc += &t.coeff * &v;
        }
    }
    acc
}

pub fn residual_g(l: i64, m: i64, k: i64) -> LaurentPoly {
    residual(&g_terms(l, m), l, m, k, 0, |l, m, k, _| summand_g(l, m, k))
}

pub fn residual_f(l: i64, m: i64, k: i64, j: i64) -> LaurentPoly {
    residual(&f_terms(l, m), l, m, k, j, summand_f)
}

pub fn check_g_recurrence(l: i64, m: i64, k: i64) -> bool {
    residual_g(l, m, k).is_zero()
}

pub fn check_f_recurrence(l: i64, m: i64, k: i64, j: i64) -> bool {
    residual_f(l, m, k, j).is_zero()
}

/// Which side of the seed identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

/// `Ŝ(L, M)` by full summation of the chosen side; zero for negative indices.
pub fn s_hat(side: Side, l: i64, m: i64) -> LaurentPoly {
    if l < 0 || m < 0 {
        return LaurentPoly::zero();
    }
    match side {
        Side::Lhs => seed_left(l, m),
        Side::Rhs => seed_right(l, m),
    }
}

pub fn residual_sum(side: Side, l: i64, m: i64) -> LaurentPoly {
    residual(&sum_terms(l, m), l, m, 0, 0, |l, m, _, _| s_hat(side, l, m))
}

pub fn check_sum_recurrence(side: Side, l: i64, m: i64) -> bool {
    residual_sum(side, l, m).is_zero()
}

/// The per-`k` residuals of `G` add up to the residual of the summed left side.
pub fn telescoping_holds(l: i64, m: i64) -> bool {
    let summed: LaurentPoly = (0..=l + 5).map(|k| residual_g(l, m, k)).sum();
    summed == residual_sum(Side::Lhs, l, m)
}

/// Boundary row `Ŝ(L, 0) = (1 + (-1)^L)/2`.
pub fn boundary_m0(l: i64) -> LaurentPoly {
    if l % 2 == 0 {
        LaurentPoly::one()
    } else {
        LaurentPoly::zero()
    }
}

/// Boundary rows `L = 0, 1, 2` at any `M`.
pub fn boundary_row(l: i64, m: i64) -> LaurentPoly {
    match l {
        0 => LaurentPoly::one(),
        1 => qbinom(3 * m, 1, 2).shift(HalfExp::int(1)),
        2 => qbinom(2 * m + 1, 1, 6) + qbinom(3 * m, 2, 2).shift(HalfExp::int(4)),
        _ => panic!("boundary rows are L = 0, 1, 2"),
    }
}

/// Both sides match every boundary value for `L <= l_max` (column `M = 0`)
/// and `M <= m_max` (rows `L = 0, 1, 2`).
pub fn check_boundaries_upto(l_max: i64, m_max: i64) -> bool {
    for side in [Side::Lhs, Side::Rhs] {
        for l in 0..=l_max {
            if s_hat(side, l, 0) != boundary_m0(l) {
                return false;
            }
        }
        for m in 0..=m_max {
            for l in 0..=2 {
                if s_hat(side, l, m) != boundary_row(l, m) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn check_boundaries() -> bool {
    check_boundaries_upto(20, 10)
}

/// Fills `Ŝ(L, M)` for `L <= l_max`, `M <= m_max` from the boundary values and
/// the sum recurrence solved for `Ŝ(L+3, M+1)`. Every division by
/// `1 - q^{12+24M}` must be exact.
pub fn reconstruct_s(l_max: i64, m_max: i64) -> Result<BTreeMap<(i64, i64), LaurentPoly>> {
    let mut s: BTreeMap<(i64, i64), LaurentPoly> = BTreeMap::new();
    for l in 0..=l_max {
        s.insert((l, 0), boundary_m0(l));
    }
    for m in 0..=m_max {
        for l in 0..=2.min(l_max) {
            s.insert((l, m), boundary_row(l, m));
        }
    }
    for m in 0..m_max {
        for l in 0..=l_max - 3 {
            let c = six_coeffs(l, m);
            let known = [(0, 0), (1, 0), (2, 0), (3, 1), (3, 0), (1, 1)];
            let mut num = LaurentPoly::zero();
            for (idx, (dl, dm)) in known.iter().enumerate() {
                if idx == 3 {
                    continue;
                }
                num += &c[idx] * &s[&(l + dl, m + dm)];
            }
            // -(1 - q^{12+24M}) Ŝ(L+3, M+1) + num = 0
            let v = num.div_one_minus(HalfExp::int(12 + 24 * m))?;
            s.insert((l + 3, m + 1), v);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin() {
        assert!(check_g_recurrence(0, 0, 0));
        assert!(check_f_recurrence(0, 0, 0, 0));
        assert!(check_sum_recurrence(Side::Lhs, 0, 0));
    }

    #[test]
    fn small_grids() {
        for l in 0..=5 {
            for m in 0..=2 {
                for k in 0..=3 {
                    assert!(check_g_recurrence(l, m, k), "G {l} {m} {k}");
                    for j in -3..=3 {
                        assert!(check_f_recurrence(l, m, k, j), "F {l} {m} {k} {j}");
                    }
                }
                assert!(check_sum_recurrence(Side::Lhs, l, m));
                assert!(check_sum_recurrence(Side::Rhs, l, m));
                assert!(telescoping_holds(l, m));
            }
        }
    }

    #[test]
    fn f_sums_to_right_side() {
        for l in 0..=6 {
            for m in 0..=3 {
                let mut acc = LaurentPoly::zero();
                for k in 0..=l + 1 {
                    for j in -l - 1..=l + 1 {
                        acc += summand_f(l, m, k, j);
                    }
                }
                assert_eq!(acc, s_hat(Side::Rhs, l, m), "L={l} M={m}");
            }
        }
    }

    #[test]
    fn mutated_coefficient_breaks() {
        let mut terms = g_terms(4, 1);
        terms[1].coeff = -terms[1].coeff.clone();
        let r = residual(&terms, 4, 1, 1, 0, |l, m, k, _| summand_g(l, m, k));
        assert!(!r.is_zero());
        // every single term matters somewhere on a small grid
        for idx in 0..10 {
            let mut hit = false;
            'grid: for l in 0..=4 {
                for m in 0..=2 {
                    for k in 0..=2 {
                        for j in -1..=2 {
                            let mut terms = f_terms(l, m);
                            terms[idx].coeff = -terms[idx].coeff.clone();
                            if !residual(&terms, l, m, k, j, summand_f).is_zero() {
                                hit = true;
                                break 'grid;
                            }
                        }
                    }
                }
            }
            assert!(hit, "term {idx}");
        }
    }

    #[test]
    fn boundary_examples() {
        assert!(s_hat(Side::Lhs, 3, 0).is_zero());
        assert!(s_hat(Side::Rhs, 3, 0).is_zero());
        assert!(s_hat(Side::Lhs, 0, 7).is_one());
        assert_eq!(s_hat(Side::Rhs, 1, 1), LaurentPoly::from_coeffs(&[0, 1, 0, 1, 0, 1]));
        assert!(check_boundaries_upto(8, 4));
    }

    #[test]
    fn reconstruction_small() {
        let s = reconstruct_s(6, 2).unwrap();
        for (&(l, m), v) in &s {
            assert_eq!(v, &s_hat(Side::Lhs, l, m), "L={l} M={m}");
        }
        assert_eq!(s[&(1, 2)], boundary_row(1, 2));
    }
}
