//! Summation drivers shared by the trinomial and catalog layers.

use crate::poly::LaurentPoly;

/// Consecutive zero summands required past the analytic bound before stopping.
const ZERO_RUN: u32 = 3;

/// Sums `term(n)` for `n = start, start + 1, ...`.
///
/// Iteration continues past `bound` until three consecutive summands vanish,
/// so an underestimated bound cannot silently drop terms.
pub(crate) fn sum_upward<F>(start: i64, bound: i64, mut term: F) -> LaurentPoly
where
    F: FnMut(i64) -> LaurentPoly,
{
    let mut acc = LaurentPoly::zero();
    let mut zeros = 0;
    let mut n = start;
    loop {
        let t = term(n);
        if t.is_zero() {
            zeros += 1;
        } else {
            zeros = 0;
            acc += t;
        }
        if n >= bound && zeros >= ZERO_RUN {
            return acc;
        }
        n += 1;
    }
}

/// Two-sided version of [`sum_upward`] over all integers `j`, with
/// `|j| <= bound` as the analytic support.
pub(crate) fn sum_bilateral<F>(bound: i64, mut term: F) -> LaurentPoly
where
    F: FnMut(i64) -> LaurentPoly,
{
    let mut acc = sum_upward(0, bound, &mut term);
    acc += sum_upward(1, bound, |j| term(-j));
    acc
}

/// Calls `f` with every tuple `(n_1, ..., n_len)` of nonnegative integers whose
/// sum is at most `cap`.
pub(crate) fn for_each_bounded_tuple<F>(len: usize, cap: i64, mut f: F)
where
    F: FnMut(&[i64]),
{
    fn go<F: FnMut(&[i64])>(buf: &mut Vec<i64>, len: usize, left: i64, f: &mut F) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for v in 0..=left {
            buf.push(v);
            go(buf, len, left - v, f);
            buf.pop();
        }
    }
    if cap < 0 {
        return;
    }
    let mut buf = Vec::with_capacity(len);
    go(&mut buf, len, cap, &mut f);
}

/// Suffix sums `N_k = n_k + ... + n_len` of a tuple.
pub(crate) fn suffix_sums(n: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n.len()];
    let mut acc = 0;
    for k in (0..n.len()).rev() {
        acc += n[k];
        out[k] = acc;
    }
    out
}
