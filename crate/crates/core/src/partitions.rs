//! Brute-force partition counts used as combinatorial oracles.

use crate::error::{Error, Result};

/// A partition stored with its parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; `None` if any part is zero.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Distinct parts, none congruent to 1 or 5 mod 6.
    pub fn is_capparelli_distinct(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1]) && self.parts.iter().all(|&p| product_part_ok(p))
    }

    /// No part equal to 1 and every consecutive pair satisfies the gap rule.
    pub fn is_capparelli_gap(&self) -> bool {
        self.parts.iter().all(|&p| p != 1) && self.parts.windows(2).all(|w| gap_ok(w[0], w[1]))
    }
}

fn product_part_ok(p: u32) -> bool {
    !matches!(p % 6, 1 | 5)
}

/// Larger part `a` directly above smaller part `b`.
fn gap_ok(a: u32, b: u32) -> bool {
    if a < b {
        return false;
    }
    match a - b {
        0 | 1 => false,
        2 => b % 3 == 2,
        3 => b.is_multiple_of(3),
        _ => true,
    }
}

/// Counts partitions of `n` built largest part first, where `next_ok(prev, p)`
/// decides whether `p` may follow `prev` and `first_ok(p)` filters the top part.
fn count_descending(n: u32, first_ok: &dyn Fn(u32) -> bool, next_ok: &dyn Fn(u32, u32) -> bool) -> u64 {
    fn go(rest: u32, prev: u32, first_ok: &dyn Fn(u32) -> bool, next_ok: &dyn Fn(u32, u32) -> bool) -> u64 {
        if rest == 0 {
            return 1;
        }
        let mut total = 0;
        for p in (1..=rest.min(prev)).rev() {
            if first_ok(p) && next_ok(prev, p) {
                total += go(rest - p, p, first_ok, next_ok);
            }
        }
        total
    }
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for p in (1..=n).rev() {
        if first_ok(p) {
            total += go(n - p, p, first_ok, next_ok);
        }
    }
    total
}

/// Partitions of `n` into distinct parts, each `≢ 1, 5 (mod 6)`.
pub fn count_capparelli_product_side(n: u32) -> u64 {
    count_descending(n, &product_part_ok, &|a, b| a != b)
}

/// Partitions of `n` into parts `≠ 1` where consecutive parts differ by at
/// least 4, except `3k, 3k+3` (difference 3) and `3k-1, 3k+1` (difference 2).
pub fn count_capparelli_gap_side(n: u32) -> u64 {
    count_descending(n, &|p| p != 1, &gap_ok)
}

/// `p(0), ..., p(n)` by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u64;
    }
    p
}

/// `table[k][t]` = partitions of `t` into parts at most `k`.
fn bounded_part_table(k_max: usize, t_max: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; t_max + 1]; k_max + 1];
    table[0][0] = 1;
    for k in 1..=k_max {
        for t in 0..=t_max {
            table[k][t] = table[k - 1][t] + if t >= k { table[k][t - k] } else { 0 };
        }
    }
    table
}

/// Coefficient of `q^n` in `sum q^{2m^2+6mn'+6n'^2} / ((q;q)_m (q^3;q^3)_{n'})`.
fn kr1_sum_coefficient(n: u32) -> u64 {
    let n = n as usize;
    let table = bounded_part_table(n, n);
    let mut total = 0;
    for np in 0..=n {
        if 6 * np * np > n {
            break;
        }
        for m in 0..=n {
            let q = 2 * m * m + 6 * m * np + 6 * np * np;
            if q > n {
                break;
            }
            let rest = n - q;
            for b in 0..=rest / 3 {
                total += table[m][rest - 3 * b] * table[np][b];
            }
        }
    }
    total
}

/// Independent combinatorial value of the coefficient of `q^n` in a named series.
pub fn series_coefficient_oracle(id: &str, n: u32) -> Result<u64> {
    match id {
        "kr1_product" => Ok(count_capparelli_product_side(n)),
        "kr1_sum" => Ok(kr1_sum_coefficient(n)),
        "pentagonal_partitions" => Ok(partition_numbers(n as usize)[n as usize]),
        other => Err(Error::UnknownOracle(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every partition of `n`, by brute force.
    fn all_partitions(n: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn small_values() {
        assert_eq!(count_capparelli_product_side(0), 1);
        assert_eq!(count_capparelli_product_side(1), 0);
        assert_eq!(count_capparelli_product_side(2), 1);
        assert_eq!(count_capparelli_gap_side(0), 1);
        assert_eq!(count_capparelli_gap_side(1), 0);
        assert_eq!(series_coefficient_oracle("pentagonal_partitions", 4).unwrap(), 5);
        assert_eq!(series_coefficient_oracle("kr1_product", 0).unwrap(), 1);
        assert!(matches!(series_coefficient_oracle("nope", 1), Err(Error::UnknownOracle(_))));
    }

    #[test]
    fn pruned_counts_match_filtered_enumeration() {
        for n in 0..=18 {
            let all = all_partitions(n);
            assert_eq!(all.len() as u64, partition_numbers(n as usize)[n as usize]);
            for p in &all {
                assert_eq!(p.weight(), n as u64);
            }
            let d = all.iter().filter(|p| p.is_capparelli_distinct()).count() as u64;
            let g = all.iter().filter(|p| p.is_capparelli_gap()).count() as u64;
            assert_eq!(d, count_capparelli_product_side(n));
            assert_eq!(g, count_capparelli_gap_side(n));
        }
    }

    #[test]
    fn capparelli_small() {
        for n in 0..=30 {
            let c = count_capparelli_product_side(n);
            assert_eq!(c, count_capparelli_gap_side(n), "n={n}");
            assert_eq!(c, kr1_sum_coefficient(n), "n={n}");
        }
    }

    #[test]
    fn gap_rule_cases() {
        // 3k-1 / 3k+1 and 3k / 3k+3 are the only short gaps
        assert!(gap_ok(7, 5));
        assert!(!gap_ok(6, 4));
        assert!(gap_ok(9, 6));
        assert!(!gap_ok(10, 7));
        assert!(!gap_ok(5, 4));
        assert!(gap_ok(8, 4));
        assert!(Partition::new(vec![0]).is_none());
    }
}
