//! Batch verification over parameter grids.
//!
//! Every batch function returns results in input order. With the `parallel`
//! feature the work is spread over a rayon pool; without it, or with
//! `jobs == 1`, it runs on the calling thread.

use std::ops::RangeInclusive;

use crate::catalog::{verify_instance, Binding, VerificationReport};
use crate::error::Result;

/// One identity instance to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub binding: Binding,
}

impl Instance {
    pub fn new(id: impl Into<String>, binding: Binding) -> Self {
        Instance { id: id.into(), binding }
    }
}

/// Cartesian product of inclusive ranges, last name varying fastest.
pub fn grid(ranges: &[(&str, RangeInclusive<i64>)]) -> Vec<Binding> {
    let mut out = vec![Binding::new()];
    for (name, range) in ranges {
        let mut next = Vec::with_capacity(out.len() * range.clone().count());
        for b in &out {
            for v in range.clone() {
                next.push(b.clone().with(name, v));
            }
        }
        out = next;
    }
    out
}

/// `grid` with every binding attached to `id`.
pub fn instances(id: &str, ranges: &[(&str, RangeInclusive<i64>)]) -> Vec<Instance> {
    grid(ranges).into_iter().map(|b| Instance::new(id, b)).collect()
}

/// Applies `f` to every item on the calling thread.
pub fn map_sequential<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Applies `f` on a pool of `jobs` threads (0 = rayon default).
#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

/// Parallel when available and `jobs != 1`, otherwise sequential.
pub fn map_ordered<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        return map_parallel(items, jobs, f);
    }
    let _ = jobs;
    map_sequential(items, f)
}

pub fn verify_batch_sequential(items: &[Instance]) -> Vec<Result<VerificationReport>> {
    map_sequential(items, |i| verify_instance(&i.id, &i.binding))
}

#[cfg(feature = "parallel")]
pub fn verify_batch_parallel(items: &[Instance], jobs: usize) -> Vec<Result<VerificationReport>> {
    map_parallel(items, jobs, |i| verify_instance(&i.id, &i.binding))
}

pub fn verify_batch(items: &[Instance], jobs: usize) -> Vec<Result<VerificationReport>> {
    map_ordered(items, jobs, |i| verify_instance(&i.id, &i.binding))
}

/// Pass/fail content of a batch with timings dropped, for comparing runs.
pub fn outcome_digest(results: &[Result<VerificationReport>]) -> Vec<String> {
    results
        .iter()
        .map(|r| match r {
            Ok(rep) => format!("{} {} {:?} {:?}", rep.identity, rep.params, rep.status, rep.mismatch),
            Err(e) => format!("error {e}"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order() {
        let g = grid(&[("L", 0..=1), ("M", 0..=2)]);
        assert_eq!(g.len(), 6);
        assert_eq!(g[1], Binding::new().with("L", 0).with("M", 1));
        assert_eq!(g[3], Binding::new().with("L", 1).with("M", 0));
        assert_eq!(grid(&[]), vec![Binding::new()]);
    }

    #[test]
    fn batch_in_order() {
        let items = instances("seed", &[("L", 0..=4), ("M", 0..=2)]);
        let seq = verify_batch_sequential(&items);
        assert!(seq.iter().all(|r| r.as_ref().unwrap().passed()));
        let any = verify_batch(&items, 3);
        assert_eq!(outcome_digest(&seq), outcome_digest(&any));
        for (r, i) in any.iter().zip(&items) {
            assert_eq!(r.as_ref().unwrap().params, i.binding);
        }
    }
}
