//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Run alone with `cargo test -p qtrinomial --test acceptance`.

use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use qtrinomial::catalog::{evaluate, seed_left, seed_right, Binding, SideValue, TrinomialPair};
use qtrinomial::partitions::{count_capparelli_gap_side, count_capparelli_product_side};
use qtrinomial::recurrence::{
    check_boundaries_upto, check_f_recurrence, check_g_recurrence, check_sum_recurrence, reconstruct_s, Side,
};
use qtrinomial::sweep::{instances, map_ordered, verify_batch, Instance};
use qtrinomial::trinomials::{
    check_round_l_stabilization, check_s_limits, check_t_l_stabilization, check_t_m_stabilization,
    check_t_zero_l_stabilization, refined_t, SLimit,
};
use qtrinomial::{qbinom, HalfExp};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn verify_all(items: Vec<Instance>) -> Outcome {
    let n = items.len();
    for r in verify_batch(&items, 0) {
        let rep = r.map_err(|e| e.to_string())?;
        if !rep.passed() {
            return Err(format!("{} at {} mismatch {:?}", rep.identity, rep.params, rep.mismatch));
        }
    }
    Ok(format!("{n} instances"))
}

fn inst(id: &str, ranges: &[(&str, RangeInclusive<i64>)]) -> Vec<Instance> {
    instances(id, ranges)
}

fn all_true<T: Sync + std::fmt::Debug>(what: &str, items: Vec<T>, f: impl Fn(&T) -> bool + Sync + Send) -> Outcome {
    let ok = map_ordered(&items, 0, &f);
    match items.iter().zip(&ok).find(|(_, ok)| !**ok) {
        Some((t, _)) => Err(format!("{what} fails at {t:?}")),
        None => Ok(format!("{} {what} checks", items.len())),
    }
}

fn seed_theorem() -> Outcome {
    let t = Instant::now();
    let r = verify_all(inst("seed", &[("L", 0..=24), ("M", 0..=12)]))?;
    Ok(format!("{r} in {:.1}s", t.elapsed().as_secs_f64()))
}

fn boundaries() -> Outcome {
    if check_boundaries_upto(20, 10) {
        Ok("rows M=0 and L=0,1,2 on both sides".into())
    } else {
        Err("boundary mismatch".into())
    }
}

fn recurrences() -> Outcome {
    let mut g = Vec::new();
    for l in 0..=10 {
        for m in 0..=5 {
            for k in 0..=5 {
                g.push((l, m, k));
            }
        }
    }
    let mut f = Vec::new();
    for l in 0..=8 {
        for m in 0..=4 {
            for k in 0..=4 {
                for j in -4..=4 {
                    f.push((l, m, k, j));
                }
            }
        }
    }
    let mut s = Vec::new();
    for side in [Side::Lhs, Side::Rhs] {
        for l in 0..=12 {
            for m in 0..=6 {
                s.push((side, l, m));
            }
        }
    }
    let a = all_true("G", g, |&(l, m, k)| check_g_recurrence(l, m, k))?;
    let b = all_true("F", f, |&(l, m, k, j)| check_f_recurrence(l, m, k, j))?;
    let c = all_true("sum", s, |&(side, l, m)| check_sum_recurrence(side, l, m))?;
    Ok(format!("{a}, {b}, {c}"))
}

fn reconstruction() -> Outcome {
    let table = reconstruct_s(9, 3).map_err(|e| e.to_string())?;
    for (&(l, m), p) in &table {
        if *p != seed_left(l, m) || *p != seed_right(l, m) {
            return Err(format!("entry ({l}, {m}) differs"));
        }
    }
    Ok(format!("{} entries, all divisions exact", table.len()))
}

fn t_hierarchy() -> Outcome {
    let direct = verify_all(inst("t_hierarchy", &[("nu", 1..=3), ("L", 0..=8), ("M", 0..=8)]))?;
    let mut pair = TrinomialPair::seed(4, 4).map_err(|e| e.to_string())?;
    for nu in 1..=2 {
        pair = pair.transform_t(4, 4).map_err(|e| e.to_string())?;
        for l in 0..=4 {
            for m in 0..=4 {
                let b = Binding::new().with("nu", nu).with("L", l).with("M", m);
                let (lhs, _) = evaluate("t_hierarchy", &b).map_err(|e| e.to_string())?;
                if pair.entry(l, m) != Some(lhs.poly()) {
                    return Err(format!("transform differs at nu={nu}, L={l}, M={m}"));
                }
            }
        }
    }
    Ok(format!("{direct}, transform chain nu=1,2"))
}

fn s_hierarchy() -> Outcome {
    let a = verify_all(inst("nu0_s", &[("L", 0..=10), ("M", 0..=10)]))?;
    let b = verify_all(inst("s_hierarchy", &[("nu", 1..=2), ("L", 0..=6), ("M", 0..=6)]))?;
    Ok(format!("{a} + {b}"))
}

fn polynomial_limits() -> Outcome {
    let mut items = inst("seed_limit_m", &[("L", 0..=16)]);
    items.extend(inst("t_limit_L_of_seed", &[("M", 0..=10), ("sigma", 0..=1)]));
    items.extend(inst("limit_andrews_k", &[("L", 0..=12)]));
    items.extend(inst("s_hierarchy_lim_M", &[("nu", 1..=2), ("L", 0..=6)]));
    items.extend(inst("s_hierarchy_lim_L", &[("nu", 1..=2), ("M", 0..=6)]));
    items.extend(inst("t_hierarchy_limit_M", &[("nu", 1..=2), ("L", 0..=10)]));
    verify_all(items)
}

fn series_identities() -> Outcome {
    let mut items = inst("end_of_t_hierarchy", &[("nu", 1..=3), ("order", 100..=100)]);
    items.extend(inst("kr1", &[("order", 200..=200)]));
    items.extend(inst("t_hierarchy_limit_L", &[("nu", 1..=2), ("M", 0..=6), ("order", 150..=150)]));
    items.extend(inst("t_limit_l_nu1", &[("M", 0..=8), ("order", 150..=150)]));
    items.extend(inst("limit_andrews_dk", &[("M", 0..=10), ("order", 150..=150)]));
    items.extend(inst("end_of_s_hierarchy", &[("nu", 1..=2), ("order", 100..=100)]));
    verify_all(items)
}

fn warm_ups() -> Outcome {
    let mut items = Vec::new();
    for l in 0..=12 {
        items.extend(inst("intro_identity", &[("j", -l..=l), ("L", l..=l)]));
    }
    items.extend(inst("kronecker_delta", &[("L", 0..=10)]));
    items.extend(inst("warmup_first_iteration", &[("L", 0..=12)]));
    items.extend(inst("warmup_second_iteration", &[("L", 0..=12)]));
    items.extend(inst("pentagonal", &[("order", 500..=500)]));
    items.extend(inst("rogers_ramanujan_1", &[("order", 200..=200)]));
    items.extend(inst("andrews_gordon", &[("nu", 1..=3), ("order", 100..=100)]));
    items.extend(inst("finite_jtp", &[("M", 0..=15), ("s", -3..=3), ("neg", 0..=1)]));
    items.extend(inst("finite_jtp_q6", &[("M", 0..=15)]));
    verify_all(items)
}

fn seed_variants() -> Outcome {
    let mut items = inst("seed_variant_plus", &[("L", 0..=16), ("M", 0..=8)]);
    items.extend(inst("seed_variant_minus", &[("L", 0..=16), ("M", 0..=8)]));
    verify_all(items)
}

fn partition_oracle() -> Outcome {
    let (lhs, rhs) = evaluate("kr1", &Binding::new().with("order", 40)).map_err(|e| e.to_string())?;
    let (SideValue::Series(lhs), SideValue::Series(rhs)) = (lhs, rhs) else {
        return Err("kr1 sides are not series".into());
    };
    for n in 0..=40u32 {
        let prod = count_capparelli_product_side(n);
        let gap = count_capparelli_gap_side(n);
        let e = HalfExp::int(n as i64);
        let want = BigInt::from(prod);
        if gap != prod || lhs.coeff(e) != want || rhs.coeff(e) != want {
            return Err(format!("n={n}: product {prod}, gap {gap}, lhs {}, rhs {}", lhs.coeff(e), rhs.coeff(e)));
        }
    }
    Ok("n <= 40".into())
}

fn binomial(n: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn properties() -> Outcome {
    for m in 0..=12 {
        for n in 0..=12 {
            let p = qbinom(m + n, m, 1);
            let deg = HalfExp::int(m * n);
            let palindromic = p.terms().all(|(e, c)| p.coeff(HalfExp::int(m * n) - e) == *c);
            let nonneg = p.terms().all(|(_, c)| c.sign() != num_bigint::Sign::Minus);
            if p.max_exp() != Some(deg) || !palindromic || !nonneg || p.eval_at_one() != binomial(m + n, m) {
                return Err(format!("Gaussian binomial [{}, {m}]", m + n));
            }
        }
    }
    for l in 0..=6 {
        for m in 0..=6 {
            for a in -8i64..=8 {
                for b in -8i64..=8 {
                    if (a.abs() > l || b.abs() > m) && !refined_t(l, m, a, b, 6).is_zero() {
                        return Err(format!("T({l},{m};{a},{b}) outside support is nonzero"));
                    }
                }
            }
        }
    }
    // each witness compares the stabilized value with the next admissible parameter
    let mut witnesses = 0;
    for (l, a, b) in [(0, 0, 0), (2, 0, 0), (3, 1, 1), (4, -2, 1)] {
        for m_big in [l + 6, l + 7] {
            if !check_t_m_stabilization(l, a, b, 1, m_big) {
                return Err(format!("T in M at L={l}, a={a}, b={b}, M={m_big}"));
            }
            witnesses += 1;
        }
    }
    for (m, a, b) in [(0, 0, 0), (1, 0, 0), (2, 1, -1), (3, 0, 2)] {
        for sigma in 0..=1u8 {
            let first = a + sigma as i64 + 2 * (m + 3);
            for l_big in [first, first + 2] {
                if !check_t_l_stabilization(m, a, b, 2, sigma, l_big) {
                    return Err(format!("T in L at M={m}, a={a}, b={b}, sigma={sigma}, L={l_big}"));
                }
                witnesses += 1;
            }
        }
    }
    for (l, a, b) in [(0, 0, 0), (3, 1, 1), (4, 0, 0), (5, -1, 2)] {
        for m_big in [l + 6, l + 7] {
            if !check_s_limits(l, m_big, a, b, 1, SLimit::InM) {
                return Err(format!("S in M at L={l}, a={a}, b={b}, M={m_big}"));
            }
            witnesses += 1;
        }
    }
    for (m, a, b) in [(0, 0, 0), (2, 0, 0), (3, 1, 1), (2, -1, 0)] {
        for l_big in [a + 2 * m + 8, a + 2 * m + 9] {
            if !check_s_limits(l_big, m, a, b, 1, SLimit::InL) {
                return Err(format!("S in L at M={m}, a={a}, b={b}, L={l_big}"));
            }
            witnesses += 1;
        }
    }
    for (l, a) in [(8, 0), (9, 1), (10, -2)] {
        for step in [0, 2] {
            if !check_t_zero_l_stabilization(l + step, a, 1) {
                return Err(format!("T0 in L at L={}, a={a}", l + step));
            }
            witnesses += 1;
        }
    }
    for l in 0..=16 {
        if !check_round_l_stabilization(l, 0, 1) {
            return Err(format!("round trinomial in L at L={l}"));
        }
        witnesses += 1;
    }
    Ok(format!("Gaussian binomials m,n <= 12, T support, {witnesses} stabilization witnesses"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("seed identity, L <= 24, M <= 12", seed_theorem),
        ("boundary values, L <= 20, M <= 10", boundaries),
        ("G, F and sum recurrences", recurrences),
        ("reconstruction from recurrence, L <= 9, M <= 3", reconstruction),
        ("T-hierarchy and transform chain", t_hierarchy),
        ("S-hierarchy", s_hierarchy),
        ("polynomial limit identities", polynomial_limits),
        ("series identities to truncation order", series_identities),
        ("warm-up chain", warm_ups),
        ("seed variants, L <= 16, M <= 8", seed_variants),
        ("Capparelli partition oracle", partition_oracle),
        ("property suites and stabilization witnesses", properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
