//! Command-line harness for the identity catalog, the recurrence checks and
//! the partition oracles.
//!
//! Exit codes: 0 when everything checked passes, 1 when something fails,
//! 2 on a configuration error.

mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qtrinomial::catalog::{
    catalog_table, evaluate, lookup, seed_left, seed_right, Binding, IdentityDescriptor, Kind, SideValue,
};
use qtrinomial::partitions::{count_capparelli_gap_side, count_capparelli_product_side};
use qtrinomial::qprim::{poch_infinite, MonomialArg};
use qtrinomial::recurrence::{
    check_boundaries_upto, check_f_recurrence, check_g_recurrence, check_sum_recurrence, reconstruct_s, Side,
};
use qtrinomial::sweep::{map_ordered, verify_batch, Instance};
use qtrinomial::{HalfExp, TruncatedSeries};

use report::Report;

/// `println!` that stays quiet when stdout is closed early (e.g. piped to `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "qtrinomial", version, about = "Exact verification of refined q-trinomial identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List every identity with its parameter schema.
    List,
    /// Verify an identity (or `all`) over a grid of parameters.
    Verify {
        /// Identity id, or `all`.
        identity: String,
        /// Inclusive ranges such as `L=0..10` or single values such as `nu=2`.
        ranges: Vec<String>,
        /// Truncation order for series identities, in whole powers of q.
        #[arg(long, default_value_t = 50)]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; 0 picks the default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Print the coefficients of a series through `--order`.
    Series {
        /// `euler_product`, `partition_generating`, `kr1_product`, `kr1_sum`,
        /// or `<id>.lhs` / `<id>.rhs` for a series identity.
        name: String,
        /// Extra parameters such as `nu=2`.
        params: Vec<String>,
        #[arg(long, default_value_t = 20)]
        order: i64,
    },
    /// Check the recurrences, the boundary rows and the reconstruction.
    Recurrence {
        #[arg(long, default_value_t = 10)]
        l_max: i64,
        #[arg(long, default_value_t = 5)]
        m_max: i64,
        #[arg(long, default_value_t = 5)]
        k_max: i64,
        #[arg(long, default_value_t = 4)]
        j_max: i64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Compare both sides of Capparelli's theorem for n <= max.
    Partitions {
        #[arg(long, default_value_t = 40)]
        max: u32,
    },
}

struct ConfigError(String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<qtrinomial::Error> for ConfigError {
    fn from(e: qtrinomial::Error) -> Self {
        ConfigError(e.to_string())
    }
}

type CmdResult = Result<bool, ConfigError>;

fn parse_range(arg: &str) -> Result<(String, i64, i64), ConfigError> {
    let bad = || ConfigError(format!("bad range `{arg}`, expected name=lo..hi or name=v"));
    let (name, spec) = arg.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = match spec.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let v = spec.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if name.is_empty() || lo > hi {
        return Err(bad());
    }
    Ok((name.trim().to_string(), lo, hi))
}

/// Range used for a parameter the user did not give.
fn default_range(name: &str) -> (i64, i64) {
    match name {
        "nu" => (1, 2),
        "sigma" | "neg" => (0, 1),
        "s" => (-2, 2),
        "j" => (0, 2),
        _ => (0, 4),
    }
}

fn instances_for(
    d: &IdentityDescriptor,
    given: &BTreeMap<String, (i64, i64)>,
    order: i64,
) -> Result<Vec<Instance>, ConfigError> {
    let mut grid = vec![Binding::new()];
    for spec in d.params {
        let (lo, hi) = if spec.name == "order" {
            given.get("order").copied().unwrap_or((order, order))
        } else {
            given.get(spec.name).copied().unwrap_or_else(|| default_range(spec.name))
        };
        if !spec.admits(lo) || !spec.admits(hi) {
            return Err(ConfigError(format!("{}: range {}={lo}..{hi} violates {spec}", d.id, spec.name)));
        }
        grid = grid
            .into_iter()
            .flat_map(|b| (lo..=hi).map(move |v| b.clone().with(spec.name, v)))
            .collect();
    }
    Ok(grid.into_iter().map(|b| Instance::new(d.id, b)).collect())
}

fn cmd_list() -> CmdResult {
    for d in catalog_table() {
        let schema: Vec<String> = d.params.iter().map(|p| p.to_string()).collect();
        out!("{:<26} {:<10} [{}]", d.id, d.kind, schema.join(", "));
        out!("    {}", d.summary);
    }
    Ok(true)
}

fn cmd_verify(identity: &str, ranges: &[String], order: i64, format: Format, jobs: usize) -> CmdResult {
    if order < 0 {
        return Err(ConfigError(format!("order {order} is negative")));
    }
    let mut given = BTreeMap::new();
    for r in ranges {
        let (name, lo, hi) = parse_range(r)?;
        given.insert(name, (lo, hi));
    }
    let targets: Vec<&IdentityDescriptor> = if identity == "all" {
        catalog_table().iter().collect()
    } else {
        let d = lookup(identity)?;
        if let Some(extra) = given.keys().find(|k| d.params.iter().all(|p| p.name != k.as_str())) {
            return Err(ConfigError(format!("{identity} has no parameter {extra}")));
        }
        vec![d]
    };
    let mut items = Vec::new();
    for d in targets {
        items.extend(instances_for(d, &given, order)?);
    }
    let start = Instant::now();
    let results = verify_batch(&items, jobs);
    let wall = start.elapsed();
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let report = Report::new(&reports, wall);
    match format {
        Format::Text => out!("{}", report.to_text().trim_end()),
        Format::Json => out!("{}", report.to_json()),
    }
    Ok(report.summary.failed == 0)
}

fn named_series(name: &str, params: &[String], order: i64) -> Result<TruncatedSeries, ConfigError> {
    let o = HalfExp::int(order);
    let euler = || poch_infinite(MonomialArg::q(1), 1, o);
    let side_of = |id: &str, side: &str| -> Result<TruncatedSeries, ConfigError> {
        let d = lookup(id)?;
        if d.kind != Kind::Series {
            return Err(ConfigError(format!("{id} is a polynomial identity")));
        }
        let mut b = Binding::new().with("order", order);
        for p in params {
            let (k, lo, hi) = parse_range(p)?;
            if lo != hi {
                return Err(ConfigError(format!("series parameter {k} needs a single value")));
            }
            b.set(&k, lo);
        }
        let (lhs, rhs) = evaluate(id, &b)?;
        match (side, if side == "lhs" { lhs } else { rhs }) {
            ("lhs" | "rhs", SideValue::Series(s)) => Ok(s),
            _ => Err(ConfigError(format!("unknown side `{side}`"))),
        }
    };
    match name {
        "euler_product" => Ok(euler()?),
        "partition_generating" => Ok(euler()?.inverse()?),
        "kr1_product" => side_of("kr1", "rhs"),
        "kr1_sum" => side_of("kr1", "lhs"),
        other => match other.rsplit_once('.') {
            Some((id, side)) => side_of(id, side),
            None => Err(ConfigError(format!("unknown series `{other}`"))),
        },
    }
}

fn cmd_series(name: &str, params: &[String], order: i64) -> CmdResult {
    if order < 0 {
        return Err(ConfigError(format!("order {order} is negative")));
    }
    let s = named_series(name, params, order)?;
    for n in 0..=order {
        out!("{n} {}", s.coeff(HalfExp::int(n)));
    }
    Ok(true)
}

fn report_check(name: &str, total: usize, failures: Vec<String>) -> bool {
    match failures.first() {
        None => out!("PASS {name} ({total} checks)"),
        Some(first) => out!("FAIL {name} ({} of {total} fail, first at {first})", failures.len()),
    }
    failures.is_empty()
}

fn failing<T: Sync + fmt::Debug>(items: Vec<T>, jobs: usize, f: impl Fn(&T) -> bool + Sync + Send) -> (usize, Vec<String>) {
    let ok = map_ordered(&items, jobs, f);
    let bad = items.iter().zip(ok).filter(|(_, ok)| !ok).map(|(t, _)| format!("{t:?}")).collect();
    (items.len(), bad)
}

fn cmd_recurrence(l_max: i64, m_max: i64, k_max: i64, j_max: i64, jobs: usize) -> CmdResult {
    if l_max < 0 || m_max < 0 || k_max < 0 || j_max < 0 {
        return Err(ConfigError("bounds must be nonnegative".into()));
    }
    let lm: Vec<(i64, i64)> = (0..=l_max).flat_map(|l| (0..=m_max).map(move |m| (l, m))).collect();
    let lmk: Vec<(i64, i64, i64)> = lm.iter().flat_map(|&(l, m)| (0..=k_max).map(move |k| (l, m, k))).collect();
    let lmkj: Vec<(i64, i64, i64, i64)> =
        lmk.iter().flat_map(|&(l, m, k)| (-j_max..=j_max).map(move |j| (l, m, k, j))).collect();
    let mut ok = true;
    let (n, bad) = failing(lmk, jobs, |&(l, m, k)| check_g_recurrence(l, m, k));
    ok &= report_check("G recurrence (L, M, k)", n, bad);
    let (n, bad) = failing(lmkj, jobs, |&(l, m, k, j)| check_f_recurrence(l, m, k, j));
    ok &= report_check("F recurrence (L, M, k, j)", n, bad);
    for side in [Side::Lhs, Side::Rhs] {
        let (n, bad) = failing(lm.clone(), jobs, |&(l, m)| check_sum_recurrence(side, l, m));
        ok &= report_check(&format!("sum recurrence {side:?} (L, M)"), n, bad);
    }
    let boundary = check_boundaries_upto(l_max, m_max);
    ok &= report_check("boundary rows", 1, if boundary { vec![] } else { vec!["grid".into()] });
    let rebuilt = reconstruct_s(l_max, m_max)?;
    let bad: Vec<String> = rebuilt
        .iter()
        .filter(|(&(l, m), p)| **p != seed_left(l, m) || **p != seed_right(l, m))
        .map(|(k, _)| format!("{k:?}"))
        .collect();
    ok &= report_check("reconstruction against both sides", rebuilt.len(), bad);
    Ok(ok)
}

fn cmd_partitions(max: u32) -> CmdResult {
    let kr1 = named_series("kr1_product", &[], max as i64)?;
    let sum = named_series("kr1_sum", &[], max as i64)?;
    let mut ok = true;
    out!("n product gap kr1_lhs kr1_rhs");
    for n in 0..=max {
        let (p, g) = (count_capparelli_product_side(n), count_capparelli_gap_side(n));
        let e = HalfExp::int(n as i64);
        let (l, r) = (sum.coeff(e), kr1.coeff(e));
        ok &= p == g && l == p.into() && r == p.into();
        out!("{n} {p} {g} {l} {r}");
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::List => cmd_list(),
        Command::Verify { identity, ranges, order, format, jobs } => cmd_verify(&identity, &ranges, order, format, jobs),
        Command::Series { name, params, order } => cmd_series(&name, &params, order),
        Command::Recurrence { l_max, m_max, k_max, j_max, jobs } => cmd_recurrence(l_max, m_max, k_max, j_max, jobs),
        Command::Partitions { max } => cmd_partitions(max),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
