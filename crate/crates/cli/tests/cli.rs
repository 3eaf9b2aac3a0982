use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtrinomial")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Drops the timing fields so two reports can be compared byte for byte.
fn strip_timings(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"ms\"") && !l.contains("\"wall_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn list_names_every_identity() {
    let o = run(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("seed"));
    assert!(text.contains("end_of_t_hierarchy"));
    assert!(text.contains("kr1"));
}

#[test]
fn verify_seed_grid() {
    let o = run(&["verify", "seed", "L=0..10", "M=0..5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS seed")).count(), 66);
    assert!(text.contains("total 66 passed 66 failed 0"));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "seed", "L=3..1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "seed", "M=-1..2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "seed", "nu=1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "seed", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["series", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["series", "seed.lhs"]).status.code(), Some(2));
    let o = run(&["verify", "nope"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown identity"));
}

#[test]
fn kr1_json_record() {
    let o = run(&["verify", "kr1", "--order", "60", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rec = &v["records"][0];
    assert_eq!(rec["identity"], "kr1");
    assert_eq!(rec["status"], "pass");
    assert!(rec["mismatch"].is_null());
    assert_eq!(rec["params"]["order"], 60);
    assert!(rec["ms"].is_number());
    assert_eq!(v["summary"]["total"], 1);
    assert_eq!(v["summary"]["passed"], 1);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["wall_ms"].is_number());
}

#[test]
fn reports_are_deterministic_across_job_counts() {
    let base = ["verify", "all", "L=0..3", "M=0..3", "--order", "30", "--format", "json"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let many = run(&[&base[..], &["--jobs", "4"]].concat());
    let again = run(&[&base[..], &["--jobs", "1"]].concat());
    assert_eq!(one.status.code(), Some(0));
    let (a, b, c) = (stdout(&one), stdout(&many), stdout(&again));
    assert_eq!(strip_timings(&a), strip_timings(&b));
    assert_eq!(strip_timings(&a), strip_timings(&c));
}

#[test]
fn euler_product_follows_pentagonal_signs() {
    let o = run(&["series", "euler_product", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let coeffs: Vec<i64> = stdout(&o).lines().map(|l| l.split(' ').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(coeffs, vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
}

#[test]
fn order_zero_prints_one_line() {
    for name in ["euler_product", "kr1_product", "partition_generating", "rogers_ramanujan_1.rhs"] {
        let o = run(&["series", name, "--order", "0"]);
        assert_eq!(stdout(&o), "0 1\n", "{name}");
    }
}

#[test]
fn kr1_product_matches_partition_counts() {
    let series = stdout(&run(&["series", "kr1_product", "--order", "10"]));
    let table = stdout(&run(&["partitions", "--max", "10"]));
    for (s, t) in series.lines().zip(table.lines().skip(1)) {
        let s: Vec<&str> = s.split(' ').collect();
        let t: Vec<&str> = t.split(' ').collect();
        assert_eq!(s[0], t[0]);
        assert_eq!(s[1], t[1]);
    }
}

#[test]
fn series_with_parameters() {
    let lhs = stdout(&run(&["series", "andrews_gordon.lhs", "nu=2", "--order", "15"]));
    let rhs = stdout(&run(&["series", "andrews_gordon.rhs", "nu=2", "--order", "15"]));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.lines().count(), 16);
}

#[test]
fn recurrence_and_partitions_pass() {
    let o = run(&["recurrence", "--l-max", "6", "--m-max", "3", "--k-max", "3", "--j-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let o = run(&["partitions", "--max", "30"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn text_report_golden() {
    let o = run(&["verify", "seed", "L=1", "M=1"]);
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("PASS seed L=1,M=1 ("), "{first}");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    std::fs::write(&path, &text).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
}
