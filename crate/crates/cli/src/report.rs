//! Text and JSON rendering of verification batches.

use std::fmt::Write as _;
use std::time::Duration;

use qtrinomial::catalog::VerificationReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct MismatchRecord {
    pub exponent_times_2: i64,
    pub lhs_coeff: String,
    pub rhs_coeff: String,
}

#[derive(Serialize)]
pub struct Record {
    pub identity: String,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub status: &'static str,
    pub mismatch: Option<MismatchRecord>,
    pub ms: f64,
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub wall_ms: f64,
}

#[derive(Serialize)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Summary,
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl Record {
    pub fn from_report(r: &VerificationReport) -> Self {
        Record {
            identity: r.identity.clone(),
            params: r.params.iter().map(|(k, v)| (k.to_string(), v.into())).collect(),
            status: r.status.as_str(),
            mismatch: r.mismatch.as_ref().map(|m| MismatchRecord {
                exponent_times_2: m.exponent.twice(),
                lhs_coeff: m.lhs.to_string(),
                rhs_coeff: m.rhs.to_string(),
            }),
            ms: ms(r.elapsed),
        }
    }
}

impl Report {
    pub fn new(reports: &[VerificationReport], wall: Duration) -> Self {
        let records: Vec<Record> = reports.iter().map(Record::from_report).collect();
        let passed = reports.iter().filter(|r| r.passed()).count();
        let summary = Summary { total: records.len(), passed, failed: records.len() - passed, wall_ms: ms(wall) };
        Report { records, summary }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, "{} {} {}", r.status.to_uppercase(), r.identity, params.join(","));
            if let Some(m) = &r.mismatch {
                let _ = write!(
                    out,
                    " first mismatch at q^({}/2): lhs {} rhs {}",
                    m.exponent_times_2, m.lhs_coeff, m.rhs_coeff
                );
            }
            let _ = writeln!(out, " ({:.3} ms)", r.ms);
        }
        let s = &self.summary;
        let _ = writeln!(out, "total {} passed {} failed {} wall {:.3} ms", s.total, s.passed, s.failed, s.wall_ms);
        out
    }
}
