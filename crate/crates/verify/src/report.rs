//! Machine-readable verification report.

use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::suite::CheckFailure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub anchor: String,
    pub tolerance: f64,
    /// `None` when the check could not be evaluated; see `error`.
    pub residual: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn new(
        check_id: &str,
        anchor: &str,
        tolerance: f64,
        outcome: Result<f64, CheckFailure>,
    ) -> Self {
        let (residual, error) = match outcome {
            Ok(r) if r.is_finite() => (Some(r), None),
            Ok(r) => (None, Some(format!("non-finite residual {r}"))),
            Err(e) => (None, Some(e.to_string())),
        };
        CheckRecord {
            check_id: check_id.to_owned(),
            anchor: anchor.to_owned(),
            tolerance,
            pass: residual.is_some_and(|r| r <= tolerance),
            residual,
            error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub seed: u64,
    pub config_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(records: Vec<CheckRecord>, seed: u64, config_digest: String) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Report {
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
                seed,
                config_digest,
            },
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn record(&self, check_id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check_id == check_id)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_json())
    }

    /// One line per record for terminal output.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        self.records.iter().map(|r| {
            let status = if r.pass { "PASS" } else { "FAIL" };
            match (&r.residual, &r.error) {
                (Some(res), _) => format!(
                    "{status} {:<28} residual {res:.3e} <= {:.1e}  ({})",
                    r.check_id, r.tolerance, r.anchor
                ),
                (None, err) => format!(
                    "{status} {:<28} error: {}  ({})",
                    r.check_id,
                    err.as_deref().unwrap_or("unknown"),
                    r.anchor
                ),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_residual_within_tolerance() {
        let records = vec![
            CheckRecord::new("a", "first", 1e-10, Ok(1e-11)),
            CheckRecord::new("b", "second", 1e-10, Ok(1e-9)),
            CheckRecord::new("c", "third", 1e-10, Ok(f64::NAN)),
            CheckRecord::new("d", "fourth", 1e-10, Ok(1e-10)),
        ];
        let report = Report::new(records, 3, "x".into());
        let pass: Vec<bool> = report.records.iter().map(|r| r.pass).collect();
        assert_eq!(pass, [true, false, false, true]);
        assert_eq!(report.summary.total, 4);
        assert_eq!(report.summary.passed + report.summary.failed, 4);
        assert!(!report.all_passed());
    }

    #[test]
    fn json_round_trips() {
        let report = Report::new(vec![CheckRecord::new("a", "first", 1.0, Ok(0.5))], 1, "d".into());
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert!(report.to_json().find("\"check_id\"").unwrap() < report.to_json().find("\"pass\"").unwrap());
    }

    #[test]
    fn empty_report_passes() {
        let report = Report::new(vec![], 0, String::new());
        assert!(report.all_passed());
        assert_eq!(report.summary.total, 0);
    }
}
