use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::scan::Counters;
use crate::error::Result;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub experiment: String,
    pub params: Value,
    pub verdict: Verdict,
    pub counterexample: Option<Value>,
    /// Size of the search space.
    pub candidates: u64,
    pub scanned: u64,
    pub counters: Counters,
    pub wall_time_secs: f64,
}

impl VerdictReport {
    /// 0 when confirmed, 2 when a counterexample was found.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Confirmed => 0,
            Verdict::Counterexample => 2,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    experiment: &'a str,
    verdict: Verdict,
    candidates: u64,
    scanned: u64,
    wall_time_secs: f64,
    params: String,
    counters: String,
}

/// Writes the report as JSON to `path` and a one-row CSV summary next to it.
pub fn report_write(report: &VerdictReport, path: &Path) -> Result<()> {
    fs::write(path, serde_json::to_vec_pretty(report)?)?;
    let mut w = csv::Writer::from_path(path.with_extension("csv"))?;
    w.serialize(CsvRow {
        experiment: &report.experiment,
        verdict: report.verdict,
        candidates: report.candidates,
        scanned: report.scanned,
        wall_time_secs: report.wall_time_secs,
        params: report.params.to_string(),
        counters: serde_json::to_string(&report.counters)?,
    })?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn writes_json_and_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let mut counters = Counters::default();
        counters.add("permuting", 3);
        let r = VerdictReport {
            experiment: "hermite".into(),
            params: json!({"q": 2}),
            verdict: Verdict::Confirmed,
            counterexample: None,
            candidates: 56,
            scanned: 56,
            counters,
            wall_time_secs: 0.5,
        };
        report_write(&r, &path).unwrap();
        let back: VerdictReport =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, r);
        let csv = fs::read_to_string(path.with_extension("csv")).unwrap();
        assert!(csv.starts_with("experiment,verdict,candidates"));
        assert!(csv.contains("hermite,confirmed,56,56"));
    }
}
