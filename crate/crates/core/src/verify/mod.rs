//! Exhaustive and sampled verification experiments with JSON/CSV reports.

mod experiments;
mod report;
mod scan;
mod small;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use experiments::{
    candidate_violates, even3_predicate, hermite_coefficient, hermite_coefficient_check,
    kernel_class, outside_mid, verify_even_n3_classification, verify_hermite,
    verify_no_typec_even8, verify_no_typec_odd, verify_planar_dichotomy, ComponentForm,
    KernelClass, DEFAULT_PLANAR_SAMPLE,
};
pub use report::{report_write, Verdict, VerdictReport};
pub use scan::{Counters, CHUNK};
pub use small::SmallField;

use crate::error::{Error, Result};

pub const EXPERIMENTS: [&str; 5] = [
    "no-typec-odd",
    "no-typec-even8",
    "even-n3-classification",
    "hermite",
    "planar-dichotomy",
];

/// Default cap on candidates times per-candidate evaluations.
pub const DEFAULT_WORK_BUDGET: u64 = 1 << 32;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub q: Option<u64>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    /// Random pairs in sample mode.
    pub sample: Option<u64>,
    pub full: bool,
    pub seed: u64,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    /// Candidate index reported as a violation, for exercising the
    /// counterexample path.
    pub inject: Option<u64>,
    pub budget: u64,
}

impl ExperimentSpec {
    pub fn new(name: &str) -> Self {
        ExperimentSpec {
            name: name.to_string(),
            q: None,
            n: None,
            m: None,
            k: None,
            sample: None,
            full: false,
            seed: 0,
            jobs: std::thread::available_parallelism().map_or(1, usize::from),
            out: None,
            checkpoint: None,
            inject: None,
            budget: DEFAULT_WORK_BUDGET,
        }
    }
}

/// Runs the named experiment and writes its report when `out` is set.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<VerdictReport> {
    let report = match spec.name.as_str() {
        "no-typec-odd" => verify_no_typec_odd(spec),
        "no-typec-even8" => verify_no_typec_even8(spec),
        "even-n3-classification" => verify_even_n3_classification(spec),
        "hermite" => verify_hermite(spec),
        "planar-dichotomy" => verify_planar_dichotomy(spec),
        other => Err(Error::UnknownExperiment(other.to_string())),
    }?;
    if let Some(out) = &spec.out {
        report_write(&report, out)?;
    }
    Ok(report)
}

/// Whether the report's counterexample, recomputed from scratch, is a real
/// violation. `false` when there is none.
pub fn reverify(report: &VerdictReport) -> Result<bool> {
    match &report.counterexample {
        Some(p) => candidate_violates(&report.experiment, &report.params, p),
        None => Ok(false),
    }
}
