//! Chunked, resumable, deterministic scan over a candidate range.

use std::collections::BTreeMap;
use std::fs;
use std::ops::Range;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{invalid, Result};

/// Candidates per checkpoint.
pub const CHUNK: u64 = 1_000_000;
const BLOCK: u64 = 2048;

/// Named tallies kept alongside a scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Counters(pub BTreeMap<String, u64>);

impl Counters {
    pub fn add(&mut self, key: &str, v: u64) {
        if v > 0 {
            *self.0.entry(key.to_string()).or_default() += v;
        }
    }

    pub fn get(&self, key: &str) -> u64 {
        self.0.get(key).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &Counters) {
        for (k, v) in &other.0 {
            *self.0.entry(k.clone()).or_default() += v;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hit {
    pub index: u64,
    pub payload: Value,
}

pub struct ScanOutcome {
    pub scanned: u64,
    pub hit: Option<Hit>,
    pub counters: Counters,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    experiment: String,
    params: Value,
    next: u64,
    counters: Counters,
}

pub struct Scan<'a> {
    pub experiment: &'a str,
    pub params: &'a Value,
    pub total: u64,
    pub jobs: usize,
    pub checkpoint: Option<&'a Path>,
}

impl Scan<'_> {
    /// Runs `work` over `0..total`.
    ///
    /// `work` must stop at the first hit of its range and only count the
    /// candidates up to and including it. Blocks are merged in order, so the
    /// reported hit and tallies do not depend on `jobs`.
    pub fn run<F>(&self, work: F) -> Result<ScanOutcome>
    where
        F: Fn(Range<u64>, &mut Counters) -> Result<Option<Hit>> + Sync,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| invalid(e.to_string()))?;
        let (mut start, mut counters) = self.resume()?;
        while start < self.total {
            let end = (start + CHUNK).min(self.total);
            let blocks: Vec<Range<u64>> = (start..end)
                .step_by(BLOCK as usize)
                .map(|b| b..(b + BLOCK).min(end))
                .collect();
            let results: Vec<Result<(Counters, Option<Hit>)>> = pool.install(|| {
                blocks
                    .par_iter()
                    .map(|r| {
                        let mut c = Counters::default();
                        let hit = work(r.clone(), &mut c)?;
                        Ok((c, hit))
                    })
                    .collect()
            });
            for r in results {
                let (c, hit) = r?;
                counters.merge(&c);
                if let Some(hit) = hit {
                    return Ok(ScanOutcome {
                        scanned: hit.index + 1,
                        hit: Some(hit),
                        counters,
                    });
                }
            }
            start = end;
            self.save(start, &counters)?;
        }
        Ok(ScanOutcome {
            scanned: self.total,
            hit: None,
            counters,
        })
    }

    fn resume(&self) -> Result<(u64, Counters)> {
        let Some(path) = self.checkpoint else {
            return Ok((0, Counters::default()));
        };
        if !path.exists() {
            return Ok((0, Counters::default()));
        }
        let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(path)?)?;
        if cp.experiment != self.experiment || &cp.params != self.params || cp.next > self.total {
            return Err(invalid(format!(
                "checkpoint {} belongs to a different run",
                path.display()
            )));
        }
        Ok((cp.next, cp.counters))
    }

    fn save(&self, next: u64, counters: &Counters) -> Result<()> {
        let Some(path) = self.checkpoint else {
            return Ok(());
        };
        let cp = Checkpoint {
            experiment: self.experiment.to_string(),
            params: self.params.clone(),
            next,
            counters: counters.clone(),
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&cp)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn multiples_of(k: u64) -> impl Fn(Range<u64>, &mut Counters) -> Result<Option<Hit>> + Sync {
        move |r, c| {
            for i in r {
                c.add("seen", 1);
                if i > 0 && i % k == 0 {
                    return Ok(Some(Hit {
                        index: i,
                        payload: json!(i),
                    }));
                }
            }
            Ok(None)
        }
    }

    #[test]
    fn first_hit_and_counts_independent_of_jobs() {
        let params = json!({});
        for jobs in [1, 3] {
            let s = Scan {
                experiment: "t",
                params: &params,
                total: 10_000,
                jobs,
                checkpoint: None,
            };
            let out = s.run(multiples_of(5000)).unwrap();
            assert_eq!(out.hit.unwrap().index, 5000);
            assert_eq!(out.scanned, 5001);
            assert_eq!(out.counters.get("seen"), 5001);
        }
    }

    #[test]
    fn resumes_from_checkpoint() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let params = json!({"x": 1});
        let s = Scan {
            experiment: "t",
            params: &params,
            total: CHUNK + 10,
            jobs: 2,
            checkpoint: Some(&path),
        };
        let out = s.run(multiples_of(u64::MAX)).unwrap();
        assert!(out.hit.is_none());
        assert_eq!(out.counters.get("seen"), CHUNK + 10);
        // a finished checkpoint replays the tallies without scanning
        let again = s.run(|_, _| panic!("nothing left to scan")).unwrap();
        assert_eq!(again.counters.get("seen"), CHUNK + 10);

        let other = json!({"x": 2});
        let s2 = Scan {
            params: &other,
            ..s
        };
        assert!(s2.run(multiples_of(u64::MAX)).is_err());
    }
}
