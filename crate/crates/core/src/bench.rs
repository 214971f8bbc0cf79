// Copyright 2026 The prepost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Runs the miners over a min-sup grid and records runtime plus structural
//! memory proxies (tree nodes, live PP-codes) as CSV rows.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use crate::baselines::{brute_force, fp_growth_run};
use crate::error::{Error, Result};
use crate::hprepost::{hprepost_run, HPrepostConfig};
use crate::nlist::prepost_run;
use crate::types::{MinSup, MiningResult, TransactionDatabase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    PrePost,
    HPrepost,
    FpGrowth,
    BruteForce,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::PrePost, Algorithm::HPrepost, Algorithm::FpGrowth, Algorithm::BruteForce];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::PrePost => "prepost",
            Algorithm::HPrepost => "hprepost",
            Algorithm::FpGrowth => "fpgrowth",
            Algorithm::BruteForce => "bruteforce",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?} (expected prepost, hprepost, fpgrowth or bruteforce)")))
    }
}

/// Result of one timed mining run.
#[derive(Clone, Debug)]
pub struct AlgoRun {
    pub result: MiningResult,
    pub threshold: u64,
    pub runtime_ms: f64,
    pub peak_nodes: usize,
    pub peak_codes: usize,
}

/// Mines `db` with `algo`. Runtime covers mining only; the database is
/// already parsed.
pub fn run_algorithm(algo: Algorithm, db: &TransactionDatabase, spec: MinSup, cfg: HPrepostConfig) -> Result<AlgoRun> {
    let start = Instant::now();
    let run = match algo {
        Algorithm::HPrepost => {
            let run = hprepost_run(db, spec, cfg)?;
            AlgoRun {
                result: run.result,
                threshold: run.threshold,
                runtime_ms: 0.0,
                peak_nodes: run.tree_nodes,
                peak_codes: run.peak_codes,
            }
        }
        Algorithm::PrePost => {
            let m = spec.resolve(db.len())?;
            let run = prepost_run(db, m);
            AlgoRun { result: run.result, threshold: m, runtime_ms: 0.0, peak_nodes: run.tree_nodes, peak_codes: run.stats.peak_codes }
        }
        Algorithm::FpGrowth => {
            let m = spec.resolve(db.len())?;
            let run = fp_growth_run(db, m);
            AlgoRun { result: run.result, threshold: m, runtime_ms: 0.0, peak_nodes: run.peak_nodes, peak_codes: 0 }
        }
        Algorithm::BruteForce => {
            let m = spec.resolve(db.len())?;
            AlgoRun { result: brute_force(db, m)?, threshold: m, runtime_ms: 0.0, peak_nodes: 0, peak_codes: 0 }
        }
    };
    Ok(AlgoRun { runtime_ms: start.elapsed().as_secs_f64() * 1e3, ..run })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub dataset: String,
    pub algo: Algorithm,
    pub min_sup: f64,
    pub m: u64,
    pub runtime_ms: f64,
    pub peak_nodes: usize,
    pub peak_codes: usize,
    pub result_count: usize,
    pub groups: usize,
    pub splits: usize,
    pub workers: usize,
}

pub const CSV_HEADER: &str = "dataset,algo,min_sup,m,runtime_ms,peak_nodes,peak_codes,result_count,groups,splits,workers";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{},{},{},{},{},{}",
            self.dataset,
            self.algo,
            self.min_sup,
            self.m,
            self.runtime_ms,
            self.peak_nodes,
            self.peak_codes,
            self.result_count,
            self.groups,
            self.splits,
            self.workers
        )
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    out.flush()?;
    Ok(())
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Grid benchmark: every (algorithm, min-sup) pair `repeat` times, reporting
/// the median runtime. Rows are ordered by min-sup, then algorithm.
pub fn bench(
    dataset: &str,
    db: &TransactionDatabase,
    min_sups: &[f64],
    algos: &[Algorithm],
    repeat: usize,
    cfg: HPrepostConfig,
) -> Result<Vec<BenchRecord>> {
    if repeat == 0 {
        return Err(Error::InvalidParameter("repeat must be at least 1".into()));
    }
    let mut records = Vec::new();
    for &f in min_sups {
        let spec = MinSup::Fraction(f);
        for &algo in algos {
            let mut times = Vec::with_capacity(repeat);
            let mut last = None;
            for _ in 0..repeat {
                let run = run_algorithm(algo, db, spec, cfg)?;
                times.push(run.runtime_ms);
                last = Some(run);
            }
            let run = last.expect("repeat >= 1");
            let parallel = algo == Algorithm::HPrepost;
            records.push(BenchRecord {
                dataset: dataset.to_string(),
                algo,
                min_sup: f,
                m: run.threshold,
                runtime_ms: median(&mut times),
                peak_nodes: run.peak_nodes,
                peak_codes: run.peak_codes,
                result_count: run.result.len(),
                groups: if parallel { cfg.groups } else { 1 },
                splits: if parallel { cfg.splits } else { 1 },
                workers: if parallel { cfg.workers } else { 1 },
            });
        }
    }
    Ok(records)
}
