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

//! Two-job parallel PrePost on the in-process MapReduce engine.
//!
//! Job 1 counts item supports (and the transaction total under a reserved
//! key) to produce the F-list. Job 2 projects every transaction onto the
//! F-list and cuts it into group-dependent shards: for each group owning an
//! item of the transaction, the prefix ending at that group's last item.
//! The reducer of a group builds a private PPC-tree from its shards and mines
//! only itemsets whose anchor (least frequent item) the group owns. Every
//! other item of such an itemset is more frequent than the anchor and hence
//! inside the shard, so per-group supports are exact and groups never emit
//! the same itemset twice.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::mapreduce::{make_splits, run_job, JobSpec, KeyValue, TaskTiming};
use crate::nlist::mine_anchored;
use crate::ppc_tree::{build_tree_from_paths, project_transaction, NList, ProjectedTransaction};
use crate::types::{resolve_threshold, FList, Item, Itemset, MinSup, MiningResult, Transaction, TransactionDatabase};

/// Round-robin ownership of F-list ranks: rank `r` belongs to group `r mod G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupAssignment {
    groups: usize,
}

impl GroupAssignment {
    pub fn new(groups: usize) -> Result<Self> {
        if groups == 0 {
            return Err(Error::InvalidParameter("group count must be at least 1".into()));
        }
        Ok(GroupAssignment { groups })
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    #[inline]
    pub fn group_of(&self, rank: u32) -> usize {
        rank as usize % self.groups
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupShard {
    pub group: usize,
    pub path: ProjectedTransaction,
}

/// One shard per group that owns an item of `t`, in ascending group order.
pub fn shard_transaction(t: &ProjectedTransaction, groups: &GroupAssignment) -> Vec<GroupShard> {
    let mut last: Vec<Option<usize>> = vec![None; groups.groups()];
    for (pos, &rank) in t.ranks().iter().enumerate() {
        last[groups.group_of(rank)] = Some(pos);
    }
    last.into_iter().enumerate().filter_map(|(group, pos)| pos.map(|p| GroupShard { group, path: t.prefix(p + 1) })).collect()
}

/// Parallelism of an HPrepost run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HPrepostConfig {
    pub groups: usize,
    pub splits: usize,
    pub workers: usize,
    pub deterministic: bool,
}

impl Default for HPrepostConfig {
    fn default() -> Self {
        HPrepostConfig { groups: 1, splits: 1, workers: 1, deterministic: true }
    }
}

impl HPrepostConfig {
    pub fn new(groups: usize, splits: usize, workers: usize) -> Self {
        HPrepostConfig { groups, splits, workers, deterministic: true }
    }

    fn validate(&self) -> Result<()> {
        if self.groups == 0 || self.splits == 0 || self.workers == 0 {
            return Err(Error::InvalidParameter(format!(
                "groups, splits and workers must be at least 1 (got {}, {}, {})",
                self.groups, self.splits, self.workers
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum CountKey {
    Transactions,
    Item(Item),
}

/// Job 1: parallel support counting. Returns the F-list, the transaction
/// count and the resolved threshold.
pub fn job1_flist(db: &TransactionDatabase, spec: MinSup, splits: usize, workers: usize) -> Result<(FList, usize, u64)> {
    job1(db, spec, &HPrepostConfig { splits, workers, ..HPrepostConfig::default() }).map(|(f, n, m, _)| (f, n, m))
}

fn job1(db: &TransactionDatabase, spec: MinSup, cfg: &HPrepostConfig) -> Result<(FList, usize, u64, Vec<TaskTiming>)> {
    spec.validate()?;
    // An absolute threshold is known up front and can filter in the reducer;
    // a fraction needs the global count first.
    let reducer_floor = match spec {
        MinSup::Count(m) => m,
        MinSup::Fraction(_) => 1,
    };
    let job = JobSpec::new(
        |t: &Transaction| {
            let mut out = Vec::with_capacity(t.len() + 1);
            out.push(KeyValue::new(CountKey::Transactions, 1u64));
            out.extend(t.items().iter().map(|&i| KeyValue::new(CountKey::Item(i), 1u64)));
            Ok(out)
        },
        move |key: &CountKey, ones: Vec<u64>| {
            let sum: u64 = ones.iter().sum();
            Ok(match key {
                CountKey::Item(_) if sum < reducer_floor => vec![],
                _ => vec![sum],
            })
        },
    )
    .combiner(|_k, ones: Vec<u64>| vec![ones.iter().sum()])
    .reducers(cfg.splits.max(1))
    .workers(cfg.workers)
    .deterministic(cfg.deterministic);
    let out = run_job(&job, &make_splits(db.len(), cfg.splits)?, db.transactions())?;
    let trace = out.trace.clone();
    let mut n = 0usize;
    let mut counts = Vec::new();
    for kv in out.outputs {
        match kv.key {
            CountKey::Transactions => n = kv.value as usize,
            CountKey::Item(item) => counts.push((item, kv.value)),
        }
    }
    let m = resolve_threshold(spec, n)?;
    Ok((FList::from_counts(counts, m), n, m, trace))
}

/// Output of one group reducer.
#[derive(Clone, Debug)]
struct GroupOutcome {
    result: MiningResult,
    tree_nodes: usize,
    peak_codes: usize,
}

/// Aggregate output of job 2.
#[derive(Clone, Debug)]
pub struct Job2Output {
    /// Itemsets of size two or more.
    pub result: MiningResult,
    /// Sum of the group tree sizes.
    pub tree_nodes: usize,
    /// Sum of per-group peak PP-code counts.
    pub peak_codes: usize,
    pub trace: Vec<TaskTiming>,
}

fn shard_job<'a, O: 'a>(
    flist: &'a FList,
    groups: GroupAssignment,
    cfg: &HPrepostConfig,
    reduce: impl Fn(usize, Vec<ProjectedTransaction>) -> O + Send + Sync + 'a,
) -> JobSpec<'a, Transaction, usize, ProjectedTransaction, O> {
    JobSpec::new(
        move |t: &Transaction| {
            let path = project_transaction(t, flist);
            Ok(shard_transaction(&path, &groups).into_iter().map(|s| KeyValue::new(s.group, s.path)).collect())
        },
        move |&group: &usize, shards: Vec<ProjectedTransaction>| Ok(vec![reduce(group, shards)]),
    )
    .reducers(groups.groups())
    .workers(cfg.workers)
    .deterministic(cfg.deterministic)
}

/// Job 2: group-dependent tree construction and mining.
pub fn job2_mine(db: &TransactionDatabase, flist: &FList, m: u64, groups: usize, splits: usize, workers: usize) -> Result<Job2Output> {
    job2(db, flist, m, &HPrepostConfig::new(groups, splits, workers))
}

fn job2(db: &TransactionDatabase, flist: &FList, m: u64, cfg: &HPrepostConfig) -> Result<Job2Output> {
    cfg.validate()?;
    let groups = GroupAssignment::new(cfg.groups)?;
    let job = shard_job(flist, groups, cfg, move |group, shards| {
        let tree = build_tree_from_paths(flist, &shards);
        let nlists = tree.build_nlists(flist);
        let pairs = tree.count_pairs(flist.len());
        let (result, stats) = mine_anchored(flist, &nlists, &pairs, m, |rank| groups.group_of(rank) == group);
        GroupOutcome { result, tree_nodes: tree.node_count(), peak_codes: stats.peak_codes }
    });
    let out = run_job(&job, &make_splits(db.len(), cfg.splits)?, db.transactions())?;
    let mut merged = Job2Output { result: MiningResult::new(), tree_nodes: 0, peak_codes: 0, trace: out.trace };
    for kv in out.outputs {
        let outcome = kv.value;
        merged.tree_nodes += outcome.tree_nodes;
        merged.peak_codes += outcome.peak_codes;
        merged
            .result
            .merge_disjoint(outcome.result)
            .map_err(|dup| Error::InvalidParameter(format!("itemset {{{dup}}} emitted by more than one group")))?;
    }
    Ok(merged)
}

/// Runs the job 2 map phase and tree construction only, returning each
/// group's 1-itemset N-lists. Used to inspect the group trees.
pub fn group_nlists(db: &TransactionDatabase, flist: &FList, cfg: &HPrepostConfig) -> Result<BTreeMap<usize, BTreeMap<Item, NList>>> {
    cfg.validate()?;
    let groups = GroupAssignment::new(cfg.groups)?;
    let job = shard_job(flist, groups, cfg, |_, shards| build_tree_from_paths(flist, &shards).build_nlists(flist).to_map(flist));
    let out = run_job(&job, &make_splits(db.len(), cfg.splits)?, db.transactions())?;
    Ok(out.outputs.into_iter().map(|kv| (kv.key, kv.value)).collect())
}

/// A complete HPrepost run with the figures the benchmark reports.
#[derive(Clone, Debug)]
pub struct HPrepostRun {
    pub result: MiningResult,
    pub flist: FList,
    pub transactions: usize,
    pub threshold: u64,
    pub tree_nodes: usize,
    pub peak_codes: usize,
    pub trace: Vec<TaskTiming>,
    pub job1_millis: f64,
    pub job2_millis: f64,
}

pub fn hprepost(db: &TransactionDatabase, spec: MinSup, cfg: HPrepostConfig) -> Result<MiningResult> {
    hprepost_run(db, spec, cfg).map(|r| r.result)
}

pub fn hprepost_run(db: &TransactionDatabase, spec: MinSup, cfg: HPrepostConfig) -> Result<HPrepostRun> {
    cfg.validate()?;
    let t1 = Instant::now();
    let (flist, n, m, mut trace) = job1(db, spec, &cfg)?;
    let job1_millis = t1.elapsed().as_secs_f64() * 1e3;
    let t2 = Instant::now();
    let job2 = job2(db, &flist, m, &cfg)?;
    let job2_millis = t2.elapsed().as_secs_f64() * 1e3;
    let mut result = job2.result;
    for e in flist.entries() {
        result.insert(Itemset::new([e.item]), e.count);
    }
    trace.extend(job2.trace);
    Ok(HPrepostRun {
        result,
        flist,
        transactions: n,
        threshold: m,
        tree_nodes: job2.tree_nodes,
        peak_codes: job2.peak_codes,
        trace,
        job1_millis,
        job2_millis,
    })
}
