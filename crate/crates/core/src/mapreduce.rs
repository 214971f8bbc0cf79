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

//! In-process MapReduce: contiguous input splits, map tasks on a bounded
//! worker pool, hash-partitioned shuffle, and reduce tasks per partition.
//!
//! In deterministic mode (the default) every reduce partition processes its
//! keys in ascending order and each key receives its values ordered by
//! `(split index, emission order within the split)`. Results are then
//! independent of the worker count.

use std::collections::{BTreeMap, HashMap};
use std::hash::{DefaultHasher, Hash, Hasher};
use std::ops::Range;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Phase, Result};

/// A contiguous block of record indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSplit {
    pub index: usize,
    pub range: Range<usize>,
}

impl InputSplit {
    pub fn len(&self) -> usize {
        self.range.len()
    }

    pub fn is_empty(&self) -> bool {
        self.range.is_empty()
    }
}

/// Cuts `0..n` into `s` contiguous splits whose sizes differ by at most one,
/// larger splits first.
pub fn make_splits(n: usize, s: usize) -> Result<Vec<InputSplit>> {
    if s == 0 {
        return Err(Error::InvalidParameter("split count must be at least 1".into()));
    }
    let (base, extra) = (n / s, n % s);
    let mut start = 0;
    Ok((0..s)
        .map(|index| {
            let len = base + usize::from(index < extra);
            let split = InputSplit { index, range: start..start + len };
            start += len;
            split
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KeyValue<K, V> {
    pub key: K,
    pub value: V,
}

impl<K, V> KeyValue<K, V> {
    pub fn new(key: K, value: V) -> Self {
        KeyValue { key, value }
    }
}

/// Failure reported by a user map or reduce function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskError(pub String);

impl<S: Into<String>> From<S> for TaskError {
    fn from(s: S) -> Self {
        TaskError(s.into())
    }
}

pub type TaskResult<T> = std::result::Result<T, TaskError>;

type MapFn<'a, R, K, V> = Box<dyn Fn(&R) -> TaskResult<Vec<KeyValue<K, V>>> + Send + Sync + 'a>;
type CombineFn<'a, K, V> = Box<dyn Fn(&K, Vec<V>) -> Vec<V> + Send + Sync + 'a>;
type ReduceFn<'a, K, V, O> = Box<dyn Fn(&K, Vec<V>) -> TaskResult<Vec<O>> + Send + Sync + 'a>;

/// A job: map, optional combine, reduce, and its parallelism.
pub struct JobSpec<'a, R, K, V, O> {
    map: MapFn<'a, R, K, V>,
    combine: Option<CombineFn<'a, K, V>>,
    reduce: ReduceFn<'a, K, V, O>,
    reducers: usize,
    workers: usize,
    deterministic: bool,
}

impl<'a, R, K, V, O> JobSpec<'a, R, K, V, O> {
    pub fn new(
        map: impl Fn(&R) -> TaskResult<Vec<KeyValue<K, V>>> + Send + Sync + 'a,
        reduce: impl Fn(&K, Vec<V>) -> TaskResult<Vec<O>> + Send + Sync + 'a,
    ) -> Self {
        JobSpec { map: Box::new(map), combine: None, reduce: Box::new(reduce), reducers: 1, workers: 1, deterministic: true }
    }

    /// Runs on each split's output per key before the shuffle. Must not change
    /// the reduce result, e.g. partial sums under an integer-sum reducer.
    pub fn combiner(mut self, combine: impl Fn(&K, Vec<V>) -> Vec<V> + Send + Sync + 'a) -> Self {
        self.combine = Some(Box::new(combine));
        self
    }

    pub fn reducers(mut self, r: usize) -> Self {
        self.reducers = r;
        self
    }

    pub fn workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    /// Free-running mode (`false`) delivers values in map completion order
    /// and visits keys in hash order. Meant for benchmarking only.
    pub fn deterministic(mut self, on: bool) -> Self {
        self.deterministic = on;
        self
    }
}

/// Record counts observed by the engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JobCounters {
    pub map_input_records: usize,
    /// Key-values emitted by map functions.
    pub map_output_records: usize,
    /// Key-values entering the shuffle (after combine, if any).
    pub shuffled_records: usize,
    /// Values handed to reduce functions.
    pub reduce_input_values: usize,
    pub reduce_calls: usize,
    pub reduce_output_records: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TaskTiming {
    pub phase: Phase,
    pub task: usize,
    pub millis: f64,
    pub records: usize,
}

#[derive(Clone, Debug)]
pub struct JobOutput<K, O> {
    /// Reduce outputs paired with their key, partitions in index order.
    pub outputs: Vec<KeyValue<K, O>>,
    pub counters: JobCounters,
    pub trace: Vec<TaskTiming>,
}

impl<K: Ord, O> JobOutput<K, O> {
    pub fn into_map(self) -> BTreeMap<K, Vec<O>> {
        let mut map: BTreeMap<K, Vec<O>> = BTreeMap::new();
        for kv in self.outputs {
            map.entry(kv.key).or_default().push(kv.value);
        }
        map
    }
}

/// Partition of `key` among `reducers`, from a fixed-key SipHash.
pub fn partition_of<K: Hash>(key: &K, reducers: usize) -> usize {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    (h.finish() % reducers as u64) as usize
}

struct MapTaskOutput<K, V> {
    split: usize,
    /// Per partition, key-values in emission order.
    partitions: Vec<Vec<KeyValue<K, V>>>,
    emitted: usize,
    shuffled: usize,
    timing: TaskTiming,
}

fn run_map_task<R, K, V, O>(job: &JobSpec<'_, R, K, V, O>, split: &InputSplit, records: &[R]) -> Result<MapTaskOutput<K, V>>
where
    K: Ord + Hash + Clone,
{
    let start = Instant::now();
    let mut emitted = Vec::new();
    for record in &records[split.range.clone()] {
        let out = (job.map)(record).map_err(|e| Error::Task { phase: Phase::Map, task: split.index, message: e.0 })?;
        emitted.extend(out);
    }
    let emitted_count = emitted.len();
    let emitted = match &job.combine {
        None => emitted,
        Some(combine) => {
            let mut grouped: BTreeMap<K, Vec<V>> = BTreeMap::new();
            for kv in emitted {
                grouped.entry(kv.key).or_default().push(kv.value);
            }
            grouped
                .into_iter()
                .flat_map(|(k, vs)| {
                    let combined = combine(&k, vs);
                    combined.into_iter().map(move |v| KeyValue::new(k.clone(), v))
                })
                .collect()
        }
    };
    let shuffled = emitted.len();
    let mut partitions: Vec<Vec<KeyValue<K, V>>> = (0..job.reducers).map(|_| Vec::new()).collect();
    for kv in emitted {
        partitions[partition_of(&kv.key, job.reducers)].push(kv);
    }
    Ok(MapTaskOutput {
        split: split.index,
        partitions,
        emitted: emitted_count,
        shuffled,
        timing: TaskTiming { phase: Phase::Map, task: split.index, millis: start.elapsed().as_secs_f64() * 1e3, records: split.len() },
    })
}

/// Runs a job over `records` cut into `splits`.
pub fn run_job<R, K, V, O>(job: &JobSpec<'_, R, K, V, O>, splits: &[InputSplit], records: &[R]) -> Result<JobOutput<K, O>>
where
    R: Sync,
    K: Ord + Hash + Clone + Send,
    V: Send,
    O: Send,
{
    if job.reducers == 0 || job.workers == 0 {
        return Err(Error::InvalidParameter("reducer and worker counts must be at least 1".into()));
    }
    if let Some(bad) = splits.iter().find(|s| s.range.end > records.len()) {
        return Err(Error::InvalidParameter(format!("split {} extends past {} records", bad.index, records.len())));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let map_outputs: Vec<MapTaskOutput<K, V>> = if job.deterministic {
        let results: Vec<Result<MapTaskOutput<K, V>>> = pool.install(|| splits.par_iter().map(|s| run_map_task(job, s, records)).collect());
        results.into_iter().collect::<Result<_>>()?
    } else {
        let (tx, rx) = mpsc::channel();
        pool.install(|| {
            splits.par_iter().for_each_with(tx, |tx, s| {
                let _ = tx.send(run_map_task(job, s, records));
            })
        });
        rx.into_iter().collect::<Result<_>>()?
    };

    let mut counters = JobCounters { map_input_records: splits.iter().map(InputSplit::len).sum(), ..Default::default() };
    let mut trace = Vec::with_capacity(map_outputs.len() + job.reducers);
    let mut partitions: Vec<Vec<(K, Vec<V>)>> = (0..job.reducers).map(|_| Vec::new()).collect();

    if job.deterministic {
        let mut grouped: Vec<BTreeMap<K, Vec<V>>> = (0..job.reducers).map(|_| BTreeMap::new()).collect();
        let mut ordered = map_outputs;
        ordered.sort_by_key(|o| o.split);
        for out in ordered {
            counters.map_output_records += out.emitted;
            counters.shuffled_records += out.shuffled;
            trace.push(out.timing);
            for (p, kvs) in out.partitions.into_iter().enumerate() {
                for kv in kvs {
                    grouped[p].entry(kv.key).or_default().push(kv.value);
                }
            }
        }
        for (p, g) in grouped.into_iter().enumerate() {
            partitions[p] = g.into_iter().collect();
        }
    } else {
        let mut grouped: Vec<HashMap<K, Vec<V>>> = (0..job.reducers).map(|_| HashMap::new()).collect();
        for out in map_outputs {
            counters.map_output_records += out.emitted;
            counters.shuffled_records += out.shuffled;
            trace.push(out.timing);
            for (p, kvs) in out.partitions.into_iter().enumerate() {
                for kv in kvs {
                    grouped[p].entry(kv.key).or_default().push(kv.value);
                }
            }
        }
        for (p, g) in grouped.into_iter().enumerate() {
            partitions[p] = g.into_iter().collect();
        }
    }

    struct ReduceTaskOutput<K, O> {
        outputs: Vec<KeyValue<K, O>>,
        values: usize,
        calls: usize,
        timing: TaskTiming,
    }

    let reduced: Vec<Result<ReduceTaskOutput<K, O>>> = pool.install(|| {
        partitions
            .into_par_iter()
            .enumerate()
            .map(|(p, groups)| {
                let start = Instant::now();
                let mut outputs = Vec::new();
                let (mut values, calls) = (0, groups.len());
                for (key, vs) in groups {
                    values += vs.len();
                    let out = (job.reduce)(&key, vs).map_err(|e| Error::Task { phase: Phase::Reduce, task: p, message: e.0 })?;
                    outputs.extend(out.into_iter().map(|o| KeyValue::new(key.clone(), o)));
                }
                let timing = TaskTiming { phase: Phase::Reduce, task: p, millis: start.elapsed().as_secs_f64() * 1e3, records: values };
                Ok(ReduceTaskOutput { outputs, values, calls, timing })
            })
            .collect()
    });

    let mut outputs = Vec::new();
    for r in reduced {
        let r = r?;
        counters.reduce_input_values += r.values;
        counters.reduce_calls += r.calls;
        counters.reduce_output_records += r.outputs.len();
        trace.push(r.timing);
        outputs.extend(r.outputs);
    }
    Ok(JobOutput { outputs, counters, trace })
}
