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

//! FP-growth: FP-tree with header table and node links, mined by recursive
//! conditional pattern bases. Items are ordered by the shared F-list rule.

use crate::ppc_tree::{build_flist, project_transaction};
use crate::types::{FList, Itemset, MiningResult, TransactionDatabase};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct FpNode {
    rank: u32,
    count: u64,
    parent: u32,
    children: Vec<u32>,
    next: u32,
}

/// FP-tree over F-list ranks `0..n`.
#[derive(Clone, Debug)]
struct FpTree {
    nodes: Vec<FpNode>,
    heads: Vec<u32>,
    totals: Vec<u64>,
}

impl FpTree {
    fn new(n: usize) -> Self {
        let root = FpNode { rank: NONE, count: 0, parent: NONE, children: Vec::new(), next: NONE };
        FpTree { nodes: vec![root], heads: vec![NONE; n], totals: vec![0; n] }
    }

    /// `ranks` must be ascending.
    fn insert(&mut self, ranks: &[u32], count: u64) {
        let mut cur = 0u32;
        for &r in ranks {
            self.totals[r as usize] += count;
            let found = self.nodes[cur as usize].children.iter().copied().find(|&c| self.nodes[c as usize].rank == r);
            cur = match found {
                Some(c) => {
                    self.nodes[c as usize].count += count;
                    c
                }
                None => {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(FpNode { rank: r, count, parent: cur, children: Vec::new(), next: self.heads[r as usize] });
                    self.heads[r as usize] = id;
                    self.nodes[cur as usize].children.push(id);
                    id
                }
            };
        }
    }

    /// Prefix paths (ascending ranks) above every node of `rank`, with counts.
    fn pattern_base(&self, rank: u32) -> Vec<(Vec<u32>, u64)> {
        let mut base = Vec::new();
        let mut node = self.heads[rank as usize];
        while node != NONE {
            let n = &self.nodes[node as usize];
            let mut path = Vec::new();
            let mut up = n.parent;
            while up != 0 {
                path.push(self.nodes[up as usize].rank);
                up = self.nodes[up as usize].parent;
            }
            if !path.is_empty() {
                path.reverse();
                base.push((path, n.count));
            }
            node = n.next;
        }
        base
    }
}

/// FP-growth run with the peak number of FP-tree nodes alive at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGrowthRun {
    pub result: MiningResult,
    pub peak_nodes: usize,
}

struct Growth<'a> {
    flist: &'a FList,
    m: u64,
    suffix: Vec<u32>,
    out: MiningResult,
    live_nodes: usize,
    peak_nodes: usize,
}

impl Growth<'_> {
    fn mine(&mut self, tree: &FpTree) {
        for rank in (0..tree.heads.len() as u32).rev() {
            let total = tree.totals[rank as usize];
            if total < self.m {
                continue;
            }
            self.suffix.push(rank);
            self.out.insert(Itemset::new(self.suffix.iter().map(|&r| self.flist.item(r))), total);

            let base = tree.pattern_base(rank);
            let mut freq = vec![0u64; rank as usize];
            for (path, count) in &base {
                for &r in path {
                    freq[r as usize] += count;
                }
            }
            if freq.iter().any(|&c| c >= self.m) {
                let mut cond = FpTree::new(rank as usize);
                for (path, count) in &base {
                    let kept: Vec<u32> = path.iter().copied().filter(|&r| freq[r as usize] >= self.m).collect();
                    if !kept.is_empty() {
                        cond.insert(&kept, *count);
                    }
                }
                self.live_nodes += cond.nodes.len();
                self.peak_nodes = self.peak_nodes.max(self.live_nodes);
                self.mine(&cond);
                self.live_nodes -= cond.nodes.len();
            }
            self.suffix.pop();
        }
    }
}

pub fn fp_growth(db: &TransactionDatabase, m: u64) -> MiningResult {
    fp_growth_run(db, m).result
}

pub fn fp_growth_run(db: &TransactionDatabase, m: u64) -> FpGrowthRun {
    let m = m.max(1);
    let flist = build_flist(db, m);
    let mut tree = FpTree::new(flist.len());
    for t in db.iter() {
        let path = project_transaction(t, &flist);
        if !path.is_empty() {
            tree.insert(path.ranks(), 1);
        }
    }
    let mut growth = Growth {
        flist: &flist,
        m,
        suffix: Vec::new(),
        out: MiningResult::new(),
        live_nodes: tree.nodes.len(),
        peak_nodes: tree.nodes.len(),
    };
    growth.mine(&tree);
    FpGrowthRun { result: growth.out, peak_nodes: growth.peak_nodes }
}
