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

//! N-list intersection and the depth-first PrePost search.
//!
//! Itemsets are grown in mining order: the anchor (least frequent item)
//! first, then items of strictly decreasing F-list rank. The N-list of an
//! itemset holds codes of nodes of its last (most frequent) item, each
//! counting the transactions below that node that contain the whole set.
//! Two siblings `P+x` and `P+y` with `rank(y) < rank(x)` are joined as
//! `nl_intersect(NL(P+x), NL(P+y))`: every `x` node is credited to the `y`
//! ancestor above it.

use crate::ppc_tree::{ancestor, NList, NListTable, PairCounts, PpCode, PpcTree};
use crate::types::{FList, Item, Itemset, MiningResult, TransactionDatabase};

/// Intersects a descendant-side list with an ancestor-side list.
///
/// Each descendant code with an ancestor in `ancestor` contributes its count
/// to that ancestor's code; codes of the same ancestor are merged.
pub fn nl_intersect(descendant: &NList, ancestor_list: &NList) -> NList {
    debug_assert!(descendant.is_sorted(), "descendant N-list is not sorted by pre");
    debug_assert!(ancestor_list.is_sorted(), "ancestor N-list is not sorted by pre");
    let d = descendant.codes();
    let a = ancestor_list.codes();
    let mut out = NList::with_capacity(d.len().min(a.len()));
    let (mut i, mut j) = (0, 0);
    let mut last: Option<PpCode> = None;
    while i < d.len() && j < a.len() {
        let (dc, ac) = (d[i], a[j]);
        if ancestor(&ac, &dc) {
            match last.as_mut() {
                Some(code) if code.pre == ac.pre => code.count += dc.count,
                _ => {
                    if let Some(code) = last.take() {
                        out.push(code);
                    }
                    last = Some(PpCode::new(ac.pre, ac.post, dc.count));
                }
            }
            i += 1;
        } else if ac.pre < dc.pre {
            j += 1;
        } else {
            i += 1;
        }
    }
    if let Some(code) = last {
        out.push(code);
    }
    out
}

/// Sum of code counts.
pub fn support(nl: &NList) -> u64 {
    nl.support()
}

/// Structural size figures gathered while mining.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MineStats {
    /// PP-codes held by the 1-itemset N-lists.
    pub base_codes: usize,
    /// Largest number of PP-codes alive at once, base lists included.
    pub peak_codes: usize,
    /// Intersections performed.
    pub intersections: usize,
}

struct Branch {
    rank: u32,
    nlist: NList,
}

struct Search<'a> {
    flist: &'a FList,
    m: u64,
    prefix: Vec<u32>,
    out: MiningResult,
    live: usize,
    stats: MineStats,
}

impl Search<'_> {
    fn emit(&mut self, last: u32, support: u64) {
        let items = self.prefix.iter().chain(std::iter::once(&last)).map(|&r| self.flist.item(r));
        self.out.insert(Itemset::new(items), support);
    }

    fn grow(&mut self, live: usize) {
        self.live += live;
        self.stats.peak_codes = self.stats.peak_codes.max(self.live);
    }

    /// Expands the children of the current prefix. `siblings` are ordered by
    /// ascending rank, so every `y` before `x` is more frequent than `x`.
    fn extend(&mut self, siblings: &[Branch]) {
        for (xi, x) in siblings.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut children = Vec::new();
            let mut held = 0;
            self.prefix.push(x.rank);
            for y in &siblings[..xi] {
                let nlist = nl_intersect(&x.nlist, &y.nlist);
                self.stats.intersections += 1;
                let s = nlist.support();
                if s >= self.m {
                    self.emit(y.rank, s);
                    held += nlist.len();
                    self.grow(nlist.len());
                    children.push(Branch { rank: y.rank, nlist });
                }
            }
            if children.len() > 1 {
                self.extend(&children);
            }
            self.prefix.pop();
            self.live -= held;
        }
    }
}

/// Mines every frequent itemset from the 1-itemset N-lists and pair counts of
/// one tree.
pub fn mine(flist: &FList, nlists: &NListTable, pairs: &PairCounts, m: u64) -> MiningResult {
    let mut result = mine_anchored(flist, nlists, pairs, m, |_| true).0;
    for e in flist.entries() {
        if e.count >= m {
            result.insert(Itemset::new([e.item]), e.count);
        }
    }
    result
}

/// Mines the itemsets of size two or more whose anchor rank passes `owns`.
/// 1-itemsets are not emitted.
pub fn mine_anchored(
    flist: &FList,
    nlists: &NListTable,
    pairs: &PairCounts,
    m: u64,
    owns: impl Fn(u32) -> bool,
) -> (MiningResult, MineStats) {
    let base_codes = nlists.total_codes();
    let mut search = Search {
        flist,
        m: m.max(1),
        prefix: Vec::new(),
        out: MiningResult::new(),
        live: base_codes,
        stats: MineStats { base_codes, peak_codes: base_codes, intersections: 0 },
    };
    for anchor in 0..flist.len() as u32 {
        if !owns(anchor) {
            continue;
        }
        let anchor_list = nlists.by_rank(anchor);
        if anchor_list.is_empty() {
            continue;
        }
        search.prefix.push(anchor);
        let mut seeds = Vec::new();
        let mut held = 0;
        for other in 0..anchor {
            let count = pairs.get(other, anchor);
            if count < search.m {
                continue;
            }
            let nlist = nl_intersect(anchor_list, nlists.by_rank(other));
            search.stats.intersections += 1;
            debug_assert_eq!(nlist.support(), count, "pair count and N-list support disagree");
            search.emit(other, count);
            held += nlist.len();
            search.grow(nlist.len());
            seeds.push(Branch { rank: other, nlist });
        }
        if seeds.len() > 1 {
            search.extend(&seeds);
        }
        search.prefix.pop();
        search.live -= held;
    }
    (search.out, search.stats)
}

/// Sequential PrePost run with the structural figures the benchmark reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrePostRun {
    pub result: MiningResult,
    pub tree_nodes: usize,
    pub stats: MineStats,
}

/// Builds the F-list, the tree, the N-lists and pair counts, then mines.
pub fn prepost(db: &TransactionDatabase, m: u64) -> MiningResult {
    prepost_run(db, m).result
}

pub fn prepost_run(db: &TransactionDatabase, m: u64) -> PrePostRun {
    let m = m.max(1);
    let flist = crate::ppc_tree::build_flist(db, m);
    let tree = PpcTree::build(db, &flist);
    let nlists = tree.build_nlists(&flist);
    let pairs = tree.count_pairs(flist.len());
    let (mut result, stats) = mine_anchored(&flist, &nlists, &pairs, m, |_| true);
    for e in flist.entries() {
        result.insert(Itemset::new([e.item]), e.count);
    }
    PrePostRun { result, tree_nodes: tree.node_count(), stats }
}

/// Items of an N-list-bearing itemset in mining order, for diagnostics.
pub fn mining_order(flist: &FList, itemset: &Itemset) -> Option<Vec<Item>> {
    let mut ranked: Vec<(u32, Item)> = itemset.items().iter().map(|&i| flist.rank(i).map(|r| (r, i))).collect::<Option<_>>()?;
    ranked.sort_unstable_by_key(|&(r, _)| std::cmp::Reverse(r));
    Some(ranked.into_iter().map(|(_, i)| i).collect())
}
