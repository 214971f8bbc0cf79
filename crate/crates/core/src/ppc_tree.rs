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

//! Pre-order/post-order coded prefix tree.
//!
//! Transactions are projected onto the F-list and inserted most frequent
//! item first. After insertion the tree is numbered by one pre-order and one
//! post-order traversal (root included, both starting at 0). Each node's
//! `(pre, post): count` triple is its PP-code; the PP-codes of all nodes of
//! one item, in pre-order, form that item's N-list.
//!
//! Node `u` is an ancestor of node `v` exactly when `u.pre < v.pre` and
//! `u.post > v.post`, so N-lists can be intersected without the tree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::types::{FList, Item, Transaction, TransactionDatabase};

pub type NodeId = u32;

const ROOT: NodeId = 0;
const NO_RANK: u32 = u32::MAX;

/// Scans the database once and returns items with support `>= m`.
pub fn build_flist(db: &TransactionDatabase, m: u64) -> FList {
    let mut counts: HashMap<Item, u64> = HashMap::new();
    for t in db.iter() {
        for &item in t.items() {
            *counts.entry(item).or_insert(0) += 1;
        }
    }
    FList::from_counts(counts, m.max(1))
}

/// Frequent items of one transaction, in F-list rank order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProjectedTransaction {
    items: Vec<Item>,
    ranks: Vec<u32>,
}

impl ProjectedTransaction {
    /// Builds a path from ranks that must already be strictly increasing.
    pub fn from_ranks(flist: &FList, ranks: Vec<u32>) -> Result<Self> {
        if let Some(position) = first_unordered(&ranks) {
            return Err(Error::UnorderedPath { position });
        }
        let items = ranks.iter().map(|&r| flist.item(r)).collect();
        Ok(ProjectedTransaction { items, ranks })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The first `len` items.
    pub fn prefix(&self, len: usize) -> ProjectedTransaction {
        ProjectedTransaction { items: self.items[..len].to_vec(), ranks: self.ranks[..len].to_vec() }
    }
}

fn first_unordered(ranks: &[u32]) -> Option<usize> {
    ranks.windows(2).position(|w| w[0] >= w[1]).map(|p| p + 1)
}

/// Drops infrequent items and sorts the rest by F-list rank.
pub fn project_transaction(t: &Transaction, flist: &FList) -> ProjectedTransaction {
    let mut pairs: Vec<(u32, Item)> = t.items().iter().filter_map(|&item| flist.rank(item).map(|r| (r, item))).collect();
    pairs.sort_unstable_by_key(|&(r, _)| r);
    let (ranks, items) = pairs.into_iter().unzip();
    ProjectedTransaction { items, ranks }
}

/// The pre-order/post-order code of one tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PpCode {
    pub pre: u32,
    pub post: u32,
    pub count: u64,
}

impl PpCode {
    pub const fn new(pre: u32, post: u32, count: u64) -> Self {
        PpCode { pre, post, count }
    }
}

impl fmt::Display for PpCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<({}, {}):{}>", self.pre, self.post, self.count)
    }
}

/// True iff `u` is a proper ancestor of `v` in the tree both codes came from.
#[inline]
pub fn ancestor(u: &PpCode, v: &PpCode) -> bool {
    u.pre < v.pre && u.post > v.post
}

/// PP-codes in strictly ascending pre-order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NList {
    codes: Vec<PpCode>,
}

impl NList {
    pub fn new() -> Self {
        NList::default()
    }

    /// Wraps codes that must be strictly ascending by `pre`.
    pub fn from_codes(codes: Vec<PpCode>) -> Self {
        debug_assert!(codes.windows(2).all(|w| w[0].pre < w[1].pre), "N-list codes must ascend by pre");
        NList { codes }
    }

    pub(crate) fn with_capacity(n: usize) -> Self {
        NList { codes: Vec::with_capacity(n) }
    }

    pub(crate) fn push(&mut self, code: PpCode) {
        self.codes.push(code);
    }

    pub fn codes(&self) -> &[PpCode] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Sum of code counts.
    pub fn support(&self) -> u64 {
        self.codes.iter().map(|c| c.count).sum()
    }

    pub fn is_sorted(&self) -> bool {
        self.codes.windows(2).all(|w| w[0].pre < w[1].pre)
    }
}

impl fmt::Display for NList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for code in &self.codes {
            write!(f, "{code}")?;
        }
        Ok(())
    }
}

/// N-lists of the frequent 1-itemsets, indexed by F-list rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NListTable {
    lists: Vec<NList>,
}

impl NListTable {
    pub fn by_rank(&self, rank: u32) -> &NList {
        &self.lists[rank as usize]
    }

    pub fn for_item(&self, flist: &FList, item: Item) -> Option<&NList> {
        flist.rank(item).map(|r| self.by_rank(r))
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &NList)> + '_ {
        self.lists.iter().enumerate().map(|(r, l)| (r as u32, l))
    }

    /// Total number of PP-codes across all lists.
    pub fn total_codes(&self) -> usize {
        self.lists.iter().map(NList::len).sum()
    }

    pub fn to_map(&self, flist: &FList) -> BTreeMap<Item, NList> {
        self.iter().map(|(r, l)| (flist.item(r), l.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpcNode {
    item: Option<Item>,
    rank: u32,
    count: u64,
    children: Vec<NodeId>,
    parent: Option<NodeId>,
    pre: u32,
    post: u32,
}

impl PpcNode {
    /// `None` only for the root.
    pub fn item(&self) -> Option<Item> {
        self.item
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn pre(&self) -> u32 {
        self.pre
    }

    pub fn post(&self) -> u32 {
        self.post
    }

    pub fn code(&self) -> PpCode {
        PpCode::new(self.pre, self.post, self.count)
    }

    /// F-list rank of the node's item; `None` for the root.
    pub fn rank(&self) -> Option<u32> {
        (self.rank != NO_RANK).then_some(self.rank)
    }
}

/// Pre-order/post-order coded prefix tree. Node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpcTree {
    nodes: Vec<PpcNode>,
    preorder: Vec<NodeId>,
    numbered: bool,
}

impl Default for PpcTree {
    fn default() -> Self {
        PpcTree::new()
    }
}

impl PpcTree {
    pub fn new() -> Self {
        let root = PpcNode { item: None, rank: NO_RANK, count: 0, children: Vec::new(), parent: None, pre: 0, post: 0 };
        PpcTree { nodes: vec![root], preorder: Vec::new(), numbered: false }
    }

    /// Both scans: F-list, insertion of every projected transaction in
    /// database order, then numbering.
    pub fn build(db: &TransactionDatabase, flist: &FList) -> PpcTree {
        let mut tree = PpcTree::new();
        for t in db.iter() {
            let path = project_transaction(t, flist);
            tree.insert_ranks(flist, &path.ranks);
        }
        tree.assign_orders();
        tree
    }

    /// Inserts one projected path, reusing matching children and appending
    /// new ones at the end of the children list.
    pub fn insert(&mut self, path: &ProjectedTransaction) -> Result<()> {
        if let Some(position) = first_unordered(&path.ranks) {
            return Err(Error::UnorderedPath { position });
        }
        self.insert_path(path.items.iter().copied().zip(path.ranks.iter().copied()));
        Ok(())
    }

    fn insert_ranks(&mut self, flist: &FList, ranks: &[u32]) {
        self.insert_path(ranks.iter().map(|&r| (flist.item(r), r)));
    }

    fn insert_path(&mut self, path: impl Iterator<Item = (Item, u32)>) {
        let mut path = path.peekable();
        if path.peek().is_none() {
            return;
        }
        self.numbered = false;
        self.nodes[ROOT as usize].count += 1;
        let mut cur = ROOT;
        for (item, rank) in path {
            let found = self.nodes[cur as usize].children.iter().copied().find(|&c| self.nodes[c as usize].rank == rank);
            cur = match found {
                Some(child) => {
                    self.nodes[child as usize].count += 1;
                    child
                }
                None => {
                    let id = self.nodes.len() as NodeId;
                    self.nodes.push(PpcNode { item: Some(item), rank, count: 1, children: Vec::new(), parent: Some(cur), pre: 0, post: 0 });
                    self.nodes[cur as usize].children.push(id);
                    id
                }
            };
        }
    }

    /// Numbers every node by pre-order and post-order traversal, children
    /// visited in children-list order, root receiving pre = 0.
    pub fn assign_orders(&mut self) {
        let n = self.nodes.len();
        self.preorder.clear();
        self.preorder.reserve(n);
        let mut next_pre = 0u32;
        let mut next_post = 0u32;
        // (node, index of the next child to visit)
        let mut stack: Vec<(NodeId, usize)> = vec![(ROOT, 0)];
        self.nodes[ROOT as usize].pre = next_pre;
        next_pre += 1;
        self.preorder.push(ROOT);
        while let Some(top) = stack.last_mut() {
            let (node, idx) = *top;
            if let Some(&child) = self.nodes[node as usize].children.get(idx) {
                top.1 += 1;
                self.nodes[child as usize].pre = next_pre;
                next_pre += 1;
                self.preorder.push(child);
                stack.push((child, 0));
            } else {
                self.nodes[node as usize].post = next_post;
                next_post += 1;
                stack.pop();
            }
        }
        self.numbered = true;
    }

    pub fn is_numbered(&self) -> bool {
        self.numbered
    }

    /// Total nodes, root included.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> &PpcNode {
        &self.nodes[ROOT as usize]
    }

    pub fn node(&self, id: NodeId) -> &PpcNode {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[PpcNode] {
        &self.nodes
    }

    /// Node ids in pre-order. Empty until the tree is numbered.
    pub fn preorder(&self) -> &[NodeId] {
        &self.preorder
    }

    /// Walks parent references; used to verify the pre/post ancestor test.
    pub fn is_ancestor_by_parents(&self, u: NodeId, v: NodeId) -> bool {
        let mut cur = self.nodes[v as usize].parent;
        while let Some(p) = cur {
            if p == u {
                return true;
            }
            cur = self.nodes[p as usize].parent;
        }
        false
    }

    /// One N-list per F-list item, codes appended in pre-order.
    pub fn build_nlists(&self, flist: &FList) -> NListTable {
        assert!(self.numbered, "assign_orders must run before build_nlists");
        let mut sizes = vec![0usize; flist.len()];
        for node in self.nodes.iter().skip(1) {
            sizes[node.rank as usize] += 1;
        }
        let mut lists: Vec<NList> = sizes.into_iter().map(NList::with_capacity).collect();
        for &id in self.preorder.iter().skip(1) {
            let node = &self.nodes[id as usize];
            lists[node.rank as usize].push(node.code());
        }
        NListTable { lists }
    }

    /// Co-occurrence counts of every item pair, from one depth-first scan.
    pub fn count_pairs(&self, flist_len: usize) -> PairCounts {
        let mut pairs = PairCounts::new(flist_len);
        let mut ancestors: Vec<u32> = Vec::new();
        let mut stack: Vec<(NodeId, usize)> = vec![(ROOT, 0)];
        while let Some(top) = stack.last_mut() {
            let (node, idx) = *top;
            if let Some(&child) = self.nodes[node as usize].children.get(idx) {
                top.1 += 1;
                let c = &self.nodes[child as usize];
                for &a in &ancestors {
                    pairs.add(a, c.rank, c.count);
                }
                ancestors.push(c.rank);
                stack.push((child, 0));
            } else {
                stack.pop();
                if node != ROOT {
                    ancestors.pop();
                }
            }
        }
        pairs
    }

    /// Writes one line per node in pre-order: `depth item count pre post`.
    /// The root prints its item as `null`.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut stack: Vec<(NodeId, usize)> = vec![(ROOT, 0)];
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id as usize];
            match node.item {
                Some(item) => writeln!(out, "{depth} {item} {} {} {}", node.count, node.pre, node.post)?,
                None => writeln!(out, "{depth} null {} {} {}", node.count, node.pre, node.post)?,
            }
            for &child in node.children.iter().rev() {
                stack.push((child, depth + 1));
            }
        }
        Ok(())
    }
}

/// Builds a numbered tree from already projected paths, in the given order.
pub fn build_tree_from_paths<'a>(flist: &FList, paths: impl IntoIterator<Item = &'a ProjectedTransaction>) -> PpcTree {
    let mut tree = PpcTree::new();
    for path in paths {
        tree.insert_ranks(flist, &path.ranks);
    }
    tree.assign_orders();
    tree
}

/// Support counts of item pairs keyed by F-list rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCounts {
    /// Strict lower triangle, row `hi` holding columns `0..hi`.
    Dense {
        n: usize,
        counts: Vec<u64>,
    },
    Sparse(HashMap<(u32, u32), u64>),
}

const DENSE_PAIR_LIMIT: usize = 4096;

impl PairCounts {
    pub fn new(n: usize) -> Self {
        if n <= DENSE_PAIR_LIMIT {
            PairCounts::Dense { n, counts: vec![0; n * n.saturating_sub(1) / 2] }
        } else {
            PairCounts::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn slot(a: u32, b: u32) -> (u32, u32) {
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    #[inline]
    fn add(&mut self, a: u32, b: u32, count: u64) {
        let (lo, hi) = Self::slot(a, b);
        debug_assert_ne!(lo, hi);
        match self {
            PairCounts::Dense { counts, .. } => counts[hi as usize * (hi as usize - 1) / 2 + lo as usize] += count,
            PairCounts::Sparse(map) => *map.entry((lo, hi)).or_insert(0) += count,
        }
    }

    /// Count for the pair of ranks, in either order.
    pub fn get(&self, a: u32, b: u32) -> u64 {
        if a == b {
            return 0;
        }
        let (lo, hi) = Self::slot(a, b);
        match self {
            PairCounts::Dense { n, counts } => {
                if hi as usize >= *n {
                    0
                } else {
                    counts[hi as usize * (hi as usize - 1) / 2 + lo as usize]
                }
            }
            PairCounts::Sparse(map) => map.get(&(lo, hi)).copied().unwrap_or(0),
        }
    }

    /// Nonzero pairs as `((more frequent rank, less frequent rank), count)`.
    pub fn iter(&self) -> Box<dyn Iterator<Item = ((u32, u32), u64)> + '_> {
        match self {
            PairCounts::Dense { n, counts } => Box::new((1..*n as u32).flat_map(move |hi| {
                (0..hi).filter_map(move |lo| {
                    let c = counts[hi as usize * (hi as usize - 1) / 2 + lo as usize];
                    (c > 0).then_some(((lo, hi), c))
                })
            })),
            PairCounts::Sparse(map) => Box::new(map.iter().map(|(&k, &v)| (k, v))),
        }
    }

    /// Nonzero pairs keyed by items, more frequent item first.
    pub fn to_item_map(&self, flist: &FList) -> BTreeMap<(Item, Item), u64> {
        self.iter().map(|((lo, hi), c)| ((flist.item(lo), flist.item(hi)), c)).collect()
    }
}
