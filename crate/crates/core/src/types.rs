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

//! Value types shared by every miner: items, transactions, thresholds,
//! the F-list and the canonical mining result.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// An item identifier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(pub u32);

impl Item {
    pub fn id(self) -> u32 {
        self.0
    }
}

impl From<u32> for Item {
    fn from(id: u32) -> Self {
        Item(id)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of items, stored deduplicated in ascending id order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Transaction {
    items: Vec<Item>,
}

impl Transaction {
    pub fn new(items: impl IntoIterator<Item = Item>) -> Self {
        let mut items: Vec<Item> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        Transaction { items }
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Transaction::new(ids.iter().copied().map(Item))
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: Item) -> bool {
        self.items.binary_search(&item).is_ok()
    }
}

/// Transactions in ingestion order. The order is significant: it fixes the
/// child order of every prefix tree built from the database.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransactionDatabase {
    transactions: Vec<Transaction>,
}

impl TransactionDatabase {
    pub fn new(transactions: Vec<Transaction>) -> Self {
        TransactionDatabase { transactions }
    }

    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Self {
        TransactionDatabase::new(rows.iter().map(|r| Transaction::from_ids(r.as_ref())).collect())
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Transaction> {
        self.transactions.iter()
    }

    /// Distinct items in ascending id order.
    pub fn distinct_items(&self) -> Vec<Item> {
        let mut items: Vec<Item> = self.transactions.iter().flat_map(|t| t.items().iter().copied()).collect();
        items.sort_unstable();
        items.dedup();
        items
    }
}

impl FromIterator<Transaction> for TransactionDatabase {
    fn from_iter<I: IntoIterator<Item = Transaction>>(iter: I) -> Self {
        TransactionDatabase::new(iter.into_iter().collect())
    }
}

/// Minimum support, either relative to the database size or absolute.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MinSup {
    Fraction(f64),
    Count(u64),
}

impl MinSup {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MinSup::Fraction(f) if !(f > 0.0 && f <= 1.0) => Err(Error::InvalidMinSup(format!("fraction {f} is outside (0, 1]"))),
            MinSup::Count(0) => Err(Error::InvalidMinSup("absolute count must be at least 1".into())),
            _ => Ok(()),
        }
    }

    /// Absolute threshold for a database of `n` transactions.
    pub fn resolve(&self, n: usize) -> Result<u64> {
        resolve_threshold(*self, n)
    }
}

impl fmt::Display for MinSup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinSup::Fraction(x) => write!(f, "{x}"),
            MinSup::Count(m) => write!(f, "#{m}"),
        }
    }
}

/// `max(1, ceil(f * n))` for fractions, the count itself otherwise.
pub fn resolve_threshold(spec: MinSup, n: usize) -> Result<u64> {
    spec.validate()?;
    Ok(match spec {
        MinSup::Fraction(f) => {
            let raw = f * n as f64;
            // 0.3 * 10 lands a hair above 3.0 in binary; snap before ceil.
            let snapped = raw.round();
            let m = if (raw - snapped).abs() <= 1e-9 * raw.max(1.0) { snapped } else { raw.ceil() };
            (m as u64).max(1)
        }
        MinSup::Count(m) => m,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FListEntry {
    pub item: Item,
    pub count: u64,
    pub rank: u32,
}

/// Frequent 1-itemsets in descending support order, ties by ascending id.
/// Rank 0 is the most frequent item.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FList {
    entries: Vec<FListEntry>,
    ranks: HashMap<Item, u32>,
}

impl FList {
    /// Builds the F-list from per-item support counts, keeping counts `>= m`.
    pub fn from_counts(counts: impl IntoIterator<Item = (Item, u64)>, m: u64) -> FList {
        let mut kept: Vec<(Item, u64)> = counts.into_iter().filter(|&(_, c)| c >= m && c > 0).collect();
        kept.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let entries: Vec<FListEntry> =
            kept.into_iter().enumerate().map(|(rank, (item, count))| FListEntry { item, count, rank: rank as u32 }).collect();
        let ranks = entries.iter().map(|e| (e.item, e.rank)).collect();
        FList { entries, ranks }
    }

    pub fn entries(&self) -> &[FListEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank(&self, item: Item) -> Option<u32> {
        self.ranks.get(&item).copied()
    }

    pub fn item(&self, rank: u32) -> Item {
        self.entries[rank as usize].item
    }

    pub fn count(&self, rank: u32) -> u64 {
        self.entries[rank as usize].count
    }

    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        self.entries.iter().map(|e| e.item)
    }
}

/// A nonempty set of items. The canonical form is ascending id.
///
/// Itemsets order by size first, then lexicographically by id sequence,
/// which is also the line order of the result file.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Itemset(Vec<Item>);

impl Itemset {
    pub fn new(items: impl IntoIterator<Item = Item>) -> Self {
        let mut items: Vec<Item> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        debug_assert!(!items.is_empty(), "itemsets are nonempty");
        Itemset(items)
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Itemset::new(ids.iter().copied().map(Item))
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every subset obtained by removing exactly one item.
    pub fn immediate_subsets(&self) -> impl Iterator<Item = Itemset> + '_ {
        let n = if self.0.len() < 2 { 0 } else { self.0.len() };
        (0..n).map(move |skip| Itemset(self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &it)| it).collect()))
    }
}

impl Ord for Itemset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Itemset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

/// First point at which two mining results disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultDiff {
    pub itemset: Itemset,
    pub left: Option<u64>,
    pub right: Option<u64>,
}

impl fmt::Display for ResultDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: Option<u64>| s.map_or_else(|| "absent".to_string(), |c| c.to_string());
        write!(f, "{{{}}}: {} vs {}", self.itemset, show(self.left), show(self.right))
    }
}

/// An itemset whose subset is missing or has a smaller support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub itemset: Itemset,
    pub subset: Itemset,
}

/// Frequent itemsets with their supports: the output of every miner.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MiningResult {
    entries: BTreeMap<Itemset, u64>,
}

impl MiningResult {
    pub fn new() -> Self {
        MiningResult::default()
    }

    /// Returns the previous support if the itemset was already present.
    pub fn insert(&mut self, itemset: Itemset, support: u64) -> Option<u64> {
        self.entries.insert(itemset, support)
    }

    pub fn get(&self, itemset: &Itemset) -> Option<u64> {
        self.entries.get(itemset).copied()
    }

    pub fn support_of(&self, ids: &[u32]) -> Option<u64> {
        self.get(&Itemset::from_ids(ids))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Itemset, u64)> + '_ {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Merges a result whose keys must not overlap with this one. On collision
    /// the offending itemset is returned and `self` keeps everything merged so far.
    pub fn merge_disjoint(&mut self, other: MiningResult) -> std::result::Result<(), Itemset> {
        for (itemset, support) in other.entries {
            if self.entries.contains_key(&itemset) {
                return Err(itemset);
            }
            self.entries.insert(itemset, support);
        }
        Ok(())
    }

    pub fn first_difference(&self, other: &MiningResult) -> Option<ResultDiff> {
        let mut left = self.entries.iter().peekable();
        let mut right = other.entries.iter().peekable();
        loop {
            match (left.peek(), right.peek()) {
                (None, None) => return None,
                (Some(&(k, &v)), None) => return Some(ResultDiff { itemset: k.clone(), left: Some(v), right: None }),
                (None, Some(&(k, &v))) => return Some(ResultDiff { itemset: k.clone(), left: None, right: Some(v) }),
                (Some(&(lk, &lv)), Some(&(rk, &rv))) => match lk.cmp(rk) {
                    Ordering::Less => return Some(ResultDiff { itemset: lk.clone(), left: Some(lv), right: None }),
                    Ordering::Greater => return Some(ResultDiff { itemset: rk.clone(), left: None, right: Some(rv) }),
                    Ordering::Equal if lv != rv => return Some(ResultDiff { itemset: lk.clone(), left: Some(lv), right: Some(rv) }),
                    Ordering::Equal => {
                        left.next();
                        right.next();
                    }
                },
            }
        }
    }

    /// Checks that every immediate subset of every entry is present with at
    /// least the entry's support.
    pub fn check_downward_closure(&self) -> std::result::Result<(), ClosureViolation> {
        for (itemset, &support) in &self.entries {
            for subset in itemset.immediate_subsets() {
                match self.entries.get(&subset) {
                    Some(&s) if s >= support => {}
                    _ => return Err(ClosureViolation { itemset: itemset.clone(), subset }),
                }
            }
        }
        Ok(())
    }

    pub fn min_support(&self) -> Option<u64> {
        self.entries.values().copied().min()
    }
}

impl FromIterator<(Itemset, u64)> for MiningResult {
    fn from_iter<I: IntoIterator<Item = (Itemset, u64)>>(iter: I) -> Self {
        MiningResult { entries: iter.into_iter().collect() }
    }
}

/// Equality of two results, with the first differing itemset on mismatch.
pub fn result_equal(a: &MiningResult, b: &MiningResult) -> (bool, Option<ResultDiff>) {
    let diff = a.first_difference(b);
    (diff.is_none(), diff)
}
