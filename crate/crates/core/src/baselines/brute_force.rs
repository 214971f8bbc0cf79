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

//! Exhaustive subset enumeration. Ground truth for small inputs only; shares
//! no code with the tree-based miners.

use crate::error::{Error, Result};
use crate::types::{Item, Itemset, MiningResult, TransactionDatabase};

/// Hard limits for the exponential oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_items: usize,
    pub max_transactions: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_items: 16, max_transactions: 64 }
    }
}

pub fn brute_force(db: &TransactionDatabase, m: u64) -> Result<MiningResult> {
    brute_force_with(db, m, OracleConfig::default())
}

pub fn brute_force_with(db: &TransactionDatabase, m: u64, caps: OracleConfig) -> Result<MiningResult> {
    let universe: Vec<Item> = db.distinct_items();
    if universe.len() > caps.max_items {
        return Err(Error::OracleLimit(format!("{} distinct items > {}", universe.len(), caps.max_items)));
    }
    if db.len() > caps.max_transactions {
        return Err(Error::OracleLimit(format!("{} transactions > {}", db.len(), caps.max_transactions)));
    }
    let bit = |item: &Item| universe.binary_search(item).expect("item in universe");
    let masks: Vec<u32> = db.iter().map(|t| t.items().iter().fold(0u32, |acc, it| acc | (1 << bit(it)))).collect();

    let m = m.max(1);
    let mut result = MiningResult::new();
    for subset in 1u32..(1u32 << universe.len()) {
        let count = masks.iter().filter(|&&t| t & subset == subset).count() as u64;
        if count >= m {
            let items = (0..universe.len()).filter(|&b| subset & (1 << b) != 0).map(|b| universe[b]);
            result.insert(Itemset::new(items), count);
        }
    }
    Ok(result)
}
