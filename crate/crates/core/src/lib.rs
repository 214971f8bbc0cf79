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

//! Frequent itemset mining over pre-order/post-order coded prefix trees.
//!
//! The sequential miner ([`nlist::prepost`]) builds one PPC-tree, derives an
//! N-list per frequent item and grows itemsets by N-list intersection. The
//! parallel miner ([`hprepost::hprepost`]) runs the same steps as two jobs on
//! an in-process MapReduce engine, one private tree per item group.
//! [`baselines`] holds an exhaustive oracle and FP-growth for comparison.
//!
//! ```
//! use prepost::{fixtures, hprepost, nlist, HPrepostConfig, MinSup};
//!
//! let db = fixtures::sample();
//! let seq = nlist::prepost(&db, 3);
//! let par = hprepost::hprepost(&db, MinSup::Fraction(0.3), HPrepostConfig::new(2, 2, 2)).unwrap();
//! assert_eq!(seq, par);
//! assert_eq!(seq.support_of(&[2, 3]), Some(3));
//! ```

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hprepost;
pub mod io;
pub mod mapreduce;
pub mod nlist;
pub mod ppc_tree;
pub mod types;

pub use bench::Algorithm;
pub use error::{Error, Result};
pub use hprepost::HPrepostConfig;
pub use ppc_tree::{NList, PpCode, PpcTree};
pub use types::{FList, FListEntry, Item, Itemset, MinSup, MiningResult, Transaction, TransactionDatabase};
