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

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use prepost::ppc_tree::{build_flist, PpcTree};
use prepost::{nlist, TransactionDatabase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random database: up to `max_items` items, up to `max_tx`
/// transactions. Odd seeds use the skewed generator, even seeds uniform picks.
pub fn random_db(seed: u64, max_items: usize, max_tx: usize) -> TransactionDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = rng.random_range(1..=max_items);
    let tx = rng.random_range(0..=max_tx);
    if seed % 2 == 1 && tx > 0 {
        let avg = rng.random_range(1.0..=(items as f64).min(6.0));
        return prepost::io::generate(items, tx, avg, seed).expect("valid generator parameters");
    }
    let rows: Vec<Vec<u32>> = (0..tx)
        .map(|_| {
            let len = rng.random_range(0..=items);
            (0..len).map(|_| rng.random_range(1..=items as u32)).collect()
        })
        .collect();
    TransactionDatabase::from_rows(&rows)
}

/// Checks every structural invariant of the tree built at threshold `m`.
/// Returns a description of the first violation.
pub fn check_tree_invariants(db: &TransactionDatabase, m: u64) -> Result<(), String> {
    let flist = build_flist(db, m);
    let tree = PpcTree::build(db, &flist);
    let n = tree.node_count();

    let mut pre: Vec<u32> = tree.nodes().iter().map(|x| x.pre()).collect();
    let mut post: Vec<u32> = tree.nodes().iter().map(|x| x.post()).collect();
    pre.sort_unstable();
    post.sort_unstable();
    let expect: Vec<u32> = (0..n as u32).collect();
    if pre != expect {
        return Err("pre-order ranks are not a permutation".into());
    }
    if post != expect {
        return Err("post-order ranks are not a permutation".into());
    }

    for u in 0..n as u32 {
        for v in 0..n as u32 {
            let by_codes = prepost::ppc_tree::ancestor(&tree.node(u).code(), &tree.node(v).code());
            if by_codes != tree.is_ancestor_by_parents(u, v) {
                return Err(format!("ancestor test disagrees with parent chain for nodes {u}, {v}"));
            }
        }
    }

    for (id, node) in tree.nodes().iter().enumerate() {
        let child_sum: u64 = node.children().iter().map(|&c| tree.node(c).count()).sum();
        if child_sum > node.count() {
            return Err(format!("children of node {id} count {child_sum} > {}", node.count()));
        }
        let mut seen: Vec<u32> = node.children().iter().map(|&c| tree.node(c).rank().unwrap()).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("node {id} has two children with the same item"));
        }
        if let Some(p) = node.parent() {
            if let (Some(pr), Some(r)) = (tree.node(p).rank(), node.rank()) {
                if pr >= r {
                    return Err(format!("ranks do not increase along the path at node {id}"));
                }
            }
        }
    }
    let nonempty = db.iter().filter(|t| t.items().iter().any(|&i| flist.rank(i).is_some())).count() as u64;
    let root_children: u64 = tree.root().children().iter().map(|&c| tree.node(c).count()).sum();
    if tree.root().count() != nonempty || root_children != nonempty {
        return Err("root count does not equal the number of nonempty projected paths".into());
    }

    let nlists = tree.build_nlists(&flist);
    for e in flist.entries() {
        let nl = nlists.by_rank(e.rank);
        if !nl.is_sorted() {
            return Err(format!("N-list of {} is not sorted", e.item));
        }
        if nl.support() != e.count {
            return Err(format!("N-list support of {} is {} but F-list count is {}", e.item, nl.support(), e.count));
        }
    }

    let pairs = tree.count_pairs(flist.len());
    for hi in 0..flist.len() as u32 {
        for lo in 0..hi {
            let via_lists = nlist::nl_intersect(nlists.by_rank(hi), nlists.by_rank(lo)).support();
            if via_lists != pairs.get(lo, hi) {
                return Err(format!(
                    "pair ({}, {}): tree scan {} vs N-list intersection {}",
                    flist.item(lo),
                    flist.item(hi),
                    pairs.get(lo, hi),
                    via_lists
                ));
            }
        }
    }

    let again = PpcTree::build(db, &flist);
    if again != tree {
        return Err("rebuilding the tree gave different orders".into());
    }
    Ok(())
}

/// Directory holding downloaded FIMI datasets: `$PREPOST_DATA_DIR`, else
/// `data/` at the workspace root.
pub fn data_dir() -> PathBuf {
    std::env::var_os("PREPOST_DATA_DIR").map(PathBuf::from).unwrap_or_else(|| {
        let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
        manifest.ancestors().nth(2).unwrap_or(manifest).join("data")
    })
}
