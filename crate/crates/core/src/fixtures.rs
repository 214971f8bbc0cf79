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

//! The seven-transaction worked example used throughout the tests and docs.
//!
//! Items are letters mapped to ids: a=1, b=2, c=3, d=4, e=5, f=6, g=7.

use crate::types::{Item, TransactionDatabase};

pub const A: Item = Item(1);
pub const B: Item = Item(2);
pub const C: Item = Item(3);
pub const D: Item = Item(4);
pub const E: Item = Item(5);
pub const F: Item = Item(6);
pub const G: Item = Item(7);

pub const SAMPLE_ROWS: [&[u32]; 7] = [&[1, 2, 7], &[2, 3, 4, 6, 7], &[1, 2, 5], &[1, 4], &[2, 3, 5], &[1, 4, 5, 6], &[2, 3]];

pub const SAMPLE_FIMI: &str = "1 2 7\n2 3 4 6 7\n1 2 5\n1 4\n2 3 5\n1 4 5 6\n2 3\n";

pub fn sample() -> TransactionDatabase {
    TransactionDatabase::from_rows(&SAMPLE_ROWS)
}

/// Letter name for a fixture item id, for readable assertion messages.
pub fn letter(item: Item) -> char {
    match item.0 {
        1..=26 => (b'a' + (item.0 - 1) as u8) as char,
        _ => '?',
    }
}
