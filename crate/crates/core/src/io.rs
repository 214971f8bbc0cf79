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

//! FIMI transaction files, the canonical result file, dataset statistics and
//! a seeded synthetic generator.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::seq::index::sample_weighted;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::types::{Item, MiningResult, Transaction, TransactionDatabase};

/// Parses FIMI text: one transaction per line, base-10 item ids separated by
/// runs of spaces or tabs. Blank lines are skipped and a trailing `\r` is
/// ignored.
pub fn parse_fimi<R: BufRead>(mut reader: R) -> Result<TransactionDatabase> {
    let mut transactions = Vec::new();
    let mut line = Vec::new();
    let mut line_no = 0usize;
    loop {
        line.clear();
        if reader.read_until(b'\n', &mut line)? == 0 {
            break;
        }
        line_no += 1;
        let mut body: &[u8] = &line;
        if let Some(rest) = body.strip_suffix(b"\n") {
            body = rest;
        }
        if let Some(rest) = body.strip_suffix(b"\r") {
            body = rest;
        }
        let mut items = Vec::new();
        for token in body.split(|&b| b == b' ' || b == b'\t').filter(|t| !t.is_empty()) {
            items.push(Item(parse_item(token, line_no)?));
        }
        if !items.is_empty() {
            transactions.push(Transaction::new(items));
        }
    }
    Ok(TransactionDatabase::new(transactions))
}

fn parse_item(token: &[u8], line: usize) -> Result<u32> {
    let shown = || String::from_utf8_lossy(token).into_owned();
    if !token.iter().all(u8::is_ascii_digit) {
        return Err(Error::Parse { line, message: format!("non-numeric token {:?}", shown()) });
    }
    let mut value: u64 = 0;
    for &d in token {
        value = value * 10 + u64::from(d - b'0');
        if value > u64::from(u32::MAX) {
            return Err(Error::Parse { line, message: format!("item id {} exceeds {}", shown(), u32::MAX) });
        }
    }
    Ok(value as u32)
}

pub fn read_fimi_file(path: impl AsRef<Path>) -> Result<TransactionDatabase> {
    parse_fimi(BufReader::new(File::open(path)?))
}

/// Writes transactions back as FIMI text, items ascending.
pub fn write_fimi<W: Write>(db: &TransactionDatabase, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for t in db.iter() {
        let mut first = true;
        for item in t.items() {
            if !first {
                out.write_all(b" ")?;
            }
            write!(out, "{item}")?;
            first = false;
        }
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DatasetStats {
    pub items: usize,
    pub transactions: usize,
    pub avg_length: f64,
}

impl std::fmt::Display for DatasetStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {:.1}", self.items, self.transactions, self.avg_length)
    }
}

pub fn stats(db: &TransactionDatabase) -> DatasetStats {
    let total: usize = db.iter().map(Transaction::len).sum();
    let avg_length = if db.is_empty() { 0.0 } else { total as f64 / db.len() as f64 };
    DatasetStats { items: db.distinct_items().len(), transactions: db.len(), avg_length }
}

/// One line per itemset, `ids<TAB>support`, in canonical order.
pub fn write_result<W: Write>(result: &MiningResult, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for (itemset, support) in result.iter() {
        writeln!(out, "{itemset}\t{support}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn result_to_string(result: &MiningResult) -> String {
    let mut buf = Vec::new();
    write_result(result, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("result lines are ASCII")
}

/// Seeded synthetic database over items `1..=items`.
///
/// Transaction lengths are Poisson around `avg_len`, clamped to
/// `[1, items]`; item popularity follows `1 / rank` weights so that trees
/// share long prefixes.
pub fn generate(items: usize, transactions: usize, avg_len: f64, seed: u64) -> Result<TransactionDatabase> {
    if items == 0 || items > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!("item count {items} out of range")));
    }
    if !(avg_len.is_finite() && avg_len > 0.0 && avg_len <= items as f64) {
        return Err(Error::InvalidParameter(format!("average length {avg_len} must be in (0, {items}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lengths = Poisson::new(avg_len).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut db = Vec::with_capacity(transactions);
    for _ in 0..transactions {
        let len = (lengths.sample(&mut rng) as usize).clamp(1, items);
        let picked =
            sample_weighted(&mut rng, items, |i| 1.0 / (i as f64 + 1.0), len).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        db.push(Transaction::new(picked.into_iter().map(|i| Item(i as u32 + 1))));
    }
    Ok(TransactionDatabase::new(db))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::types::Itemset;

    #[test]
    fn parse_basic_format() {
        let db = parse_fimi("2 1\n2 3 4\n".as_bytes()).unwrap();
        assert_eq!(db, TransactionDatabase::from_rows(&[vec![1u32, 2], vec![2, 3, 4]]));
        assert!(parse_fimi("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn parse_tolerates_whitespace_variants() {
        let db = parse_fimi("  1\t\t2  \r\n\n   \n3 3 3\r\n4".as_bytes()).unwrap();
        assert_eq!(db, TransactionDatabase::from_rows(&[vec![1u32, 2], vec![3], vec![4]]));
    }

    #[test]
    fn parse_reports_line_numbers() {
        match parse_fimi("1 2\n\n3 x4\n".as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_fimi("4294967295\n4294967296\n".as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_fimi("-1\n".as_bytes()).is_err());
    }

    #[test]
    fn stats_examples() {
        let s = stats(&fixtures::sample());
        assert_eq!((s.items, s.transactions), (7, 7));
        let occurrences: usize = fixtures::SAMPLE_ROWS.iter().map(|r| r.len()).sum();
        assert_eq!(occurrences, 22);
        assert!((s.avg_length - 22.0 / 7.0).abs() < 1e-12);
        let empty = stats(&TransactionDatabase::default());
        assert_eq!(empty, DatasetStats { items: 0, transactions: 0, avg_length: 0.0 });
    }

    #[test]
    fn result_format() {
        let mut r = MiningResult::new();
        r.insert(Itemset::from_ids(&[3, 2]), 3);
        assert_eq!(result_to_string(&r), "2 3\t3\n");
        assert_eq!(result_to_string(&MiningResult::new()), "");
    }

    #[test]
    fn result_lines_sorted_by_size_then_ids() {
        let r: MiningResult =
            [(&[10u32, 2][..], 1), (&[9], 2), (&[1, 3], 1), (&[2], 2)].iter().map(|&(k, v)| (Itemset::from_ids(k), v)).collect();
        assert_eq!(result_to_string(&r), "2\t2\n9\t2\n1 3\t1\n2 10\t1\n");
    }

    #[test]
    fn generator_is_seeded() {
        let a = generate(10, 30, 4.0, 1).unwrap();
        assert_eq!(a, generate(10, 30, 4.0, 1).unwrap());
        assert_ne!(a, generate(10, 30, 4.0, 2).unwrap());
        assert_eq!(a.len(), 30);
    }

    #[test]
    fn generator_hits_target_stats() {
        let s = stats(&generate(5, 100, 3.0, 7).unwrap());
        assert_eq!((s.items, s.transactions), (5, 100));
        assert!((s.avg_length - 3.0).abs() <= 1.0, "avg {}", s.avg_length);
    }

    #[test]
    fn generator_rejects_bad_parameters() {
        assert!(generate(0, 10, 1.0, 1).is_err());
        assert!(generate(5, 10, 6.0, 1).is_err());
        assert!(generate(5, 10, 0.0, 1).is_err());
    }
}
