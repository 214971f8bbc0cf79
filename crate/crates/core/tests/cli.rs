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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use prepost::fixtures::SAMPLE_FIMI;
use tempfile::TempDir;

fn prepost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prepost")).args(args).output().expect("spawn prepost")
}

fn sample(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("sample.dat");
    fs::write(&path, SAMPLE_FIMI).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn mine_writes_canonical_file() {
    let dir = TempDir::new().unwrap();
    let input = sample(&dir);
    let out = dir.path().join("out.tsv");
    let run = prepost(&["mine", "--input", s(&input), "--min-sup", "0.3", "--algo", "prepost", "--output", s(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(fs::read_to_string(&out).unwrap(), "1\t4\n2\t5\n3\t3\n4\t3\n5\t3\n2 3\t3\n");
}

#[test]
fn mine_to_stdout_matches_across_algorithms() {
    let dir = TempDir::new().unwrap();
    let input = sample(&dir);
    let base = prepost(&["mine", "--input", s(&input), "--min-count", "1", "--algo", "prepost"]);
    assert!(base.status.success());
    for extra in [
        &["--algo", "hprepost", "--groups", "3", "--splits", "2", "--workers", "2"][..],
        &["--algo", "fpgrowth"],
        &["--algo", "bruteforce"],
    ] {
        let mut args = vec!["mine", "--input", s(&input), "--min-count", "1"];
        args.extend_from_slice(extra);
        let other = prepost(&args);
        assert!(other.status.success());
        assert_eq!(other.stdout, base.stdout, "{extra:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let input = sample(&dir);
    assert_eq!(prepost(&["mine", "--min-sup", "0.3", "--algo", "prepost"]).status.code(), Some(1));
    assert_eq!(prepost(&["mine", "--input", s(&input), "--algo", "prepost"]).status.code(), Some(1));
    assert_eq!(prepost(&["mine", "--input", s(&input), "--min-sup", "1.5", "--algo", "prepost"]).status.code(), Some(1));
    assert_eq!(prepost(&["mine", "--input", s(&input), "--min-sup", "0", "--algo", "prepost"]).status.code(), Some(1));
    let zero_groups = prepost(&["mine", "--input", s(&input), "--min-sup", "0.3", "--algo", "hprepost", "--groups", "0"]);
    assert_eq!(zero_groups.status.code(), Some(1));
    assert_eq!(prepost(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two_with_line_number() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.dat");
    fs::write(&bad, "1 2 3\n4 x 5\n").unwrap();
    let run = prepost(&["stats", "--input", s(&bad)]);
    assert_eq!(run.status.code(), Some(2));
    let err = String::from_utf8_lossy(&run.stderr);
    assert!(err.contains("line 2"), "{err}");

    let missing = dir.path().join("nope.dat");
    assert_eq!(prepost(&["stats", "--input", s(&missing)]).status.code(), Some(2));
}

#[test]
fn verify_agrees_on_sample() {
    let dir = TempDir::new().unwrap();
    let input = sample(&dir);
    let run = prepost(&[
        "verify",
        "--input",
        s(&input),
        "--min-sup",
        "0.3",
        "--algos",
        "prepost,hprepost,fpgrowth,bruteforce",
        "--groups",
        "2",
        "--splits",
        "3",
        "--workers",
        "2",
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok:"));
}

#[test]
fn verify_refuses_oracle_on_large_input() {
    let dir = TempDir::new().unwrap();
    let big = dir.path().join("big.dat");
    let gen = prepost(&["gen", "--items", "40", "--transactions", "100", "--avg-len", "5", "--output", s(&big)]);
    assert!(gen.status.success());
    let run = prepost(&["verify", "--input", s(&big), "--min-sup", "0.2", "--algos", "prepost,bruteforce"]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn bench_emits_one_row_per_cell() {
    let dir = TempDir::new().unwrap();
    let input = sample(&dir);
    let csv = dir.path().join("bench.csv");
    let run = prepost(&[
        "bench",
        "--input",
        s(&input),
        "--min-sups",
        "0.3,0.5",
        "--algos",
        "prepost,fpgrowth",
        "--repeat",
        "1",
        "--csv",
        s(&csv),
    ]);
    assert!(run.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], prepost::bench::CSV_HEADER);
    assert!(lines[1].starts_with("sample,prepost,0.3,3,"));
    assert!(lines[4].starts_with("sample,fpgrowth,0.5,4,"));
}

#[test]
fn stats_prints_summary() {
    let dir = TempDir::new().unwrap();
    let input = sample(&dir);
    let run = prepost(&["stats", "--input", s(&input)]);
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "7 7 3.1\n");
}

#[test]
fn gen_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.dat");
    let b = dir.path().join("b.dat");
    let c = dir.path().join("c.dat");
    for (path, seed) in [(&a, "9"), (&b, "9"), (&c, "10")] {
        let run = prepost(&["gen", "--items", "50", "--transactions", "200", "--avg-len", "6", "--seed", seed, "--output", s(path)]);
        assert!(run.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    let stats = prepost(&["stats", "--input", s(&a)]);
    let text = String::from_utf8_lossy(&stats.stdout).into_owned();
    let fields: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(fields.len(), 3);
    assert!(fields[0].parse::<usize>().unwrap() <= 50);
    assert_eq!(fields[1], "200");
}
