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

use std::ffi::{CStr, CString};
use std::ptr;

use prepost::fixtures::SAMPLE_FIMI;
use prepost::io::result_to_string;
use prepost::nlist::prepost;
use prepost_ffi::*;

fn load(text: &str) -> *mut PrepostDatabase {
    let mut db = ptr::null_mut();
    let status = unsafe { prepost_database_from_buffer(text.as_ptr(), text.len(), &mut db) };
    assert_eq!(status, PrepostStatus::Ok);
    assert!(!db.is_null());
    db
}

fn last_error() -> String {
    let p = prepost_last_error();
    assert!(!p.is_null(), "no error message recorded");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn mine(db: *const PrepostDatabase, opts: &PrepostMineOptions) -> Result<*mut PrepostResult, PrepostStatus> {
    let mut res = ptr::null_mut();
    match unsafe { prepost_mine(db, opts, &mut res) } {
        PrepostStatus::Ok => Ok(res),
        s => Err(s),
    }
}

fn rows(res: *const PrepostResult) -> String {
    let mut text = String::new();
    for i in 0..unsafe { prepost_result_len(res) } {
        let (mut items, mut len, mut support) = (ptr::null(), 0usize, 0u64);
        assert_eq!(unsafe { prepost_result_get(res, i, &mut items, &mut len, &mut support) }, PrepostStatus::Ok);
        let ids: Vec<String> = unsafe { std::slice::from_raw_parts(items, len) }.iter().map(u32::to_string).collect();
        text.push_str(&format!("{}\t{support}\n", ids.join(" ")));
    }
    text
}

#[test]
fn every_algorithm_matches_the_library() {
    let db = load(SAMPLE_FIMI);
    let want = result_to_string(&prepost(&prepost::fixtures::sample(), 2));
    for algorithm in [PrepostAlgorithm::Prepost, PrepostAlgorithm::Hprepost, PrepostAlgorithm::Fpgrowth, PrepostAlgorithm::Bruteforce] {
        let opts = PrepostMineOptions {
            algorithm: algorithm as u32,
            min_count: 2,
            groups: 3,
            splits: 2,
            workers: 2,
            ..prepost_mine_options_default()
        };
        let res = mine(db, &opts).unwrap();
        assert_eq!(unsafe { prepost_result_threshold(res) }, 2);
        assert_eq!(rows(res), want, "{algorithm:?}");
        assert!(prepost_last_error().is_null());
        unsafe { prepost_result_free(res) };
    }
    unsafe { prepost_database_free(db) };
}

#[test]
fn fraction_threshold_and_stats() {
    let db = load(SAMPLE_FIMI);
    let mut stats = PrepostStats::default();
    assert_eq!(unsafe { prepost_database_stats(db, &mut stats) }, PrepostStatus::Ok);
    assert_eq!((stats.items, stats.transactions), (7, 7));
    assert!((stats.avg_length - 22.0 / 7.0).abs() < 1e-12);

    let opts = PrepostMineOptions { min_sup: 0.3, ..prepost_mine_options_default() };
    let res = mine(db, &opts).unwrap();
    assert_eq!(rows(res), "1\t4\n2\t5\n3\t3\n4\t3\n5\t3\n2 3\t3\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.tsv");
    let c_path = CString::new(path.to_str().unwrap()).unwrap();
    assert_eq!(unsafe { prepost_result_write(res, c_path.as_ptr()) }, PrepostStatus::Ok);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), rows(res));
    unsafe {
        prepost_result_free(res);
        prepost_database_free(db);
    }
}

#[test]
fn file_loading_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.dat");
    std::fs::write(&path, SAMPLE_FIMI).unwrap();
    let c_path = CString::new(path.to_str().unwrap()).unwrap();
    let mut db = ptr::null_mut();
    assert_eq!(unsafe { prepost_database_from_file(c_path.as_ptr(), &mut db) }, PrepostStatus::Ok);
    unsafe { prepost_database_free(db) };

    let missing = CString::new(dir.path().join("nope.dat").to_str().unwrap()).unwrap();
    let mut db = ptr::null_mut();
    assert_eq!(unsafe { prepost_database_from_file(missing.as_ptr(), &mut db) }, PrepostStatus::Io);
    assert!(db.is_null());
    assert!(last_error().contains("nope.dat"));
}

#[test]
fn parse_errors_carry_the_line() {
    let text = "1 2\n3 four\n";
    let mut db = ptr::null_mut();
    assert_eq!(unsafe { prepost_database_from_buffer(text.as_ptr(), text.len(), &mut db) }, PrepostStatus::Parse);
    assert!(db.is_null());
    assert!(last_error().contains("line 2"), "{}", last_error());
}

#[test]
fn invalid_arguments_are_rejected() {
    let db = load(SAMPLE_FIMI);
    let bad_algo = PrepostMineOptions { algorithm: 9, ..prepost_mine_options_default() };
    assert_eq!(mine(db, &bad_algo).unwrap_err(), PrepostStatus::InvalidArgument);
    assert!(last_error().contains("algorithm"));

    let bad_sup = PrepostMineOptions { min_sup: 1.5, ..prepost_mine_options_default() };
    assert_eq!(mine(db, &bad_sup).unwrap_err(), PrepostStatus::InvalidArgument);

    let zero_groups = PrepostMineOptions { algorithm: PrepostAlgorithm::Hprepost as u32, groups: 0, ..prepost_mine_options_default() };
    assert_eq!(mine(db, &zero_groups).unwrap_err(), PrepostStatus::InvalidArgument);

    let res = mine(db, &prepost_mine_options_default()).unwrap();
    let (mut items, mut len, mut support) = (ptr::null(), 0usize, 0u64);
    let n = unsafe { prepost_result_len(res) };
    assert_eq!(unsafe { prepost_result_get(res, n, &mut items, &mut len, &mut support) }, PrepostStatus::OutOfRange);
    unsafe {
        prepost_result_free(res);
        prepost_database_free(db);
    }
}

#[test]
fn null_arguments_are_reported() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prepost_database_from_file(ptr::null(), &mut out) }, PrepostStatus::NullArgument);
    assert_eq!(unsafe { prepost_database_from_buffer(ptr::null(), 3, &mut out) }, PrepostStatus::NullArgument);
    let mut res = ptr::null_mut();
    assert_eq!(unsafe { prepost_mine(ptr::null(), &prepost_mine_options_default(), &mut res) }, PrepostStatus::NullArgument);
    assert_eq!(unsafe { prepost_result_len(ptr::null()) }, 0);
    unsafe {
        prepost_database_free(ptr::null_mut());
        prepost_result_free(ptr::null_mut());
    }
}

#[test]
fn empty_buffer_is_an_empty_database() {
    let mut db = ptr::null_mut();
    assert_eq!(unsafe { prepost_database_from_buffer(ptr::null(), 0, &mut db) }, PrepostStatus::Ok);
    let res = mine(db, &PrepostMineOptions { min_count: 1, ..prepost_mine_options_default() }).unwrap();
    assert_eq!(unsafe { prepost_result_len(res) }, 0);
    unsafe {
        prepost_result_free(res);
        prepost_database_free(db);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(prepost_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
