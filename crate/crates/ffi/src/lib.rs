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

//! C ABI over the prepost miners.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free` function. Every fallible call returns a
//! [`PrepostStatus`] and leaves a message for [`prepost_last_error`] on
//! failure. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use prepost::bench::run_algorithm;
use prepost::io::{parse_fimi, read_fimi_file, stats, write_result};
use prepost::{Algorithm, Error, HPrepostConfig, MinSup, MiningResult, TransactionDatabase};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrepostStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    OutOfRange = 5,
    Internal = 6,
}

/// Values accepted in [`PrepostMineOptions::algorithm`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrepostAlgorithm {
    Prepost = 0,
    Hprepost = 1,
    Fpgrowth = 2,
    Bruteforce = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrepostMineOptions {
    /// One of the `PrepostAlgorithm` values.
    pub algorithm: u32,
    /// Fraction of transactions in (0, 1]; used when `min_count` is 0.
    pub min_sup: f64,
    /// Absolute support threshold; 0 selects `min_sup`.
    pub min_count: u64,
    pub groups: u32,
    pub splits: u32,
    pub workers: u32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PrepostStats {
    pub items: u64,
    pub transactions: u64,
    pub avg_length: f64,
}

/// A parsed transaction database.
pub struct PrepostDatabase {
    db: TransactionDatabase,
}

/// Frequent itemsets in canonical order.
pub struct PrepostResult {
    result: MiningResult,
    rows: Vec<(Vec<u32>, u64)>,
    threshold: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PrepostStatus, msg: impl Into<String>) -> PrepostStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PrepostStatus {
    let status = match e {
        Error::Parse { .. } => PrepostStatus::Parse,
        Error::Io(_) => PrepostStatus::Io,
        Error::InvalidMinSup(_) | Error::InvalidParameter(_) | Error::OracleLimit(_) => PrepostStatus::InvalidArgument,
        Error::UnorderedPath { .. } | Error::Task { .. } => PrepostStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> PrepostStatus) -> PrepostStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(PrepostStatus::Internal, "internal panic"))
}

unsafe fn path_arg(path: *const c_char) -> Result<PathBuf, PrepostStatus> {
    if path.is_null() {
        return Err(fail(PrepostStatus::NullArgument, "path is null"));
    }
    // SAFETY: caller passes a NUL-terminated string.
    let s = unsafe { CStr::from_ptr(path) };
    match s.to_str() {
        Ok(s) => Ok(PathBuf::from(s)),
        Err(_) => Err(fail(PrepostStatus::InvalidArgument, "path is not valid UTF-8")),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn prepost_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null if the last call
/// succeeded. The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn prepost_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Sequential PrePost at 10% support, one group, split and worker.
#[no_mangle]
pub extern "C" fn prepost_mine_options_default() -> PrepostMineOptions {
    PrepostMineOptions { algorithm: PrepostAlgorithm::Prepost as u32, min_sup: 0.1, min_count: 0, groups: 1, splits: 1, workers: 1 }
}

fn store_db(db: TransactionDatabase, out: *mut *mut PrepostDatabase) -> PrepostStatus {
    // SAFETY: `out` was checked non-null by the caller of this helper.
    unsafe { *out = Box::into_raw(Box::new(PrepostDatabase { db })) };
    PrepostStatus::Ok
}

/// Reads a FIMI file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer to
/// writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn prepost_database_from_file(path: *const c_char, out: *mut *mut PrepostDatabase) -> PrepostStatus {
    guard(|| {
        if out.is_null() {
            return fail(PrepostStatus::NullArgument, "out is null");
        }
        // SAFETY: forwarded caller contract.
        let path = match unsafe { path_arg(path) } {
            Ok(p) => p,
            Err(s) => return s,
        };
        match read_fimi_file(&path) {
            Ok(db) => store_db(db, out),
            Err(Error::Io(e)) => fail(PrepostStatus::Io, format!("{}: {e}", path.display())),
            Err(e) => from_error(e),
        }
    })
}

/// Parses FIMI text from memory.
///
/// # Safety
/// `data` must point to `len` readable bytes (it may be null when `len` is
/// 0) and `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn prepost_database_from_buffer(data: *const u8, len: usize, out: *mut *mut PrepostDatabase) -> PrepostStatus {
    guard(|| {
        if out.is_null() || (data.is_null() && len > 0) {
            return fail(PrepostStatus::NullArgument, "data or out is null");
        }
        let bytes: &[u8] = if len == 0 {
            &[]
        } else {
            // SAFETY: caller guarantees `len` readable bytes at `data`.
            unsafe { std::slice::from_raw_parts(data, len) }
        };
        match parse_fimi(bytes) {
            Ok(db) => store_db(db, out),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `db` must be a live handle and `out` a valid pointer to a `PrepostStats`.
#[no_mangle]
pub unsafe extern "C" fn prepost_database_stats(db: *const PrepostDatabase, out: *mut PrepostStats) -> PrepostStatus {
    guard(|| {
        if db.is_null() || out.is_null() {
            return fail(PrepostStatus::NullArgument, "db or out is null");
        }
        // SAFETY: caller guarantees a live handle.
        let s = stats(unsafe { &(*db).db });
        let value = PrepostStats { items: s.items as u64, transactions: s.transactions as u64, avg_length: s.avg_length };
        // SAFETY: `out` is non-null and writable per the contract.
        unsafe { *out = value };
        PrepostStatus::Ok
    })
}

/// # Safety
/// `db` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn prepost_database_free(db: *mut PrepostDatabase) {
    if !db.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(db) });
    }
}

fn algorithm_of(code: u32) -> Option<Algorithm> {
    Some(match code {
        0 => Algorithm::PrePost,
        1 => Algorithm::HPrepost,
        2 => Algorithm::FpGrowth,
        3 => Algorithm::BruteForce,
        _ => return None,
    })
}

/// Mines `db` with `opts`.
///
/// # Safety
/// `db` must be a live handle, `opts` must point to a `PrepostMineOptions`
/// and `out` to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn prepost_mine(
    db: *const PrepostDatabase,
    opts: *const PrepostMineOptions,
    out: *mut *mut PrepostResult,
) -> PrepostStatus {
    guard(|| {
        if db.is_null() || opts.is_null() || out.is_null() {
            return fail(PrepostStatus::NullArgument, "db, opts or out is null");
        }
        // SAFETY: non-null and valid per the contract.
        let (db, opts) = unsafe { (&(*db).db, *opts) };
        let Some(algo) = algorithm_of(opts.algorithm) else {
            return fail(PrepostStatus::InvalidArgument, format!("unknown algorithm {}", opts.algorithm));
        };
        let spec = if opts.min_count > 0 { MinSup::Count(opts.min_count) } else { MinSup::Fraction(opts.min_sup) };
        let cfg = HPrepostConfig::new(opts.groups as usize, opts.splits as usize, opts.workers as usize);
        let run = match run_algorithm(algo, db, spec, cfg) {
            Ok(run) => run,
            Err(e) => return from_error(e),
        };
        let rows = run.result.iter().map(|(set, s)| (set.items().iter().map(|i| i.0).collect(), s)).collect();
        let res = PrepostResult { result: run.result, rows, threshold: run.threshold };
        // SAFETY: `out` is non-null and writable per the contract.
        unsafe { *out = Box::into_raw(Box::new(res)) };
        PrepostStatus::Ok
    })
}

/// Number of itemsets; 0 for a null handle.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn prepost_result_len(res: *const PrepostResult) -> usize {
    // SAFETY: caller contract.
    unsafe { res.as_ref() }.map_or(0, |r| r.rows.len())
}

/// Resolved absolute threshold the result was mined at; 0 for a null handle.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn prepost_result_threshold(res: *const PrepostResult) -> u64 {
    // SAFETY: caller contract.
    unsafe { res.as_ref() }.map_or(0, |r| r.threshold)
}

/// Itemset `index` in canonical order. `*items` points into the result and
/// stays valid until the result is freed.
///
/// # Safety
/// `res` must be a live handle; `items`, `len` and `support` must be valid
/// pointers to writable storage.
#[no_mangle]
pub unsafe extern "C" fn prepost_result_get(
    res: *const PrepostResult,
    index: usize,
    items: *mut *const u32,
    len: *mut usize,
    support: *mut u64,
) -> PrepostStatus {
    guard(|| {
        if res.is_null() || items.is_null() || len.is_null() || support.is_null() {
            return fail(PrepostStatus::NullArgument, "null argument");
        }
        // SAFETY: live handle per the contract.
        let rows = unsafe { &(*res).rows };
        let Some((set, s)) = rows.get(index) else {
            return fail(PrepostStatus::OutOfRange, format!("index {index} out of range for {} itemsets", rows.len()));
        };
        // SAFETY: output pointers are non-null and writable.
        unsafe {
            *items = set.as_ptr();
            *len = set.len();
            *support = *s;
        }
        PrepostStatus::Ok
    })
}

/// Writes the canonical result file (`ids<TAB>support` per line).
///
/// # Safety
/// `res` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn prepost_result_write(res: *const PrepostResult, path: *const c_char) -> PrepostStatus {
    guard(|| {
        if res.is_null() {
            return fail(PrepostStatus::NullArgument, "res is null");
        }
        // SAFETY: forwarded caller contract.
        let path = match unsafe { path_arg(path) } {
            Ok(p) => p,
            Err(s) => return s,
        };
        let file = match File::create(&path) {
            Ok(f) => f,
            Err(e) => return fail(PrepostStatus::Io, format!("{}: {e}", path.display())),
        };
        // SAFETY: live handle per the contract.
        match write_result(unsafe { &(*res).result }, file) {
            Ok(()) => PrepostStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `res` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn prepost_result_free(res: *mut PrepostResult) {
    if !res.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(res) });
    }
}
