/* Copyright 2026 The prepost Authors. Licensed under the Apache License, Version 2.0. */

#ifndef PREPOST_H
#define PREPOST_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum PrepostStatus {
  PREPOST_STATUS_OK = 0,
  PREPOST_STATUS_NULL_ARGUMENT = 1,
  PREPOST_STATUS_INVALID_ARGUMENT = 2,
  PREPOST_STATUS_PARSE = 3,
  PREPOST_STATUS_IO = 4,
  PREPOST_STATUS_OUT_OF_RANGE = 5,
  PREPOST_STATUS_INTERNAL = 6,
} PrepostStatus;

// Values accepted in [`PrepostMineOptions::algorithm`].
typedef enum PrepostAlgorithm {
  PREPOST_ALGORITHM_PREPOST = 0,
  PREPOST_ALGORITHM_HPREPOST = 1,
  PREPOST_ALGORITHM_FPGROWTH = 2,
  PREPOST_ALGORITHM_BRUTEFORCE = 3,
} PrepostAlgorithm;

// A parsed transaction database.
typedef struct PrepostDatabase PrepostDatabase;

// Frequent itemsets in canonical order.
typedef struct PrepostResult PrepostResult;

typedef struct PrepostMineOptions {
  // One of the `PrepostAlgorithm` values.
  uint32_t algorithm;
  // Fraction of transactions in (0, 1]; used when `min_count` is 0.
  double min_sup;
  // Absolute support threshold; 0 selects `min_sup`.
  uint64_t min_count;
  uint32_t groups;
  uint32_t splits;
  uint32_t workers;
} PrepostMineOptions;

typedef struct PrepostStats {
  uint64_t items;
  uint64_t transactions;
  double avg_length;
} PrepostStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *prepost_version(void);

// Message of the last failed call on this thread, or null if the last call
// succeeded. The pointer stays valid until the next call on this thread.
const char *prepost_last_error(void);

// Sequential PrePost at 10% support, one group, split and worker.
struct PrepostMineOptions prepost_mine_options_default(void);

// Reads a FIMI file.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer to
// writable storage for one handle.
enum PrepostStatus prepost_database_from_file(const char *path, struct PrepostDatabase **out);

// Parses FIMI text from memory.
//
// # Safety
// `data` must point to `len` readable bytes (it may be null when `len` is
// 0) and `out` must be a valid pointer to writable storage for one handle.
enum PrepostStatus prepost_database_from_buffer(const uint8_t *data,
                                                size_t len,
                                                struct PrepostDatabase **out);

// # Safety
// `db` must be a live handle and `out` a valid pointer to a `PrepostStats`.
enum PrepostStatus prepost_database_stats(const struct PrepostDatabase *db,
                                          struct PrepostStats *out);

// # Safety
// `db` must be null or a handle from this library that has not been freed.
void prepost_database_free(struct PrepostDatabase *db);

// Mines `db` with `opts`.
//
// # Safety
// `db` must be a live handle, `opts` must point to a `PrepostMineOptions`
// and `out` to writable storage for one handle.
enum PrepostStatus prepost_mine(const struct PrepostDatabase *db,
                                const struct PrepostMineOptions *opts,
                                struct PrepostResult **out);

// Number of itemsets; 0 for a null handle.
//
// # Safety
// `res` must be null or a live handle.
size_t prepost_result_len(const struct PrepostResult *res);

// Resolved absolute threshold the result was mined at; 0 for a null handle.
//
// # Safety
// `res` must be null or a live handle.
uint64_t prepost_result_threshold(const struct PrepostResult *res);

// Itemset `index` in canonical order. `*items` points into the result and
// stays valid until the result is freed.
//
// # Safety
// `res` must be a live handle; `items`, `len` and `support` must be valid
// pointers to writable storage.
enum PrepostStatus prepost_result_get(const struct PrepostResult *res,
                                      size_t index,
                                      const uint32_t **items,
                                      size_t *len,
                                      uint64_t *support);

// Writes the canonical result file (`ids<TAB>support` per line).
//
// # Safety
// `res` must be a live handle and `path` a NUL-terminated string.
enum PrepostStatus prepost_result_write(const struct PrepostResult *res, const char *path);

// # Safety
// `res` must be null or a handle from this library that has not been freed.
void prepost_result_free(struct PrepostResult *res);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREPOST_H */
