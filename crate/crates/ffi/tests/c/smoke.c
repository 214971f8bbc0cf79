/*
 * Copyright 2026 The prepost Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Mines the textbook example through the C API and prints the result file. */
#include <stdio.h>
#include <string.h>

#include "prepost.h"

static const char DATA[] = "1 2 7\n2 3 4 6 7\n1 2 5\n1 4\n2 3 5\n1 4 5 6\n2 3\n";

int main(void) {
  PrepostDatabase *db = NULL;
  if (prepost_database_from_buffer((const uint8_t *)DATA, strlen(DATA), &db) != PREPOST_STATUS_OK) {
    fprintf(stderr, "load: %s\n", prepost_last_error());
    return 1;
  }

  PrepostMineOptions opts = prepost_mine_options_default();
  opts.algorithm = PREPOST_ALGORITHM_HPREPOST;
  opts.min_sup = 0.3;
  opts.groups = 2;
  opts.splits = 2;
  opts.workers = 2;

  PrepostResult *res = NULL;
  if (prepost_mine(db, &opts, &res) != PREPOST_STATUS_OK) {
    fprintf(stderr, "mine: %s\n", prepost_last_error());
    prepost_database_free(db);
    return 1;
  }

  for (size_t i = 0; i < prepost_result_len(res); i++) {
    const uint32_t *items;
    size_t len;
    uint64_t support;
    prepost_result_get(res, i, &items, &len, &support);
    for (size_t j = 0; j < len; j++) {
      printf(j ? " %u" : "%u", items[j]);
    }
    printf("\t%llu\n", (unsigned long long)support);
  }

  opts.algorithm = 42;
  PrepostResult *bad = NULL;
  if (prepost_mine(db, &opts, &bad) != PREPOST_STATUS_INVALID_ARGUMENT || bad != NULL) {
    fprintf(stderr, "bad algorithm accepted\n");
    return 1;
  }

  prepost_result_free(res);
  prepost_database_free(db);
  return 0;
}
