// Copyright 2026 xcorr contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/*
 * C interface to the xcorr simulator.
 *
 * Objects are opaque handles created and destroyed by the library. Every
 * function that can fail returns an xcorr_status; on failure a description
 * is available from xcorr_last_error() on the calling thread until the next
 * failing call on that thread.
 */
#ifndef XCORR_XCORR_H
#define XCORR_XCORR_H

#include <stddef.h>

#if defined(XCORR_BUILDING_LIBRARY)
#define XCORR_API __attribute__((visibility("default")))
#else
#define XCORR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xcorr_status {
    XCORR_OK = 0,
    XCORR_E_ARGUMENT = 1,  /* null handle, bad index, buffer too small */
    XCORR_E_CONFIG = 2,    /* invalid configuration key or value */
    XCORR_E_NUMERICAL = 3, /* simulation or fit failure */
    XCORR_E_IO = 4         /* unreadable or unwritable file */
} xcorr_status;

typedef enum xcorr_oracle_kind {
    XCORR_ORACLE_SHADOW = 0,  /* shadow average equals the state */
    XCORR_ORACLE_MOMENT = 1,  /* Clifford24 moments, n = 1..3 */
    XCORR_ORACLE_VARIANCE = 2 /* closed-form vs enumerated shadow variance */
} xcorr_oracle_kind;

typedef enum xcorr_fit_kind {
    XCORR_FIT_POWER_LAW = 0, /* mean_S against L */
    XCORR_FIT_COLLAPSE = 1   /* mean_S_QC / mean_S against (L, chi) */
} xcorr_fit_kind;

typedef struct xcorr_config xcorr_config;
typedef struct xcorr_result xcorr_result;

XCORR_API const char *xcorr_version(void);
XCORR_API const char *xcorr_last_error(void);

/* Configuration with default values: a single point. */
XCORR_API xcorr_status xcorr_config_create(xcorr_config **out);
XCORR_API void xcorr_config_destroy(xcorr_config *config);
/* Replaces the configuration with the contents of a key = value file. */
XCORR_API xcorr_status xcorr_config_load(xcorr_config *config, const char *path);
XCORR_API xcorr_status xcorr_config_set(xcorr_config *config, const char *key,
                                        const char *value);
/* Number of (L, p, chi) points. */
XCORR_API xcorr_status xcorr_config_grid_size(const xcorr_config *config, size_t *points);

/* Runs every grid point. */
XCORR_API xcorr_status xcorr_run(const xcorr_config *config, xcorr_result **out);
/* Runs the subset of runs r with r % count == index. */
XCORR_API xcorr_status xcorr_run_shard(const xcorr_config *config, int index, int count,
                                       xcorr_result **out);
/* Folds `other` into `into`; both must cover the same grid. */
XCORR_API xcorr_status xcorr_result_merge(xcorr_result *into, const xcorr_result *other);
XCORR_API void xcorr_result_destroy(xcorr_result *result);

/* One row per grid point, in aggregate.csv order. */
XCORR_API xcorr_status xcorr_result_row_count(const xcorr_result *result, size_t *rows);
XCORR_API xcorr_status xcorr_result_record_count(const xcorr_result *result, size_t *records);
/* Any aggregate.csv column name, e.g. "mean_S_QC" or "runs". */
XCORR_API xcorr_status xcorr_result_value(const xcorr_result *result, size_t row,
                                          const char *column, double *value);
/* Writes aggregate.csv, runs.jsonl and config.txt into `dir`. */
XCORR_API xcorr_status xcorr_result_write(const xcorr_result *result, const char *dir);

XCORR_API xcorr_status xcorr_oracle(xcorr_oracle_kind kind, double *max_deviation);

/*
 * Fits rows of an aggregate.csv at measurement rate p and writes a JSON
 * object into `buffer`. `needed` receives the required size including the
 * terminator; pass buffer = NULL and size = 0 to query it.
 */
XCORR_API xcorr_status xcorr_fit_csv(const char *path, xcorr_fit_kind kind, double p,
                                     char *buffer, size_t size, size_t *needed);

#ifdef __cplusplus
}
#endif

#endif /* XCORR_XCORR_H */
