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


/**
 * @file
 * Configuration files and result tables.
 *
 * Configuration is plain text, one `key = value` per line, `#` starting a
 * comment. L, p and chi accept comma-separated lists (a sweep); every other
 * key takes a single value. Results are written as
 *
 *   aggregate.csv  one row per (L, p, chi): L,p,chi,runs,schema_version and
 *                  mean_Q, stderr_Q, var_Q for every quantity Q ("nan" when
 *                  absent)
 *   runs.jsonl     one JSON object per run, schema "xcorr-run/1"
 *   config.txt     the effective configuration in the input format
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xcorr/harness.hpp"

namespace xcorr {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr std::string_view kRunSchema = "xcorr-run/1";

/// Keys accepted by apply_setting, in documentation order.
[[nodiscard]] const std::vector<std::string> &config_keys();

/// Sets one key; throws ConfigError for unknown keys or malformed values.
void apply_setting(SweepConfig &config, const std::string &key, const std::string &value);

/// `origin` names the source in error messages.
[[nodiscard]] SweepConfig parse_config(std::string_view text,
                                       const std::string &origin = "<config>");
/// Throws IoError when the file cannot be read.
[[nodiscard]] SweepConfig load_config(const std::filesystem::path &path);
[[nodiscard]] std::string config_to_text(const SweepConfig &config);

[[nodiscard]] std::vector<std::string> csv_header();

struct AggregateRow {
    int L = 0;
    double p = 0.0;
    int chi = 0;
    std::uint64_t runs = 0;
    int schema_version = kCsvSchemaVersion;
    std::map<std::string, double, std::less<>> values;

    /// Throws ConfigError for an unknown column.
    [[nodiscard]] double value(std::string_view column) const;
};

[[nodiscard]] AggregateRow to_row(const AggregateStats &stats);

void write_aggregate_csv(std::ostream &out, std::span<const PointResult> results);
/// Throws IoError on a missing column or a schema-version mismatch.
[[nodiscard]] std::vector<AggregateRow> read_aggregate_csv(std::istream &in,
                                                           const std::string &origin = "<csv>");
[[nodiscard]] std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path &path);

/// Single-line JSON document for one run.
[[nodiscard]] std::string run_record_json(const RunRecord &record);

/// Writes aggregate.csv, runs.jsonl and config.txt into `dir`, creating it
/// if needed. Throws IoError with the failing path.
void emit_results(const std::filesystem::path &dir, const SweepConfig &config,
                  std::span<const PointResult> results);

} // namespace xcorr
