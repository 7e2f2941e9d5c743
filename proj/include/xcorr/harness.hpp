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
 * Monitored brickwork circuits simulated by an exact engine and mirrored by
 * bond-limited MPS engines, with per-run estimators and aggregation.
 *
 * One run r: both engines start in |0...0>. The circuit has depth_factor * L
 * half-layers that alternate between even bonds (0,1), (2,3), ... and odd
 * bonds (1,2), (3,4), ..., so each bond receives depth_factor * L / 2 gates.
 * After every gate each touched bulk qubit is measured with probability p:
 * the exact engine samples the Born rule and every MPS is forced onto the
 * same outcome, after which the bond is truncated to chi. The end qubits 0
 * and L-1 are never measured. At the end all bulk qubits are measured and
 * the probe (qubit 0, or the pair {0, L-1}) is compared between engines.
 *
 * Streams: run r draws gates, measurement choices, Born coins, shadow bases
 * and shadow outcomes from paths {0, r, purpose}. With fixed_circuit the
 * gates and measurement locations come from {1, purpose} instead and are
 * shared by every run. Paths do not depend on (L, p, chi), so several chi
 * values can be run in lock-step on one exact trajectory.
 */
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xcorr/entropy.hpp"
#include "xcorr/rng.hpp"
#include "xcorr/shadows.hpp"
#include "xcorr/stats.hpp"
#include "xcorr/statevector.hpp"

namespace xcorr {

enum class Probe { LeftQubit, BoundaryPair };

[[nodiscard]] const char *to_string(Probe probe);
[[nodiscard]] Probe parse_probe(const std::string &name);

struct Modes {
    bool shadow = true;
    bool direct_qc = true;
    bool decoder = true;
};

struct ExperimentConfig {
    int L = 8;
    double p = 0.16;
    int chi = 16;
    int depth_factor = 4;
    int runs = 100;
    std::uint64_t seed = 1;
    EnsembleKind ensemble = EnsembleKind::PauliBases3;
    double floor = kDefaultFloor;
    FloorRule floor_rule = FloorRule::ClampRenormalize;
    double depolarize = 0.0;
    Probe probe = Probe::LeftQubit;
    Modes modes;
    bool fixed_circuit = false;
    int threads = 1;

    [[nodiscard]] int half_layers() const { return depth_factor * L; }
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Grid over L, p and chi sharing every other setting of `base`.
struct SweepConfig {
    ExperimentConfig base;
    std::vector<int> L;
    std::vector<double> p;
    std::vector<int> chi;

    /// Single-point sweep.
    static SweepConfig from(const ExperimentConfig &config);
    /// Points ordered by L, then p, then chi.
    [[nodiscard]] std::vector<ExperimentConfig> points() const;
    void validate() const;
};

/// Per-run quantities. Absent values are NaN. Quantities suffixed _N are
/// computed on the boundary pair after the depolarizing post-processing;
/// the unsuffixed ones refer to qubit 0.
enum class Quantity : int {
    S,
    S_QC,
    S_CC,
    S_SC,
    S_SC_CRN,
    SIGMA2_SHADOW,
    GAMMA,
    GAMMA_QC,
    GAMMA_CC,
    DECODER_Z,
    S_A_N,
    S_AB_N,
    S_QC_A_N,
    S_QC_AB_N,
    S_SC_A_N,
    S_SC_AB_N,
    LOWER_N,
    DISCARDED_WEIGHT,
    DEGENERATE,
    LOG_PROB,
};

inline constexpr int kQuantityCount = static_cast<int>(Quantity::LOG_PROB) + 1;

[[nodiscard]] std::string_view quantity_name(Quantity q);
[[nodiscard]] const std::array<Quantity, kQuantityCount> &all_quantities();

struct RunRecord {
    std::uint64_t run = 0;
    int L = 0;
    double p = 0.0;
    int chi = 0;
    std::vector<MeasurementEvent> outcomes;
    double log_prob = 0.0;
    /// Empty when shadow mode is off.
    ShadowRecord shadow;
    double discarded_weight = 0.0;
    int degenerate_forcings = 0;
    std::array<double, kQuantityCount> values;

    RunRecord() { values.fill(std::numeric_limits<double>::quiet_NaN()); }

    [[nodiscard]] double operator[](Quantity q) const {
        return values[static_cast<std::size_t>(q)];
    }
    double &operator[](Quantity q) { return values[static_cast<std::size_t>(q)]; }
};

struct AggregateStats {
    int L = 0;
    double p = 0.0;
    int chi = 0;
    std::array<RunningStats, kQuantityCount> stats;

    [[nodiscard]] std::uint64_t runs() const;
    [[nodiscard]] const RunningStats &operator[](Quantity q) const {
        return stats[static_cast<std::size_t>(q)];
    }
    /// NaN values are skipped.
    void push(const RunRecord &record);
    void merge(const AggregateStats &other);
};

/// Subset of runs r with r % count == index.
struct Shard {
    int index = 0;
    int count = 1;
};

struct PointResult {
    ExperimentConfig config;
    AggregateStats stats;
    std::vector<RunRecord> records;
};

/// One trajectory for one chi. Engine errors are rethrown with the run index
/// and half-layer.
[[nodiscard]] RunRecord run_trajectory(const ExperimentConfig &config, std::uint64_t r);

/// One exact trajectory mirrored by an MPS for each entry of `chis`; the
/// result for chis[k] is identical to run_trajectory with chi = chis[k].
[[nodiscard]] std::vector<RunRecord> run_trajectory_multi(const ExperimentConfig &config,
                                                          std::span<const int> chis,
                                                          std::uint64_t r);

/// All runs of one point, computed on config.threads workers and aggregated
/// in run order.
[[nodiscard]] PointResult run_experiment(const ExperimentConfig &config, Shard shard = {});

/// Every grid point, with chi values of the same (L, p) run in lock-step.
[[nodiscard]] std::vector<PointResult> run_sweep(const SweepConfig &sweep, Shard shard = {});

/// Combines shard results point by point (records concatenated and sorted
/// by run index).
[[nodiscard]] std::vector<PointResult> merge_shards(
    const std::vector<std::vector<PointResult>> &shards);

} // namespace xcorr
