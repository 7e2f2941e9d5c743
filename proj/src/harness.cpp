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


#include "xcorr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "xcorr/decoder.hpp"
#include "xcorr/error.hpp"
#include "xcorr/mps.hpp"

namespace xcorr {

namespace {

constexpr std::uint64_t kRunBranch = 0;
constexpr std::uint64_t kCircuitBranch = 1;

constexpr std::array<std::string_view, kQuantityCount> kNames = {
    "S",        "S_QC",      "S_CC",      "S_SC",      "S_SC_CRN",
    "SIGMA2_SHADOW", "GAMMA", "GAMMA_QC", "GAMMA_CC",  "DECODER_Z",
    "S_A_N",    "S_AB_N",    "S_QC_A_N",  "S_QC_AB_N", "S_SC_A_N",
    "S_SC_AB_N", "LOWER_N",  "DISCARDED_WEIGHT", "DEGENERATE", "LOG_PROB",
};

std::vector<int> probe_sites(const ExperimentConfig &c) {
    if (c.probe == Probe::LeftQubit) {
        return {0};
    }
    return {0, c.L - 1};
}

/// Fills the estimator values of `rec` from the probe states of one run.
void evaluate(const ExperimentConfig &c, const DensityMatrix &rho, const DensityMatrix &rho_c,
              const ShadowRecord *shadow, std::span<const double> u, RunRecord &rec) {
    const bool pair = c.probe == Probe::BoundaryPair;
    const DensityMatrix rho_a = pair ? partial_trace_to_site(rho, 0) : rho;
    const DensityMatrix rho_c_a = pair ? partial_trace_to_site(rho_c, 0) : rho_c;
    const LogDensity log_a = safe_log_density(rho_c_a, c.floor, c.floor_rule);

    rec[Quantity::S] = von_neumann_entropy(rho_a);
    rec[Quantity::S_CC] = s_cc(log_a);
    if (c.modes.direct_qc) {
        rec[Quantity::S_QC] = s_qc(rho_a, log_a);
    }

    ShadowRecord shadow_a;
    if (shadow != nullptr) {
        const int site0 = 0;
        shadow_a = pair ? shadow->restricted_to(std::span<const int>(&site0, 1)) : *shadow;
        rec[Quantity::S_SC] = s_sc(shadow_a.matrix, log_a);
        const ShadowRecord replica = classical_replica(shadow_a, log_a, u.first(1));
        rec[Quantity::S_SC_CRN] = s_sc_variance_reduced(shadow_a, replica, log_a);
        rec[Quantity::SIGMA2_SHADOW] = shadow_variance(rho_a, log_a);
    }

    if (c.modes.decoder) {
        const Matrix2 v = build_decoder(rho_c_a);
        rec[Quantity::GAMMA] = gamma(rho_a);
        rec[Quantity::GAMMA_QC] = gamma_qc(rho_a, v);
        rec[Quantity::GAMMA_CC] = gamma(rho_c_a);
        if (shadow != nullptr) {
            rec[Quantity::DECODER_Z] = (shadow_a.matrix * decoder_weight(v)).trace().real();
        }
    }

    if (!pair) {
        return;
    }
    const double eps = c.depolarize;
    const DensityMatrix rho_ab_n = depolarize(rho, eps);
    const DensityMatrix rho_c_ab_n = depolarize(rho_c, eps);
    const DensityMatrix rho_a_n = partial_trace_to_site(rho_ab_n, 0);
    const DensityMatrix rho_c_a_n = partial_trace_to_site(rho_c_ab_n, 0);
    const LogDensity log_ab_n = safe_log_density(rho_c_ab_n, c.floor, c.floor_rule);
    const LogDensity log_a_n = safe_log_density(rho_c_a_n, c.floor, c.floor_rule);
    rec[Quantity::S_A_N] = von_neumann_entropy(rho_a_n);
    rec[Quantity::S_AB_N] = von_neumann_entropy(rho_ab_n);
    if (c.modes.direct_qc) {
        rec[Quantity::S_QC_A_N] = s_qc(rho_a_n, log_a_n);
        rec[Quantity::S_QC_AB_N] = s_qc(rho_ab_n, log_ab_n);
    }
    if (shadow != nullptr) {
        const double a = s_sc(depolarize(shadow_a.matrix, eps), log_a_n);
        const double ab = s_sc(depolarize(shadow->matrix, eps), log_ab_n);
        rec[Quantity::S_SC_A_N] = a;
        rec[Quantity::S_SC_AB_N] = ab;
        rec[Quantity::LOWER_N] = a - ab;
    }
}

/// Runs `body(i)` for i in [0, n) on `threads` workers; rethrows the
/// exception of the lowest failing index.
template <class F> void parallel_for(std::size_t n, int threads, F body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = n;
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::vector<std::uint64_t> shard_runs(int runs, Shard shard) {
    if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count) {
        throw ConfigError("invalid shard " + std::to_string(shard.index) + " of " +
                          std::to_string(shard.count));
    }
    std::vector<std::uint64_t> out;
    for (int r = shard.index; r < runs; r += shard.count) {
        out.push_back(static_cast<std::uint64_t>(r));
    }
    return out;
}

} // namespace

const char *to_string(Probe probe) {
    return probe == Probe::LeftQubit ? "left_qubit" : "boundary_pair";
}

Probe parse_probe(const std::string &name) {
    if (name == "left_qubit" || name == "left") {
        return Probe::LeftQubit;
    }
    if (name == "boundary_pair" || name == "pair") {
        return Probe::BoundaryPair;
    }
    throw ConfigError("unknown probe '" + name + "'");
}

std::string_view quantity_name(Quantity q) { return kNames[static_cast<std::size_t>(q)]; }

const std::array<Quantity, kQuantityCount> &all_quantities() {
    static const auto all = [] {
        std::array<Quantity, kQuantityCount> a{};
        for (int i = 0; i < kQuantityCount; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<Quantity>(i);
        }
        return a;
    }();
    return all;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    if (L < 3 || L > kMaxStatevectorQubits) {
        fail("L must lie in 3..24, got " + std::to_string(L));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        fail("p must lie in [0, 1]");
    }
    if (chi < 1) {
        fail("chi must be at least 1");
    }
    if (depth_factor < 1) {
        fail("depth_factor must be at least 1");
    }
    if (runs < 1) {
        fail("runs must be at least 1");
    }
    const double max_floor = probe == Probe::BoundaryPair ? 0.25 : 0.5;
    if (!(floor > 0.0 && floor < max_floor)) {
        fail("floor must lie in (0, 1/dim) for the probe");
    }
    if (!(depolarize >= 0.0 && depolarize <= 1.0)) {
        fail("depolarize must lie in [0, 1]");
    }
    if (depolarize > 0.0 && probe != Probe::BoundaryPair) {
        fail("depolarize applies to the boundary_pair probe only");
    }
    if (threads < 1) {
        fail("threads must be at least 1");
    }
}

SweepConfig SweepConfig::from(const ExperimentConfig &config) {
    return {config, {config.L}, {config.p}, {config.chi}};
}

std::vector<ExperimentConfig> SweepConfig::points() const {
    std::vector<ExperimentConfig> out;
    for (int l : L) {
        for (double pp : p) {
            for (int c : chi) {
                ExperimentConfig e = base;
                e.L = l;
                e.p = pp;
                e.chi = c;
                out.push_back(e);
            }
        }
    }
    return out;
}

void SweepConfig::validate() const {
    if (L.empty() || p.empty() || chi.empty()) {
        throw ConfigError("sweep needs at least one value of L, p and chi");
    }
    for (const auto &pt : points()) {
        pt.validate();
    }
}

std::uint64_t AggregateStats::runs() const { return stats[0].count(); }

void AggregateStats::push(const RunRecord &record) {
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (!std::isnan(record.values[i])) {
            stats[i].push(record.values[i]);
        }
    }
}

void AggregateStats::merge(const AggregateStats &other) {
    for (std::size_t i = 0; i < stats.size(); ++i) {
        stats[i].merge(other.stats[i]);
    }
}

std::vector<RunRecord> run_trajectory_multi(const ExperimentConfig &config,
                                            std::span<const int> chis, std::uint64_t r) {
    config.validate();
    if (chis.empty()) {
        throw ConfigError("at least one bond dimension is required");
    }
    const int L = config.L;
    const RandomStream root(config.seed);
    const RandomStream run_root = root.split(kRunBranch).split(r);
    const RandomStream circuit_root = config.fixed_circuit ? root.split(kCircuitBranch) : run_root;
    RandomStream gates = circuit_root.split(StreamPurpose::Gates);
    RandomStream choice = circuit_root.split(StreamPurpose::MeasureChoice);
    RandomStream born = run_root.split(StreamPurpose::Born);
    RandomStream basis = run_root.split(StreamPurpose::ShadowBasis);
    RandomStream outcome = run_root.split(StreamPurpose::ShadowOutcome);

    Statevector sv = Statevector::product_state(L);
    std::vector<MpsState> mps;
    for (int c : chis) {
        if (c < 1) {
            throw ConfigError("chi must be at least 1");
        }
        mps.emplace_back(L, c);
    }
    MeasurementRecord measurements;
    const int n_half = config.half_layers();
    int h = 0;
    try {
        for (; h < n_half; ++h) {
            for (int b = h % 2; b < L - 1; b += 2) {
                const Matrix u = sample_haar_unitary(4, gates);
                sv.apply_two_qubit_gate(b, u);
                std::array<int, 2> forced{0, 0};
                for (int k = 0; k < 2; ++k) {
                    const int q = b + k;
                    if (q == 0 || q == L - 1) {
                        continue;
                    }
                    if (choice.uniform() < config.p) {
                        forced[static_cast<std::size_t>(k)] =
                            sv.measure_born(q, born, measurements, h).outcome;
                    }
                }
                for (auto &m : mps) {
                    m.apply_brick(b, u, forced);
                }
            }
        }
        for (int q = 1; q < L - 1; ++q) {
            const int o = sv.measure_born(q, born, measurements, n_half).outcome;
            for (auto &m : mps) {
                m.force_outcome(q, o);
            }
        }
    } catch (const NumericalError &e) {
        throw NumericalError("run " + std::to_string(r) + ", half-layer " + std::to_string(h) +
                             ": " + e.what());
    }

    const auto sites = probe_sites(config);
    const DensityMatrix rho = sv.reduced_density_matrix(sites);
    const BasisEnsemble ensemble = BasisEnsemble::make(config.ensemble);
    ShadowRecord shadow;
    std::vector<double> u;
    if (config.modes.shadow) {
        const auto bases = draw_bases(ensemble, static_cast<int>(sites.size()), basis);
        for (std::size_t k = 0; k < sites.size(); ++k) {
            u.push_back(outcome.uniform());
        }
        shadow = measure_shadow(rho.matrix(), sites, bases, u, r);
    }

    std::vector<RunRecord> out;
    for (std::size_t k = 0; k < mps.size(); ++k) {
        RunRecord rec;
        rec.run = r;
        rec.L = L;
        rec.p = config.p;
        rec.chi = chis[k];
        rec.outcomes = measurements.events;
        rec.log_prob = measurements.log_prob;
        rec.discarded_weight = mps[k].discarded_weight();
        rec.degenerate_forcings = mps[k].degenerate_forcings();
        if (config.modes.shadow) {
            rec.shadow = shadow;
        }
        ExperimentConfig point = config;
        point.chi = chis[k];
        try {
            evaluate(point, rho, mps[k].boundary_density_matrix(sites),
                     config.modes.shadow ? &shadow : nullptr, u, rec);
        } catch (const std::exception &e) {
            throw NumericalError("run " + std::to_string(r) + ", chi " +
                                 std::to_string(chis[k]) + ": " + e.what());
        }
        rec[Quantity::DISCARDED_WEIGHT] = rec.discarded_weight;
        rec[Quantity::DEGENERATE] = rec.degenerate_forcings > 0 ? 1.0 : 0.0;
        rec[Quantity::LOG_PROB] = rec.log_prob;
        out.push_back(std::move(rec));
    }
    return out;
}

RunRecord run_trajectory(const ExperimentConfig &config, std::uint64_t r) {
    const int chi = config.chi;
    return std::move(run_trajectory_multi(config, std::span<const int>(&chi, 1), r).front());
}

PointResult run_experiment(const ExperimentConfig &config, Shard shard) {
    SweepConfig s = SweepConfig::from(config);
    return std::move(run_sweep(s, shard).front());
}

std::vector<PointResult> run_sweep(const SweepConfig &sweep, Shard shard) {
    sweep.validate();
    const auto runs = shard_runs(sweep.base.runs, shard);
    std::vector<PointResult> out;
    for (int l : sweep.L) {
        for (double pp : sweep.p) {
            ExperimentConfig cfg = sweep.base;
            cfg.L = l;
            cfg.p = pp;
            cfg.chi = sweep.chi.front();
            std::vector<std::vector<RunRecord>> per_run(runs.size());
            parallel_for(runs.size(), cfg.threads, [&](std::size_t i) {
                per_run[i] = run_trajectory_multi(cfg, sweep.chi, runs[i]);
            });
            for (std::size_t k = 0; k < sweep.chi.size(); ++k) {
                PointResult pr;
                pr.config = cfg;
                pr.config.chi = sweep.chi[k];
                pr.stats.L = l;
                pr.stats.p = pp;
                pr.stats.chi = sweep.chi[k];
                pr.records.reserve(runs.size());
                for (auto &recs : per_run) {
                    pr.stats.push(recs[k]);
                    pr.records.push_back(std::move(recs[k]));
                }
                out.push_back(std::move(pr));
            }
        }
    }
    return out;
}

std::vector<PointResult> merge_shards(const std::vector<std::vector<PointResult>> &shards) {
    if (shards.empty()) {
        return {};
    }
    std::vector<PointResult> out = shards.front();
    for (std::size_t s = 1; s < shards.size(); ++s) {
        if (shards[s].size() != out.size()) {
            throw ConfigError("shards cover different grids");
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto &other = shards[s][i];
            if (other.stats.L != out[i].stats.L || other.stats.p != out[i].stats.p ||
                other.stats.chi != out[i].stats.chi) {
                throw ConfigError("shards cover different grids");
            }
            out[i].stats.merge(other.stats);
            out[i].records.insert(out[i].records.end(), other.records.begin(),
                                  other.records.end());
        }
    }
    for (auto &pr : out) {
        std::sort(pr.records.begin(), pr.records.end(),
                  [](const RunRecord &a, const RunRecord &b) { return a.run < b.run; });
    }
    return out;
}

} // namespace xcorr
