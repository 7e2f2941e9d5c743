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
 * Entropies and entropy cross-correlations of one- and two-qubit states.
 *
 * All logarithms are natural. A classical estimate rho^C enters every
 * estimator through its LogDensity, i.e. -log of rho^C after eigenvalue
 * flooring, so that near-pure estimates give large but finite weights.
 */
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xcorr/density_matrix.hpp"
#include "xcorr/shadows.hpp"
#include "xcorr/stats.hpp"

namespace xcorr {

inline constexpr double kDefaultFloor = 1e-6;

/**
 * ClampRenormalize raises eigenvalues below the floor to the floor and
 * rescales the remaining ones so the trace stays 1, repeating until no
 * rescaled eigenvalue drops below the floor. ClampOnly raises eigenvalues
 * and leaves the trace slightly above 1.
 */
enum class FloorRule { ClampRenormalize, ClampOnly };

[[nodiscard]] const char *to_string(FloorRule rule);
[[nodiscard]] FloorRule parse_floor_rule(const std::string &name);

struct LogDensity {
    Matrix neg_log;                // -log of the floored estimate
    Matrix floored;                // floored estimate
    Eigen::VectorXd eigenvalues;   // of `floored`, ascending
    Matrix eigenvectors;           // columns match `eigenvalues`
    double floor;
    FloorRule rule;

    [[nodiscard]] int dim() const { return static_cast<int>(neg_log.rows()); }
};

/// -sum lambda log lambda with 0 log 0 = 0.
[[nodiscard]] double von_neumann_entropy(const DensityMatrix &rho);
[[nodiscard]] double von_neumann_entropy(std::span<const double> eigenvalues);

/// Eigenvalues after the floor rule; input is clipped at zero first.
[[nodiscard]] std::vector<double> floor_eigenvalues(std::span<const double> eigenvalues,
                                                    double floor, FloorRule rule);

/// Throws ConfigError unless 0 < floor < 1 / dim.
[[nodiscard]] LogDensity safe_log_density(const DensityMatrix &rho_c,
                                          double floor = kDefaultFloor,
                                          FloorRule rule = FloorRule::ClampRenormalize);

/// -Tr[shadow log rho^C]; unconstrained in sign.
[[nodiscard]] double s_sc(const Matrix &shadow, const LogDensity &log_c);
/// -Tr[rho log rho^C]
[[nodiscard]] double s_qc(const DensityMatrix &rho, const LogDensity &log_c);
/// Entropy of the floored estimate (normalised to unit trace for ClampOnly).
[[nodiscard]] double s_cc(const LogDensity &log_c);
/// Tr[rho (log rho - log rho^C)] = s_qc - S(rho).
[[nodiscard]] double relative_entropy(const DensityMatrix &rho, const LogDensity &log_c);

/**
 * S^SC of AB minus S^SC of A for one run, an estimator whose mean bounds the
 * conditional entropy S_AB - S_A from above. The A shadow must come from the
 * same run and cover a subset of the AB sites.
 */
[[nodiscard]] double conditional_bound(const ShadowRecord &shadow_ab,
                                       const LogDensity &log_c_ab,
                                       const ShadowRecord &shadow_a,
                                       const LogDensity &log_c_a);

struct DoubleBoundSample {
    double s_sc_a;
    double s_sc_ab;
};

/// Lower bound E[S^SC_A] - E[S^SC_AB] and upper bound E[S^SC_A] on the
/// averaged entropy of A. Standard errors use per-run differences for the
/// lower bound. Throws ConfigError for fewer than two runs.
[[nodiscard]] std::pair<BoundEstimate, BoundEstimate> double_bound(
    std::span<const DoubleBoundSample> runs);

/// (1 - eps) m + eps Tr[m] / dim I; trace preserving for any input.
[[nodiscard]] Matrix depolarize(const Matrix &m, double eps);
[[nodiscard]] DensityMatrix depolarize(const DensityMatrix &rho, double eps);

struct RenyiBounds {
    double renyi_upper;
    double purity_lower;
};

/// Bounds on averaged Renyi entropy and n-th moment from E[S^SC]; n >= 2.
[[nodiscard]] RenyiBounds renyi_bounds(double mean_s_sc, int n);

/**
 * Variance of the single-qubit S^SC estimator for fixed (rho, rho^C) under a
 * three-design ensemble:
 *
 *   (3/2)(v_rho + v_I) + (1/2) Delta^2,
 *
 * where v_sigma is the variance of -log rho^C in state sigma and Delta the
 * difference of its means in rho and I/2. Throws ConfigError unless dim 2.
 */
[[nodiscard]] double shadow_variance(const DensityMatrix &rho, const LogDensity &log_c);

/// Exact variance of s_sc over every (basis, outcome) of the ensemble.
[[nodiscard]] double enumerated_shadow_variance(const DensityMatrix &rho,
                                                const LogDensity &log_c,
                                                const BasisEnsemble &ensemble);

/**
 * Shadow of the (floored, unit-trace) classical estimate measured with the
 * rotations of `shadow` and outcomes chosen by `u`. Passing the uniforms
 * that produced `shadow` couples the two outcome draws.
 */
[[nodiscard]] ShadowRecord classical_replica(const ShadowRecord &shadow,
                                             const LogDensity &log_c,
                                             std::span<const double> u);

/// S^SC - (-Tr[replica log rho^C]) + S^CC; throws ConfigError when the
/// replica used different rotations.
[[nodiscard]] double s_sc_variance_reduced(const ShadowRecord &shadow,
                                           const ShadowRecord &replica,
                                           const LogDensity &log_c);

/// Mean of w_r z_r; throws ConfigError for mismatched or empty input.
[[nodiscard]] double scalar_cross_correlation(std::span<const double> weights,
                                              std::span<const int> samples);

enum class WeightRule { Expectation, Sign };
/// Weight derived from the classical expectation <Z>^C.
[[nodiscard]] double cross_correlation_weight(double z_expectation, WeightRule rule);

} // namespace xcorr
