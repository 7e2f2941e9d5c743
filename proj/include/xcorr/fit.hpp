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
 * Scaling fits of aggregated entropies.
 *
 *   E[S](L)                       ~ A L^-alpha
 *   E[S^QC] / E[S] - 1            ~ exp(-chi / chi_QC(L))       at fixed L
 *   E[S^QC] / E[S]                 = f(chi L^-lambda),  f(x) = 1 + B exp(-x / x0)
 */
#pragma once

#include <span>
#include <vector>

namespace xcorr {

struct PowerLawFit {
    double alpha;
    double alpha_stderr;
    double prefactor;
    double prefactor_stderr;
    double residual_norm;
};

/// Least squares of log S against log L. Needs at least four sizes and
/// positive means; throws ConfigError otherwise.
[[nodiscard]] PowerLawFit fit_power_law(std::span<const double> sizes,
                                        std::span<const double> means);

struct ChiDecayFit {
    double L;
    /// Minus the slope of log(ratio - 1) against chi.
    double decay_rate;
    /// 1 / decay_rate; NaN when the rate is not positive.
    double chi_qc;
    double log_amplitude;
    int points;
    double residual_norm;
};

inline constexpr double kDefaultMinExcess = 1e-8;

/// Points with ratio - 1 <= min_excess carry no decay information and are
/// dropped; throws ConfigError when fewer than two remain.
[[nodiscard]] ChiDecayFit fit_chi_decay(double L, std::span<const double> chis,
                                        std::span<const double> ratios,
                                        double min_excess = kDefaultMinExcess);

struct CollapsePoint {
    double L;
    double chi;
    double ratio;
};

struct CollapseFit {
    double lambda;
    double B;
    double x0;
    std::vector<ChiDecayFit> per_size;
    /// Norm of log(f) - log(ratio) at the solution.
    double residual_norm;
    int evaluations;
};

inline constexpr double kFitTolerance = 1e-10;
inline constexpr int kFitMaxEvaluations = 10000;

/**
 * Staged fit: chi_QC(L) per size, lambda and x0 from log chi_QC against
 * log L, B from the intercepts; then a joint Levenberg-Marquardt refinement
 * of (log B, log x0, lambda) on log-ratio residuals. Needs at least three
 * sizes with four chi values each; throws ConfigError otherwise and
 * NumericalError when the refinement fails.
 */
[[nodiscard]] CollapseFit fit_collapse(std::span<const CollapsePoint> points,
                                       double min_excess = kDefaultMinExcess);

} // namespace xcorr
