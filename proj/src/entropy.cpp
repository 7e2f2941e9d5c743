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


#include "xcorr/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

Matrix from_spectrum(const Matrix &vecs, const Eigen::VectorXd &vals) {
    return vecs * vals.cast<cplx>().asDiagonal() * vecs.adjoint();
}

double trace_product_real(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ConfigError("dimension mismatch between state and classical estimate");
    }
    // Tr[a b] without forming the product.
    return (a.transpose().array() * b.array()).sum().real();
}

} // namespace

const char *to_string(FloorRule rule) {
    return rule == FloorRule::ClampOnly ? "clamp" : "clamp_renormalize";
}

FloorRule parse_floor_rule(const std::string &name) {
    if (name == "clamp_renormalize" || name == "renormalize") {
        return FloorRule::ClampRenormalize;
    }
    if (name == "clamp" || name == "clamp_only") {
        return FloorRule::ClampOnly;
    }
    throw ConfigError("unknown floor rule '" + name + "'");
}

double von_neumann_entropy(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double l : eigenvalues) {
        if (l > 0.0) {
            s -= l * std::log(l);
        }
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix &rho) {
    const Eigen::VectorXd ev = rho.eigenvalues();
    return von_neumann_entropy(std::span<const double>(ev.data(), ev.size()));
}

std::vector<double> floor_eigenvalues(std::span<const double> eigenvalues, double floor,
                                      FloorRule rule) {
    std::vector<double> out(eigenvalues.begin(), eigenvalues.end());
    for (double &l : out) {
        l = std::max(l, 0.0);
    }
    if (rule == FloorRule::ClampOnly) {
        for (double &l : out) {
            l = std::max(l, floor);
        }
        return out;
    }
    std::vector<bool> clamped(out.size(), false);
    for (std::size_t pass = 0; pass <= out.size(); ++pass) {
        bool changed = false;
        std::size_t n_clamped = 0;
        double free_sum = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (!clamped[i] && out[i] < floor) {
                clamped[i] = true;
                changed = true;
            }
            if (clamped[i]) {
                ++n_clamped;
            } else {
                free_sum += out[i];
            }
        }
        if (!changed && pass > 0) {
            break;
        }
        const double scale = (1.0 - static_cast<double>(n_clamped) * floor) / free_sum;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = clamped[i] ? floor : out[i] * scale;
        }
    }
    return out;
}

LogDensity safe_log_density(const DensityMatrix &rho_c, double floor, FloorRule rule) {
    const int dim = rho_c.dim();
    if (!(floor > 0.0) || !(floor < 1.0 / dim)) {
        throw ConfigError("eigenvalue floor must lie in (0, 1/dim)");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_c.matrix());
    const Eigen::VectorXd raw = es.eigenvalues();
    const auto fl = floor_eigenvalues(std::span<const double>(raw.data(), raw.size()), floor,
                                      rule);
    LogDensity out;
    out.eigenvalues = Eigen::Map<const Eigen::VectorXd>(fl.data(), dim);
    out.eigenvectors = es.eigenvectors();
    out.floored = from_spectrum(out.eigenvectors, out.eigenvalues);
    out.neg_log = from_spectrum(out.eigenvectors, -out.eigenvalues.array().log().matrix());
    out.floor = floor;
    out.rule = rule;
    return out;
}

double s_sc(const Matrix &shadow, const LogDensity &log_c) {
    return trace_product_real(shadow, log_c.neg_log);
}

double s_qc(const DensityMatrix &rho, const LogDensity &log_c) {
    return trace_product_real(rho.matrix(), log_c.neg_log);
}

double s_cc(const LogDensity &log_c) {
    const double tr = log_c.eigenvalues.sum();
    double s = 0.0;
    for (Eigen::Index i = 0; i < log_c.eigenvalues.size(); ++i) {
        s -= log_c.eigenvalues(i) / tr * std::log(log_c.eigenvalues(i));
    }
    return s;
}

double relative_entropy(const DensityMatrix &rho, const LogDensity &log_c) {
    return s_qc(rho, log_c) - von_neumann_entropy(rho);
}

double conditional_bound(const ShadowRecord &shadow_ab, const LogDensity &log_c_ab,
                         const ShadowRecord &shadow_a, const LogDensity &log_c_a) {
    if (shadow_ab.run != shadow_a.run) {
        throw ConfigError("conditional bound mixes shadows from runs " +
                          std::to_string(shadow_ab.run) + " and " +
                          std::to_string(shadow_a.run));
    }
    for (int s : shadow_a.sites) {
        if (std::find(shadow_ab.sites.begin(), shadow_ab.sites.end(), s) ==
            shadow_ab.sites.end()) {
            throw ConfigError("subsystem A is not contained in AB");
        }
    }
    return s_sc(shadow_ab.matrix, log_c_ab) - s_sc(shadow_a.matrix, log_c_a);
}

std::pair<BoundEstimate, BoundEstimate> double_bound(std::span<const DoubleBoundSample> runs) {
    if (runs.size() < 2) {
        throw ConfigError("double bound needs at least two runs");
    }
    RunningStats lower;
    RunningStats upper;
    for (const auto &r : runs) {
        lower.push(r.s_sc_a - r.s_sc_ab);
        upper.push(r.s_sc_a);
    }
    return {BoundEstimate::from(BoundKind::Lower, lower),
            BoundEstimate::from(BoundKind::Upper, upper)};
}

Matrix depolarize(const Matrix &m, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw ConfigError("depolarizing strength must lie in [0, 1]");
    }
    const auto dim = m.rows();
    return (1.0 - eps) * m +
           (eps * m.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
}

DensityMatrix depolarize(const DensityMatrix &rho, double eps) {
    return DensityMatrix(depolarize(rho.matrix(), eps));
}

RenyiBounds renyi_bounds(double mean_s_sc, int n) {
    if (n < 2) {
        throw ConfigError("Renyi index must be at least 2");
    }
    return {mean_s_sc, std::exp(-static_cast<double>(n - 1) * mean_s_sc)};
}

double shadow_variance(const DensityMatrix &rho, const LogDensity &log_c) {
    if (rho.dim() != 2 || log_c.dim() != 2) {
        throw ConfigError("shadow variance formula is defined for a single qubit");
    }
    const Matrix &l = log_c.neg_log;
    const Matrix l2 = l * l;
    const Matrix half = 0.5 * Matrix::Identity(2, 2);
    const double mean_rho = trace_product_real(rho.matrix(), l);
    const double mean_id = trace_product_real(half, l);
    const double v_rho = trace_product_real(rho.matrix(), l2) - mean_rho * mean_rho;
    const double v_id = trace_product_real(half, l2) - mean_id * mean_id;
    const double delta = mean_rho - mean_id;
    return 1.5 * (v_rho + v_id) + 0.5 * delta * delta;
}

double enumerated_shadow_variance(const DensityMatrix &rho, const LogDensity &log_c,
                                  const BasisEnsemble &ensemble) {
    if (rho.dim() != 2) {
        throw ConfigError("enumerated shadow variance is implemented for a single qubit");
    }
    const double mean = s_qc(rho, log_c);
    const double p_u = 1.0 / ensemble.size();
    double var = 0.0;
    for (const auto &u : ensemble.elements()) {
        const Matrix2 single = u;
        const auto probs =
            rotated_outcome_probabilities(rho.matrix(), std::span<const Matrix2>(&single, 1));
        for (int j = 0; j < 2; ++j) {
            const double x = s_sc(single_qubit_shadow(u, j == 0 ? 1 : -1), log_c) - mean;
            var += p_u * probs[static_cast<std::size_t>(j)] * x * x;
        }
    }
    return var;
}

ShadowRecord classical_replica(const ShadowRecord &shadow, const LogDensity &log_c,
                               std::span<const double> u) {
    std::vector<BasisDraw> bases;
    for (const auto &m : shadow.measurements) {
        bases.push_back({m.basis_id, m.unitary});
    }
    const Matrix rho_c = log_c.floored / log_c.floored.trace().real();
    return measure_shadow(rho_c, shadow.sites, bases, u, shadow.run);
}

double s_sc_variance_reduced(const ShadowRecord &shadow, const ShadowRecord &replica,
                             const LogDensity &log_c) {
    if (shadow.measurements.size() != replica.measurements.size()) {
        throw ConfigError("replica shadow covers a different number of sites");
    }
    for (std::size_t k = 0; k < shadow.measurements.size(); ++k) {
        const auto &a = shadow.measurements[k];
        const auto &b = replica.measurements[k];
        if (a.basis_id != b.basis_id || (a.unitary - b.unitary).norm() > 1e-12) {
            throw ConfigError("replica shadow was measured with a different rotation");
        }
    }
    return s_sc(shadow.matrix, log_c) - s_sc(replica.matrix, log_c) + s_cc(log_c);
}

double scalar_cross_correlation(std::span<const double> weights,
                                std::span<const int> samples) {
    if (weights.size() != samples.size() || weights.empty()) {
        throw ConfigError("weights and samples must be non-empty and of equal length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i] * samples[i];
    }
    return acc / static_cast<double>(weights.size());
}

double cross_correlation_weight(double z_expectation, WeightRule rule) {
    if (rule == WeightRule::Expectation) {
        return z_expectation;
    }
    return z_expectation > 0.0 ? 1.0 : (z_expectation < 0.0 ? -1.0 : 0.0);
}

} // namespace xcorr
