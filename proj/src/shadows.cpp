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

#include "xcorr/shadows.hpp"

#include <algorithm>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

Matrix joint_rotation(std::span<const Matrix2> unitaries) {
    Matrix u = Matrix::Ones(1, 1);
    for (const auto &ui : unitaries) {
        u = kron(ui, u);
    }
    return u;
}

} // namespace

Matrix2 single_qubit_shadow(const Matrix2 &u, int z) {
    if (z != 1 && z != -1) {
        throw ConfigError("shadow outcome must be +1 or -1");
    }
    Eigen::Vector2cd ket = Eigen::Vector2cd::Zero();
    ket(z == 1 ? 0 : 1) = 1.0;
    const Eigen::Vector2cd v = u.adjoint() * ket;
    return 3.0 * v * v.adjoint() - Matrix2::Identity();
}

Matrix multi_qubit_shadow(std::span<const SiteMeasurement> records) {
    if (records.empty() || records.size() > static_cast<std::size_t>(kMaxShadowSites)) {
        throw ConfigError("shadows are supported on one or two sites");
    }
    Matrix out = Matrix::Ones(1, 1);
    for (const auto &r : records) {
        out = kron(single_qubit_shadow(r.unitary, r.outcome), out);
    }
    return out;
}

std::vector<double> rotated_outcome_probabilities(const Matrix &rho,
                                                  std::span<const Matrix2> unitaries) {
    const Matrix u = joint_rotation(unitaries);
    if (u.rows() != rho.rows()) {
        throw ConfigError("rotation and state dimensions differ");
    }
    const Matrix rotated = u * rho * u.adjoint();
    std::vector<double> p(static_cast<std::size_t>(rotated.rows()));
    for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
        p[static_cast<std::size_t>(i)] = std::max(0.0, rotated(i, i).real());
    }
    return p;
}

std::vector<int> sample_outcomes(const Matrix &rho, std::span<const Matrix2> unitaries,
                                 std::span<const double> u) {
    if (u.size() != unitaries.size()) {
        throw ConfigError("one uniform per measured site is required");
    }
    const auto p = rotated_outcome_probabilities(rho, unitaries);
    std::vector<int> z(unitaries.size());
    std::size_t prefix = 0; // bits of the sites sampled so far
    for (std::size_t k = 0; k < unitaries.size(); ++k) {
        double w[2] = {0.0, 0.0};
        const std::size_t low_mask = (std::size_t{1} << k) - 1;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if ((j & low_mask) == prefix) {
                w[(j >> k) & 1] += p[j];
            }
        }
        const double total = w[0] + w[1];
        if (!(total > 0.0)) {
            throw NumericalError("shadow outcome distribution has no weight");
        }
        const std::size_t bit = (u[k] * total < w[0] || w[1] <= 0.0) ? 0 : 1;
        z[k] = bit == 0 ? 1 : -1;
        prefix |= bit << k;
    }
    return z;
}

ShadowRecord measure_shadow(const Matrix &rho, std::span<const int> sites,
                            std::span<const BasisDraw> bases, std::span<const double> u,
                            std::uint64_t run) {
    if (sites.size() != bases.size()) {
        throw ConfigError("one basis draw per shadow site is required");
    }
    std::vector<Matrix2> us;
    for (const auto &b : bases) {
        us.push_back(b.unitary);
    }
    const auto z = sample_outcomes(rho, us, u);
    ShadowRecord rec;
    rec.run = run;
    rec.sites.assign(sites.begin(), sites.end());
    for (std::size_t k = 0; k < bases.size(); ++k) {
        rec.measurements.push_back({bases[k].basis_id, bases[k].unitary, z[k]});
    }
    rec.matrix = multi_qubit_shadow(rec.measurements);
    return rec;
}

std::vector<BasisDraw> draw_bases(const BasisEnsemble &ensemble, int count,
                                  RandomStream &basis_stream) {
    std::vector<BasisDraw> out;
    for (int k = 0; k < count; ++k) {
        out.push_back(sample_shadow_basis(ensemble, basis_stream));
    }
    return out;
}

ShadowRecord ShadowRecord::restricted_to(std::span<const int> subset) const {
    ShadowRecord out;
    out.run = run;
    for (int s : subset) {
        const auto it = std::find(sites.begin(), sites.end(), s);
        if (it == sites.end()) {
            throw ConfigError("site " + std::to_string(s) + " is not part of this shadow");
        }
        out.sites.push_back(s);
        out.measurements.push_back(
            measurements[static_cast<std::size_t>(it - sites.begin())]);
    }
    out.matrix = multi_qubit_shadow(out.measurements);
    return out;
}

Matrix shadow_average_oracle(const DensityMatrix &rho, const BasisEnsemble &ensemble) {
    const int n_sites = rho.dim() == 2 ? 1 : 2;
    const int n_basis = ensemble.size();
    const int combos = n_sites == 1 ? n_basis : n_basis * n_basis;
    const double p_u = 1.0 / combos;
    Matrix avg = Matrix::Zero(rho.dim(), rho.dim());
    for (int c = 0; c < combos; ++c) {
        std::vector<Matrix2> us;
        std::vector<int> ids;
        int rest = c;
        for (int k = 0; k < n_sites; ++k) {
            ids.push_back(rest % n_basis);
            us.push_back(ensemble[rest % n_basis]);
            rest /= n_basis;
        }
        const auto probs = rotated_outcome_probabilities(rho.matrix(), us);
        for (std::size_t j = 0; j < probs.size(); ++j) {
            std::vector<SiteMeasurement> recs;
            for (int k = 0; k < n_sites; ++k) {
                recs.push_back({ids[static_cast<std::size_t>(k)],
                                us[static_cast<std::size_t>(k)], ((j >> k) & 1) ? -1 : 1});
            }
            avg += p_u * probs[j] * multi_qubit_shadow(recs);
        }
    }
    return avg;
}

} // namespace xcorr
