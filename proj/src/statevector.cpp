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

#include "xcorr/statevector.hpp"

#include <cmath>
#include <sstream>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

constexpr double kUnitarityTolerance = 1e-8;

// Insert a zero bit at position `pos` of `k`.
inline std::size_t insert_zero(std::size_t k, int pos) {
    const std::size_t low = k & ((std::size_t{1} << pos) - 1);
    return ((k >> pos) << (pos + 1)) | low;
}

} // namespace

void MeasurementRecord::append(const MeasurementEvent &e) {
    events.push_back(e);
    log_prob += std::log(e.probability);
}

Statevector Statevector::product_state(int n_qubits) {
    if (n_qubits < 2 || n_qubits > kMaxStatevectorQubits) {
        throw ConfigError("statevector supports 2..24 qubits, got " +
                          std::to_string(n_qubits));
    }
    Statevector s;
    s.n_ = n_qubits;
    s.amps_.assign(std::size_t{1} << n_qubits, cplx(0.0));
    s.amps_[0] = 1.0;
    return s;
}

Statevector::Statevector(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1 || n_qubits > kMaxStatevectorQubits) {
        throw ConfigError("statevector supports at most 24 qubits");
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw ConfigError("amplitude vector length must be 2^n");
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw ConfigError("amplitude vector is not normalised");
    }
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void Statevector::check_site(int site) const {
    if (site < 0 || site >= n_) {
        throw ConfigError("site " + std::to_string(site) + " outside chain of " +
                          std::to_string(n_));
    }
}

void Statevector::apply_two_qubit_gate(int site, const Matrix &u) {
    if (site < 0 || site > n_ - 2) {
        throw ConfigError("two-qubit gate site " + std::to_string(site) + " out of range");
    }
    if (u.rows() != 4 || u.cols() != 4 || unitarity_error(u) > kUnitarityTolerance) {
        throw ConfigError("two-qubit gate is not a 4x4 unitary");
    }
    const Matrix4 g = u;
    const std::size_t stride = std::size_t{1} << site;
    const std::size_t groups = amps_.size() >> 2;
    for (std::size_t k = 0; k < groups; ++k) {
        const std::size_t base = insert_zero(insert_zero(k, site), site + 1);
        const std::size_t idx[4] = {base, base + stride, base + 2 * stride,
                                    base + 3 * stride};
        const cplx in[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            amps_[idx[r]] = g(r, 0) * in[0] + g(r, 1) * in[1] + g(r, 2) * in[2] +
                            g(r, 3) * in[3];
        }
    }
}

void Statevector::apply_single_qubit_gate(int site, const Matrix &u) {
    check_site(site);
    if (u.rows() != 2 || u.cols() != 2 || unitarity_error(u) > kUnitarityTolerance) {
        throw ConfigError("single-qubit gate is not a 2x2 unitary");
    }
    const std::size_t stride = std::size_t{1} << site;
    for (std::size_t k = 0; k < amps_.size() / 2; ++k) {
        const std::size_t i0 = insert_zero(k, site);
        const cplx a = amps_[i0];
        const cplx b = amps_[i0 + stride];
        amps_[i0] = u(0, 0) * a + u(0, 1) * b;
        amps_[i0 + stride] = u(1, 0) * a + u(1, 1) * b;
    }
}

double Statevector::outcome_probability(int site, int outcome) const {
    check_site(site);
    const std::size_t bit = outcome == 1 ? 0 : 1;
    const std::size_t stride = std::size_t{1} << site;
    double p = 0.0;
    for (std::size_t k = 0; k < amps_.size() / 2; ++k) {
        p += std::norm(amps_[insert_zero(k, site) + bit * stride]);
    }
    return p;
}

double Statevector::project(int site, int outcome) {
    check_site(site);
    if (outcome != 1 && outcome != -1) {
        throw ConfigError("measurement outcome must be +1 or -1");
    }
    const double p = outcome_probability(site, outcome);
    if (p <= 0.0) {
        throw NumericalError("projection onto a zero-probability outcome");
    }
    const std::size_t keep = outcome == 1 ? 0 : 1;
    const std::size_t stride = std::size_t{1} << site;
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t k = 0; k < amps_.size() / 2; ++k) {
        const std::size_t i0 = insert_zero(k, site);
        amps_[i0 + keep * stride] *= scale;
        amps_[i0 + (1 - keep) * stride] = 0.0;
    }
    return p;
}

BornOutcome Statevector::measure_born(int site, double u) {
    const double p_plus = outcome_probability(site, 1);
    const double p_minus = outcome_probability(site, -1);
    if (p_plus < kBornCorruptionFloor && p_minus < kBornCorruptionFloor) {
        std::ostringstream os;
        os << "both Born branches vanish on site " << site << " (state norm "
           << norm() << ")";
        throw NumericalError(os.str());
    }
    // Renormalise the branch weights so accumulated drift cannot bias sampling.
    const double total = p_plus + p_minus;
    const int outcome = u * total < p_plus ? 1 : -1;
    const double prob = (outcome == 1 ? p_plus : p_minus) / total;
    project(site, outcome);
    return {outcome, prob};
}

BornOutcome Statevector::measure_born(int site, RandomStream &stream) {
    return measure_born(site, stream.uniform());
}

BornOutcome Statevector::measure_born(int site, RandomStream &stream,
                                      MeasurementRecord &record, int step) {
    const BornOutcome b = measure_born(site, stream);
    record.append({step, site, b.outcome, b.probability});
    return b;
}

DensityMatrix Statevector::reduced_density_matrix(std::span<const int> sites) const {
    if (sites.empty() || sites.size() > 2) {
        throw ConfigError("reduced density matrix supports one or two sites");
    }
    for (int s : sites) {
        check_site(s);
    }
    if (sites.size() == 2 && sites[0] == sites[1]) {
        throw ConfigError("duplicate sites in reduced density matrix request");
    }
    const int k = static_cast<int>(sites.size());
    const int dim = 1 << k;
    std::size_t mask = 0;
    for (int s : sites) {
        mask |= std::size_t{1} << s;
    }
    auto with_local = [&](std::size_t idx, int v) {
        std::size_t out = idx & ~mask;
        for (int j = 0; j < k; ++j) {
            out |= static_cast<std::size_t>((v >> j) & 1) << sites[static_cast<std::size_t>(j)];
        }
        return out;
    };
    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        if ((idx & mask) != 0) {
            continue;
        }
        for (int a = 0; a < dim; ++a) {
            const cplx amp_a = amps_[with_local(idx, a)];
            if (amp_a == cplx(0.0)) {
                continue;
            }
            for (int b = 0; b < dim; ++b) {
                rho(a, b) += amp_a * std::conj(amps_[with_local(idx, b)]);
            }
        }
    }
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

} // namespace xcorr
