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


#include "xcorr/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

constexpr double kMixedThreshold = 1e-14;

Matrix2 rotation(const Eigen::Vector3d &axis, double angle) {
    const cplx i(0.0, 1.0);
    const Matrix2 n_sigma = axis(0) * pauli::X() + axis(1) * pauli::Y() + axis(2) * pauli::Z();
    return std::cos(angle / 2) * pauli::I() - i * std::sin(angle / 2) * n_sigma;
}

} // namespace

Matrix2 build_decoder(const DensityMatrix &rho_c) {
    if (rho_c.dim() != 2) {
        throw ConfigError("decoder requires a single-qubit estimate");
    }
    const Eigen::Vector3d r = bloch_vector(rho_c.matrix());
    const double len = r.norm();
    if (len < kMixedThreshold) {
        return pauli::I();
    }
    const Eigen::Vector3d c = r / len;
    const Eigen::Vector3d z(0.0, 0.0, 1.0);
    const Eigen::Vector3d axis = c.cross(z);
    const double s = axis.norm();
    const double angle = std::acos(std::clamp(c(2), -1.0, 1.0));
    if (s < kMixedThreshold) {
        return c(2) > 0 ? Matrix2(pauli::I()) : rotation(Eigen::Vector3d(1, 0, 0), M_PI);
    }
    return rotation(axis / s, angle);
}

double gamma(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw ConfigError("gamma is defined for a single qubit");
    }
    return bloch_vector(rho.matrix()).norm();
}

double gamma_qc(const DensityMatrix &rho, const Matrix2 &v) {
    if (rho.dim() != 2) {
        throw ConfigError("gamma_qc is defined for a single qubit");
    }
    const Matrix2 decoded = v * rho.matrix() * v.adjoint();
    return 2.0 * decoded(0, 0).real() - 1.0;
}

Matrix2 decoder_weight(const Matrix2 &v) {
    Matrix2 p0 = Matrix2::Zero();
    p0(0, 0) = 1.0;
    return 2.0 * v.adjoint() * p0 * v - Matrix2::Identity();
}

DecoderResult decode(const DensityMatrix &rho, const DensityMatrix &rho_c) {
    const Matrix2 v = build_decoder(rho_c);
    return {gamma_qc(rho, v), gamma(rho), gamma(rho_c)};
}

double s_qc_via_decoder(const DensityMatrix &rho, const DensityMatrix &rho_c, double floor,
                        FloorRule rule) {
    const LogDensity log_c = safe_log_density(rho_c, floor, rule);
    const Eigen::VectorXd &ev = log_c.eigenvalues;
    const double gamma_cc = std::abs(ev(1) - ev(0)) / ev.sum();
    const double g_qc = gamma_qc(rho, build_decoder(rho_c));
    double s = 0.0;
    for (int z : {1, -1}) {
        const double p_z = 0.5 * (1.0 + z * g_qc);
        s -= p_z * std::log(0.5 * (1.0 + z * gamma_cc));
    }
    return s;
}

} // namespace xcorr
