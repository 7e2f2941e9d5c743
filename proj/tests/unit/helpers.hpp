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


// Independent reference computations used as oracles by the unit tests.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "xcorr/density_matrix.hpp"
#include "xcorr/rng.hpp"

namespace testing {

using xcorr::cplx;
using xcorr::Matrix;

/// f applied to the eigenvalues of a Hermitian matrix.
inline Matrix hermitian_function(const Matrix &m, const std::function<double(double)> &f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd v = es.eigenvalues();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = f(v(i));
    }
    return es.eigenvectors() * v.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

inline double entropy_of(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        if (l > 1e-300) {
            s -= l * std::log(l);
        }
    }
    return s;
}

/// Partial trace over every qubit not in `keep`, by explicit index loops.
/// keep[0] is the least significant output bit.
inline Matrix brute_reduced(const std::vector<cplx> &psi, int n, const std::vector<int> &keep) {
    const int k = static_cast<int>(keep.size());
    const int dim = 1 << k;
    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < psi.size(); ++a) {
        for (std::size_t b = 0; b < psi.size(); ++b) {
            bool env_equal = true;
            for (int q = 0; q < n && env_equal; ++q) {
                bool kept = false;
                for (int s : keep) {
                    kept = kept || s == q;
                }
                if (!kept && (((a >> q) & 1) != ((b >> q) & 1))) {
                    env_equal = false;
                }
            }
            if (!env_equal) {
                continue;
            }
            int ia = 0;
            int ib = 0;
            for (int j = 0; j < k; ++j) {
                ia |= static_cast<int>((a >> keep[static_cast<std::size_t>(j)]) & 1) << j;
                ib |= static_cast<int>((b >> keep[static_cast<std::size_t>(j)]) & 1) << j;
            }
            rho(ia, ib) += psi[a] * std::conj(psi[b]);
        }
    }
    return rho;
}

inline xcorr::DensityMatrix random_state(int dim, xcorr::RandomStream &s, int rank = 0) {
    return xcorr::DensityMatrix(xcorr::sample_density_matrix(dim, s, rank));
}

/// Mean and standard error of a sample.
struct Sample {
    double mean = 0.0;
    double se = 0.0;
};

inline Sample summarize(const std::vector<double> &xs) {
    double m = 0.0;
    for (double x : xs) {
        m += x;
    }
    m /= static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) {
        v += (x - m) * (x - m);
    }
    v /= static_cast<double>(xs.size() - 1);
    return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

} // namespace testing
