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

#include "xcorr/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "xcorr/error.hpp"

namespace xcorr {

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
        throw ConfigError("density matrix must be 2x2 or 4x4");
    }
    if (!is_hermitian(m_)) {
        throw ConfigError("density matrix is not Hermitian");
    }
    const cplx tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream os;
        os << "density matrix trace " << tr.real() << " differs from 1";
        throw ConfigError(os.str());
    }
    const double lowest = eigenvalues()(0);
    if (lowest < -kPsdTolerance) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << lowest;
        throw ConfigError(os.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim != 2 && dim != 4) {
        throw ConfigError("dimension must be 2 or 4");
    }
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd &psi) {
    const Eigen::VectorXcd v = psi / psi.norm();
    return DensityMatrix(v * v.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    const Matrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix DensityMatrix::clipped() const {
    const Matrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    w /= w.sum();
    Matrix out = es.eigenvectors() * w.cast<cplx>().asDiagonal() *
                 es.eigenvectors().adjoint();
    return DensityMatrix(0.5 * (out + out.adjoint()));
}

Matrix kron(const Matrix &hi, const Matrix &lo) {
    Matrix out(hi.rows() * lo.rows(), hi.cols() * lo.cols());
    for (Eigen::Index i = 0; i < hi.rows(); ++i) {
        for (Eigen::Index j = 0; j < hi.cols(); ++j) {
            out.block(i * lo.rows(), j * lo.cols(), lo.rows(), lo.cols()) =
                hi(i, j) * lo;
        }
    }
    return out;
}

Matrix partial_trace_to_site(const Matrix &m, int keep) {
    if (m.rows() != 4 || m.cols() != 4 || (keep != 0 && keep != 1)) {
        throw ConfigError("partial trace expects a 4x4 operator and site 0 or 1");
    }
    Matrix out = Matrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int t = 0; t < 2; ++t) {
                const int row = keep == 0 ? a + 2 * t : t + 2 * a;
                const int col = keep == 0 ? b + 2 * t : t + 2 * b;
                out(a, b) += m(row, col);
            }
        }
    }
    return out;
}

DensityMatrix partial_trace_to_site(const DensityMatrix &rho, int keep) {
    return DensityMatrix(partial_trace_to_site(rho.matrix(), keep));
}

Eigen::Vector3d bloch_vector(const Matrix &m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw ConfigError("Bloch vector requires a single-qubit operator");
    }
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
            (m(0, 0) - m(1, 1)).real()};
}

Matrix2 from_bloch(const Eigen::Vector3d &r) {
    return 0.5 * (pauli::I() + r.x() * pauli::X() + r.y() * pauli::Y() +
                  r.z() * pauli::Z());
}

double unitarity_error(const Matrix &u) {
    const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix &m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace pauli {
Matrix2 I() { return Matrix2::Identity(); }
Matrix2 X() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}
Matrix2 Y() {
    Matrix2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Matrix2 Z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}
Matrix2 H() {
    Matrix2 m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}
Matrix2 S() {
    Matrix2 m;
    m << 1, 0, 0, cplx(0, 1);
    return m;
}
} // namespace pauli

} // namespace xcorr
