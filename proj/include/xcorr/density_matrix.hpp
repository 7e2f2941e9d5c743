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
 * Small-matrix vocabulary shared by every module.
 *
 * Multi-qubit operators use the little-endian convention throughout: for an
 * operator on sites (a, b) the basis index is bit_a + 2 * bit_b, i.e. the
 * first listed site is the least significant bit. Kronecker products are
 * therefore written kron(M_b, M_a).
 */
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace xcorr {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/**
 * Hermitian, unit-trace, positive semidefinite matrix of one or two qubits.
 *
 * Construction validates the invariants; eigenvalues in [-1e-10, 0) are
 * accepted as round-off. Use `clipped` to obtain a copy with such
 * eigenvalues projected to zero.
 */
class DensityMatrix {
  public:
    /// Throws ConfigError when `m` violates any invariant.
    explicit DensityMatrix(Matrix m);

    /// Maximally mixed state of the given dimension (2 or 4).
    static DensityMatrix maximally_mixed(int dim);
    /// Projector onto a normalised state vector.
    static DensityMatrix pure(const Eigen::VectorXcd &psi);

    [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
    [[nodiscard]] const Matrix &matrix() const { return m_; }

    /// Sorted ascending.
    [[nodiscard]] Eigen::VectorXd eigenvalues() const;
    [[nodiscard]] double purity() const;
    /// Copy with negative round-off eigenvalues set to zero and trace restored.
    [[nodiscard]] DensityMatrix clipped() const;

  private:
    Matrix m_;
};

/// Kronecker product kron(hi, lo); `lo` becomes the least significant factor.
[[nodiscard]] Matrix kron(const Matrix &hi, const Matrix &lo);

/// Reduce a two-qubit operator to one of its sites (0 = least significant).
[[nodiscard]] Matrix partial_trace_to_site(const Matrix &two_qubit, int keep);
[[nodiscard]] DensityMatrix partial_trace_to_site(const DensityMatrix &rho,
                                                  int keep);

/// Bloch vector (x, y, z) of a single-qubit operator with unit trace.
[[nodiscard]] Eigen::Vector3d bloch_vector(const Matrix &m);
/// (I + r . sigma) / 2
[[nodiscard]] Matrix2 from_bloch(const Eigen::Vector3d &r);

[[nodiscard]] double unitarity_error(const Matrix &u);
[[nodiscard]] bool is_hermitian(const Matrix &m, double tol = kHermitianTolerance);

namespace pauli {
[[nodiscard]] Matrix2 I();
[[nodiscard]] Matrix2 X();
[[nodiscard]] Matrix2 Y();
[[nodiscard]] Matrix2 Z();
[[nodiscard]] Matrix2 H();
[[nodiscard]] Matrix2 S();
} // namespace pauli

} // namespace xcorr
