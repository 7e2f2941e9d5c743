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
 * Open-boundary matrix product state with a bond-dimension cap.
 *
 * Site i holds two matrices A_i[s] (s = 0 for outcome +1, s = 1 for -1) of
 * shape (left bond) x (right bond); the amplitude of a basis string is
 * A_0[s_0] A_1[s_1] ... A_{L-1}[s_{L-1}]. Gate and index conventions match
 * Statevector. The state is kept in mixed-canonical form: sites left of
 * `center()` are left-orthonormal and sites right of it right-orthonormal,
 * so the norm is the Frobenius norm of the center tensor.
 *
 * Two-site decompositions diagonalise the smaller Gram matrix of the merged
 * two-site tensor; the kept eigenvectors are the dominant singular vectors
 * and the other factor is recovered by projection, so an untruncated split
 * reproduces the merged tensor exactly.
 */
#pragma once

#include <array>
#include <span>
#include <vector>

#include "xcorr/density_matrix.hpp"
#include "xcorr/statevector.hpp"

namespace xcorr {

inline constexpr double kForcingFloor = 1e-12;

struct ForcedBranch {
    /// Relative squared norm of the forced branch; clamped at the floor.
    double weight;
    bool degenerate;
};

/// Outcome of a fused gate / forced-measurement / truncation step.
struct BrickResult {
    std::array<ForcedBranch, 2> branches{};
    double discarded = 0.0;
};

class MpsState {
  public:
    /// |0...0> with every bond of dimension one.
    MpsState(int n_qubits, int max_bond);

    [[nodiscard]] int n_qubits() const { return static_cast<int>(tensors_.size()); }
    [[nodiscard]] int max_bond() const { return max_bond_; }
    /// Dimension of the bond between `bond` and `bond + 1`.
    [[nodiscard]] int bond_dimension(int bond) const;
    [[nodiscard]] std::vector<int> bond_dimensions() const;
    [[nodiscard]] int center() const { return center_; }
    [[nodiscard]] double discarded_weight() const { return discarded_; }
    [[nodiscard]] int degenerate_forcings() const { return degenerate_; }
    [[nodiscard]] double norm() const;

    /// Contracts U into sites (site, site + 1) and splits without truncation,
    /// so the bond can grow to 4 chi.
    void apply_two_qubit_gate(int site, const Matrix &u);

    /// Applies the projector for `outcome` and renormalises. A branch weight
    /// below `floor` is reported as `floor` with the degenerate flag set.
    ForcedBranch force_outcome(int site, int outcome, double floor = kForcingFloor);

    /// Keeps the top max_bond() Schmidt values of `bond`, adds the discarded
    /// squared weight to discarded_weight() and renormalises. Returns the
    /// increment; bonds already within the cap are left untouched.
    double truncate_bond(int bond);

    /**
     * Gate on (site, site + 1), forced outcomes on either site (0 = leave
     * unmeasured), then truncation of the bond, all on one merged tensor.
     * Equivalent to apply_two_qubit_gate, force_outcome and truncate_bond in
     * sequence.
     */
    BrickResult apply_brick(int site, const Matrix &u, std::array<int, 2> forced,
                            double floor = kForcingFloor);

    /// Reduced state of boundary sites: {0}, {L-1}, {0, L-1} or {L-1, 0}.
    [[nodiscard]] DensityMatrix boundary_density_matrix(std::span<const int> sites) const;

    /// Schmidt coefficients across `bond`, descending. Moves the center.
    std::vector<double> schmidt_values(int bond);
    /// Von Neumann entropy (natural log) across `bond`. Moves the center.
    double bond_entropy(int bond);

    /// Dense amplitudes in Statevector layout; intended for L <= 20.
    [[nodiscard]] std::vector<cplx> to_amplitudes() const;
    /// <this|other>
    [[nodiscard]] cplx overlap(const Statevector &other) const;

    void move_center_to(int site);

  private:
    using SiteTensor = std::array<Matrix, 2>;

    void shift_right(int site);
    void shift_left(int site);
    [[nodiscard]] Matrix merged(int site) const;
    /// Splits a merged tensor back into (site, site + 1) keeping at most
    /// `cap` singular vectors. Returns the discarded relative weight.
    double split(int site, const Matrix &theta, int cap);
    void check_site(int site) const;

    std::vector<SiteTensor> tensors_;
    int max_bond_;
    int center_ = 0;
    double discarded_ = 0.0;
    int degenerate_ = 0;
};

} // namespace xcorr
