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
 * Classical shadows of one- and two-qubit states.
 *
 * A single-qubit shadow built from rotation U and Z outcome z is
 * 3 U^dagger |z><z| U - I; it has unit trace and eigenvalues {2, -1}.
 * Two-qubit shadows are tensor products of single-qubit shadows, with the
 * first record as the least significant factor.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xcorr/density_matrix.hpp"
#include "xcorr/rng.hpp"

namespace xcorr {

inline constexpr int kMaxShadowSites = 2;

struct SiteMeasurement {
    int basis_id;
    Matrix2 unitary;
    int outcome; // +1 or -1
};

struct ShadowRecord {
    std::uint64_t run = 0;
    std::vector<int> sites;
    std::vector<SiteMeasurement> measurements;
    Matrix matrix;

    /// Shadow of the given subset of this record's sites (reconstructed from
    /// the stored rotations and outcomes).
    [[nodiscard]] ShadowRecord restricted_to(std::span<const int> subset) const;
};

[[nodiscard]] Matrix2 single_qubit_shadow(const Matrix2 &u, int z);
/// Throws ConfigError for zero or more than two records.
[[nodiscard]] Matrix multi_qubit_shadow(std::span<const SiteMeasurement> records);

/// Outcome distribution after rotating by kron(U_last, ..., U_first) and
/// measuring Z on every qubit; index j has bit k set when qubit k gave -1.
[[nodiscard]] std::vector<double> rotated_outcome_probabilities(
    const Matrix &rho, std::span<const Matrix2> unitaries);

/**
 * Outcomes sampled site by site: site k is drawn by inverse CDF on u[k] from
 * its distribution conditioned on the earlier sites (+1 when u[k] falls below
 * the conditional weight of +1). Site 0 therefore depends on u[0] only.
 */
[[nodiscard]] std::vector<int> sample_outcomes(const Matrix &rho,
                                               std::span<const Matrix2> unitaries,
                                               std::span<const double> u);

/**
 * One shadow measurement of `rho` (dimension 2^sites.size()) in the given
 * bases, with one uniform per site selecting the outcomes. A second state
 * measured with the same bases and uniforms shares the randomness.
 */
[[nodiscard]] ShadowRecord measure_shadow(const Matrix &rho, std::span<const int> sites,
                                          std::span<const BasisDraw> bases,
                                          std::span<const double> u, std::uint64_t run = 0);

[[nodiscard]] std::vector<BasisDraw> draw_bases(const BasisEnsemble &ensemble, int count,
                                                RandomStream &basis_stream);

/// Exact sum over ensemble elements and outcomes of P_U P_{z|U} rho^S(z, U).
[[nodiscard]] Matrix shadow_average_oracle(const DensityMatrix &rho,
                                           const BasisEnsemble &ensemble);

} // namespace xcorr
