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
 * Single-qubit decoding with a classical estimate.
 *
 * The decoder V rotates the Bloch vector of rho^C onto +Z. "Success" is the
 * +Z eigenstate |0> (outcome +1), so gamma^QC = 2 <0|V rho V^dagger|0> - 1.
 */
#pragma once

#include "xcorr/density_matrix.hpp"
#include "xcorr/entropy.hpp"

namespace xcorr {

struct DecoderResult {
    double gamma_qc;
    double gamma;
    double gamma_cc;
};

/// Rotation about Bloch(rho^C) x Z by the angle between them; the identity
/// for a maximally mixed estimate and a rotation about X when the estimate
/// points along -Z.
[[nodiscard]] Matrix2 build_decoder(const DensityMatrix &rho_c);

/// |Bloch vector|, so that Tr rho^2 = (1 + gamma^2) / 2.
[[nodiscard]] double gamma(const DensityMatrix &rho);
[[nodiscard]] double gamma_qc(const DensityMatrix &rho, const Matrix2 &v);

/// 2 V^dagger |0><0| V - I, whose shadow average is gamma^QC.
[[nodiscard]] Matrix2 decoder_weight(const Matrix2 &v);

[[nodiscard]] DecoderResult decode(const DensityMatrix &rho, const DensityMatrix &rho_c);

/**
 * Exact average over z = +-1 (decoded Z outcomes of rho) of
 * -log[(1 + z gamma^CC) / 2], with gamma^CC taken from the floored estimate.
 * Equals s_qc when rho^C is diagonal in the decoded basis.
 */
[[nodiscard]] double s_qc_via_decoder(const DensityMatrix &rho, const DensityMatrix &rho_c,
                                      double floor = kDefaultFloor,
                                      FloorRule rule = FloorRule::ClampRenormalize);

} // namespace xcorr
