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
 * Self-checks by exhaustive enumeration, shared by the CLI and C API.
 * Each returns the largest deviation found.
 */
#pragma once

#include <cstdint>

namespace xcorr {

/// |E[shadow] - rho| (max-abs entry) over random one- and two-qubit states,
/// for both basis ensembles.
[[nodiscard]] double shadow_oracle_deviation(int one_qubit_states = 50,
                                             int two_qubit_states = 20,
                                             std::uint64_t seed = 1);

/// Largest Clifford24 moment deviation for n = 1, 2, 3.
[[nodiscard]] double moment_oracle_deviation();

/// |closed-form variance - enumerated variance| over random single-qubit
/// (rho, rho^C) pairs and the Clifford24 ensemble.
[[nodiscard]] double variance_oracle_deviation(int pairs = 100, std::uint64_t seed = 1);

} // namespace xcorr
