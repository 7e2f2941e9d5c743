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


#include "xcorr/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "xcorr/entropy.hpp"
#include "xcorr/rng.hpp"
#include "xcorr/shadows.hpp"

namespace xcorr {

double shadow_oracle_deviation(int one_qubit_states, int two_qubit_states,
                               std::uint64_t seed) {
    RandomStream stream(seed, {7});
    double worst = 0.0;
    for (EnsembleKind kind : {EnsembleKind::PauliBases3, EnsembleKind::SingleQubitClifford24}) {
        const BasisEnsemble ensemble = BasisEnsemble::make(kind);
        for (int dim : {2, 4}) {
            const int count = dim == 2 ? one_qubit_states : two_qubit_states;
            for (int i = 0; i < count; ++i) {
                const DensityMatrix rho(sample_density_matrix(dim, stream));
                const Matrix avg = shadow_average_oracle(rho, ensemble);
                worst = std::max(worst, (avg - rho.matrix()).cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

double moment_oracle_deviation() {
    const BasisEnsemble ensemble = BasisEnsemble::make(EnsembleKind::SingleQubitClifford24);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        worst = std::max(worst, moment_check(ensemble, n));
    }
    return worst;
}

double variance_oracle_deviation(int pairs, std::uint64_t seed) {
    RandomStream stream(seed, {8});
    const BasisEnsemble ensemble = BasisEnsemble::make(EnsembleKind::SingleQubitClifford24);
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const DensityMatrix rho(sample_density_matrix(2, stream));
        const DensityMatrix rho_c(sample_density_matrix(2, stream));
        const LogDensity log_c = safe_log_density(rho_c);
        worst = std::max(worst, std::abs(shadow_variance(rho, log_c) -
                                         enumerated_shadow_variance(rho, log_c, ensemble)));
    }
    return worst;
}

} // namespace xcorr
