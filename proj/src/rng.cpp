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

#include "xcorr/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t derive_key(std::uint64_t seed, const std::vector<std::uint64_t> &path) {
    std::uint64_t k = mix64(seed + kGolden);
    for (std::size_t depth = 0; depth < path.size(); ++depth) {
        // Depth enters the hash so [a, b] and [b, a] never collide trivially.
        k = mix64(k ^ mix64(path[depth] + (depth + 1) * kGolden));
    }
    return k;
}

Matrix2 normalise_phase(const Matrix2 &u) {
    for (Eigen::Index i = 0; i < 4; ++i) {
        const cplx c = u.data()[i];
        if (std::abs(c) > 1e-9) {
            return u * (std::conj(c) / std::abs(c));
        }
    }
    return u;
}

bool same_element(const Matrix2 &a, const Matrix2 &b) {
    return (a - b).cwiseAbs().maxCoeff() < 1e-9;
}

std::vector<Matrix2> clifford_group() {
    const std::array<Matrix2, 2> generators = {pauli::H(), pauli::S()};
    std::vector<Matrix2> group = {Matrix2::Identity()};
    std::deque<Matrix2> frontier = {Matrix2::Identity()};
    while (!frontier.empty()) {
        const Matrix2 g = frontier.front();
        frontier.pop_front();
        for (const auto &gen : generators) {
            const Matrix2 next = normalise_phase(gen * g);
            const bool seen = std::any_of(group.begin(), group.end(), [&](const Matrix2 &h) {
                return same_element(h, next);
            });
            if (!seen) {
                group.push_back(next);
                frontier.push_back(next);
            }
        }
    }
    return group;
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::vector<std::uint64_t> path)
    : seed_(master_seed), path_(std::move(path)), key_(derive_key(seed_, path_)) {}

RandomStream RandomStream::split(std::uint64_t tag) const {
    auto child = path_;
    child.push_back(tag);
    return RandomStream(seed_, std::move(child));
}

RandomStream::result_type RandomStream::operator()() {
    const std::uint64_t c = counter_++;
    return mix64(mix64(c * kGolden + key_) ^ key_);
}

double RandomStream::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    // Box-Muller; 1 - u keeps the logarithm finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

bool paths_disjoint(const RandomStream &a, const RandomStream &b) {
    if (a.master_seed() != b.master_seed()) {
        return true;
    }
    const auto &pa = a.path();
    const auto &pb = b.path();
    const std::size_t n = std::min(pa.size(), pb.size());
    return !std::equal(pa.begin(), pa.begin() + static_cast<std::ptrdiff_t>(n), pb.begin());
}

BasisEnsemble BasisEnsemble::make(EnsembleKind kind) {
    switch (kind) {
    case EnsembleKind::PauliBases3:
        return BasisEnsemble(kind, {pauli::H(), pauli::H() * pauli::S().adjoint(),
                                    pauli::I()});
    case EnsembleKind::SingleQubitClifford24:
        return BasisEnsemble(kind, clifford_group());
    }
    throw ConfigError("unknown ensemble kind");
}

const char *to_string(EnsembleKind kind) {
    return kind == EnsembleKind::PauliBases3 ? "pauli3" : "clifford24";
}

EnsembleKind parse_ensemble_kind(const std::string &name) {
    if (name == "pauli" || name == "pauli3") {
        return EnsembleKind::PauliBases3;
    }
    if (name == "clifford" || name == "clifford24") {
        return EnsembleKind::SingleQubitClifford24;
    }
    throw ConfigError("unknown shadow ensemble '" + name + "'");
}

Matrix sample_haar_unitary(int dim, RandomStream &stream) {
    if (dim != 2 && dim != 4) {
        throw ConfigError("Haar sampling supports dimension 2 or 4, got " +
                          std::to_string(dim));
    }
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            const double re = stream.normal();
            const double im = stream.normal();
            g(i, j) = cplx(re, im) * M_SQRT1_2;
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix &r = qr.matrixQR();
    for (int j = 0; j < dim; ++j) {
        const cplx d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : cplx(1.0);
    }
    return q;
}

Matrix sample_density_matrix(int dim, RandomStream &stream, int rank) {
    if (dim < 1) {
        throw ConfigError("density matrix dimension must be positive");
    }
    if (rank <= 0) {
        rank = dim;
    }
    Matrix g(dim, rank);
    for (int j = 0; j < rank; ++j) {
        for (int i = 0; i < dim; ++i) {
            const double re = stream.normal();
            const double im = stream.normal();
            g(i, j) = cplx(re, im);
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

BasisDraw sample_shadow_basis(const BasisEnsemble &ensemble, RandomStream &stream) {
    if (ensemble.size() == 0) {
        throw ConfigError("empty basis ensemble");
    }
    std::uniform_int_distribution<int> pick(0, ensemble.size() - 1);
    const int id = pick(stream);
    return {id, ensemble[id]};
}

double moment_check(const BasisEnsemble &ensemble, int n) {
    if (n < 1 || n > 3) {
        throw ConfigError("moment identity is only established for n = 1, 2, 3");
    }
    double factorial = 1.0;
    for (int k = 2; k <= n + 1; ++k) {
        factorial *= k;
    }
    const double c_n = 1.0 / factorial;

    std::vector<int> perm(static_cast<std::size_t>(n));
    const int tuples = 1 << n;
    const double weight = 1.0 / (2.0 * ensemble.size());
    double worst = 0.0;
    for (int ibits = 0; ibits < tuples; ++ibits) {
        for (int jbits = 0; jbits < tuples; ++jbits) {
            cplx moment = 0.0;
            for (const auto &u : ensemble.elements()) {
                const Matrix2 ud = u.adjoint();
                for (int c = 0; c < 2; ++c) {
                    cplx prod = 1.0;
                    for (int k = 0; k < n; ++k) {
                        const int i = (ibits >> k) & 1;
                        const int j = (jbits >> k) & 1;
                        prod *= ud(i, c) * std::conj(ud(j, c));
                    }
                    moment += weight * prod;
                }
            }
            std::iota(perm.begin(), perm.end(), 0);
            int matches = 0;
            do {
                bool all = true;
                for (int k = 0; k < n && all; ++k) {
                    all = ((ibits >> k) & 1) == ((jbits >> perm[static_cast<std::size_t>(k)]) & 1);
                }
                matches += all ? 1 : 0;
            } while (std::next_permutation(perm.begin(), perm.end()));
            worst = std::max(worst, std::abs(moment - c_n * matches));
        }
    }
    return worst;
}

} // namespace xcorr
