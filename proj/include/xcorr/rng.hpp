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
 * Deterministic, path-addressed random streams and the random matrix
 * ensembles drawn from them.
 *
 * A stream is identified by (master seed, path). Its key is a keyed hash of
 * that pair and its n-th output is a hash of (key, n), so any stream can be
 * reconstructed on any worker without shared state.
 */
#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "xcorr/density_matrix.hpp"

namespace xcorr {

/// Tags placed in stream paths so that no two consumers share a stream.
enum class StreamPurpose : std::uint64_t {
    Gates = 1,
    MeasureChoice = 2,
    Born = 3,
    ShadowBasis = 4,
    ShadowOutcome = 5,
};

class RandomStream {
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t master_seed,
                          std::vector<std::uint64_t> path = {});

    /// Child stream whose path is this path extended by `tag`; starts at
    /// counter zero regardless of how far this stream has advanced.
    [[nodiscard]] RandomStream split(std::uint64_t tag) const;
    [[nodiscard]] RandomStream split(StreamPurpose purpose) const {
        return split(static_cast<std::uint64_t>(purpose));
    }

    result_type operator()();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double normal();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    [[nodiscard]] std::uint64_t master_seed() const { return seed_; }
    [[nodiscard]] const std::vector<std::uint64_t> &path() const { return path_; }
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// True when neither path is a prefix of the other, so the two streams can
/// never be derived from one another.
[[nodiscard]] bool paths_disjoint(const RandomStream &a, const RandomStream &b);

enum class EnsembleKind { PauliBases3, SingleQubitClifford24 };

/**
 * Finite set of single-qubit rotations applied before a Z measurement.
 *
 * Element U maps measurement of Z after U onto measurement along
 * U^dagger Z U. PauliBases3 holds {H, H S^dagger, I} for the X, Y and Z
 * bases (ids 0, 1, 2). Clifford24 is the single-qubit Clifford group
 * modulo global phase, each element phase-fixed so its first non-zero
 * entry is real and positive.
 */
class BasisEnsemble {
  public:
    static BasisEnsemble make(EnsembleKind kind);

    [[nodiscard]] EnsembleKind kind() const { return kind_; }
    [[nodiscard]] int size() const { return static_cast<int>(elements_.size()); }
    [[nodiscard]] const Matrix2 &operator[](int id) const { return elements_.at(id); }
    [[nodiscard]] const std::vector<Matrix2> &elements() const { return elements_; }

  private:
    BasisEnsemble(EnsembleKind kind, std::vector<Matrix2> elements)
        : kind_(kind), elements_(std::move(elements)) {}

    EnsembleKind kind_;
    std::vector<Matrix2> elements_;
};

[[nodiscard]] const char *to_string(EnsembleKind kind);
/// Accepts "pauli" / "pauli3" and "clifford" / "clifford24".
[[nodiscard]] EnsembleKind parse_ensemble_kind(const std::string &name);

/// Haar-random unitary of dimension 2 or 4 (Ginibre QR with the phases of
/// diag(R) divided out).
[[nodiscard]] Matrix sample_haar_unitary(int dim, RandomStream &stream);

/// Random density matrix G G^dagger / Tr of a dim x rank complex Ginibre
/// matrix G; rank = dim gives the Hilbert-Schmidt ensemble, rank 1 a pure
/// state.
[[nodiscard]] Matrix sample_density_matrix(int dim, RandomStream &stream, int rank = 0);

struct BasisDraw {
    int basis_id;
    Matrix2 unitary;
};

[[nodiscard]] BasisDraw sample_shadow_basis(const BasisEnsemble &ensemble,
                                            RandomStream &stream);

/**
 * Largest deviation of the ensemble's n-th moment from the Haar value,
 *
 *   E[prod_k v_{i_k} conj(v_{j_k})] = C_n sum_pi prod_k delta(i_k, j_pi(k)),
 *   C_n = 1 / (n + 1)!,
 *
 * over all index tuples, where v = U^dagger |c> is the state the shadow
 * projects onto. The reference state c is averaged over both outcomes,
 * which leaves group ensembles unchanged and makes the three Pauli bases
 * (the six stabilizer states) comparable. Valid for n in 1..3.
 */
[[nodiscard]] double moment_check(const BasisEnsemble &ensemble, int n);

} // namespace xcorr
