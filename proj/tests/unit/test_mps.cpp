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


#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "xcorr/entropy.hpp"
#include "xcorr/error.hpp"
#include "xcorr/mps.hpp"

using namespace xcorr;

namespace {

double max_bond(const MpsState &m) {
    int b = 0;
    for (int d : m.bond_dimensions()) {
        b = std::max(b, d);
    }
    return b;
}

/// Monitored brickwork evolution applied identically to both engines.
struct Lockstep {
    Statevector sv;
    MpsState mps;
    std::vector<double> mps_weights;
    std::vector<double> born;

    Lockstep(int n, int chi) : sv(Statevector::product_state(n)), mps(n, chi) {}

    void evolve(int half_layers, double p, RandomStream &rs) {
        const int n = sv.n_qubits();
        for (int h = 0; h < half_layers; ++h) {
            for (int b = h % 2; b < n - 1; b += 2) {
                const Matrix u = sample_haar_unitary(4, rs);
                sv.apply_two_qubit_gate(b, u);
                mps.apply_two_qubit_gate(b, u);
                for (int q : {b, b + 1}) {
                    if (q == 0 || q == n - 1 || rs.uniform() >= p) {
                        continue;
                    }
                    const auto o = sv.measure_born(q, rs);
                    born.push_back(o.probability);
                    mps_weights.push_back(mps.force_outcome(q, o.outcome).weight);
                }
                mps.truncate_bond(b);
            }
        }
    }
};

} // namespace

TEST_CASE("product MPS") {
    MpsState m(8, 4);
    for (int d : m.bond_dimensions()) {
        CHECK(d == 1);
    }
    CHECK(m.norm() == doctest::Approx(1.0));
    CHECK(std::abs(m.overlap(Statevector::product_state(8))) == doctest::Approx(1.0));
    CHECK(m.discarded_weight() == 0.0);
    CHECK_THROWS_AS(MpsState(8, 0), ConfigError);
}

TEST_CASE("identity gate leaves the state unchanged") {
    RandomStream rs(1);
    MpsState m(6, 64);
    auto sv = Statevector::product_state(6);
    for (int b : {0, 2, 4, 1, 3}) {
        const Matrix u = sample_haar_unitary(4, rs);
        m.apply_two_qubit_gate(b, u);
        sv.apply_two_qubit_gate(b, u);
    }
    m.apply_two_qubit_gate(2, Matrix::Identity(4, 4));
    CHECK(std::abs(std::abs(m.overlap(sv)) - 1.0) < 1e-12);
}

TEST_CASE("Bell pair creation gives middle bond dimension 2") {
    // CNOT (control site 0, target site 1) after H on site 0, as one 4x4.
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(3, 1) = cnot(2, 2) = cnot(1, 3) = 1.0;
    const Matrix u = cnot * kron(Matrix::Identity(2, 2), pauli::H());
    MpsState m(2, 8);
    m.apply_two_qubit_gate(0, u);
    CHECK(m.bond_dimension(0) == 2);
    const auto amps = m.to_amplitudes();
    CHECK(std::abs(amps[0]) == doctest::Approx(M_SQRT1_2));
    CHECK(std::abs(amps[3]) == doctest::Approx(M_SQRT1_2));
    CHECK(m.bond_entropy(0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("forcing outcomes on simple states") {
    MpsState zero(3, 4);
    const auto f = zero.force_outcome(1, 1);
    CHECK(f.weight == doctest::Approx(1.0));
    CHECK_FALSE(f.degenerate);
    CHECK(std::abs(zero.overlap(Statevector::product_state(3))) == doctest::Approx(1.0));

    // |+> on site 0 via a gate that applies H to site 0 only.
    MpsState plus(3, 4);
    plus.apply_two_qubit_gate(0, kron(Matrix::Identity(2, 2), pauli::H()));
    const auto g = plus.force_outcome(0, -1);
    CHECK(g.weight == doctest::Approx(0.5));
    CHECK(plus.norm() == doctest::Approx(1.0));
    CHECK(std::abs(plus.to_amplitudes()[1]) == doctest::Approx(1.0));
}

TEST_CASE("forcing a zero-weight outcome is flagged and keeps a valid state") {
    MpsState m(3, 4);
    const auto f = m.force_outcome(1, -1);
    CHECK(f.degenerate);
    CHECK(f.weight == kForcingFloor);
    CHECK(m.degenerate_forcings() == 1);
    CHECK(m.norm() == doctest::Approx(1.0));
}

TEST_CASE("truncation of a two-site state with Schmidt weights 0.9 and 0.1") {
    // a|00> + b|11> has Schmidt coefficients (a, b).
    Matrix u = Matrix::Zero(4, 4);
    const double a = std::sqrt(0.9);
    const double b = std::sqrt(0.1);
    u(0, 0) = a;
    u(3, 0) = b;
    u(0, 3) = -b;
    u(3, 3) = a;
    u(1, 1) = u(2, 2) = 1.0;
    MpsState m(2, 1);
    m.apply_two_qubit_gate(0, u);
    CHECK(m.bond_dimension(0) == 2);
    const double inc = m.truncate_bond(0);
    CHECK(inc == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(m.discarded_weight() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(m.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.bond_dimension(0) == 1);
    CHECK(m.truncate_bond(0) == 0.0);
}

TEST_CASE("unconstrained MPS reproduces the exact trajectory") {
    RandomStream rs(2);
    for (int n : {6, 8, 10, 12}) {
        Lockstep ls(n, 1 << (n / 2));
        ls.evolve(4 * n, 0.2, rs);
        CHECK(std::abs(ls.mps.overlap(ls.sv)) > 1.0 - 1e-9);
        CHECK(ls.mps.discarded_weight() < 1e-20);
        for (std::size_t i = 0; i < ls.born.size(); ++i) {
            CHECK(std::abs(ls.born[i] - ls.mps_weights[i]) < 1e-10);
        }
        const int pair[] = {0, n - 1};
        const int right_left[] = {n - 1, 0};
        const int left[] = {0};
        const int right[] = {n - 1};
        for (auto sites : {std::span<const int>(pair), std::span<const int>(right_left),
                           std::span<const int>(left), std::span<const int>(right)}) {
            CHECK((ls.mps.boundary_density_matrix(sites).matrix() -
                   ls.sv.reduced_density_matrix(sites).matrix())
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("random circuit at chi = 2^(L/2) discards nothing") {
    RandomStream rs(3);
    Lockstep ls(10, 32);
    ls.evolve(40, 0.0, rs);
    CHECK(ls.mps.discarded_weight() < 1e-20);
    CHECK(std::abs(ls.mps.overlap(ls.sv)) > 1.0 - 1e-9);
}

TEST_CASE("bond cap, norm, monotone discarded weight and entanglement cap") {
    RandomStream rs(4);
    for (int chi : {1, 2, 4, 8}) {
        MpsState m(10, chi);
        double last = 0.0;
        for (int h = 0; h < 40; ++h) {
            for (int b = h % 2; b < 9; b += 2) {
                m.apply_brick(b, sample_haar_unitary(4, rs), {0, 0});
                REQUIRE(m.discarded_weight() >= last);
                last = m.discarded_weight();
                REQUIRE(max_bond(m) <= chi);
            }
        }
        CHECK(std::abs(m.norm() - 1.0) < 1e-10);
        CHECK(m.bond_dimension(0) <= 2);
        for (int b = 0; b < 9; ++b) {
            CHECK(m.bond_entropy(b) <= std::log(static_cast<double>(chi)) + 1e-12);
        }
        const int pair[] = {0, 9};
        CHECK(std::abs(m.boundary_density_matrix(pair).matrix().trace().real() - 1.0) < 1e-10);
    }
}

TEST_CASE("fully measured dynamics never truncates") {
    RandomStream rs(5);
    for (int n : {6, 10}) {
        for (int chi : {2, 4}) {
            Lockstep ls(n, chi);
            ls.evolve(4 * n, 1.0, rs);
            CHECK(ls.mps.discarded_weight() < 1e-20);
            CHECK(std::abs(ls.mps.overlap(ls.sv)) > 1.0 - 1e-9);
        }
    }
}

TEST_CASE("fused brick equals gate, forcing and truncation in sequence") {
    RandomStream rs(6);
    for (int chi : {2, 3, 8}) {
        MpsState fused(8, chi);
        MpsState seq(8, chi);
        for (int h = 0; h < 24; ++h) {
            for (int b = h % 2; b < 7; b += 2) {
                const Matrix u = sample_haar_unitary(4, rs);
                std::array<int, 2> forced{0, 0};
                if (rs.uniform() < 0.3) {
                    forced[0] = rs.uniform() < 0.5 ? 1 : -1;
                }
                if (rs.uniform() < 0.3) {
                    forced[1] = rs.uniform() < 0.5 ? 1 : -1;
                }
                const auto res = fused.apply_brick(b, u, forced);
                seq.apply_two_qubit_gate(b, u);
                for (int k = 0; k < 2; ++k) {
                    if (forced[static_cast<std::size_t>(k)] != 0) {
                        const auto w = seq.force_outcome(b + k, forced[static_cast<std::size_t>(k)]);
                        CHECK(std::abs(w.weight - res.branches[static_cast<std::size_t>(k)].weight) <
                              1e-9);
                    }
                }
                const double inc = seq.truncate_bond(b);
                CHECK(std::abs(inc - res.discarded) < 1e-9);
            }
        }
        const auto a = fused.to_amplitudes();
        const auto b = seq.to_amplitudes();
        cplx ov = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            ov += std::conj(a[i]) * b[i];
        }
        CHECK(std::abs(ov) > 1.0 - 1e-9);
        CHECK(std::abs(fused.discarded_weight() - seq.discarded_weight()) < 1e-8);
    }
}

TEST_CASE("non-boundary density matrices are unsupported") {
    MpsState m(6, 4);
    const int bulk[] = {2};
    const int mixed[] = {0, 3};
    CHECK_THROWS_AS((void)m.boundary_density_matrix(bulk), ConfigError);
    CHECK_THROWS_AS((void)m.boundary_density_matrix(mixed), ConfigError);
}
