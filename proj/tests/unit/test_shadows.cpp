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

#include <array>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "xcorr/error.hpp"
#include "xcorr/shadows.hpp"

using namespace xcorr;

namespace {

const BasisEnsemble &ensemble_for(int k) {
    static const BasisEnsemble pauli = BasisEnsemble::make(EnsembleKind::PauliBases3);
    static const BasisEnsemble clifford =
        BasisEnsemble::make(EnsembleKind::SingleQubitClifford24);
    return k == 0 ? pauli : clifford;
}

} // namespace

TEST_CASE("single-qubit shadow spectrum and trace") {
    const auto &ens = ensemble_for(1);
    for (int id = 0; id < ens.size(); ++id) {
        for (int z : {1, -1}) {
            const Matrix2 s = single_qubit_shadow(ens[id], z);
            CHECK(std::abs(s.trace() - cplx(1.0)) < 1e-14);
            CHECK(is_hermitian(s));
            Eigen::SelfAdjointEigenSolver<Matrix2> es(s);
            CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
            CHECK(es.eigenvalues()(1) == doctest::Approx(2.0));
        }
    }
    CHECK_THROWS_AS((void)single_qubit_shadow(Matrix2::Identity(), 0), ConfigError);
}

TEST_CASE("Z-basis shadows of the computational states") {
    const Matrix2 plus = single_qubit_shadow(Matrix2::Identity(), 1);
    CHECK(plus(0, 0).real() == doctest::Approx(2.0));
    CHECK(plus(1, 1).real() == doctest::Approx(-1.0));
    const Matrix2 minus = single_qubit_shadow(Matrix2::Identity(), -1);
    CHECK(minus(0, 0).real() == doctest::Approx(-1.0));
    CHECK(minus(1, 1).real() == doctest::Approx(2.0));
}

TEST_CASE("two-site shadow puts the first record in the low factor") {
    const auto &ens = ensemble_for(0);
    const std::vector<SiteMeasurement> recs = {{0, ens[0], 1}, {2, ens[2], -1}};
    const Matrix m = multi_qubit_shadow(recs);
    const Matrix expected = kron(single_qubit_shadow(ens[2], -1), single_qubit_shadow(ens[0], 1));
    CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(m.trace() - cplx(1.0)) < 1e-14);
    CHECK_THROWS_AS((void)multi_qubit_shadow(std::span<const SiteMeasurement>{}), ConfigError);
    const std::vector<SiteMeasurement> three(3, recs[0]);
    CHECK_THROWS_AS((void)multi_qubit_shadow(three), ConfigError);
}

TEST_CASE("exact shadow average reproduces the state") {
    RandomStream rs(11);
    for (int e = 0; e < 2; ++e) {
        for (int dim : {2, 4}) {
            for (int trial = 0; trial < 20; ++trial) {
                const auto rho = testing::random_state(dim, rs, trial % 2 == 0 ? 1 : 0);
                const Matrix avg = shadow_average_oracle(rho, ensemble_for(e));
                CHECK((avg - rho.matrix()).cwiseAbs().maxCoeff() < 1e-13);
            }
        }
    }
}

TEST_CASE("rotated outcome probabilities") {
    RandomStream rs(12);
    const auto rho = testing::random_state(4, rs);
    const std::array<Matrix2, 2> us = {pauli::H(), Matrix2::Identity()};
    const auto p = rotated_outcome_probabilities(rho.matrix(), us);
    REQUIRE(p.size() == 4);
    double total = 0.0;
    for (double x : p) {
        CHECK(x >= 0.0);
        total += x;
    }
    CHECK(total == doctest::Approx(1.0));
    const Matrix u = kron(us[1], us[0]);
    const Matrix rot = u * rho.matrix() * u.adjoint();
    for (int j = 0; j < 4; ++j) {
        CHECK(p[static_cast<std::size_t>(j)] == doctest::Approx(rot(j, j).real()));
    }
    const std::array<Matrix2, 1> one = {Matrix2::Identity()};
    CHECK_THROWS_AS((void)rotated_outcome_probabilities(rho.matrix(), one), ConfigError);
}

TEST_CASE("sampled outcome frequencies follow the Born rule") {
    RandomStream rs(13);
    const auto rho = testing::random_state(4, rs);
    const std::array<Matrix2, 2> us = {ensemble_for(1)[5], ensemble_for(1)[17]};
    const auto p = rotated_outcome_probabilities(rho.matrix(), us);
    const int n = 40000;
    std::array<int, 4> counts{};
    for (int i = 0; i < n; ++i) {
        const std::array<double, 2> u = {rs.uniform(), rs.uniform()};
        const auto z = sample_outcomes(rho.matrix(), us, u);
        counts[static_cast<std::size_t>((z[0] == -1 ? 1 : 0) | (z[1] == -1 ? 2 : 0))]++;
    }
    for (std::size_t j = 0; j < 4; ++j) {
        const double f = static_cast<double>(counts[j]) / n;
        const double sigma = std::sqrt(p[j] * (1 - p[j]) / n);
        CHECK(std::abs(f - p[j]) < 5.0 * sigma + 1e-12);
    }
}

TEST_CASE("first-site outcome depends only on the first uniform") {
    // Sampling the pair and sampling the reduced first qubit with the same
    // u[0] give the same first outcome.
    RandomStream rs(14);
    for (int trial = 0; trial < 500; ++trial) {
        const auto rho = testing::random_state(4, rs);
        const std::array<Matrix2, 2> us = {sample_haar_unitary(2, rs), sample_haar_unitary(2, rs)};
        const std::array<double, 2> u = {rs.uniform(), rs.uniform()};
        const auto pair = sample_outcomes(rho.matrix(), us, u);
        const Matrix a = partial_trace_to_site(rho.matrix(), 0);
        const std::array<Matrix2, 1> u0 = {us[0]};
        const auto single = sample_outcomes(a, u0, std::span<const double>(u).first(1));
        REQUIRE(pair[0] == single[0]);
    }
}

TEST_CASE("sampling rejects mismatched uniforms") {
    const Matrix rho = DensityMatrix::maximally_mixed(4).matrix();
    const std::array<Matrix2, 2> us = {Matrix2::Identity(), Matrix2::Identity()};
    const std::array<double, 1> u = {0.5};
    CHECK_THROWS_AS((void)sample_outcomes(rho, us, u), ConfigError);
}

TEST_CASE("empirical shadow mean converges to the state") {
    RandomStream rs(15);
    for (int e = 0; e < 2; ++e) {
        const auto rho = testing::random_state(4, rs);
        const int n = 20000;
        Matrix sum = Matrix::Zero(4, 4);
        Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(4, 4);
        const int sites[] = {0, 7};
        for (int i = 0; i < n; ++i) {
            const auto bases = draw_bases(ensemble_for(e), 2, rs);
            const std::array<double, 2> u = {rs.uniform(), rs.uniform()};
            const auto rec = measure_shadow(rho.matrix(), sites, bases, u, 3);
            sum += rec.matrix;
            sum_sq += rec.matrix.real().cwiseAbs2();
        }
        const Matrix mean = sum / n;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                // Real parts suffice for a 5 sigma entrywise check.
                const double m2 = sum_sq(r, c) / n;
                const double var = m2 - mean(r, c).real() * mean(r, c).real();
                CHECK(std::abs(mean(r, c).real() - rho.matrix()(r, c).real()) <
                      5.0 * std::sqrt(var / n) + 1e-12);
            }
        }
    }
}

TEST_CASE("shadow records keep their metadata and restrict to subsets") {
    RandomStream rs(16);
    const auto rho = testing::random_state(4, rs);
    const auto bases = draw_bases(ensemble_for(1), 2, rs);
    const int sites[] = {0, 9};
    const std::array<double, 2> u = {0.3, 0.8};
    const auto rec = measure_shadow(rho.matrix(), sites, bases, u, 42);
    CHECK(rec.run == 42);
    REQUIRE(rec.measurements.size() == 2);
    CHECK(rec.measurements[1].basis_id == bases[1].basis_id);

    const int right[] = {9};
    const auto r = rec.restricted_to(right);
    CHECK(r.sites == std::vector<int>{9});
    CHECK((r.matrix - single_qubit_shadow(bases[1].unitary, rec.measurements[1].outcome))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    const int swapped[] = {9, 0};
    const auto s = rec.restricted_to(swapped);
    CHECK((s.matrix - kron(rec.restricted_to(std::span<const int>(sites).first(1)).matrix,
                           r.matrix))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    const int absent[] = {4};
    CHECK_THROWS_AS((void)rec.restricted_to(absent), ConfigError);

    const std::array<BasisDraw, 1> short_bases = {bases[0]};
    CHECK_THROWS_AS((void)measure_shadow(rho.matrix(), sites, short_bases, u), ConfigError);
}
