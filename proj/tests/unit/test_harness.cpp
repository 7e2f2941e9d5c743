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
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "xcorr/error.hpp"
#include "xcorr/harness.hpp"

using namespace xcorr;

namespace {

ExperimentConfig small(int L = 6, double p = 0.2, int chi = 4) {
    ExperimentConfig c;
    c.L = L;
    c.p = p;
    c.chi = chi;
    c.runs = 40;
    c.seed = 7;
    return c;
}

bool same(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

void check_identical(const RunRecord &a, const RunRecord &b) {
    for (auto q : all_quantities()) {
        INFO(quantity_name(q));
        CHECK(same(a[q], b[q]));
    }
    REQUIRE(a.outcomes.size() == b.outcomes.size());
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        CHECK(a.outcomes[i].site == b.outcomes[i].site);
        CHECK(a.outcomes[i].outcome == b.outcomes[i].outcome);
    }
}

/// Mean of x - y over runs with its standard error.
testing::Sample paired(const std::vector<RunRecord> &recs, Quantity x, Quantity y) {
    std::vector<double> d;
    for (const auto &r : recs) {
        d.push_back(r[x] - r[y]);
    }
    return testing::summarize(d);
}

} // namespace

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(ExperimentConfig{}.validate());
    auto bad = [](auto mutate) {
        ExperimentConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), ConfigError);
    };
    bad([](ExperimentConfig &c) { c.L = 2; });
    bad([](ExperimentConfig &c) { c.L = 25; });
    bad([](ExperimentConfig &c) { c.p = 1.5; });
    bad([](ExperimentConfig &c) { c.p = std::nan(""); });
    bad([](ExperimentConfig &c) { c.chi = 0; });
    bad([](ExperimentConfig &c) { c.runs = 0; });
    bad([](ExperimentConfig &c) { c.depth_factor = 0; });
    bad([](ExperimentConfig &c) { c.floor = 0.0; });
    bad([](ExperimentConfig &c) { c.floor = 0.5; });
    bad([](ExperimentConfig &c) {
        c.probe = Probe::BoundaryPair;
        c.floor = 0.3;
    });
    bad([](ExperimentConfig &c) { c.depolarize = 0.1; });
    bad([](ExperimentConfig &c) { c.threads = 0; });
    ExperimentConfig pair;
    pair.probe = Probe::BoundaryPair;
    pair.depolarize = 0.05;
    CHECK_NOTHROW(pair.validate());
    CHECK(ExperimentConfig{}.half_layers() == 32);
}

TEST_CASE("probe names") {
    CHECK(parse_probe(to_string(Probe::BoundaryPair)) == Probe::BoundaryPair);
    CHECK(parse_probe("left") == Probe::LeftQubit);
    CHECK(parse_probe("pair") == Probe::BoundaryPair);
    CHECK_THROWS_AS((void)parse_probe("middle"), ConfigError);
}

TEST_CASE("quantity names are unique identifiers") {
    std::set<std::string> names;
    for (auto q : all_quantities()) {
        const std::string n(quantity_name(q));
        CHECK_FALSE(n.empty());
        CHECK(n.find(',') == std::string::npos);
        names.insert(n);
    }
    CHECK(names.size() == static_cast<std::size_t>(kQuantityCount));
    CHECK(quantity_name(Quantity::S_QC) == "S_QC");
}

TEST_CASE("sweep points are ordered by L, p, chi") {
    SweepConfig s;
    s.base = small();
    s.L = {4, 6};
    s.p = {0.1, 0.3};
    s.chi = {2, 8};
    const auto pts = s.points();
    REQUIRE(pts.size() == 8);
    CHECK(pts[0].L == 4);
    CHECK(pts[0].p == 0.1);
    CHECK(pts[0].chi == 2);
    CHECK(pts[1].chi == 8);
    CHECK(pts[2].p == 0.3);
    CHECK(pts[4].L == 6);
    CHECK(pts[7].runs == s.base.runs);
    s.chi = {};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    const auto one = SweepConfig::from(small());
    CHECK(one.points().size() == 1);
}

TEST_CASE("trajectories are reproducible") {
    const auto c = small();
    check_identical(run_trajectory(c, 3), run_trajectory(c, 3));
    const auto a = run_trajectory(c, 3);
    const auto b = run_trajectory(c, 4);
    CHECK(a.run == 3);
    CHECK_FALSE(a[Quantity::LOG_PROB] == b[Quantity::LOG_PROB]);
}

TEST_CASE("lock-step chi values match independent runs") {
    auto c = small(8, 0.15, 2);
    const int chis[] = {1, 2, 4, 16};
    const auto multi = run_trajectory_multi(c, chis, 5);
    REQUIRE(multi.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        c.chi = chis[k];
        check_identical(multi[k], run_trajectory(c, 5));
        CHECK(multi[k].chi == chis[k]);
    }
}

TEST_CASE("measurement record structure") {
    const auto c = small(8, 0.3, 4);
    const auto r = run_trajectory(c, 1);
    double log_prob = 0.0;
    std::set<int> final_sites;
    for (const auto &e : r.outcomes) {
        CHECK(e.site > 0);
        CHECK(e.site < c.L - 1);
        CHECK((e.outcome == 1 || e.outcome == -1));
        CHECK(e.probability > 0.0);
        CHECK(e.probability <= 1.0 + 1e-12);
        CHECK(e.step <= c.half_layers());
        log_prob += std::log(e.probability);
        if (e.step == c.half_layers()) {
            final_sites.insert(e.site);
        }
    }
    CHECK(final_sites.size() == static_cast<std::size_t>(c.L - 2));
    CHECK(r.log_prob == doctest::Approx(log_prob));
    CHECK(r[Quantity::LOG_PROB] == doctest::Approx(log_prob));
    CHECK(r.shadow.sites == std::vector<int>{0});
    CHECK(r[Quantity::DISCARDED_WEIGHT] == r.discarded_weight);
}

TEST_CASE("estimators respect their ordering in every run") {
    const auto c = small(8, 0.2, 2);
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto rec = run_trajectory(c, r);
        CHECK(rec[Quantity::S_QC] >= rec[Quantity::S] - 1e-12);
        CHECK(std::abs(rec[Quantity::GAMMA_QC]) <= rec[Quantity::GAMMA] + 1e-12);
        CHECK(rec[Quantity::S] <= std::log(2.0) + 1e-12);
        CHECK(rec[Quantity::SIGMA2_SHADOW] >= 0.0);
        // Shadow eigenvalues are {2, -1} and the weight has eigenvalues +-1.
        CHECK(std::abs(rec[Quantity::DECODER_Z]) <= 3.0 + 1e-12);
    }
}

TEST_CASE("unconstrained bond dimension reproduces the exact probe") {
    ExperimentConfig c = small(8, 0.16, 16);
    c.floor = 1e-12;
    for (std::uint64_t r = 0; r < 10; ++r) {
        const auto rec = run_trajectory(c, r);
        CHECK(rec.discarded_weight < 1e-20);
        CHECK(std::abs(rec[Quantity::S_QC] - rec[Quantity::S]) < 1e-6);
        CHECK(std::abs(rec[Quantity::S_CC] - rec[Quantity::S]) < 1e-6);
        CHECK(std::abs(rec[Quantity::GAMMA_QC] - rec[Quantity::GAMMA]) < 1e-8);
        CHECK(std::abs(rec[Quantity::GAMMA_CC] - rec[Quantity::GAMMA]) < 1e-8);
    }
}

TEST_CASE("fully measured bulk never truncates") {
    for (int chi : {1, 2}) {
        const auto c = small(8, 1.0, chi);
        for (std::uint64_t r = 0; r < 5; ++r) {
            CHECK(run_trajectory(c, r).discarded_weight < 1e-12);
        }
    }
}

TEST_CASE("shadow and decoder estimators are unbiased across runs") {
    auto c = small(6, 0.2, 2);
    c.runs = 600;
    const auto res = run_experiment(c);
    REQUIRE(res.records.size() == 600);
    for (auto q : {Quantity::S_SC, Quantity::S_SC_CRN}) {
        const auto d = paired(res.records, q, Quantity::S_QC);
        CHECK(std::abs(d.mean) < 5.0 * d.se);
    }
    const auto z = paired(res.records, Quantity::DECODER_Z, Quantity::GAMMA_QC);
    CHECK(std::abs(z.mean) < 5.0 * z.se);
}

TEST_CASE("pair probe fills the depolarized quantities") {
    auto c = small(6, 0.2, 2);
    c.probe = Probe::BoundaryPair;
    c.depolarize = 0.05;
    const auto rec = run_trajectory(c, 2);
    CHECK(rec.shadow.sites == std::vector<int>{0, 5});
    for (auto q : {Quantity::S_A_N, Quantity::S_AB_N, Quantity::S_QC_A_N, Quantity::S_QC_AB_N,
                   Quantity::S_SC_A_N, Quantity::S_SC_AB_N, Quantity::LOWER_N}) {
        INFO(quantity_name(q));
        CHECK(std::isfinite(rec[q]));
    }
    CHECK(rec[Quantity::LOWER_N] ==
          doctest::Approx(rec[Quantity::S_SC_A_N] - rec[Quantity::S_SC_AB_N]));
    CHECK(rec[Quantity::S_QC_A_N] >= rec[Quantity::S_A_N] - 1e-12);
    CHECK(rec[Quantity::S_QC_AB_N] >= rec[Quantity::S_AB_N] - 1e-12);
    CHECK(std::isfinite(rec[Quantity::S]));
}

TEST_CASE("disabled modes leave their quantities empty") {
    auto c = small();
    c.modes = {false, false, false};
    const auto rec = run_trajectory(c, 0);
    CHECK(rec.shadow.sites.empty());
    for (auto q : {Quantity::S_SC, Quantity::S_SC_CRN, Quantity::S_QC, Quantity::GAMMA_QC,
                   Quantity::DECODER_Z, Quantity::S_A_N}) {
        INFO(quantity_name(q));
        CHECK(std::isnan(rec[q]));
    }
    CHECK(std::isfinite(rec[Quantity::S]));
    CHECK(std::isfinite(rec[Quantity::S_CC]));
}

TEST_CASE("fixed circuit shares measurement locations across runs") {
    auto c = small(8, 0.3, 4);
    c.fixed_circuit = true;
    const auto a = run_trajectory(c, 0);
    const auto b = run_trajectory(c, 1);
    REQUIRE(a.outcomes.size() == b.outcomes.size());
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        CHECK(a.outcomes[i].site == b.outcomes[i].site);
        CHECK(a.outcomes[i].step == b.outcomes[i].step);
    }
}

TEST_CASE("aggregation skips NaN and merges exactly") {
    RunRecord r1;
    r1[Quantity::S] = 1.0;
    RunRecord r2;
    r2[Quantity::S] = 3.0;
    r2[Quantity::S_QC] = 5.0;
    AggregateStats a;
    a.push(r1);
    AggregateStats b;
    b.push(r2);
    a.merge(b);
    CHECK(a.runs() == 2);
    CHECK(a[Quantity::S].mean() == 2.0);
    CHECK(a[Quantity::S].variance() == 2.0);
    CHECK(a[Quantity::S_QC].count() == 1);
    CHECK(a[Quantity::GAMMA].count() == 0);
}

TEST_CASE("shards and threads reproduce the serial result") {
    SweepConfig s;
    s.base = small(6, 0.2, 2);
    s.base.runs = 24;
    s.L = {6};
    s.p = {0.1, 0.3};
    s.chi = {1, 4};
    const auto serial = run_sweep(s);
    std::vector<std::vector<PointResult>> parts;
    for (int i = 0; i < 3; ++i) {
        parts.push_back(run_sweep(s, {i, 3}));
    }
    const auto merged = merge_shards(parts);
    auto threaded_cfg = s;
    threaded_cfg.base.threads = 3;
    const auto threaded = run_sweep(threaded_cfg);
    REQUIRE(serial.size() == 4);
    REQUIRE(merged.size() == 4);
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CHECK(merged[k].stats.runs() == 24);
        REQUIRE(merged[k].records.size() == 24);
        for (std::size_t r = 0; r < 24; ++r) {
            CHECK(merged[k].records[r].run == r);
            check_identical(merged[k].records[r], serial[k].records[r]);
            check_identical(threaded[k].records[r], serial[k].records[r]);
        }
        for (auto q : all_quantities()) {
            const double a = serial[k].stats[q].mean();
            const double b = merged[k].stats[q].mean();
            CHECK((same(a, b) || std::abs(a - b) < 1e-12));
            CHECK(same(threaded[k].stats[q].mean(), a));
        }
    }
    CHECK_THROWS_AS((void)run_sweep(s, {3, 3}), ConfigError);
}
