// Copyright 2026 The hhlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.h"

#include "hhlab/errors.h"
#include "hhlab/inversion/inversion.h"
#include "hhlab/sim/simulator.h"

using namespace hhlab;
using namespace hhlab::inversion;
using preprocess::EigenEstimateSet;

namespace {

// Estimate set on the l-bit grid of t0 holding the given (grid value, weight) pairs.
EigenEstimateSet make_set(size_t bits, double t0, bool sgn, std::vector<std::pair<int64_t, double>> values) {
    ClockGrid grid{bits, t0, sgn};
    EigenEstimateSet s{bits, t0, sgn, {}};
    for (auto [g, w] : values) {
        s.entries.push_back({grid.encode(g), grid.value(grid.encode(g)), w});
    }
    return s;
}

}  // namespace

TEST_SUITE("inversion") {

TEST_CASE("inversion amplitude") {
    CHECK(inversion_amplitude(0.25, 0.25) == 1);
    CHECK(inversion_amplitude(0.5, 0.25) == 0.5);
    CHECK(inversion_amplitude(0.1, 0.25) == 0);
    CHECK(inversion_amplitude(-0.5, 0.25) == -0.5);
    CHECK_THROWS_AS(inversion_amplitude(1, 0), InvalidArgument);
}

TEST_CASE("alpha overlap") {
    CHECK(alpha_overlap(0, AlphaMode::Linear, 8) == 1);
    CHECK(alpha_overlap(kPi, AlphaMode::Linear, 8) == 0.5);
    CHECK(alpha_overlap(kTwoPi, AlphaMode::Linear, 8) == 0);
    CHECK(alpha_overlap(3 * kPi, AlphaMode::Linear, 8) == 0);
    CHECK(alpha_overlap(0, AlphaMode::Exact, 8) == doctest::Approx(1));
    CHECK_THROWS_AS(alpha_overlap(-1, AlphaMode::Linear, 8), InvalidArgument);

    // The singular point is filled by its limit, continuously.
    for (uint64_t t : {2, 8, 32}) {
        double at = alpha_overlap(kPi, AlphaMode::Exact, t);
        CHECK(std::isfinite(at));
        CHECK(std::abs(alpha_overlap(kPi - 1e-6, AlphaMode::Exact, t) - at) < 1e-5);
        CHECK(std::abs(alpha_overlap(kPi + 1e-6, AlphaMode::Exact, t) - at) < 1e-5);
    }
    // Expanding both factors around the singular point: the ratio tends to
    // (T^2 / pi) / (4 T^2 / pi^2) = pi / 4 for large T.
    CHECK(alpha_overlap(kPi, AlphaMode::Exact, 1024) == doctest::Approx(kPi / 4).epsilon(1e-4));
}

TEST_CASE("property: exact alpha is bounded and decreasing on the first lobe") {
    for (uint64_t t : {4, 8, 16}) {
        double prev = 1;
        for (int i = 0; i <= 200; i++) {
            double d = kTwoPi * i / 200;
            double a = alpha_overlap(d, AlphaMode::Exact, t);
            CHECK(a >= 0);
            CHECK(a <= 1);
            CHECK(a <= prev + 1e-12);
            prev = a;
        }
    }
}

TEST_CASE("mean square difference between linear and exact alpha") {
    double msd = 0;
    int n = 1000;
    for (int i = 0; i < n; i++) {
        double d = kTwoPi * (i + 0.5) / n;
        double diff = alpha_overlap(d, AlphaMode::Linear, 8) - alpha_overlap(d, AlphaMode::Exact, 8);
        msd += diff * diff / n;
    }
    MESSAGE("linear vs exact alpha mean square difference on [0, 2pi], T=8: " << msd);
    CHECK(std::isfinite(msd));
    CHECK(msd < 0.25);
}

TEST_CASE("canonical plan") {
    auto plan = plan_canonical(3, 14 * kPi, false);
    REQUIRE(plan.rotations.size() == 7);
    CHECK(plan.constant_c == doctest::Approx(1.0 / 7));
    CHECK(*plan.angle_of(1) == doctest::Approx(kPi));
    CHECK(*plan.angle_of(2) == doctest::Approx(kPi / 3));
    CHECK(*plan.angle_of(7) == doctest::Approx(2 * std::asin(1.0 / 7)));
    CHECK(!plan.angle_of(0));

    auto sgn = plan_canonical(3, 6 * kPi, true);
    CHECK(sgn.rotations.size() == 7);
    CHECK(*sgn.angle_of(7) == doctest::Approx(-kPi));
    CHECK(*sgn.angle_of(4) == doctest::Approx(2 * std::asin(-0.25)));

    auto cc = plan_canonical(3, 14 * kPi, false, 2.0 / 7);
    CHECK(*cc.angle_of(1) == 0);
    CHECK(*cc.angle_of(2) == doctest::Approx(kPi));
    CHECK_THROWS_AS(plan_canonical(0, 1, false), InvalidArgument);
    CHECK_THROWS_AS(plan_canonical(3, 0, false), InvalidArgument);
}

TEST_CASE("property: canonical angles shrink with the eigenvalue") {
    for (size_t k = 1; k <= 6; k++) {
        auto plan = plan_canonical(k, 3.7, false);
        for (size_t i = 1; i < plan.rotations.size(); i++) {
            CHECK(plan.rotations[i].angle <= plan.rotations[i - 1].angle + 1e-15);
            CHECK(plan.rotations[i].angle > 0);
        }
    }
}

TEST_CASE("hybrid plan") {
    auto est = make_set(3, 6 * kPi, true, {{1, 0.7}, {2, 0.7}});
    auto plan = plan_hybrid(est);
    REQUIRE(plan.rotations.size() == 2);
    CHECK(plan.constant_c == doctest::Approx(1.0 / 3));
    CHECK(*plan.angle_of(1) == doctest::Approx(kPi));
    CHECK(*plan.angle_of(2) == doctest::Approx(kPi / 3));

    auto single = plan_hybrid(make_set(3, 6 * kPi, true, {{2, 1}}));
    REQUIRE(single.rotations.size() == 1);
    CHECK(single.rotations[0].angle == doctest::Approx(kPi));

    // Zero and the wrapping pattern are skipped; max_rotations keeps the strongest.
    auto mixed = make_set(3, 6 * kPi, true, {{0, 0.9}, {-4, 0.8}, {3, 0.5}, {-1, 0.3}, {1, 0.2}});
    auto m = plan_hybrid(mixed);
    CHECK(m.rotations.size() == 3);
    CHECK(!m.angle_of(0));
    CHECK(!m.angle_of(4));
    CHECK(*m.angle_of(7) == doctest::Approx(-kPi));
    auto capped = plan_hybrid(mixed, 2);
    CHECK(capped.rotations.size() == 2);
    CHECK(capped.angle_of(3));
    CHECK(capped.angle_of(7));

    CHECK_THROWS_AS(plan_hybrid(make_set(3, 6 * kPi, true, {{0, 1}})), EmptyPlan);
    CHECK_THROWS_AS(plan_hybrid(EigenEstimateSet{3, 0, true, {}}), InvalidArgument);
}

TEST_CASE("enhanced plan on a grid-aligned estimate matches the hybrid support") {
    double tk = 6 * kPi;
    auto l_est = make_set(5, 4 * tk, true, {{4, 1.0}});
    for (auto policy : {AnglePolicy::LeastSquares, AnglePolicy::PaperFormula}) {
        for (auto alpha : {AlphaMode::Linear, AlphaMode::Exact}) {
            auto plan = plan_enhanced(l_est, {3, tk, {}, policy, alpha});
            REQUIRE(plan.rotations.size() == 1);
            auto hyb = plan_hybrid(make_set(3, tk, true, {{1, 1.0}}));
            CHECK(plan.rotations[0].pattern == hyb.rotations[0].pattern);
            double want = policy == AnglePolicy::LeastSquares ? kPi : kPi / 2;
            CHECK(plan.rotations[0].angle == doctest::Approx(want));
        }
    }
}

TEST_CASE("enhanced plan midway between grid points") {
    double tk = 6 * kPi;
    auto l_est = make_set(5, 4 * tk, true, {{6, 1.0}});
    for (auto policy : {AnglePolicy::LeastSquares, AnglePolicy::PaperFormula}) {
        auto plan = plan_enhanced(l_est, {3, tk, {}, policy, AlphaMode::Linear});
        REQUIRE(plan.rotations.size() == 2);
        CHECK(plan.rotations[0].pattern == 1);
        CHECK(plan.rotations[1].pattern == 2);
        CHECK(plan.rotations[0].angle == doctest::Approx(plan.rotations[1].angle));
    }
    auto exact = plan_enhanced(l_est, {3, tk, {}, AnglePolicy::LeastSquares, AlphaMode::Exact});
    CHECK(exact.rotations[0].angle == doctest::Approx(exact.rotations[1].angle));
}

TEST_CASE("enhanced least-squares angles") {
    // Two estimates feeding pattern 1 with alpha 3/4 and 1/4.
    double tk = 6 * kPi;
    auto l_est = make_set(5, 4 * tk, true, {{5, 0.8}, {7, 0.6}});
    auto plan = plan_enhanced(l_est, {3, tk, {}, AnglePolicy::LeastSquares, AlphaMode::Linear});
    double l5 = 5.0 / 12, l7 = 7.0 / 12;
    double c = l5;
    CHECK(plan.constant_c == doctest::Approx(c));
    double w5 = std::pow(0.75 * 0.8, 2), w7 = std::pow(0.25 * 0.6, 2);
    double xbar = (w5 / l5 + w7 / l7) / (w5 + w7);
    CHECK(*plan.angle_of(1) == doctest::Approx(2 * std::asin(c * xbar)));
    double w5b = std::pow(0.25 * 0.8, 2), w7b = std::pow(0.75 * 0.6, 2);
    double xbarb = (w5b / l5 + w7b / l7) / (w5b + w7b);
    CHECK(*plan.angle_of(2) == doctest::Approx(2 * std::asin(c * xbarb)));
}

TEST_CASE("enhanced paper-formula angles") {
    double tk = 6 * kPi;
    auto l_est = make_set(5, 4 * tk, true, {{5, 0.8}, {7, 0.6}});
    auto plan = plan_enhanced(l_est, {3, tk, {}, AnglePolicy::PaperFormula, AlphaMode::Linear});
    double l5 = 5.0 / 12, l7 = 7.0 / 12;
    double s1 = (0.75 * 0.8 / l5 + 0.25 * 0.6 / l7);
    double s2 = (0.25 * 0.8 / l5 + 0.75 * 0.6 / l7);
    double scale = 1 / std::max(s1, s2);
    CHECK(plan.constant_c == doctest::Approx(scale));
    CHECK(*plan.angle_of(1) == doctest::Approx(std::asin(s1 * scale)));
    CHECK(*plan.angle_of(2) == doctest::Approx(std::asin(s2 * scale)));
    CHECK(plan.diagnostics.empty());
}

TEST_CASE("enhanced filter and errors") {
    double tk = 6 * kPi;
    // Weight 0.01 at lambda 5/12 gives |sum| ~ 0.018 < 1/8.
    auto weak = make_set(5, 4 * tk, true, {{5, 0.01}});
    CHECK_THROWS_AS(plan_enhanced(weak, {3, tk, {}, AnglePolicy::LeastSquares, AlphaMode::Linear}), EmptyPlan);
    auto loose = plan_enhanced(weak, {3, tk, 0.001, AnglePolicy::LeastSquares, AlphaMode::Linear});
    CHECK(loose.rotations.size() == 2);
    CHECK_THROWS_AS(plan_enhanced(make_set(3, tk, true, {{1, 1}}), {3, tk, {}, {}, {}}), InvalidArgument);
    CHECK_THROWS_AS(plan_enhanced(make_set(5, 4 * tk, true, {{1, 1}}), {3, 0, {}, {}, {}}), InvalidArgument);
    CHECK_THROWS_AS(plan_enhanced(make_set(5, 4 * tk, true, {{0, 1}}), {3, tk, {}, {}, {}}), EmptyPlan);
    CHECK_THROWS_AS(plan_enhanced(EigenEstimateSet{5, 4 * tk, true, {}}, {3, tk, {}, {}, {}}), EmptyPlan);
}

TEST_CASE("property: enhanced support and angle bounds on random estimate sets") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int64_t> gi(-15, 15);
    std::uniform_real_distribution<double> w(0.05, 1);
    double tk = 6 * kPi;
    for (int trial = 0; trial < 200; trial++) {
        std::set<int64_t> used;
        std::vector<std::pair<int64_t, double>> vals;
        size_t n = 1 + trial % 5;
        while (vals.size() < n) {
            int64_t g = gi(rng);
            if (used.insert(g).second) {
                vals.push_back({g, w(rng)});
            }
        }
        auto est = make_set(5, 4 * tk, true, vals);
        for (auto policy : {AnglePolicy::LeastSquares, AnglePolicy::PaperFormula}) {
            InversionPlan plan;
            try {
                plan = plan_enhanced(est, {3, tk, {}, policy, AlphaMode::Linear});
            } catch (const EmptyPlan &) {
                continue;
            }
            size_t nonzero = 0;
            for (auto [g, _] : vals) {
                nonzero += g != 0;
            }
            CHECK(plan.rotations.size() <= 2 * nonzero);
            CHECK(plan.rotations.size() <= 6);
            CHECK(plan.diagnostics.empty());
            for (const auto &r : plan.rotations) {
                CHECK(r.pattern != 0);
                CHECK(r.pattern != 4);
                CHECK(std::abs(r.angle) <= kPi + 1e-12);
            }
        }
    }
}

TEST_CASE("inversion circuit") {
    auto plan = plan_canonical(3, 14 * kPi, false);
    std::vector<size_t> clock{1, 2, 3};
    auto c = build_inversion_circuit(plan, clock, 4, 5);
    CHECK(c.gates().size() == 7);
    for (const auto &g : c.gates()) {
        CHECK(g.controls.size() == 3);
        CHECK(g.targets == std::vector<size_t>{4});
    }
    CHECK(build_inversion_circuit(plan_hybrid(make_set(3, 6 * kPi, true, {{1, 0.7}, {2, 0.7}})), clock, 4, 5)
              .gates()
              .size() == 2);
    InversionPlan empty{3, false, 1, {}, {}};
    CHECK(build_inversion_circuit(empty, clock, 4, 5).gates().empty());
    CHECK_THROWS_AS(build_inversion_circuit(plan, std::vector<size_t>{1, 2}, 4, 5), InvalidArgument);

    // Every clock pattern rotates the ancilla by its own angle only.
    for (uint64_t p = 0; p < 8; p++) {
        auto st = sim::apply_circuit(sim::StateVector::basis(5, p << 1), c);
        double want = p == 0 ? 0 : std::pow(std::sin(*plan.angle_of(p) / 2), 2);
        CHECK(sim::outcome_probability(st, 4, 1) == doctest::Approx(want));
    }
}

TEST_CASE("json round trip") {
    auto plan = plan_enhanced(make_set(5, 24 * kPi, true, {{5, 0.8}, {-7, 0.6}}),
                              {3, 6 * kPi, {}, AnglePolicy::PaperFormula, AlphaMode::Exact});
    plan.diagnostics.push_back("note");
    auto back = plan_from_json(to_json(plan));
    CHECK(back.rotations == plan.rotations);
    CHECK(back.constant_c == plan.constant_c);
    CHECK(back.signed_mode);
    CHECK(back.diagnostics == plan.diagnostics);
    CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"k":3})")), ParseError);
    CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"k":3,"C":1,"rotations":[[1]]})")), ParseError);
}

}  // TEST_SUITE
