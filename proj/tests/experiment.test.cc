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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "hhlab/errors.h"
#include "hhlab/experiment/experiment.h"
#include "hhlab/qlsp/io.h"

using namespace hhlab;
using namespace hhlab::experiment;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string drop_first_line(const std::string &s) {
    return s.substr(s.find('\n') + 1);
}

fs::path scratch_dir() {
    auto d = fs::temp_directory_path() / ("hhlab_experiment_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("problem sources") {
    ExperimentSpec s;
    auto sweep = build_problems(s);
    REQUIRE(sweep.size() == 99);
    CHECK(sweep[0].id == "n2-1");
    CHECK(sweep[0].problem.spectrum().pairs[0].eigenvalue == doctest::Approx(0.005));
    CHECK(sweep[98].problem.spectrum().pairs[0].eigenvalue == doctest::Approx(0.495));

    s.source = ProblemSource::N2Set;
    CHECK(build_problems(s).size() == 9);

    s.source = ProblemSource::N4Set;
    auto n4 = build_problems(s);
    CHECK(n4.size() == 18);
    CHECK(n4[0].problem.dimension() == 4);

    s.lambdas.clear();
    s.source = ProblemSource::N2Set;
    CHECK_THROWS_AS(build_problems(s), InvalidArgument);
    s = {};
    s.range_hi = 0.7;
    CHECK_THROWS_AS(build_problems(s), InvalidArgument);
    s = {};
    s.source = ProblemSource::File;
    CHECK_THROWS_AS(build_problems(s), InvalidArgument);
}

TEST_CASE("per-cell configuration") {
    ExperimentSpec s;
    auto q = qlsp::generate_n2(0.2);
    auto hyb = config_for(s, Variant::Hybrid, q, 0);
    CHECK(hyb.variant == Variant::Hybrid);
    CHECK(hyb.preprocess_bits == hyb.clock_bits);
    auto enh = config_for(s, Variant::Enhanced, q, 0);
    CHECK(enh.preprocess_bits == 5);
    CHECK(config_for(s, Variant::Enhanced, q, 1).preprocess.seed != enh.preprocess.seed);

    s.signed_choice = SignedChoice::Auto;
    CHECK(!config_for(s, Variant::Canonical, q, 0).preprocess.signed_mode);
    auto n4 = qlsp::generate_n4({-0.5, -0.2, 0.3, 0.6}, {0, 1}, 1);
    CHECK(config_for(s, Variant::Canonical, n4, 0).preprocess.signed_mode);
    s.signed_choice = SignedChoice::Off;
    CHECK(!config_for(s, Variant::Canonical, n4, 0).preprocess.signed_mode);
}

TEST_CASE("n2 set produces one row per problem and variant") {
    ExperimentSpec s;
    s.source = ProblemSource::N2Set;
    auto out = run_experiment(s);
    REQUIRE(out.rows.size() == 27);
    CHECK(out.rows[0].variant == Variant::Canonical);
    CHECK(out.rows[1].variant == Variant::Hybrid);
    CHECK(out.rows[2].variant == Variant::Enhanced);
    CHECK(out.rows[0].l == 0);
    CHECK(out.rows[1].l == 3);
    CHECK(out.rows[2].l == 5);
    CHECK(out.aggregate.count == 27);
    for (const auto &r : out.rows) {
        CHECK(r.error >= 0);
        CHECK(r.bound_enhanced < r.bound_canonical);
    }
}

TEST_CASE("outputs are deterministic across job counts and reruns") {
    auto dir = scratch_dir();
    ExperimentSpec s;
    s.count = 20;
    s.csv_out = dir / "a.csv";
    s.json_out = dir / "a.json";
    run_experiment(s);
    s.jobs = 4;
    s.csv_out = dir / "b.csv";
    s.json_out = dir / "b.json";
    run_experiment(s);
    s.csv_out = dir / "c.csv";
    run_experiment(s);
    auto a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv"), c = slurp(dir / "c.csv");
    CHECK(a.rfind("# hhlab experiment generated ", 0) == 0);
    CHECK(drop_first_line(a) == drop_first_line(b));
    CHECK(drop_first_line(b) == drop_first_line(c));
    CHECK(parse_csv(a).size() == 60);

    auto ja = nlohmann::json::parse(slurp(dir / "a.json"));
    auto jb = nlohmann::json::parse(slurp(dir / "b.json"));
    CHECK(ja["aggregate"] == jb["aggregate"]);
    fs::remove_all(dir);
}

TEST_CASE("csv round trip") {
    ExperimentSpec s;
    s.source = ProblemSource::N2Set;
    s.lambdas = {0.2, 0.3};
    auto out = run_experiment(s);
    auto back = parse_csv(format_csv(out.rows, "comment"));
    REQUIRE(back.size() == out.rows.size());
    for (size_t i = 0; i < back.size(); i++) {
        CHECK(back[i].problem_id == out.rows[i].problem_id);
        CHECK(back[i].variant == out.rows[i].variant);
        CHECK(back[i].error == doctest::Approx(out.rows[i].error).epsilon(1e-9));
        CHECK(back[i].gates == out.rows[i].gates);
    }
    CHECK_THROWS_AS(parse_csv(""), ParseError);
    CHECK_THROWS_AS(parse_csv("a,b,c\n"), ParseError);
}

TEST_CASE("plot data") {
    auto dir = scratch_dir();
    ExperimentSpec s;
    s.csv_out = dir / "sweep.csv";
    run_experiment(s);
    emit_plot_data(dir / "sweep.csv", dir / "plot.csv");
    auto text = slurp(dir / "plot.csv");
    size_t lines = 0;
    for (char ch : text) {
        lines += ch == '\n';
    }
    CHECK(text.rfind("lambda,error_canonical,error_hybrid,error_enhanced\n", 0) == 0);
    CHECK(lines == 100);

    std::ofstream(dir / "empty.csv") << "";
    CHECK_THROWS_AS(emit_plot_data(dir / "empty.csv", dir / "never.csv"), ParseError);
    CHECK(!fs::exists(dir / "never.csv"));
    CHECK_THROWS_AS(emit_plot_data(dir / "missing.csv", dir / "never.csv"), Error);
    CHECK(!fs::exists(dir / "never.csv"));
    fs::remove_all(dir);
}

TEST_CASE("problem files") {
    auto dir = scratch_dir();
    auto q = qlsp::generate_n2(0.25);
    std::ofstream(dir / "p.json") << qlsp::to_json(q).dump();
    ExperimentSpec s;
    s.source = ProblemSource::File;
    s.problem_file = dir / "p.json";
    auto out = run_experiment(s);
    CHECK(out.rows.size() == 3);
    fs::remove_all(dir);
}

TEST_CASE("describe") {
    auto text = describe_problem(qlsp::generate_n2(1.0 / 3), 3, 6 * kPi, true);
    CHECK(text.find("kappa 2\n") != std::string::npos);
    CHECK(text.find("0.33333333") != std::string::npos);
    CHECK(text.find("0.66666667") != std::string::npos);
    CHECK(describe_problem(qlsp::generate_n2(0.01), 3, 6 * kPi, true).find("kappa 99") != std::string::npos);
    auto n4 = describe_problem(qlsp::generate_n4({-21.0 / 24, -20.0 / 24, 5.0 / 24, 6.0 / 24}, {0, 2}, 1), 3, 6 * kPi, true);
    // 5/24 is nearest to 1/3 (pattern 001) and -21/24 to -1 (pattern 101).
    CHECK(n4.find("001") != std::string::npos);
    CHECK(n4.find("101") != std::string::npos);
}

TEST_CASE("json config") {
    auto doc = nlohmann::json::parse(R"({
        "name": "cfg", "source": "n4-set", "pairs": [[0, 1], [2, 3]], "seeds": [5],
        "variants": "hybrid,enhanced", "k": 3, "l": 6, "t0_mode": "explicit=6pi",
        "angle_policy": "paper", "alpha": "exact", "readout": "swap", "shots": 2048,
        "seed": 9, "noise_p": 0.01, "jobs": 2, "signed": "auto", "lambda_max": 2
    })");
    auto s = spec_from_json(doc);
    CHECK(s.name == "cfg");
    CHECK(s.source == ProblemSource::N4Set);
    CHECK(s.pairs.size() == 2);
    CHECK(s.seeds == std::vector<uint64_t>{5});
    CHECK(s.variants == std::vector<Variant>{Variant::Hybrid, Variant::Enhanced});
    CHECK(s.run.preprocess_bits == 6);
    CHECK(s.run.preprocess.t0_mode == preprocess::T0Mode::Explicit);
    CHECK(s.run.preprocess.explicit_t0 == doctest::Approx(6 * kPi));
    CHECK(s.run.angle_policy == inversion::AnglePolicy::PaperFormula);
    CHECK(s.run.alpha == inversion::AlphaMode::Exact);
    CHECK(s.run.readout == pipeline::ReadoutMode::SwapTest);
    CHECK(s.run.readout_shots == 2048);
    CHECK(s.run.noise);
    CHECK(s.jobs == 2);
    CHECK(s.signed_choice == SignedChoice::Auto);
    CHECK(s.run.preprocess.lambda_max == 2);

    CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"bogus": 1})")), ParseError);
    CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"k": "three"})")), ParseError);
    CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"source": "nowhere"})")), ParseError);
}

TEST_CASE("flag parsers") {
    pipeline::RunConfig c;
    apply_t0_mode("iterative", c);
    CHECK(c.preprocess.t0_mode == preprocess::T0Mode::Iterative);
    apply_t0_mode("explicit=2.5", c);
    CHECK(c.preprocess.explicit_t0 == 2.5);
    apply_t0_mode("fixed", c);
    CHECK(c.preprocess.t0_mode == preprocess::T0Mode::FixedFormula);
    CHECK_THROWS_AS(apply_t0_mode("explicit=", c), ParseError);
    CHECK_THROWS_AS(apply_t0_mode("sometimes", c), ParseError);
    CHECK(parse_readout("direct") == pipeline::ReadoutMode::DirectSample);
    CHECK(parse_readout("exact") == pipeline::ReadoutMode::ExactProjection);
    CHECK(parse_angle_policy("least-squares") == inversion::AnglePolicy::LeastSquares);
    CHECK(parse_alpha_mode("linear") == inversion::AlphaMode::Linear);
    CHECK(parse_signed_choice("off") == SignedChoice::Off);
    CHECK(parse_source("n2-sweep") == ProblemSource::N2Sweep);
    CHECK(parse_variants("all").size() == 3);
    CHECK_THROWS_AS(parse_variants("quantum"), ParseError);
    CHECK_THROWS_AS(parse_readout("psychic"), ParseError);
}

}  // TEST_SUITE
