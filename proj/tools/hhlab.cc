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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hhlab/analysis/analysis.h"
#include "hhlab/errors.h"
#include "hhlab/experiment/experiment.h"
#include "hhlab/preprocess/preprocess.h"
#include "hhlab/qlsp/io.h"

using namespace hhlab;
using experiment::ExperimentSpec;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

// Flags shared by the batch subcommands. Strings stay empty unless given.
struct RunFlags {
    std::string config;
    size_t k = 3;
    size_t l = 5;
    std::string variant;
    std::string t0_mode;
    std::string angle_policy;
    std::string alpha;
    std::string readout;
    std::string signed_choice;
    uint64_t shots = 4096;
    uint64_t seed = 1;
    double noise_p = 0;
    double lambda_max = 1;
    size_t jobs = 1;
    std::string out;
    std::string name;
};

void add_run_flags(CLI::App *cmd, RunFlags &f) {
    cmd->add_option("--config", f.config, "Flat JSON experiment config; flags override its values");
    cmd->add_option("--k", f.k, "Clock qubits of the HHL circuit (default 3)");
    cmd->add_option("--l", f.l, "Preprocessing qubits of the enhanced variant (default 5)");
    cmd->add_option("--variant", f.variant, "all, or a comma list of canonical,hybrid,enhanced");
    cmd->add_option("--t0-mode", f.t0_mode, "fixed | iterative | explicit=<value> (value may be written as 6pi)");
    cmd->add_option("--angle-policy", f.angle_policy, "least-squares (default) | paper");
    cmd->add_option("--alpha", f.alpha, "linear (default) | exact");
    cmd->add_option("--readout", f.readout, "exact (default) | swap | direct");
    cmd->add_option("--signed", f.signed_choice, "Two's complement clock decoding: on (default) | off | auto");
    cmd->add_option("--shots", f.shots, "Shots for preprocessing and sampled readouts (default 4096)");
    cmd->add_option("--seed", f.seed, "Base seed (default 1)");
    cmd->add_option("--noise-p", f.noise_p, "Per-gate Pauli insertion probability (default 0)");
    cmd->add_option("--lambda-max", f.lambda_max, "Eigenvalue bound for the fixed t0 formula (default 1)");
    cmd->add_option("--jobs", f.jobs, "Parallel runs (default 1)");
    cmd->add_option("--out", f.out, "CSV output path; the JSON summary goes next to it with a .json extension");
    cmd->add_option("--name", f.name, "Experiment name recorded in the outputs");
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(path + ": " + e.what());
    }
}

ExperimentSpec build_spec(CLI::App *cmd, const RunFlags &f, ExperimentSpec spec) {
    if (!f.config.empty()) {
        spec = experiment::spec_from_json(read_json_file(f.config), spec);
    }
    auto given = [&](const char *flag) {
        return cmd->count(flag) > 0;
    };
    if (given("--k")) {
        spec.run.clock_bits = f.k;
    }
    if (given("--l")) {
        spec.run.preprocess_bits = f.l;
    }
    if (given("--variant")) {
        spec.variants = experiment::parse_variants(f.variant);
    }
    if (given("--t0-mode")) {
        experiment::apply_t0_mode(f.t0_mode, spec.run);
    }
    if (given("--angle-policy")) {
        spec.run.angle_policy = experiment::parse_angle_policy(f.angle_policy);
    }
    if (given("--alpha")) {
        spec.run.alpha = experiment::parse_alpha_mode(f.alpha);
    }
    if (given("--readout")) {
        spec.run.readout = experiment::parse_readout(f.readout);
    }
    if (given("--signed")) {
        spec.signed_choice = experiment::parse_signed_choice(f.signed_choice);
    }
    if (given("--shots")) {
        spec.run.readout_shots = f.shots;
        spec.run.preprocess.shots = f.shots;
    }
    if (given("--seed")) {
        spec.run.preprocess.seed = f.seed;
        spec.run.readout_seed = f.seed;
        if (spec.run.noise) {
            spec.run.noise->rng_seed = f.seed;
        }
    }
    if (given("--noise-p")) {
        if (f.noise_p > 0) {
            spec.run.noise = sim::NoiseSpec{f.noise_p, spec.run.readout_seed};
        } else {
            spec.run.noise.reset();
        }
    }
    if (given("--lambda-max")) {
        spec.run.preprocess.lambda_max = f.lambda_max;
    }
    if (given("--jobs")) {
        spec.jobs = f.jobs;
    }
    if (given("--name")) {
        spec.name = f.name;
    }
    if (!f.out.empty()) {
        spec.csv_out = f.out;
        spec.json_out = std::filesystem::path(f.out).replace_extension(".json");
    }
    return spec;
}

void print_summary(const ExperimentSpec &spec, const experiment::ExperimentOutput &out) {
    std::printf("%s: %zu row%s\n", spec.name.c_str(), out.rows.size(), out.rows.size() == 1 ? "" : "s");
    for (const auto &[v, mean] : out.aggregate.per_variant) {
        size_t n = out.aggregate.per_variant_count.at(v);
        std::printf(
            "  %-10s mean error %.4f over %zu run%s\n", std::string(variant_name(v)).c_str(), mean, n,
            n == 1 ? "" : "s");
    }
    if (spec.csv_out) {
        std::printf("  wrote %s and %s\n", spec.csv_out->string().c_str(), spec.json_out->string().c_str());
    }
}

double parse_t0_value(const std::string &text) {
    pipeline::RunConfig tmp;
    experiment::apply_t0_mode("explicit=" + text, tmp);
    return tmp.preprocess.explicit_t0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"hhlab: canonical, hybrid and enhanced hybrid HHL on a statevector simulator"};
    app.require_subcommand(1);

    RunFlags sweep_flags, set_flags, n4_flags;
    size_t sweep_count = 99;
    auto *sweep = app.add_subcommand("sweep", "N=2 family over evenly spaced lambda in (0, 0.5)");
    add_run_flags(sweep, sweep_flags);
    sweep->add_option("--count", sweep_count, "Number of lambda values (default 99)");

    std::vector<double> set_lambdas;
    std::string set_problem;
    auto *set = app.add_subcommand("set", "N=2 family at listed lambdas (default 3/24 ... 11/24), or one problem file");
    add_run_flags(set, set_flags);
    set->add_option("--lambdas", set_lambdas, "Lambda values in (0, 0.5)")->delimiter(',');
    set->add_option("--problem", set_problem, "QLSP JSON file to run instead of the N=2 family");

    std::vector<uint64_t> n4_seeds;
    std::vector<double> n4_eigs;
    auto *n4 = app.add_subcommand("n4", "N=4 problems over all eigenvector pairs");
    add_run_flags(n4, n4_flags);
    n4->add_option("--seeds", n4_seeds, "Eigenbasis seeds (default 1,2,3)")->delimiter(',');
    n4->add_option("--eigenvalues", n4_eigs, "Four eigenvalues (default -21/24,-20/24,5/24,6/24)")
        ->delimiter(',')
        ->expected(4);

    double b_kappa = 2, b_k = 3, b_l = 5;
    std::string b_t0 = "6pi";
    auto *bounds = app.add_subcommand("bounds", "Analytic error bounds");
    bounds->add_option("--kappa", b_kappa, "Condition number (default 2)");
    bounds->add_option("--t0", b_t0, "Time scale, number or multiple of pi (default 6pi)");
    bounds->add_option("--k", b_k, "Clock qubits (default 3)");
    bounds->add_option("--l", b_l, "Preprocessing qubits (default 5)");

    double d_lambda = 0;
    std::vector<size_t> d_pair;
    uint64_t d_seed = 1;
    std::string d_problem, d_t0, d_signed = "on";
    size_t d_k = 3;
    double d_lambda_max = 1;
    auto *describe = app.add_subcommand("describe", "Spectrum, kappa, beta weights and grid alignment of a problem");
    auto *d_lambda_opt = describe->add_option("--lambda", d_lambda, "N=2 family member");
    auto *d_pair_opt = describe->add_option("--n4-pair", d_pair, "N=4 eigenvector pair, e.g. 0,2")->delimiter(',')->expected(2);
    describe->add_option("--seed", d_seed, "N=4 eigenbasis seed (default 1)");
    auto *d_problem_opt = describe->add_option("--problem", d_problem, "QLSP JSON file");
    d_lambda_opt->excludes(d_pair_opt)->excludes(d_problem_opt);
    d_pair_opt->excludes(d_problem_opt);
    describe->add_option("--k", d_k, "Clock qubits (default 3)");
    describe->add_option("--t0", d_t0, "Time scale (default: fixed formula)");
    describe->add_option("--signed", d_signed, "on (default) | off | auto");
    describe->add_option("--lambda-max", d_lambda_max, "Eigenvalue bound for the fixed t0 formula (default 1)");

    std::string p_csv, p_out;
    auto *plot = app.add_subcommand("plot-data", "Error-vs-lambda table from a sweep CSV");
    plot->add_option("--csv", p_csv, "Sweep CSV")->required();
    plot->add_option("--out", p_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*sweep) {
            ExperimentSpec spec;
            spec.name = "sweep";
            spec.source = experiment::ProblemSource::N2Sweep;
            spec = build_spec(sweep, sweep_flags, spec);
            if (sweep->count("--count")) {
                spec.count = sweep_count;
            }
            print_summary(spec, experiment::run_experiment(spec));
        } else if (*set) {
            ExperimentSpec spec;
            spec.name = "set";
            spec.source = experiment::ProblemSource::N2Set;
            spec = build_spec(set, set_flags, spec);
            if (!set_lambdas.empty()) {
                spec.lambdas = set_lambdas;
            }
            if (!set_problem.empty()) {
                spec.source = experiment::ProblemSource::File;
                spec.problem_file = set_problem;
            }
            print_summary(spec, experiment::run_experiment(spec));
        } else if (*n4) {
            ExperimentSpec spec;
            spec.name = "n4";
            spec.source = experiment::ProblemSource::N4Set;
            spec = build_spec(n4, n4_flags, spec);
            if (!n4_seeds.empty()) {
                spec.seeds = n4_seeds;
            }
            if (!n4_eigs.empty()) {
                std::copy(n4_eigs.begin(), n4_eigs.end(), spec.eigenvalues.begin());
            }
            print_summary(spec, experiment::run_experiment(spec));
        } else if (*bounds) {
            analysis::BoundInputs in{b_kappa, parse_t0_value(b_t0), static_cast<size_t>(b_k), static_cast<size_t>(b_l)};
            double orig = analysis::canonical_bound(in, analysis::CanonicalBound::Original);
            double enh = analysis::enhanced_bound(in);
            std::printf("kappa %.6g  t0 %.6g  k %zu  l %zu\n", in.kappa, in.t0, in.k, in.l);
            std::printf("enhanced prefactor      %.6f\n", analysis::enhanced_bound_prefactor(in.l - in.k));
            std::printf("hybrid prefactor (l=k)  %.6f\n", analysis::enhanced_bound_prefactor(0));
            std::printf("enhanced bound          %.6f\n", enh);
            std::printf("canonical bound         %.6f\n", orig);
            std::printf("revised canonical bound %.6f\n", analysis::canonical_bound(in, analysis::CanonicalBound::Revised));
            std::printf("enhanced / canonical    %.4f (%.1f%% tighter)\n", enh / orig, 100 * (1 - enh / orig));
        } else if (*describe) {
            std::optional<qlsp::Qlsp> problem;
            if (*d_lambda_opt) {
                problem = qlsp::generate_n2(d_lambda);
            } else if (*d_pair_opt) {
                ExperimentSpec defaults;
                problem = qlsp::generate_n4(defaults.eigenvalues, {d_pair[0], d_pair[1]}, d_seed);
            } else if (*d_problem_opt) {
                problem = qlsp::load_qlsp(d_problem);
            } else {
                throw InvalidArgument("describe needs --lambda, --n4-pair or --problem");
            }
            auto choice = experiment::parse_signed_choice(d_signed);
            bool sm = choice == experiment::SignedChoice::On ||
                      (choice == experiment::SignedChoice::Auto && problem->has_negative_eigenvalues());
            double t0 = d_t0.empty() ? preprocess::fixed_t0(d_lambda_max, d_k, sm) : parse_t0_value(d_t0);
            std::fputs(experiment::describe_problem(*problem, d_k, t0, sm).c_str(), stdout);
        } else if (*plot) {
            experiment::emit_plot_data(p_csv, p_out);
            std::printf("wrote %s\n", p_out.c_str());
        }
    } catch (const InvalidArgument &e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return 0;
}
