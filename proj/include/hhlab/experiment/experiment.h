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

#ifndef HHLAB_EXPERIMENT_EXPERIMENT_H
#define HHLAB_EXPERIMENT_EXPERIMENT_H

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hhlab/analysis/analysis.h"
#include "hhlab/pipeline/pipeline.h"

namespace hhlab::experiment {

enum class ProblemSource { N2Sweep, N2Set, N4Set, File };
enum class SignedChoice { On, Off, Auto };

struct ExperimentSpec {
    std::string name = "experiment";
    ProblemSource source = ProblemSource::N2Sweep;

    /// n2-sweep: count points strictly inside (range_lo, range_hi).
    size_t count = 99;
    double range_lo = 0;
    double range_hi = 0.5;
    /// n2-set.
    std::vector<double> lambdas = {3.0 / 24, 4.0 / 24, 5.0 / 24, 6.0 / 24, 7.0 / 24,
                                   8.0 / 24, 9.0 / 24, 10.0 / 24, 11.0 / 24};
    /// n4-set: every (pair, seed) combination.
    std::array<double, 4> eigenvalues = {-21.0 / 24, -20.0 / 24, 5.0 / 24, 6.0 / 24};
    std::vector<std::pair<size_t, size_t>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::vector<uint64_t> seeds = {1, 2, 3};
    /// file.
    std::filesystem::path problem_file;

    std::vector<Variant> variants = {Variant::Canonical, Variant::Hybrid, Variant::Enhanced};
    /// variant and, for hybrid, preprocess_bits are set per run.
    pipeline::RunConfig run;
    SignedChoice signed_choice = SignedChoice::On;
    size_t jobs = 1;

    std::optional<std::filesystem::path> csv_out;
    std::optional<std::filesystem::path> json_out;

    /// Throws InvalidArgument.
    void validate() const;
};

struct ProblemInstance {
    std::string id;
    std::string label;
    qlsp::Qlsp problem;
};

std::vector<ProblemInstance> build_problems(const ExperimentSpec &spec);

/// Run configuration of one (problem, variant) cell. index selects the seed stream.
pipeline::RunConfig config_for(const ExperimentSpec &spec, Variant variant, const qlsp::Qlsp &problem, size_t index);

struct ExperimentRow {
    std::string problem_id;
    std::string lambda_or_seed;
    Variant variant;
    size_t k;
    /// 0 for canonical runs, which skip preprocessing.
    size_t l;
    double t0;
    double fidelity;
    double error;
    double success_prob;
    sim::GateReport gates;
    double bound_enhanced;
    double bound_canonical;
};

struct ExperimentOutput {
    std::vector<ExperimentRow> rows;
    analysis::Aggregate aggregate;
};

/// Runs every (problem, variant) pair on up to spec.jobs threads. Rows come
/// back in problem order, then variant order. Writes the CSV and JSON outputs
/// when their paths are set.
ExperimentOutput run_experiment(const ExperimentSpec &spec);

extern const std::vector<std::string> kCsvColumns;

/// CSV text. A non-empty comment becomes a leading "# ..." line.
std::string format_csv(const std::vector<ExperimentRow> &rows, const std::string &comment = "");
std::vector<ExperimentRow> parse_csv(const std::string &text);

nlohmann::json summary_json(const ExperimentSpec &spec, const ExperimentOutput &out);

/// Writes "lambda,error_canonical,error_hybrid,error_enhanced" rows sorted by
/// lambda. Throws ParseError (and writes nothing) on malformed or empty input.
void emit_plot_data(const std::filesystem::path &csv_path, const std::filesystem::path &out_path);
std::string plot_data(const std::vector<ExperimentRow> &rows);

/// Spectrum, kappa, beta weights and grid alignment for a (k, t0) register.
std::string describe_problem(const qlsp::Qlsp &problem, size_t k, double t0, bool signed_mode);

/// Flat JSON config. Keys absent from the document keep the values of base.
ExperimentSpec spec_from_json(const nlohmann::json &doc, ExperimentSpec base = {});

void apply_t0_mode(const std::string &text, pipeline::RunConfig &config);
inversion::AnglePolicy parse_angle_policy(const std::string &text);
inversion::AlphaMode parse_alpha_mode(const std::string &text);
pipeline::ReadoutMode parse_readout(const std::string &text);
SignedChoice parse_signed_choice(const std::string &text);
ProblemSource parse_source(const std::string &text);
std::vector<Variant> parse_variants(const std::string &text);

}  // namespace hhlab::experiment

#endif
