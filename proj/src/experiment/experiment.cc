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

#include "hhlab/experiment/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "hhlab/errors.h"
#include "hhlab/qlsp/io.h"
#include "hhlab/rng.h"

namespace hhlab::experiment {

namespace {

std::string fmt(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

}  // namespace

void ExperimentSpec::validate() const {
    switch (source) {
        case ProblemSource::N2Sweep:
            if (count < 1) {
                throw InvalidArgument("sweep count must be at least 1");
            }
            if (!(range_lo >= 0 && range_hi <= 0.5 && range_lo < range_hi)) {
                throw InvalidArgument("sweep range must lie within [0, 0.5]");
            }
            break;
        case ProblemSource::N2Set:
            if (lambdas.empty()) {
                throw InvalidArgument("lambda set is empty");
            }
            for (double l : lambdas) {
                if (!(l > 0 && l < 0.5)) {
                    throw InvalidArgument("lambda values must lie in (0, 0.5)");
                }
            }
            break;
        case ProblemSource::N4Set:
            if (pairs.empty() || seeds.empty()) {
                throw InvalidArgument("n4 set needs at least one pair and one seed");
            }
            break;
        case ProblemSource::File:
            if (problem_file.empty()) {
                throw InvalidArgument("file source needs a problem path");
            }
            break;
    }
    if (variants.empty()) {
        throw InvalidArgument("no variants selected");
    }
    if (jobs < 1) {
        throw InvalidArgument("jobs must be at least 1");
    }
}

std::vector<ProblemInstance> build_problems(const ExperimentSpec &spec) {
    spec.validate();
    std::vector<ProblemInstance> out;
    switch (spec.source) {
        case ProblemSource::N2Sweep: {
            double step = (spec.range_hi - spec.range_lo) / static_cast<double>(spec.count + 1);
            for (size_t i = 1; i <= spec.count; i++) {
                double lam = spec.range_lo + step * static_cast<double>(i);
                out.push_back({"n2-" + std::to_string(i), fmt(lam, 8), qlsp::generate_n2(lam)});
            }
            break;
        }
        case ProblemSource::N2Set:
            for (size_t i = 0; i < spec.lambdas.size(); i++) {
                double lam = spec.lambdas[i];
                out.push_back({"n2-" + std::to_string(i + 1), fmt(lam, 8), qlsp::generate_n2(lam)});
            }
            break;
        case ProblemSource::N4Set:
            for (const auto &pair : spec.pairs) {
                for (uint64_t seed : spec.seeds) {
                    std::string id = "n4-u" + std::to_string(pair.first) + std::to_string(pair.second) + "-s" +
                                     std::to_string(seed);
                    out.push_back({id, std::to_string(seed), qlsp::generate_n4(spec.eigenvalues, pair, seed)});
                }
            }
            break;
        case ProblemSource::File:
            out.push_back({spec.problem_file.stem().string(), spec.problem_file.filename().string(),
                           qlsp::load_qlsp(spec.problem_file)});
            break;
    }
    return out;
}

pipeline::RunConfig config_for(const ExperimentSpec &spec, Variant variant, const qlsp::Qlsp &problem, size_t index) {
    pipeline::RunConfig c = spec.run;
    c.variant = variant;
    if (variant == Variant::Hybrid) {
        c.preprocess_bits = c.clock_bits;
    }
    switch (spec.signed_choice) {
        case SignedChoice::On:
            c.preprocess.signed_mode = true;
            break;
        case SignedChoice::Off:
            c.preprocess.signed_mode = false;
            break;
        case SignedChoice::Auto:
            c.preprocess.signed_mode = problem.has_negative_eigenvalues();
            break;
    }
    c.preprocess.seed = derive_seed(spec.run.preprocess.seed, index);
    c.readout_seed = derive_seed(spec.run.readout_seed, index);
    if (c.noise) {
        c.noise->rng_seed = derive_seed(spec.run.noise->rng_seed, index);
    }
    return c;
}

ExperimentOutput run_experiment(const ExperimentSpec &spec) {
    auto problems = build_problems(spec);
    for (Variant v : spec.variants) {
        auto probe = config_for(spec, v, problems.front().problem, 0);
        probe.validate();
    }
    struct Task {
        size_t problem;
        Variant variant;
    };
    std::vector<Task> tasks;
    for (size_t p = 0; p < problems.size(); p++) {
        for (Variant v : spec.variants) {
            tasks.push_back({p, v});
        }
    }
    std::vector<ExperimentRow> rows(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < tasks.size(); i = next++) {
            const auto &task = tasks[i];
            const auto &inst = problems[task.problem];
            try {
                auto cfg = config_for(spec, task.variant, inst.problem, task.problem);
                auto r = pipeline::run(inst.problem, cfg);
                size_t l = task.variant == Variant::Canonical ? 0 : cfg.preprocess_bits;
                analysis::BoundInputs bi{inst.problem.condition_number(), r.t0, cfg.clock_bits,
                                         task.variant == Variant::Enhanced ? cfg.preprocess_bits : cfg.clock_bits};
                rows[i] = {inst.id, inst.label, task.variant, cfg.clock_bits, l, r.t0, r.fidelity, r.error,
                           r.success_probability, r.gates, analysis::enhanced_bound(bi), analysis::canonical_bound(bi)};
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        size_t n = std::min(spec.jobs, tasks.size());
        for (size_t j = 1; j < n; j++) {
            pool.emplace_back(worker);
        }
        worker();
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    std::vector<analysis::ErrorSample> samples;
    for (const auto &r : rows) {
        samples.push_back({r.variant, r.error});
    }
    ExperimentOutput out{std::move(rows), analysis::aggregate(samples)};

    if (spec.csv_out) {
        std::ofstream f(*spec.csv_out);
        if (!f) {
            throw Error("cannot write " + spec.csv_out->string());
        }
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        f << format_csv(out.rows, "hhlab " + spec.name + " generated " + stamp);
    }
    if (spec.json_out) {
        std::ofstream f(*spec.json_out);
        if (!f) {
            throw Error("cannot write " + spec.json_out->string());
        }
        f << summary_json(spec, out).dump(2) << "\n";
    }
    return out;
}

const std::vector<std::string> kCsvColumns = {
    "problem_id", "lambda_or_seed", "variant", "k", "l", "t0", "fidelity", "error", "success_prob",
    "gate_count", "two_qubit_count", "depth", "bound_enhanced", "bound_canonical"};

std::string format_csv(const std::vector<ExperimentRow> &rows, const std::string &comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        out << "# " << comment << "\n";
    }
    for (size_t i = 0; i < kCsvColumns.size(); i++) {
        out << (i ? "," : "") << kCsvColumns[i];
    }
    out << "\n";
    for (const auto &r : rows) {
        out << r.problem_id << ',' << r.lambda_or_seed << ',' << variant_name(r.variant) << ',' << r.k << ',' << r.l
            << ',' << fmt(r.t0) << ',' << fmt(r.fidelity) << ',' << fmt(r.error) << ',' << fmt(r.success_prob) << ','
            << r.gates.gate_count << ',' << r.gates.two_qubit_count << ',' << r.gates.depth << ','
            << fmt(r.bound_enhanced) << ',' << fmt(r.bound_canonical) << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double to_double(const std::string &s) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw ParseError("trailing characters in number '" + s + "'");
        }
        return v;
    } catch (const std::logic_error &) {
        throw ParseError("not a number: '" + s + "'");
    }
}

size_t to_size(const std::string &s) {
    double v = to_double(s);
    if (v < 0 || v != std::floor(v)) {
        throw ParseError("not a count: '" + s + "'");
    }
    return static_cast<size_t>(v);
}

}  // namespace

std::vector<ExperimentRow> parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    std::vector<ExperimentRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto cells = split(line, ',');
        if (header.empty()) {
            header = cells;
            if (header != kCsvColumns) {
                throw ParseError("CSV header does not match the experiment schema");
            }
            continue;
        }
        if (cells.size() != kCsvColumns.size()) {
            throw ParseError("CSV row has " + std::to_string(cells.size()) + " cells: " + line);
        }
        ExperimentRow r;
        r.problem_id = cells[0];
        r.lambda_or_seed = cells[1];
        r.variant = parse_variant(cells[2]);
        r.k = to_size(cells[3]);
        r.l = to_size(cells[4]);
        r.t0 = to_double(cells[5]);
        r.fidelity = to_double(cells[6]);
        r.error = to_double(cells[7]);
        r.success_prob = to_double(cells[8]);
        r.gates = {to_size(cells[9]), to_size(cells[10]), to_size(cells[11])};
        r.bound_enhanced = to_double(cells[12]);
        r.bound_canonical = to_double(cells[13]);
        rows.push_back(std::move(r));
    }
    if (header.empty()) {
        throw ParseError("CSV has no header");
    }
    return rows;
}

nlohmann::json summary_json(const ExperimentSpec &spec, const ExperimentOutput &out) {
    auto doc = analysis::to_json(out.aggregate);
    doc["name"] = spec.name;
    doc["rows"] = out.rows.size();
    return doc;
}

std::string plot_data(const std::vector<ExperimentRow> &rows) {
    if (rows.empty()) {
        throw ParseError("no rows to plot");
    }
    std::map<double, std::map<Variant, double>> table;
    for (const auto &r : rows) {
        table[to_double(r.lambda_or_seed)][r.variant] = r.error;
    }
    std::ostringstream out;
    out << "lambda,error_canonical,error_hybrid,error_enhanced\n";
    for (const auto &[lam, errs] : table) {
        out << fmt(lam, 8);
        for (Variant v : {Variant::Canonical, Variant::Hybrid, Variant::Enhanced}) {
            auto it = errs.find(v);
            out << ',' << (it == errs.end() ? std::string("nan") : fmt(it->second));
        }
        out << "\n";
    }
    return out.str();
}

void emit_plot_data(const std::filesystem::path &csv_path, const std::filesystem::path &out_path) {
    std::ifstream in(csv_path);
    if (!in) {
        throw ParseError("cannot read " + csv_path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = plot_data(parse_csv(buf.str()));
    std::ofstream out(out_path);
    if (!out) {
        throw Error("cannot write " + out_path.string());
    }
    out << text;
}

std::string describe_problem(const qlsp::Qlsp &problem, size_t k, double t0, bool signed_mode) {
    ClockGrid grid{k, t0, signed_mode};
    std::ostringstream out;
    out << "dimension " << problem.dimension() << " (" << problem.num_qubits() << (problem.num_qubits() == 1 ? " qubit" : " qubits") << "), scale "
        << fmt(problem.scale(), 6) << "\n";
    out << "kappa " << fmt(problem.condition_number(), 8) << "\n";
    out << "grid k=" << k << " t0=" << fmt(t0, 8) << (signed_mode ? " signed" : " unsigned") << ", spacing "
        << fmt(grid.spacing(), 8) << "\n";
    out << "eigenvalue      |beta|      beta^2      position  nearest  pattern  delta\n";
    for (const auto &p : problem.spectrum().pairs) {
        double x = grid.position(p.eigenvalue);
        auto g = static_cast<int64_t>(std::llround(x));
        g = std::clamp(g, grid.bottom(), grid.top());
        double delta = kTwoPi * std::abs(x - static_cast<double>(g));
        char line[160];
        std::snprintf(
            line, sizeof(line), "%-14.8g  %-10.6f  %-10.6f  %-8.4f  %7lld  %7s  %.4f\n", p.eigenvalue,
            std::abs(p.projection), std::norm(p.projection), x, static_cast<long long>(g),
            sim::render_bits(grid.encode(g), k).c_str(), delta);
        out << line;
    }
    return out.str();
}

void apply_t0_mode(const std::string &text, pipeline::RunConfig &config) {
    if (text == "fixed") {
        config.preprocess.t0_mode = preprocess::T0Mode::FixedFormula;
    } else if (text == "iterative") {
        config.preprocess.t0_mode = preprocess::T0Mode::Iterative;
    } else if (text.starts_with("explicit=")) {
        config.preprocess.t0_mode = preprocess::T0Mode::Explicit;
        std::string v = text.substr(9);
        // Accept multiples of pi such as "6pi".
        if (v.ends_with("pi")) {
            std::string m = v.substr(0, v.size() - 2);
            config.preprocess.explicit_t0 = (m.empty() ? 1.0 : to_double(m)) * kPi;
        } else {
            config.preprocess.explicit_t0 = to_double(v);
        }
        if (!(config.preprocess.explicit_t0 > 0)) {
            throw ParseError("explicit t0 must be positive");
        }
    } else {
        throw ParseError("t0 mode must be fixed, iterative or explicit=<value>");
    }
}

inversion::AnglePolicy parse_angle_policy(const std::string &text) {
    if (text == "least-squares") {
        return inversion::AnglePolicy::LeastSquares;
    }
    if (text == "paper") {
        return inversion::AnglePolicy::PaperFormula;
    }
    throw ParseError("angle policy must be paper or least-squares");
}

inversion::AlphaMode parse_alpha_mode(const std::string &text) {
    if (text == "linear") {
        return inversion::AlphaMode::Linear;
    }
    if (text == "exact") {
        return inversion::AlphaMode::Exact;
    }
    throw ParseError("alpha model must be linear or exact");
}

pipeline::ReadoutMode parse_readout(const std::string &text) {
    if (text == "exact") {
        return pipeline::ReadoutMode::ExactProjection;
    }
    if (text == "swap") {
        return pipeline::ReadoutMode::SwapTest;
    }
    if (text == "direct") {
        return pipeline::ReadoutMode::DirectSample;
    }
    throw ParseError("readout must be exact, swap or direct");
}

SignedChoice parse_signed_choice(const std::string &text) {
    if (text == "on") {
        return SignedChoice::On;
    }
    if (text == "off") {
        return SignedChoice::Off;
    }
    if (text == "auto") {
        return SignedChoice::Auto;
    }
    throw ParseError("signed mode must be on, off or auto");
}

ProblemSource parse_source(const std::string &text) {
    if (text == "n2-sweep") {
        return ProblemSource::N2Sweep;
    }
    if (text == "n2-set") {
        return ProblemSource::N2Set;
    }
    if (text == "n4-set") {
        return ProblemSource::N4Set;
    }
    if (text == "file") {
        return ProblemSource::File;
    }
    throw ParseError("problem source must be n2-sweep, n2-set, n4-set or file");
}

std::vector<Variant> parse_variants(const std::string &text) {
    if (text == "all") {
        return {Variant::Canonical, Variant::Hybrid, Variant::Enhanced};
    }
    std::vector<Variant> out;
    for (const auto &name : split(text, ',')) {
        Variant v = parse_variant(name);
        if (std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
        }
    }
    if (out.empty()) {
        throw ParseError("no variants given");
    }
    return out;
}

ExperimentSpec spec_from_json(const nlohmann::json &doc, ExperimentSpec base) {
    if (!doc.is_object()) {
        throw ParseError("experiment config must be a JSON object");
    }
    ExperimentSpec s = std::move(base);
    try {
        for (const auto &[key, v] : doc.items()) {
            if (key == "name") {
                s.name = v.get<std::string>();
            } else if (key == "source") {
                s.source = parse_source(v.get<std::string>());
            } else if (key == "count") {
                s.count = v.get<size_t>();
            } else if (key == "range") {
                auto r = v.get<std::vector<double>>();
                if (r.size() != 2) {
                    throw ParseError("range must be [lo, hi]");
                }
                s.range_lo = r[0];
                s.range_hi = r[1];
            } else if (key == "lambdas") {
                s.lambdas = v.get<std::vector<double>>();
            } else if (key == "eigenvalues") {
                s.eigenvalues = v.get<std::array<double, 4>>();
            } else if (key == "pairs") {
                s.pairs = v.get<std::vector<std::pair<size_t, size_t>>>();
            } else if (key == "seeds") {
                s.seeds = v.get<std::vector<uint64_t>>();
            } else if (key == "file") {
                s.problem_file = v.get<std::string>();
            } else if (key == "variants") {
                if (v.is_string()) {
                    s.variants = parse_variants(v.get<std::string>());
                } else {
                    s.variants.clear();
                    for (const auto &n : v) {
                        s.variants.push_back(parse_variant(n.get<std::string>()));
                    }
                }
            } else if (key == "k") {
                s.run.clock_bits = v.get<size_t>();
            } else if (key == "l") {
                s.run.preprocess_bits = v.get<size_t>();
            } else if (key == "t0_mode") {
                apply_t0_mode(v.get<std::string>(), s.run);
            } else if (key == "angle_policy") {
                s.run.angle_policy = parse_angle_policy(v.get<std::string>());
            } else if (key == "alpha") {
                s.run.alpha = parse_alpha_mode(v.get<std::string>());
            } else if (key == "readout") {
                s.run.readout = parse_readout(v.get<std::string>());
            } else if (key == "shots") {
                s.run.readout_shots = v.get<uint64_t>();
                s.run.preprocess.shots = s.run.readout_shots;
            } else if (key == "seed") {
                s.run.preprocess.seed = v.get<uint64_t>();
                s.run.readout_seed = v.get<uint64_t>();
            } else if (key == "noise_p") {
                double p = v.get<double>();
                if (p > 0) {
                    s.run.noise = sim::NoiseSpec{p, s.run.noise ? s.run.noise->rng_seed : 1};
                } else {
                    s.run.noise.reset();
                }
            } else if (key == "jobs") {
                s.jobs = v.get<size_t>();
            } else if (key == "signed") {
                s.signed_choice = parse_signed_choice(v.get<std::string>());
            } else if (key == "lambda_max") {
                s.run.preprocess.lambda_max = v.get<double>();
            } else if (key == "preprocess_threshold") {
                s.run.preprocess.relevance_threshold = v.get<double>();
            } else if (key == "enhancement_threshold") {
                s.run.enhancement_threshold = v.get<double>();
            } else if (key == "hybrid_max_rotations") {
                s.run.hybrid_max_rotations = v.get<size_t>();
            } else if (key == "csv_out") {
                s.csv_out = v.get<std::string>();
            } else if (key == "json_out") {
                s.json_out = v.get<std::string>();
            } else {
                throw ParseError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    return s;
}

}  // namespace hhlab::experiment
