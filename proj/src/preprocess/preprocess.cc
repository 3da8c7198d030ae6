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

#include "hhlab/preprocess/preprocess.h"

#include <algorithm>
#include <cmath>

#include "hhlab/errors.h"
#include "hhlab/rng.h"

namespace hhlab::preprocess {

using sim::Circuit;
using sim::QubitRange;

double PreprocessConfig::threshold() const {
    return relevance_threshold.value_or(std::ldexp(1.0, -static_cast<int>(bit_width)));
}

void PreprocessConfig::validate() const {
    if (bit_width < 1 || bit_width > 16) {
        throw InvalidArgument("preprocessing bit width must lie in [1, 16]");
    }
    if (shots < 1) {
        throw InvalidArgument("preprocessing needs at least one shot");
    }
    double thr = threshold();
    if (!(thr > 0 && thr < 1)) {
        throw InvalidArgument("relevance threshold must lie in (0, 1)");
    }
    if (t0_mode == T0Mode::Explicit && !(explicit_t0 >= 0 && std::isfinite(explicit_t0))) {
        throw InvalidArgument("explicit t0 must be finite and nonnegative");
    }
    if (!(lambda_max > 0)) {
        throw InvalidArgument("lambda_max must be positive");
    }
    if (max_iterations < 1) {
        throw InvalidArgument("iterative search needs at least one iteration");
    }
}

Circuit build_qpe_core(const qlsp::Qlsp &problem, size_t bits, double t0) {
    if (bits < 1) {
        throw InvalidArgument("QPE needs at least one clock qubit");
    }
    size_t nb = problem.num_qubits();
    size_t total = nb + bits;
    if (total >= 24) {
        throw CapacityError("QPE circuit would need " + std::to_string(total) + " qubits");
    }
    Circuit c(total);
    QubitRange b{0, nb};
    QubitRange clock{nb, bits};
    c.add_register("b", b);
    c.add_register("clock", clock);
    auto b_qubits = b.qubits();
    for (size_t r = 0; r < bits; r++) {
        c.append(sim::hadamard(clock[r]));
    }
    uint64_t big_t = uint64_t{1} << bits;
    for (size_t r = 0; r < bits; r++) {
        auto u = qlsp::evolution_unitary(problem, t0, uint64_t{1} << r, big_t);
        c.append(sim::unitary(b_qubits, u, "U^" + std::to_string(uint64_t{1} << r)).with_control(clock[r]));
    }
    auto clock_qubits = clock.qubits();
    c.append(sim::inverse_qft(total, clock_qubits));
    return c;
}

Circuit build_qpe_circuit(const qlsp::Qlsp &problem, size_t bits, double t0) {
    Circuit core = build_qpe_core(problem, bits, t0);
    Circuit c(core.num_qubits());
    for (const auto &[name, range] : core.registers()) {
        c.add_register(name, range);
    }
    c.append(sim::unitary(c.reg("b").qubits(), qlsp::state_preparation_matrix(problem.b()), "prep_b"));
    c.append(core);
    return c;
}

std::vector<double> qpe_distribution(const qlsp::Qlsp &problem, size_t bits, double t0) {
    auto c = build_qpe_circuit(problem, bits, t0);
    auto state = sim::apply_circuit(sim::StateVector(c.num_qubits()), c);
    auto clock = c.reg("clock").qubits();
    return sim::marginal_probabilities(state, clock);
}

sim::Histogram run_qpe(const qlsp::Qlsp &problem, size_t bits, double t0, uint64_t shots, uint64_t seed) {
    auto c = build_qpe_circuit(problem, bits, t0);
    auto state = sim::apply_circuit(sim::StateVector(c.num_qubits()), c);
    auto clock = c.reg("clock").qubits();
    return sim::sample(state, clock, shots, seed);
}

EigenEstimateSet extract_estimates(
    const sim::Histogram &histogram, size_t bits, double t0, double threshold, bool signed_mode) {
    if (histogram.empty()) {
        throw EmptyEstimate("histogram is empty");
    }
    if (!(threshold > 0 && threshold <= 1)) {
        throw InvalidArgument("relevance threshold must lie in (0, 1]");
    }
    uint64_t shots = 0;
    for (const auto &[key, count] : histogram) {
        if (key.size() != bits) {
            throw ParseError("bitstring '" + key + "' does not have " + std::to_string(bits) + " bits");
        }
        shots += count;
    }
    if (shots == 0) {
        throw EmptyEstimate("histogram has no shots");
    }
    EigenEstimateSet out{bits, t0, signed_mode, {}};
    ClockGrid grid = out.grid();
    for (const auto &[key, count] : histogram) {
        double w = std::sqrt(static_cast<double>(count) / static_cast<double>(shots));
        if (count == 0 || w < threshold) {
            continue;
        }
        uint64_t g = sim::parse_bits(key);
        double lam = t0 > 0 ? grid.value(g) : 0.0;
        out.entries.push_back({g, lam, w});
    }
    if (out.entries.empty()) {
        throw EmptyEstimate("no bin reaches the relevance threshold");
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const EstimateEntry &a, const EstimateEntry &b) {
        return a.weight != b.weight ? a.weight > b.weight : a.grid_int < b.grid_int;
    });
    return out;
}

double fixed_t0(double lambda_max, size_t k, bool signed_mode) {
    if (!(lambda_max > 0) || !std::isfinite(lambda_max)) {
        throw InvalidArgument("lambda_max must be positive");
    }
    return kTwoPi * static_cast<double>(grid_top(k, signed_mode)) / lambda_max;
}

double fixed_t0(const qlsp::Qlsp &problem, size_t k, bool signed_mode) {
    return fixed_t0(problem.max_abs_eigenvalue(), k, signed_mode);
}

EigenEstimateSet estimate_at(const qlsp::Qlsp &problem, const PreprocessConfig &config, double t0) {
    auto h = run_qpe(problem, config.bit_width, t0, config.shots, config.seed);
    return extract_estimates(h, config.bit_width, t0, config.threshold(), config.signed_mode);
}

namespace {

bool all_zero(const EigenEstimateSet &s) {
    return std::all_of(s.entries.begin(), s.entries.end(), [&](const EstimateEntry &e) {
        return s.grid().decode(e.grid_int) == 0;
    });
}

// Largest |grid value| among bins carrying at least a quarter of the peak
// probability. Leakage tails stay below that level.
int64_t outermost_peak(const EigenEstimateSet &s) {
    auto grid = s.grid();
    double wmax = s.entries.front().weight;
    int64_t g = 0;
    for (const auto &e : s.entries) {
        if (e.weight >= 0.5 * wmax) {
            g = std::max(g, std::abs(grid.decode(e.grid_int)));
        }
    }
    return g;
}

// Probability-weighted mean |grid value| of the bins around the outermost peak.
double peak_position(const EigenEstimateSet &s, int64_t g) {
    auto grid = s.grid();
    double num = 0, den = 0;
    for (const auto &e : s.entries) {
        int64_t d = std::abs(grid.decode(e.grid_int));
        if (std::abs(d - g) <= 1) {
            double p = e.weight * e.weight;
            num += p * static_cast<double>(d);
            den += p;
        }
    }
    return den > 0 ? num / den : 0.0;
}

}  // namespace

IterativeResult iterative_t0(const qlsp::Qlsp &problem, const PreprocessConfig &config, std::optional<double> initial_t0) {
    config.validate();
    const int64_t top = grid_top(config.bit_width, config.signed_mode);
    const double big_t = std::ldexp(1.0, static_cast<int>(config.bit_width));
    double t = initial_t0.value_or(kPi / (big_t * config.lambda_max));
    if (!(t > 0)) {
        throw InvalidArgument("initial t0 must be positive");
    }
    size_t runs = 0;
    PreprocessConfig run_config = config;
    auto sample_at = [&](double at) {
        run_config.seed = derive_seed(config.seed, runs);
        runs++;
        return estimate_at(problem, run_config, at);
    };

    EigenEstimateSet est = sample_at(t);
    while (!all_zero(est)) {
        if (runs >= config.max_iterations) {
            throw AliasingDetected("could not find a starting t0 where every estimate decodes to zero");
        }
        t /= big_t;
        est = sample_at(t);
    }
    // A spectrum aliased onto a multiple of 2^bits also decodes to zero; at a
    // 2^bits times smaller t0 it cannot.
    if (!all_zero(sample_at(t / big_t))) {
        throw AliasingDetected("estimates at t0/2^bits do not all decode to zero; restart with a smaller initial t0");
    }

    // Double, several times per run when the observed peak leaves room.
    while (runs < config.max_iterations) {
        auto bound = static_cast<double>(outermost_peak(est)) + 0.5;
        double factor = 1;
        while (2 * factor * bound <= static_cast<double>(top) + 0.5) {
            factor *= 2;
        }
        if (factor == 1) {
            break;
        }
        t *= factor;
        est = sample_at(t);
    }
    while (runs < config.max_iterations) {
        int64_t g = outermost_peak(est);
        double pos = peak_position(est, g);
        if (g == top && pos <= static_cast<double>(top) + 0.5) {
            break;
        }
        if (!(pos > 0)) {
            break;
        }
        t *= static_cast<double>(top) / pos;
        est = sample_at(t);
    }
    return {t, runs, est};
}

nlohmann::json to_json(const EigenEstimateSet &set) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &e : set.entries) {
        entries.push_back({e.grid_int, e.lambda_tilde, e.weight});
    }
    return {{"l", set.bit_width}, {"t0", set.time_scale}, {"signed", set.signed_mode}, {"entries", entries}};
}

EigenEstimateSet estimates_from_json(const nlohmann::json &doc) {
    try {
        EigenEstimateSet s;
        s.bit_width = doc.at("l").get<size_t>();
        s.time_scale = doc.at("t0").get<double>();
        s.signed_mode = doc.at("signed").get<bool>();
        for (const auto &e : doc.at("entries")) {
            if (!e.is_array() || e.size() != 3) {
                throw ParseError("estimate entries must be [grid_int, lambda, weight]");
            }
            s.entries.push_back({e[0].get<uint64_t>(), e[1].get<double>(), e[2].get<double>()});
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("estimate set: ") + e.what());
    }
}

}  // namespace hhlab::preprocess
