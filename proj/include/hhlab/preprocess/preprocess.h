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

#ifndef HHLAB_PREPROCESS_PREPROCESS_H
#define HHLAB_PREPROCESS_PREPROCESS_H

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "hhlab/clock_grid.h"
#include "hhlab/qlsp/qlsp.h"
#include "hhlab/sim/circuit.h"
#include "hhlab/sim/simulator.h"

namespace hhlab::preprocess {

struct EstimateEntry {
    uint64_t grid_int;
    double lambda_tilde;
    /// sqrt(count / shots).
    double weight;

    bool operator==(const EstimateEntry &) const = default;
};

/// Relevant eigenvalue estimates read from an l-bit QPE run.
struct EigenEstimateSet {
    size_t bit_width = 0;
    double time_scale = 0;
    bool signed_mode = false;
    /// Sorted by descending weight, ties by ascending grid_int.
    std::vector<EstimateEntry> entries;

    ClockGrid grid() const {
        return {bit_width, time_scale, signed_mode};
    }
    bool operator==(const EigenEstimateSet &) const = default;
};

enum class T0Mode { FixedFormula, Explicit, Iterative };

struct PreprocessConfig {
    size_t bit_width = 5;
    uint64_t shots = 4096;
    uint64_t seed = 1;
    /// Amplitude threshold; defaults to 2^-bit_width.
    std::optional<double> relevance_threshold;
    T0Mode t0_mode = T0Mode::FixedFormula;
    double explicit_t0 = 0;
    bool signed_mode = true;
    /// A-priori bound on |lambda| used by the fixed formula.
    double lambda_max = 1.0;
    size_t max_iterations = 12;

    double threshold() const;
    /// Throws InvalidArgument.
    void validate() const;
};

/// Controlled evolutions and inverse QFT without the |b> preparation, on
/// num_qubits(b) + bits qubits laid out as in build_qpe_circuit.
sim::Circuit build_qpe_core(const qlsp::Qlsp &problem, size_t bits, double t0);

/// Registers: "b" on the low qubits, "clock" above it. Clock qubit r controls
/// U^(2^r) with U = exp(i A t0 / 2^bits), followed by the inverse QFT.
sim::Circuit build_qpe_circuit(const qlsp::Qlsp &problem, size_t bits, double t0);

/// Exact clock distribution of the QPE circuit, indexed by pattern.
std::vector<double> qpe_distribution(const qlsp::Qlsp &problem, size_t bits, double t0);

/// Samples the clock register of the QPE circuit.
sim::Histogram run_qpe(const qlsp::Qlsp &problem, size_t bits, double t0, uint64_t shots, uint64_t seed);

/// Keeps bins whose amplitude sqrt(count/shots) reaches the threshold.
/// Throws EmptyEstimate when nothing survives.
EigenEstimateSet extract_estimates(
    const sim::Histogram &histogram, size_t bits, double t0, double threshold, bool signed_mode);

/// t0 = 2*pi*g_top/lambda_max, where g_top is the largest non-wrapping grid
/// value (2^k - 1 unsigned, 2^(k-1) - 1 signed).
double fixed_t0(double lambda_max, size_t k, bool signed_mode = false);
double fixed_t0(const qlsp::Qlsp &problem, size_t k, bool signed_mode = false);

struct IterativeResult {
    double t0;
    size_t iterations;
    EigenEstimateSet estimates;
};

/// Searches for the largest t0 that keeps the top estimate on the largest
/// non-wrapping grid value, then verifies at t0_init / 2^bits that nothing
/// aliases. Throws AliasingDetected when the verification fails.
IterativeResult iterative_t0(const qlsp::Qlsp &problem, const PreprocessConfig &config, std::optional<double> initial_t0 = {});

/// Samples QPE at the given t0 and extracts estimates with the configured threshold.
EigenEstimateSet estimate_at(const qlsp::Qlsp &problem, const PreprocessConfig &config, double t0);

nlohmann::json to_json(const EigenEstimateSet &set);
EigenEstimateSet estimates_from_json(const nlohmann::json &doc);

}  // namespace hhlab::preprocess

#endif
