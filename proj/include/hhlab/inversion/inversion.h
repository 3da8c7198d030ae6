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

#ifndef HHLAB_INVERSION_INVERSION_H
#define HHLAB_INVERSION_INVERSION_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hhlab/preprocess/preprocess.h"
#include "hhlab/sim/circuit.h"

namespace hhlab::inversion {

struct Rotation {
    uint64_t pattern;
    /// RY angle on the ancilla. Negative for negative eigenvalue estimates.
    double angle;

    bool operator==(const Rotation &) const = default;
};

struct InversionPlan {
    size_t bit_width = 0;
    bool signed_mode = false;
    double constant_c = 0;
    /// Sorted by pattern.
    std::vector<Rotation> rotations;
    /// Non-fatal events such as arcsin clamping.
    std::vector<std::string> diagnostics;

    std::optional<double> angle_of(uint64_t pattern) const;
};

enum class AlphaMode { Linear, Exact };
enum class AnglePolicy { LeastSquares, PaperFormula };

/// C/lambda for |lambda| >= c, else 0. Keeps the sign of lambda.
double inversion_amplitude(double lambda_tilde, double c);

/// Overlap between a phase and a clock basis state delta radians away.
/// Linear: max(0, 1 - delta/2pi). Exact: the sine-window overlap normalized so
/// alpha(0) = 1, with removable singularities filled by their limits.
double alpha_overlap(double delta, AlphaMode mode, uint64_t big_t);

/// One rotation per nonzero pattern with theta = 2 asin(h(lambda, c)).
/// c defaults to the smallest nonzero grid value 2pi/t0.
InversionPlan plan_canonical(size_t k, double t0, bool signed_mode, std::optional<double> c = {});

/// Rotations at the patterns of the relevant k-bit estimates, strongest
/// max_rotations first. c = min |lambda| over the kept estimates.
InversionPlan plan_hybrid(const preprocess::EigenEstimateSet &estimates, std::optional<size_t> max_rotations = {});

struct EnhancedOptions {
    size_t k = 3;
    double t0 = 0;
    /// Defaults to 2^-k.
    std::optional<double> filter_threshold;
    AnglePolicy policy = AnglePolicy::LeastSquares;
    AlphaMode alpha = AlphaMode::Linear;
};

/// Projects l-bit estimates onto the k-bit grid of t0 and picks one angle per
/// touched pattern.
InversionPlan plan_enhanced(const preprocess::EigenEstimateSet &estimates, const EnhancedOptions &options);

/// One RY per rotation on the ancilla, controlled by every clock qubit with
/// polarity taken from the pattern bits (bit i <-> clock_qubits[i]).
sim::Circuit build_inversion_circuit(
    const InversionPlan &plan, std::span<const size_t> clock_qubits, size_t ancilla, size_t num_qubits);

nlohmann::json to_json(const InversionPlan &plan);
InversionPlan plan_from_json(const nlohmann::json &doc);

}  // namespace hhlab::inversion

#endif
