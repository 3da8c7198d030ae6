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

#ifndef HHLAB_PIPELINE_PIPELINE_H
#define HHLAB_PIPELINE_PIPELINE_H

#include <cstdint>
#include <optional>
#include <span>

#include "json.hpp"

#include "hhlab/inversion/inversion.h"
#include "hhlab/preprocess/preprocess.h"
#include "hhlab/qlsp/qlsp.h"
#include "hhlab/sim/noise.h"
#include "hhlab/sim/simulator.h"
#include "hhlab/variant.h"

namespace hhlab::pipeline {

enum class ReadoutMode { ExactProjection, SwapTest, DirectSample };

struct RunConfig {
    Variant variant = Variant::Enhanced;
    size_t clock_bits = 3;
    size_t preprocess_bits = 5;
    /// bit_width is taken from the variant (k for hybrid, l for enhanced);
    /// t0_mode, signed_mode and lambda_max apply to every variant.
    preprocess::PreprocessConfig preprocess;
    inversion::AnglePolicy angle_policy = inversion::AnglePolicy::LeastSquares;
    inversion::AlphaMode alpha = inversion::AlphaMode::Linear;
    /// Enhancement filter; defaults to 2^-k.
    std::optional<double> enhancement_threshold;
    /// Unset keeps at most N hybrid rotations; 0 keeps every relevant estimate.
    std::optional<size_t> hybrid_max_rotations;
    ReadoutMode readout = ReadoutMode::ExactProjection;
    uint64_t readout_shots = 4096;
    uint64_t readout_seed = 1;
    std::optional<sim::NoiseSpec> noise;

    /// Throws InvalidArgument.
    void validate() const;
};

struct RunResult {
    /// Per the readout mode; exact mode reports sqrt(<x|rho_b|x>).
    double fidelity = 0;
    double error = 0;
    /// Exact-projection fidelity, computed for every readout mode.
    double exact_fidelity = 0;
    double success_probability = 0;
    sim::GateReport gates;
    inversion::InversionPlan plan;
    /// Clock-register time scale of the HHL circuit.
    double t0 = 0;
    std::optional<preprocess::EigenEstimateSet> estimates;
    /// b register conditioned on ancilla 1 and clock 0, normalized, with the
    /// largest-magnitude component made real and nonnegative.
    Vector x_tilde;
    /// Probability that the clock returned to 0 given ancilla 1.
    double clock_return_probability = 0;
};

struct HhlLayout {
    sim::QubitRange b;
    sim::QubitRange clock;
    size_t ancilla;
    size_t num_qubits;
};
HhlLayout hhl_layout(size_t problem_qubits, size_t k);

/// prep b, QPE(k, t0), inversion, then the gate-reversed adjoint of QPE.
/// Registers "b", "clock", "a". Throws CapacityError at 20 qubits or more.
sim::Circuit assemble_hhl(const qlsp::Qlsp &problem, size_t k, double t0, const inversion::InversionPlan &plan);

/// Preprocesses (unless canonical), plans, assembles, simulates and reads out.
RunResult run(const qlsp::Qlsp &problem, const RunConfig &config);

/// Sqrt(<x|rho|x>) of the listed register after projecting `condition` onto 1.
double projected_fidelity(
    const sim::StateVector &state, std::span<const size_t> compared, std::optional<size_t> condition, const Vector &x);

struct SwapTestEstimate {
    double overlap;
    double p_one;
    uint64_t conditioned_shots;
};

/// SWAP test between the listed register of `state` and |x>, keeping only the
/// shots where `condition` reads 1. Throws InsufficientShots when none remain.
SwapTestEstimate swap_test(
    const sim::StateVector &state,
    std::span<const size_t> compared,
    std::optional<size_t> condition,
    const Vector &x,
    uint64_t shots,
    uint64_t seed);

/// Exact P(st a = 1 | condition = 1) of the same circuit.
double swap_test_probability(
    const sim::StateVector &state, std::span<const size_t> compared, std::optional<size_t> condition, const Vector &x);

/// SWAP-test estimate of |<x_tilde|x>| for two pure states.
double swap_test_fidelity(const Vector &x_tilde, const Vector &x, uint64_t shots, uint64_t seed);

/// Amplitudes sqrt(frequency) with the signs of x, compared against x.
double direct_distribution_error(const sim::Histogram &histogram, const Vector &x);

/// sqrt(2(1 - f)), with a tiny negative radicand clamped to 0.
double error_from_fidelity(double fidelity);

nlohmann::json to_json(const RunResult &result);

}  // namespace hhlab::pipeline

#endif
