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

#include "hhlab/pipeline/pipeline.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hhlab/errors.h"
#include "hhlab/rng.h"

namespace hhlab::pipeline {

using sim::Circuit;
using sim::QubitRange;
using sim::StateVector;

namespace {

constexpr size_t kMaxQubits = 20;

}  // namespace

void RunConfig::validate() const {
    if (clock_bits < 1 || clock_bits > 12) {
        throw InvalidArgument("clock width k must lie in [1, 12]");
    }
    if (variant == Variant::Enhanced && preprocess_bits <= clock_bits) {
        throw InvalidArgument("enhanced runs need l > k");
    }
    if (variant == Variant::Hybrid && preprocess_bits != clock_bits) {
        throw InvalidArgument("hybrid runs need l = k");
    }
    if (readout != ReadoutMode::ExactProjection && readout_shots < 1) {
        throw InvalidArgument("sampled readouts need at least one shot");
    }
    if (noise && !(noise->per_gate_pauli_probability >= 0 && noise->per_gate_pauli_probability <= 1)) {
        throw InvalidArgument("noise probability must lie in [0, 1]");
    }
    if (enhancement_threshold && !(*enhancement_threshold > 0)) {
        throw InvalidArgument("enhancement threshold must be positive");
    }
    preprocess::PreprocessConfig p = preprocess;
    p.bit_width = variant == Variant::Enhanced ? preprocess_bits : clock_bits;
    p.validate();
}

HhlLayout hhl_layout(size_t problem_qubits, size_t k) {
    size_t total = problem_qubits + k + 1;
    return {{0, problem_qubits}, {problem_qubits, k}, problem_qubits + k, total};
}

Circuit assemble_hhl(const qlsp::Qlsp &problem, size_t k, double t0, const inversion::InversionPlan &plan) {
    if (plan.bit_width != k) {
        throw InvalidArgument("plan width does not match the clock register");
    }
    auto layout = hhl_layout(problem.num_qubits(), k);
    if (layout.num_qubits >= kMaxQubits) {
        throw CapacityError("HHL circuit would need " + std::to_string(layout.num_qubits) + " qubits");
    }
    Circuit c(layout.num_qubits);
    c.add_register("b", layout.b);
    c.add_register("clock", layout.clock);
    c.add_register("a", {layout.ancilla, 1});

    Circuit qpe = preprocess::build_qpe_core(problem, k, t0);
    std::vector<size_t> map(qpe.num_qubits());
    std::iota(map.begin(), map.end(), size_t{0});

    c.append(sim::unitary(layout.b.qubits(), qlsp::state_preparation_matrix(problem.b()), "prep_b"));
    c.append_mapped(qpe, map);
    auto clock = layout.clock.qubits();
    c.append(inversion::build_inversion_circuit(plan, clock, layout.ancilla, layout.num_qubits));
    c.append_mapped(qpe.inverse(), map);
    return c;
}

double projected_fidelity(
    const StateVector &state, std::span<const size_t> compared, std::optional<size_t> condition, const Vector &x) {
    if (static_cast<Eigen::Index>(size_t{1} << compared.size()) != x.size()) {
        throw InvalidArgument("reference vector does not match the compared register");
    }
    uint64_t reg_mask = 0;
    for (size_t q : compared) {
        reg_mask |= uint64_t{1} << q;
    }
    uint64_t cond_bit = condition ? uint64_t{1} << *condition : 0;
    // Group amplitudes by the rest of the basis index; each group is one
    // branch vector of the compared register.
    std::map<uint64_t, Complex> overlaps;
    double total = 0;
    for (uint64_t i = 0; i < state.size(); i++) {
        if (condition && !(i & cond_bit)) {
            continue;
        }
        Complex a = state[i];
        if (a == Complex(0)) {
            continue;
        }
        total += std::norm(a);
        uint64_t local = 0;
        for (size_t j = 0; j < compared.size(); j++) {
            local |= ((i >> compared[j]) & 1) << j;
        }
        overlaps[i & ~reg_mask] += std::conj(x(static_cast<Eigen::Index>(local))) * a;
    }
    if (total < 1e-15) {
        throw ZeroProbabilityBranch("conditioned branch has zero probability");
    }
    double f2 = 0;
    for (const auto &[rest, o] : overlaps) {
        f2 += std::norm(o);
    }
    return std::sqrt(std::clamp(f2 / total, 0.0, 1.0));
}

namespace {

struct SwapSetup {
    StateVector state;
    size_t st_ancilla;
    std::optional<size_t> condition;
};

SwapSetup swap_test_state(
    const StateVector &state, std::span<const size_t> compared, std::optional<size_t> condition, const Vector &x) {
    size_t m = compared.size();
    if (m == 0 || static_cast<Eigen::Index>(size_t{1} << m) != x.size()) {
        throw InvalidArgument("reference vector does not match the compared register");
    }
    size_t n = state.num_qubits();
    if (n + m + 1 >= 2 * kMaxQubits) {
        throw CapacityError("SWAP test would need too many qubits");
    }
    StateVector full = state.tensor(StateVector(m + 1));
    Circuit c(n + m + 1);
    c.add_register("st", {n, m});
    c.add_register("st a", {n + m, 1});
    std::vector<size_t> st = c.reg("st").qubits();
    size_t sta = n + m;
    c.append(sim::unitary(st, qlsp::state_preparation_matrix(x.normalized()), "prep_x"));
    c.append(sim::hadamard(sta));
    for (size_t i = 0; i < m; i++) {
        c.append(sim::swap(compared[i], st[i]).with_control(sta));
    }
    c.append(sim::hadamard(sta));
    return {sim::apply_circuit(full, c), sta, condition};
}

}  // namespace

double swap_test_probability(
    const StateVector &state, std::span<const size_t> compared, std::optional<size_t> condition, const Vector &x) {
    auto setup = swap_test_state(state, compared, condition, x);
    double joint = 0, cond = 0;
    uint64_t sbit = uint64_t{1} << setup.st_ancilla;
    uint64_t cbit = condition ? uint64_t{1} << *condition : 0;
    for (uint64_t i = 0; i < setup.state.size(); i++) {
        if (condition && !(i & cbit)) {
            continue;
        }
        double p = std::norm(setup.state[i]);
        cond += p;
        if (i & sbit) {
            joint += p;
        }
    }
    if (cond < 1e-15) {
        throw ZeroProbabilityBranch("conditioned branch has zero probability");
    }
    return joint / cond;
}

SwapTestEstimate swap_test(
    const StateVector &state,
    std::span<const size_t> compared,
    std::optional<size_t> condition,
    const Vector &x,
    uint64_t shots,
    uint64_t seed) {
    if (shots < 1) {
        throw InvalidArgument("SWAP test needs at least one shot");
    }
    auto setup = swap_test_state(state, compared, condition, x);
    std::vector<size_t> measured{setup.st_ancilla};
    if (condition) {
        measured.push_back(*condition);
    }
    auto h = sim::sample(setup.state, measured, shots, seed);
    uint64_t kept = 0, ones = 0;
    for (const auto &[key, count] : h) {
        uint64_t v = sim::parse_bits(key);
        if (condition && !((v >> 1) & 1)) {
            continue;
        }
        kept += count;
        if (v & 1) {
            ones += count;
        }
    }
    if (kept == 0) {
        throw InsufficientShots("no shot survived the ancilla post-selection");
    }
    double p = static_cast<double>(ones) / static_cast<double>(kept);
    return {std::sqrt(std::max(0.0, 1 - 2 * p)), p, kept};
}

double swap_test_fidelity(const Vector &x_tilde, const Vector &x, uint64_t shots, uint64_t seed) {
    std::vector<Complex> amps(x_tilde.data(), x_tilde.data() + x_tilde.size());
    auto state = StateVector::normalized(std::move(amps));
    std::vector<size_t> reg(state.num_qubits());
    std::iota(reg.begin(), reg.end(), size_t{0});
    return swap_test(state, reg, std::nullopt, x, shots, seed).overlap;
}

namespace {

double direct_fidelity(const sim::Histogram &histogram, const Vector &x) {
    uint64_t total = 0;
    for (const auto &[key, count] : histogram) {
        total += count;
    }
    if (histogram.empty() || total == 0) {
        throw InvalidArgument("direct readout needs a nonempty histogram");
    }
    double f = 0;
    for (const auto &[key, count] : histogram) {
        uint64_t i = sim::parse_bits(key);
        if (static_cast<Eigen::Index>(i) >= x.size()) {
            throw InvalidArgument("histogram key " + key + " exceeds the solution dimension");
        }
        // Borrowing the phase of x_i makes each term |x_i| sqrt(freq_i).
        f += std::sqrt(static_cast<double>(count) / static_cast<double>(total)) * std::abs(x(static_cast<Eigen::Index>(i)));
    }
    return f;
}

}  // namespace

double direct_distribution_error(const sim::Histogram &histogram, const Vector &x) {
    return error_from_fidelity(direct_fidelity(histogram, x));
}

double error_from_fidelity(double fidelity) {
    if (!(fidelity <= 1 + 1e-9)) {
        throw InvalidArgument("fidelity above 1: " + std::to_string(fidelity));
    }
    return std::sqrt(std::max(0.0, 2 * (1 - fidelity)));
}

namespace {

struct Prepared {
    double t0_k;
    inversion::InversionPlan plan;
    std::optional<preprocess::EigenEstimateSet> estimates;
};

Prepared prepare(const qlsp::Qlsp &problem, const RunConfig &config) {
    const auto &pc = config.preprocess;
    size_t k = config.clock_bits;
    bool sm = pc.signed_mode;
    double t0_k = 0;
    if (pc.t0_mode == preprocess::T0Mode::Explicit) {
        t0_k = pc.explicit_t0;
    } else {
        t0_k = preprocess::fixed_t0(pc.lambda_max, k, sm);
    }
    if (config.variant == Variant::Canonical) {
        return {t0_k, inversion::plan_canonical(k, t0_k, sm), std::nullopt};
    }

    preprocess::PreprocessConfig run_pc = pc;
    size_t bits = config.variant == Variant::Hybrid ? k : config.preprocess_bits;
    run_pc.bit_width = bits;
    run_pc.seed = derive_seed(pc.seed, static_cast<uint64_t>(config.variant));
    double ratio = std::ldexp(1.0, static_cast<int>(bits - k));
    preprocess::EigenEstimateSet est;
    if (pc.t0_mode == preprocess::T0Mode::Iterative) {
        auto it = preprocess::iterative_t0(problem, run_pc);
        est = it.estimates;
        t0_k = it.t0 * static_cast<double>(grid_top(k, sm)) / static_cast<double>(grid_top(bits, sm));
    } else {
        est = preprocess::estimate_at(problem, run_pc, t0_k * ratio);
    }

    if (config.variant == Variant::Hybrid) {
        std::optional<size_t> cap = config.hybrid_max_rotations.value_or(problem.dimension());
        if (cap == 0u) {
            cap.reset();
        }
        return {t0_k, inversion::plan_hybrid(est, cap), est};
    }
    inversion::EnhancedOptions opts;
    opts.k = k;
    opts.t0 = t0_k;
    opts.filter_threshold = config.enhancement_threshold;
    opts.policy = config.angle_policy;
    opts.alpha = config.alpha;
    return {t0_k, inversion::plan_enhanced(est, opts), est};
}

Vector clock_zero_branch(const StateVector &state, const HhlLayout &layout) {
    auto n = static_cast<Eigen::Index>(size_t{1} << layout.b.size);
    Vector v(n);
    uint64_t a = uint64_t{1} << layout.ancilla;
    for (Eigen::Index i = 0; i < n; i++) {
        v(i) = state[a | static_cast<uint64_t>(i)];
    }
    return v;
}

void fix_phase(Vector &v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); i++) {
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) {
            best = i;
        }
    }
    if (std::abs(v(best)) > 0) {
        v *= std::abs(v(best)) / v(best);
    }
}

}  // namespace

RunResult run(const qlsp::Qlsp &problem, const RunConfig &config) {
    config.validate();
    auto prepared = prepare(problem, config);
    Circuit circuit = assemble_hhl(problem, config.clock_bits, prepared.t0_k, prepared.plan);
    auto layout = hhl_layout(problem.num_qubits(), config.clock_bits);

    RunResult result;
    result.gates = sim::gate_report(circuit);
    result.t0 = prepared.t0_k;
    result.plan = std::move(prepared.plan);
    result.estimates = std::move(prepared.estimates);

    Circuit executed = config.noise ? sim::inject_noise(circuit, *config.noise) : circuit;
    StateVector out = sim::apply_circuit(StateVector(layout.num_qubits), executed);
    result.success_probability = std::clamp(sim::outcome_probability(out, layout.ancilla, 1), 0.0, 1.0);
    if (result.success_probability < 1e-15) {
        throw DegenerateRun("the inversion ancilla never reads 1");
    }

    Vector x = qlsp::classical_solution(problem).state;
    fix_phase(x);
    auto b_qubits = layout.b.qubits();
    result.exact_fidelity = projected_fidelity(out, b_qubits, layout.ancilla, x);

    Vector branch = clock_zero_branch(out, layout) / std::sqrt(result.success_probability);
    result.clock_return_probability = branch.squaredNorm();
    result.x_tilde = branch;
    if (branch.norm() > 1e-12) {
        result.x_tilde.normalize();
        fix_phase(result.x_tilde);
    }

    switch (config.readout) {
        case ReadoutMode::ExactProjection:
            result.fidelity = result.exact_fidelity;
            break;
        case ReadoutMode::SwapTest:
            result.fidelity =
                swap_test(out, b_qubits, layout.ancilla, x, config.readout_shots, config.readout_seed).overlap;
            break;
        case ReadoutMode::DirectSample: {
            std::vector<size_t> measured = b_qubits;
            measured.push_back(layout.ancilla);
            auto h = sim::sample(out, measured, config.readout_shots, config.readout_seed);
            sim::Histogram kept;
            for (const auto &[key, count] : h) {
                if (key.front() == '1') {
                    kept[key.substr(1)] += count;
                }
            }
            if (kept.empty()) {
                throw InsufficientShots("no shot survived the ancilla post-selection");
            }
            result.fidelity = direct_fidelity(kept, x);
            break;
        }
    }
    result.error = error_from_fidelity(result.fidelity);
    return result;
}

nlohmann::json to_json(const RunResult &result) {
    nlohmann::json doc{
        {"fidelity", result.fidelity},
        {"error", result.error},
        {"exact_fidelity", result.exact_fidelity},
        {"success_probability", result.success_probability},
        {"gate_count", result.gates.gate_count},
        {"two_qubit_count", result.gates.two_qubit_count},
        {"depth", result.gates.depth},
        {"t0", result.t0},
        {"clock_return_probability", result.clock_return_probability},
        {"plan", inversion::to_json(result.plan)},
    };
    if (result.estimates) {
        doc["estimates"] = preprocess::to_json(*result.estimates);
    }
    return doc;
}

}  // namespace hhlab::pipeline
