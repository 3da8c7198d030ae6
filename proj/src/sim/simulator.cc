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

#include "hhlab/sim/simulator.h"

#include <cmath>
#include <random>

#include "hhlab/errors.h"

namespace hhlab::sim {

namespace {

// Applies a 2x2 matrix on one target with a control mask.
void apply_single(std::vector<Complex> &amps, size_t target, const Matrix &m, uint64_t mask, uint64_t want) {
    uint64_t bit = uint64_t{1} << target;
    Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (uint64_t i = 0; i < amps.size(); i++) {
        if ((i & bit) || (i & mask) != want) {
            continue;
        }
        Complex a = amps[i];
        Complex b = amps[i | bit];
        amps[i] = m00 * a + m01 * b;
        amps[i | bit] = m10 * a + m11 * b;
    }
}

void apply_multi(
    std::vector<Complex> &amps, const std::vector<size_t> &targets, const Matrix &m, uint64_t mask, uint64_t want) {
    size_t dim = size_t{1} << targets.size();
    std::vector<uint64_t> offsets(dim, 0);
    uint64_t target_mask = 0;
    for (size_t s = 0; s < dim; s++) {
        for (size_t t = 0; t < targets.size(); t++) {
            if ((s >> t) & 1) {
                offsets[s] |= uint64_t{1} << targets[t];
            }
        }
    }
    for (size_t t : targets) {
        target_mask |= uint64_t{1} << t;
    }
    std::vector<Complex> in(dim);
    for (uint64_t i = 0; i < amps.size(); i++) {
        if ((i & target_mask) || (i & mask) != want) {
            continue;
        }
        for (size_t s = 0; s < dim; s++) {
            in[s] = amps[i | offsets[s]];
        }
        for (size_t r = 0; r < dim; r++) {
            Complex acc = 0;
            for (size_t c = 0; c < dim; c++) {
                acc += m(r, c) * in[c];
            }
            amps[i | offsets[r]] = acc;
        }
    }
}

}  // namespace

void apply_gate_inplace(StateVector &state, const Gate &gate) {
    gate.validate(state.num_qubits());
    uint64_t mask = 0, want = 0;
    for (const auto &c : gate.controls) {
        mask |= uint64_t{1} << c.qubit;
        if (c.polarity == Polarity::OnOne) {
            want |= uint64_t{1} << c.qubit;
        }
    }
    auto &amps = state.data();
    if (gate.kind == GateKind::Swap) {
        uint64_t a = uint64_t{1} << gate.targets[0];
        uint64_t b = uint64_t{1} << gate.targets[1];
        for (uint64_t i = 0; i < amps.size(); i++) {
            if ((i & a) && !(i & b) && (i & mask) == want) {
                std::swap(amps[i], amps[(i ^ a) | b]);
            }
        }
        return;
    }
    Matrix m = gate.target_matrix();
    if (gate.targets.size() == 1) {
        apply_single(amps, gate.targets[0], m, mask, want);
    } else {
        apply_multi(amps, gate.targets, m, mask, want);
    }
}

StateVector apply_circuit(const StateVector &state, const Circuit &circuit) {
    if (state.num_qubits() != circuit.num_qubits()) {
        throw InvalidCircuit(
            "state has " + std::to_string(state.num_qubits()) + " qubits but the circuit has " +
            std::to_string(circuit.num_qubits()));
    }
    StateVector out = state;
    for (const auto &g : circuit.gates()) {
        apply_gate_inplace(out, g);
    }
    return out;
}

double outcome_probability(const StateVector &state, size_t qubit, int outcome) {
    if (qubit >= state.num_qubits()) {
        throw InvalidArgument("qubit " + std::to_string(qubit) + " out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw InvalidArgument("outcome must be 0 or 1");
    }
    uint64_t bit = uint64_t{1} << qubit;
    double p = 0;
    for (uint64_t i = 0; i < state.size(); i++) {
        if (static_cast<bool>(i & bit) == static_cast<bool>(outcome)) {
            p += std::norm(state[i]);
        }
    }
    return p;
}

Postselected postselect(const StateVector &state, size_t qubit, int outcome) {
    double p = outcome_probability(state, qubit, outcome);
    if (p < 1e-15) {
        throw ZeroProbabilityBranch(
            "outcome " + std::to_string(outcome) + " on qubit " + std::to_string(qubit) + " has probability " +
            std::to_string(p));
    }
    uint64_t bit = uint64_t{1} << qubit;
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (uint64_t i = 0; i < amps.size(); i++) {
        if (static_cast<bool>(i & bit) != static_cast<bool>(outcome)) {
            amps[i] = 0;
        }
    }
    return {StateVector::normalized(std::move(amps)), std::min(1.0, p)};
}

std::vector<double> marginal_probabilities(const StateVector &state, std::span<const size_t> qubits) {
    if (qubits.empty()) {
        throw InvalidArgument("no qubits to measure");
    }
    for (size_t q : qubits) {
        if (q >= state.num_qubits()) {
            throw InvalidArgument("qubit " + std::to_string(q) + " out of range");
        }
    }
    std::vector<double> probs(size_t{1} << qubits.size(), 0.0);
    for (uint64_t i = 0; i < state.size(); i++) {
        uint64_t key = 0;
        for (size_t j = 0; j < qubits.size(); j++) {
            key |= ((i >> qubits[j]) & 1) << j;
        }
        probs[key] += std::norm(state[i]);
    }
    return probs;
}

Histogram sample(const StateVector &state, std::span<const size_t> qubits, uint64_t shots, uint64_t seed) {
    if (shots < 1) {
        throw InvalidArgument("shots must be at least 1");
    }
    auto probs = marginal_probabilities(state, qubits);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<uint64_t> dist(probs.begin(), probs.end());
    std::vector<uint64_t> counts(probs.size(), 0);
    for (uint64_t s = 0; s < shots; s++) {
        counts[dist(rng)]++;
    }
    Histogram h;
    for (uint64_t k = 0; k < counts.size(); k++) {
        if (counts[k]) {
            h[render_bits(k, qubits.size())] = counts[k];
        }
    }
    return h;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw InvalidArgument("inner product of states with different qubit counts");
    }
    Complex t = 0;
    for (size_t i = 0; i < a.size(); i++) {
        t += std::conj(a[i]) * b[i];
    }
    return t;
}

std::string render_bits(uint64_t value, size_t width) {
    std::string s(width, '0');
    for (size_t i = 0; i < width; i++) {
        if ((value >> i) & 1) {
            s[width - 1 - i] = '1';
        }
    }
    return s;
}

uint64_t parse_bits(const std::string &bits) {
    if (bits.empty() || bits.size() > 63) {
        throw ParseError("bitstring '" + bits + "' has an unsupported length");
    }
    uint64_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ParseError("bitstring '" + bits + "' contains a non-binary character");
        }
        v = (v << 1) | static_cast<uint64_t>(c == '1');
    }
    return v;
}

}  // namespace hhlab::sim
