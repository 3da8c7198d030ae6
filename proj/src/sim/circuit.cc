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

#include "hhlab/sim/circuit.h"

#include <algorithm>
#include <cmath>

#include "hhlab/errors.h"

namespace hhlab::sim {

std::vector<size_t> QubitRange::qubits() const {
    std::vector<size_t> out(size);
    for (size_t i = 0; i < size; i++) {
        out[i] = start + i;
    }
    return out;
}

Circuit::Circuit(size_t num_qubits) : num_qubits_(num_qubits) {
}

Circuit &Circuit::append(Gate gate) {
    gate.validate(num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw InvalidCircuit("cannot append a circuit of a different width");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit &Circuit::append_mapped(const Circuit &other, std::span<const size_t> qubit_map) {
    if (qubit_map.size() != other.num_qubits_) {
        throw InvalidCircuit("qubit map size does not match the embedded circuit");
    }
    for (const auto &g : other.gates_) {
        Gate m = g;
        for (auto &t : m.targets) {
            t = qubit_map[t];
        }
        for (auto &c : m.controls) {
            c.qubit = qubit_map[c.qubit];
        }
        append(std::move(m));
    }
    return *this;
}

void Circuit::add_register(const std::string &name, QubitRange range) {
    if (range.start + range.size > num_qubits_) {
        throw InvalidCircuit("register '" + name + "' exceeds the circuit width");
    }
    for (const auto &[other_name, other] : registers_) {
        if (other_name == name) {
            throw InvalidCircuit("register '" + name + "' already defined");
        }
        bool disjoint = range.start + range.size <= other.start || other.start + other.size <= range.start;
        if (!disjoint && range.size > 0 && other.size > 0) {
            throw InvalidCircuit("register '" + name + "' overlaps '" + other_name + "'");
        }
    }
    registers_[name] = range;
}

bool Circuit::has_register(const std::string &name) const {
    return registers_.contains(name);
}

QubitRange Circuit::reg(const std::string &name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) {
        throw InvalidCircuit("no register named '" + name + "'");
    }
    return it->second;
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    out.registers_ = registers_;
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->adjoint());
    }
    return out;
}

bool Circuit::operator==(const Circuit &other) const {
    return num_qubits_ == other.num_qubits_ && gates_ == other.gates_ && registers_ == other.registers_;
}

Circuit qft(size_t num_qubits, std::span<const size_t> qubits) {
    Circuit c(num_qubits);
    size_t m = qubits.size();
    // Textbook order: process the most significant qubit first, then reverse.
    for (size_t i = m; i-- > 0;) {
        c.append(hadamard(qubits[i]));
        for (size_t j = i; j-- > 0;) {
            double phase = kPi / static_cast<double>(uint64_t{1} << (i - j));
            Matrix p = Matrix::Identity(2, 2);
            p(1, 1) = std::polar(1.0, phase);
            c.append(unitary({qubits[i]}, p, "P").with_control(qubits[j]));
        }
    }
    for (size_t i = 0; i < m / 2; i++) {
        c.append(swap(qubits[i], qubits[m - 1 - i]));
    }
    return c;
}

Circuit inverse_qft(size_t num_qubits, std::span<const size_t> qubits) {
    return qft(num_qubits, qubits).inverse();
}

GateReport gate_report(const Circuit &circuit) {
    GateReport r;
    std::vector<size_t> layer(circuit.num_qubits(), 0);
    for (const auto &g : circuit.gates()) {
        auto support = g.support();
        r.gate_count++;
        if (support.size() >= 2) {
            r.two_qubit_count++;
        }
        size_t at = 0;
        for (size_t q : support) {
            at = std::max(at, layer[q]);
        }
        at++;
        for (size_t q : support) {
            layer[q] = at;
        }
        r.depth = std::max(r.depth, at);
    }
    return r;
}

}  // namespace hhlab::sim
