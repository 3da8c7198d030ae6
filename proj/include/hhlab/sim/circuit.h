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

#ifndef HHLAB_SIM_CIRCUIT_H
#define HHLAB_SIM_CIRCUIT_H

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hhlab/sim/gate.h"

namespace hhlab::sim {

struct QubitRange {
    size_t start = 0;
    size_t size = 0;

    size_t operator[](size_t i) const {
        return start + i;
    }
    std::vector<size_t> qubits() const;
    bool operator==(const QubitRange &) const = default;
};

/// Ordered gate list over a fixed number of qubits with named registers.
class Circuit {
   public:
    explicit Circuit(size_t num_qubits = 0);

    size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    size_t size() const {
        return gates_.size();
    }
    bool empty() const {
        return gates_.empty();
    }

    /// Validates then appends. Throws InvalidGate / InvalidCircuit.
    Circuit &append(Gate gate);
    /// Appends every gate of a circuit of the same width.
    Circuit &append(const Circuit &other);
    /// Appends a narrower circuit, relabelling its qubit q as qubit_map[q].
    Circuit &append_mapped(const Circuit &other, std::span<const size_t> qubit_map);

    /// Registers must be in range and pairwise disjoint.
    void add_register(const std::string &name, QubitRange range);
    const std::map<std::string, QubitRange> &registers() const {
        return registers_;
    }
    bool has_register(const std::string &name) const;
    QubitRange reg(const std::string &name) const;

    /// Gate-reversed adjoint. Registers are kept.
    Circuit inverse() const;

    bool operator==(const Circuit &other) const;

   private:
    size_t num_qubits_;
    std::vector<Gate> gates_;
    std::map<std::string, QubitRange> registers_;
};

/// Quantum Fourier transform on the listed qubits (qubits[0] least significant),
/// including the final bit-reversal swaps.
Circuit qft(size_t num_qubits, std::span<const size_t> qubits);
Circuit inverse_qft(size_t num_qubits, std::span<const size_t> qubits);

struct GateReport {
    size_t gate_count = 0;
    size_t two_qubit_count = 0;
    size_t depth = 0;

    bool operator==(const GateReport &) const = default;
};

/// Counts on the logical IR. two_qubit_count counts every gate touching two or
/// more qubits. Depth uses greedy layering.
GateReport gate_report(const Circuit &circuit);

}  // namespace hhlab::sim

#endif
