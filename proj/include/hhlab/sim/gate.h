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

#ifndef HHLAB_SIM_GATE_H
#define HHLAB_SIM_GATE_H

#include <cstddef>
#include <string>
#include <vector>

#include "hhlab/types.h"

namespace hhlab::sim {

enum class GateKind { Hadamard, PauliX, PauliY, PauliZ, RY, Swap, Unitary };

enum class Polarity : uint8_t { OnOne, OnZero };

struct Control {
    size_t qubit;
    Polarity polarity = Polarity::OnOne;

    bool operator==(const Control &) const = default;
};

/// One gate of the circuit IR.
///
/// For Unitary gates targets[0] is the least significant bit of the matrix
/// row/column index.
struct Gate {
    GateKind kind;
    std::vector<size_t> targets;
    std::vector<Control> controls;
    double angle = 0;
    Matrix matrix;
    std::string label;

    /// Throws InvalidGate if the gate is malformed, or InvalidCircuit if it
    /// references a qubit outside [0, num_qubits).
    void validate(size_t num_qubits) const;
    Gate adjoint() const;
    Gate with_control(size_t qubit, Polarity polarity = Polarity::OnOne) const;
    Gate with_controls(const std::vector<Control> &extra) const;
    /// Matrix acting on the target qubits (controls excluded).
    Matrix target_matrix() const;
    /// Targets followed by control qubits.
    std::vector<size_t> support() const;

    bool operator==(const Gate &other) const;
};

Gate hadamard(size_t q);
Gate pauli_x(size_t q);
Gate pauli_y(size_t q);
Gate pauli_z(size_t q);
Gate ry(size_t q, double angle);
Gate swap(size_t a, size_t b);
Gate cnot(size_t control, size_t target);
Gate unitary(std::vector<size_t> targets, Matrix matrix, std::string label = "U");

std::string gate_kind_name(GateKind kind);

/// RY(angle) = [[cos, -sin], [sin, cos]] of angle/2.
Matrix ry_matrix(double angle);

}  // namespace hhlab::sim

#endif
