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

#include "hhlab/sim/gate.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "hhlab/errors.h"

namespace hhlab::sim {

namespace {

size_t expected_targets(GateKind kind) {
    switch (kind) {
        case GateKind::Swap:
            return 2;
        case GateKind::Unitary:
            return 0;
        default:
            return 1;
    }
}

}  // namespace

Matrix ry_matrix(double angle) {
    Matrix m(2, 2);
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    m << c, -s, s, c;
    return m;
}

Matrix Gate::target_matrix() const {
    const Complex i(0, 1);
    Matrix m(2, 2);
    switch (kind) {
        case GateKind::Hadamard:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::PauliX:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::PauliY:
            m << 0, -i, i, 0;
            return m;
        case GateKind::PauliZ:
            m << 1, 0, 0, -1;
            return m;
        case GateKind::RY:
            return ry_matrix(angle);
        case GateKind::Swap: {
            Matrix s = Matrix::Zero(4, 4);
            s(0, 0) = s(3, 3) = 1;
            s(1, 2) = s(2, 1) = 1;
            return s;
        }
        case GateKind::Unitary:
            return matrix;
    }
    throw InvalidGate("unknown gate kind");
}

void Gate::validate(size_t num_qubits) const {
    size_t want = expected_targets(kind);
    if (targets.empty() || (want != 0 && targets.size() != want)) {
        throw InvalidGate(gate_kind_name(kind) + " has the wrong number of targets");
    }
    std::set<size_t> seen;
    for (size_t q : support()) {
        if (q >= num_qubits) {
            throw InvalidCircuit(
                gate_kind_name(kind) + " references qubit " + std::to_string(q) + " but the circuit has " +
                std::to_string(num_qubits) + " qubits");
        }
        if (!seen.insert(q).second) {
            throw InvalidGate(gate_kind_name(kind) + " uses qubit " + std::to_string(q) + " more than once");
        }
    }
    if (kind == GateKind::RY && !std::isfinite(angle)) {
        throw InvalidGate("RY angle is not finite");
    }
    if (kind == GateKind::Unitary) {
        auto dim = Eigen::Index{1} << targets.size();
        if (matrix.rows() != dim || matrix.cols() != dim) {
            throw InvalidGate("unitary block shape does not match its target count");
        }
        if (!matrix.allFinite()) {
            throw InvalidGate("unitary block has non-finite entries");
        }
        double dev = (matrix.adjoint() * matrix - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
        if (dev > 1e-10) {
            throw InvalidGate("unitary block '" + label + "' is not unitary (deviation " + std::to_string(dev) + ")");
        }
    }
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::RY:
            g.angle = -angle;
            break;
        case GateKind::Unitary:
            g.matrix = matrix.adjoint();
            g.label = label.ends_with("^dag") ? label.substr(0, label.size() - 4) : label + "^dag";
            break;
        default:
            break;
    }
    return g;
}

Gate Gate::with_control(size_t qubit, Polarity polarity) const {
    Gate g = *this;
    g.controls.push_back({qubit, polarity});
    return g;
}

Gate Gate::with_controls(const std::vector<Control> &extra) const {
    Gate g = *this;
    g.controls.insert(g.controls.end(), extra.begin(), extra.end());
    return g;
}

std::vector<size_t> Gate::support() const {
    std::vector<size_t> out = targets;
    for (const auto &c : controls) {
        out.push_back(c.qubit);
    }
    return out;
}

bool Gate::operator==(const Gate &other) const {
    if (kind != other.kind || targets != other.targets || controls != other.controls || angle != other.angle) {
        return false;
    }
    if (kind != GateKind::Unitary) {
        return true;
    }
    return matrix.rows() == other.matrix.rows() && matrix.cols() == other.matrix.cols() && matrix == other.matrix;
}

Gate hadamard(size_t q) {
    return Gate{GateKind::Hadamard, {q}, {}, 0, {}, "H"};
}
Gate pauli_x(size_t q) {
    return Gate{GateKind::PauliX, {q}, {}, 0, {}, "X"};
}
Gate pauli_y(size_t q) {
    return Gate{GateKind::PauliY, {q}, {}, 0, {}, "Y"};
}
Gate pauli_z(size_t q) {
    return Gate{GateKind::PauliZ, {q}, {}, 0, {}, "Z"};
}
Gate ry(size_t q, double angle) {
    return Gate{GateKind::RY, {q}, {}, angle, {}, "RY"};
}
Gate swap(size_t a, size_t b) {
    return Gate{GateKind::Swap, {a, b}, {}, 0, {}, "SWAP"};
}
Gate cnot(size_t control, size_t target) {
    return pauli_x(target).with_control(control);
}
Gate unitary(std::vector<size_t> targets, Matrix matrix, std::string label) {
    return Gate{GateKind::Unitary, std::move(targets), {}, 0, std::move(matrix), std::move(label)};
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Hadamard:
            return "H";
        case GateKind::PauliX:
            return "X";
        case GateKind::PauliY:
            return "Y";
        case GateKind::PauliZ:
            return "Z";
        case GateKind::RY:
            return "RY";
        case GateKind::Swap:
            return "SWAP";
        case GateKind::Unitary:
            return "U";
    }
    return "?";
}

}  // namespace hhlab::sim
