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

#include "hhlab/sim/state_vector.h"

#include <bit>
#include <cmath>

#include "hhlab/errors.h"

namespace hhlab::sim {

StateVector::StateVector(size_t num_qubits) : StateVector(basis(num_qubits, 0)) {
}

StateVector::StateVector(size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::basis(size_t num_qubits, uint64_t index) {
    if (num_qubits >= 63) {
        throw CapacityError("too many qubits for a dense state: " + std::to_string(num_qubits));
    }
    size_t n = size_t{1} << num_qubits;
    if (index >= n) {
        throw InvalidArgument("basis index out of range");
    }
    std::vector<Complex> amps(n);
    amps[index] = 1;
    return StateVector(num_qubits, std::move(amps));
}

static size_t checked_width(size_t n) {
    if (n == 0 || !std::has_single_bit(n)) {
        throw InvalidArgument("amplitude count must be a power of two, got " + std::to_string(n));
    }
    return static_cast<size_t>(std::countr_zero(n));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    size_t q = checked_width(amplitudes.size());
    StateVector s(q, std::move(amplitudes));
    if (std::abs(s.norm() - 1) > 1e-10) {
        throw InvalidArgument("amplitudes are not normalized");
    }
    return s;
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    size_t q = checked_width(amplitudes.size());
    StateVector s(q, std::move(amplitudes));
    double n = s.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw InvalidArgument("cannot normalize a zero or non-finite vector");
    }
    for (auto &a : s.amplitudes_) {
        a /= n;
    }
    return s;
}

double StateVector::norm() const {
    double t = 0;
    for (const auto &a : amplitudes_) {
        t += std::norm(a);
    }
    return std::sqrt(t);
}

StateVector StateVector::tensor(const StateVector &high) const {
    std::vector<Complex> out(size() * high.size());
    for (size_t h = 0; h < high.size(); h++) {
        for (size_t l = 0; l < size(); l++) {
            out[(h << num_qubits_) | l] = high[h] * amplitudes_[l];
        }
    }
    return StateVector(num_qubits_ + high.num_qubits_, std::move(out));
}

}  // namespace hhlab::sim
