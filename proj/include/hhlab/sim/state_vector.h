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

#ifndef HHLAB_SIM_STATE_VECTOR_H
#define HHLAB_SIM_STATE_VECTOR_H

#include <cstdint>
#include <span>
#include <vector>

#include "hhlab/types.h"

namespace hhlab::sim {

/// Dense amplitudes over n qubits. Qubit q is bit q of the basis index.
class StateVector {
   public:
    /// The all-zeros basis state.
    explicit StateVector(size_t num_qubits);

    static StateVector basis(size_t num_qubits, uint64_t index);
    /// Requires a power-of-two length and unit norm within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);
    /// Same as from_amplitudes but rescales to unit norm first.
    static StateVector normalized(std::vector<Complex> amplitudes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t size() const {
        return amplitudes_.size();
    }
    Complex operator[](size_t index) const {
        return amplitudes_[index];
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    /// Mutable access for simulator kernels.
    std::vector<Complex> &data() {
        return amplitudes_;
    }
    double norm() const;
    /// Tensor product with this state in the low qubits.
    StateVector tensor(const StateVector &high) const;

   private:
    StateVector(size_t num_qubits, std::vector<Complex> amplitudes);

    size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

}  // namespace hhlab::sim

#endif
