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

#ifndef HHLAB_SIM_SIMULATOR_H
#define HHLAB_SIM_SIMULATOR_H

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hhlab/sim/circuit.h"
#include "hhlab/sim/state_vector.h"

namespace hhlab::sim {

/// Bitstring -> count. Keys list the most significant measured qubit first.
using Histogram = std::map<std::string, uint64_t>;

StateVector apply_circuit(const StateVector &state, const Circuit &circuit);
void apply_gate_inplace(StateVector &state, const Gate &gate);

/// Probability of reading `outcome` on `qubit`.
double outcome_probability(const StateVector &state, size_t qubit, int outcome);

struct Postselected {
    StateVector state;
    double probability;
};
/// Projects onto qubit == outcome and renormalizes.
/// Throws ZeroProbabilityBranch below probability 1e-15.
Postselected postselect(const StateVector &state, size_t qubit, int outcome);

/// Probability of each joint outcome; bit i of the index is qubits[i].
std::vector<double> marginal_probabilities(const StateVector &state, std::span<const size_t> qubits);

/// Draws shots from the Born distribution of the listed qubits.
Histogram sample(const StateVector &state, std::span<const size_t> qubits, uint64_t shots, uint64_t seed);

/// <a|b>.
Complex inner_product(const StateVector &a, const StateVector &b);

/// value rendered in `width` characters, most significant bit first.
std::string render_bits(uint64_t value, size_t width);
/// Inverse of render_bits. Throws ParseError on non-binary characters.
uint64_t parse_bits(const std::string &bits);

}  // namespace hhlab::sim

#endif
