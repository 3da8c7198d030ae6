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

#ifndef HHLAB_SIM_NOISE_H
#define HHLAB_SIM_NOISE_H

#include <cstdint>

#include "hhlab/sim/circuit.h"

namespace hhlab::sim {

struct NoiseSpec {
    double per_gate_pauli_probability = 0;
    uint64_t rng_seed = 0;
};

/// After each gate, with the given probability, inserts a uniformly chosen
/// X/Y/Z on one uniformly chosen qubit of that gate. Deterministic per seed.
Circuit inject_noise(const Circuit &circuit, const NoiseSpec &spec);

}  // namespace hhlab::sim

#endif
