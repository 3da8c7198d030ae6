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

#include "hhlab/sim/noise.h"

#include <cmath>
#include <random>

#include "hhlab/errors.h"

namespace hhlab::sim {

Circuit inject_noise(const Circuit &circuit, const NoiseSpec &spec) {
    double p = spec.per_gate_pauli_probability;
    if (!(p >= 0 && p <= 1)) {
        throw InvalidArgument("noise probability must lie in [0, 1]");
    }
    Circuit out(circuit.num_qubits());
    for (const auto &[name, range] : circuit.registers()) {
        out.add_register(name, range);
    }
    std::mt19937_64 rng(spec.rng_seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const auto &g : circuit.gates()) {
        out.append(g);
        if (p == 0 || !(p == 1 || coin(rng) < p)) {
            continue;
        }
        auto support = g.support();
        size_t q = support[std::uniform_int_distribution<size_t>(0, support.size() - 1)(rng)];
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
            case 0:
                out.append(pauli_x(q));
                break;
            case 1:
                out.append(pauli_y(q));
                break;
            default:
                out.append(pauli_z(q));
                break;
        }
    }
    return out;
}

}  // namespace hhlab::sim
