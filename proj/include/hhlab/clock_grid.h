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

#ifndef HHLAB_CLOCK_GRID_H
#define HHLAB_CLOCK_GRID_H

#include <cstddef>
#include <cstdint>

namespace hhlab {

/// Maps clock-register bit patterns to eigenvalue estimates.
///
/// A pattern g read from a register of `bits` qubits stands for the eigenvalue
/// 2*pi*decode(g)/t0. In signed mode patterns with the top bit set are read as
/// two's complement negatives.
struct ClockGrid {
    size_t bits;
    double t0;
    bool signed_mode;

    uint64_t size() const {
        return uint64_t{1} << bits;
    }
    int64_t decode(uint64_t pattern) const;
    uint64_t encode(int64_t value) const;
    /// Eigenvalue represented by a pattern.
    double value(uint64_t pattern) const;
    /// Eigenvalue distance between adjacent patterns.
    double spacing() const;
    /// Largest grid value an eigenvalue can take without wrapping.
    int64_t top() const;
    /// Smallest representable grid value (negative in signed mode, else 0).
    int64_t bottom() const;
    /// Fractional grid coordinate of an eigenvalue.
    double position(double lambda) const;
};

/// Largest non-wrapping grid value for a register width.
int64_t grid_top(size_t bits, bool signed_mode);

}  // namespace hhlab

#endif
