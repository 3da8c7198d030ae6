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

#include <cmath>

#include "hhlab/clock_grid.h"
#include "hhlab/errors.h"
#include "hhlab/types.h"
#include "hhlab/variant.h"

namespace hhlab {

int64_t ClockGrid::decode(uint64_t pattern) const {
    auto g = static_cast<int64_t>(pattern);
    if (signed_mode && bits > 0 && pattern >= (uint64_t{1} << (bits - 1))) {
        g -= static_cast<int64_t>(size());
    }
    return g;
}

uint64_t ClockGrid::encode(int64_t value) const {
    if (value < bottom() || value > top()) {
        throw InvalidArgument("grid value " + std::to_string(value) + " does not fit in " + std::to_string(bits) + " bits");
    }
    return static_cast<uint64_t>(value < 0 ? value + static_cast<int64_t>(size()) : value);
}

double ClockGrid::value(uint64_t pattern) const {
    return kTwoPi * static_cast<double>(decode(pattern)) / t0;
}

double ClockGrid::spacing() const {
    return kTwoPi / t0;
}

int64_t ClockGrid::top() const {
    return grid_top(bits, signed_mode);
}

int64_t ClockGrid::bottom() const {
    return signed_mode ? -static_cast<int64_t>(size() / 2) : 0;
}

double ClockGrid::position(double lambda) const {
    return lambda * t0 / kTwoPi;
}

int64_t grid_top(size_t bits, bool signed_mode) {
    if (bits == 0) {
        throw InvalidArgument("register width must be at least 1");
    }
    auto n = int64_t{1} << (signed_mode ? bits - 1 : bits);
    return n - 1;
}

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::Canonical:
            return "canonical";
        case Variant::Hybrid:
            return "hybrid";
        case Variant::Enhanced:
            return "enhanced";
    }
    return "?";
}

Variant parse_variant(std::string_view name) {
    if (name == "canonical") {
        return Variant::Canonical;
    }
    if (name == "hybrid") {
        return Variant::Hybrid;
    }
    if (name == "enhanced") {
        return Variant::Enhanced;
    }
    throw ParseError("unknown variant '" + std::string(name) + "'");
}

}  // namespace hhlab
