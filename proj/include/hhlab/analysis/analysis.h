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

#ifndef HHLAB_ANALYSIS_ANALYSIS_H
#define HHLAB_ANALYSIS_ANALYSIS_H

#include <map>
#include <span>
#include <vector>

#include "json.hpp"

#include "hhlab/variant.h"

namespace hhlab::analysis {

struct BoundInputs {
    double kappa;
    double t0;
    size_t k;
    size_t l;

    /// Throws InvalidArgument.
    void validate() const;
};

/// sqrt(1/(pi^2 2^(l-k)) + 16/45).
double enhanced_bound_prefactor(size_t l_minus_k);
/// enhanced_bound_prefactor(l - k) * 2 pi^2 kappa / t0.
double enhanced_bound(const BoundInputs &in);

enum class CanonicalBound { Original, Revised };

/// Original: 2 pi^2 kappa / t0. Revised: sqrt(20/3) (pi/2) pi kappa / t0.
double canonical_bound(const BoundInputs &in, CanonicalBound which = CanonicalBound::Original);

struct ErrorSample {
    Variant variant;
    double error;
};

struct Ordering {
    Variant lower;
    Variant higher;
    /// mean(lower) < mean(higher).
    bool holds;
};

struct Aggregate {
    double mean_error = 0;
    size_t count = 0;
    std::map<Variant, double> per_variant;
    std::map<Variant, size_t> per_variant_count;
    std::vector<Ordering> orderings;
};

/// Arithmetic means overall and per variant, plus the pairwise comparisons of
/// per-variant means. Throws InvalidArgument on empty input.
Aggregate aggregate(std::span<const ErrorSample> samples);

nlohmann::json to_json(const Aggregate &agg);

}  // namespace hhlab::analysis

#endif
