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

#include "hhlab/analysis/analysis.h"

#include <algorithm>
#include <cmath>

#include "hhlab/errors.h"
#include "hhlab/types.h"

namespace hhlab::analysis {

void BoundInputs::validate() const {
    if (!(kappa >= 1)) {
        throw InvalidArgument("kappa must be at least 1");
    }
    if (!(t0 > 0)) {
        throw InvalidArgument("t0 must be positive");
    }
    if (l < k) {
        throw InvalidArgument("l must be at least k");
    }
}

double enhanced_bound_prefactor(size_t l_minus_k) {
    return std::sqrt(1 / (kPi * kPi * std::ldexp(1.0, static_cast<int>(l_minus_k))) + 16.0 / 45.0);
}

double enhanced_bound(const BoundInputs &in) {
    in.validate();
    return enhanced_bound_prefactor(in.l - in.k) * 2 * kPi * kPi * in.kappa / in.t0;
}

double canonical_bound(const BoundInputs &in, CanonicalBound which) {
    in.validate();
    if (which == CanonicalBound::Original) {
        return 2 * kPi * kPi * in.kappa / in.t0;
    }
    return std::sqrt(20.0 / 3.0) * (kPi / 2) * kPi * in.kappa / in.t0;
}

namespace {

// Sums in sorted order so the result does not depend on input order.
double sorted_mean(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double t = 0;
    for (double x : v) {
        t += x;
    }
    return t / static_cast<double>(v.size());
}

}  // namespace

Aggregate aggregate(std::span<const ErrorSample> samples) {
    if (samples.empty()) {
        throw InvalidArgument("cannot aggregate an empty batch");
    }
    Aggregate agg;
    std::vector<double> all;
    std::map<Variant, std::vector<double>> groups;
    for (const auto &s : samples) {
        all.push_back(s.error);
        groups[s.variant].push_back(s.error);
    }
    agg.count = all.size();
    agg.mean_error = sorted_mean(std::move(all));
    for (auto &[v, errs] : groups) {
        agg.per_variant_count[v] = errs.size();
        agg.per_variant[v] = sorted_mean(std::move(errs));
    }
    for (auto a = agg.per_variant.begin(); a != agg.per_variant.end(); ++a) {
        for (auto b = std::next(a); b != agg.per_variant.end(); ++b) {
            agg.orderings.push_back({a->first, b->first, a->second < b->second});
            agg.orderings.push_back({b->first, a->first, b->second < a->second});
        }
    }
    return agg;
}

nlohmann::json to_json(const Aggregate &agg) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto &[v, m] : agg.per_variant) {
        per[std::string(variant_name(v))] = {{"mean_error", m}, {"count", agg.per_variant_count.at(v)}};
    }
    nlohmann::json ord = nlohmann::json::array();
    for (const auto &o : agg.orderings) {
        ord.push_back({{"lower", variant_name(o.lower)}, {"higher", variant_name(o.higher)}, {"holds", o.holds}});
    }
    return {{"mean_error", agg.mean_error}, {"count", agg.count}, {"per_variant", per}, {"orderings", ord}};
}

}  // namespace hhlab::analysis
