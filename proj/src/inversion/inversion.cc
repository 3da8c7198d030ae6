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

#include "hhlab/inversion/inversion.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "hhlab/errors.h"

namespace hhlab::inversion {

using preprocess::EigenEstimateSet;

std::optional<double> InversionPlan::angle_of(uint64_t pattern) const {
    for (const auto &r : rotations) {
        if (r.pattern == pattern) {
            return r.angle;
        }
    }
    return std::nullopt;
}

double inversion_amplitude(double lambda_tilde, double c) {
    if (!(c > 0)) {
        throw InvalidArgument("inversion constant must be positive");
    }
    if (std::abs(lambda_tilde) < c) {
        return 0;
    }
    return std::clamp(c / lambda_tilde, -1.0, 1.0);
}

namespace {

double alpha_exact_raw(double delta, double big_t) {
    double num = std::abs(std::cos(delta / (2 * big_t)) * std::cos(delta / 2));
    double den = std::abs(std::sin((delta + kPi) / (2 * big_t)) * std::sin((delta - kPi) / (2 * big_t)));
    double pre = std::sqrt(2.0) / big_t * std::sin(kPi / (2 * big_t));
    if (den < 1e-12) {
        // Near delta = pi both cos(delta/2) and sin((delta - pi)/2T) vanish.
        double limit = std::abs(std::cos(kPi / (2 * big_t))) * big_t / std::abs(std::sin(kPi / big_t));
        return pre * limit;
    }
    return pre * num / den;
}

}  // namespace

double alpha_overlap(double delta, AlphaMode mode, uint64_t big_t) {
    if (!(delta >= 0)) {
        throw InvalidArgument("phase difference must be nonnegative");
    }
    if (mode == AlphaMode::Linear) {
        return std::max(0.0, 1 - delta / kTwoPi);
    }
    if (big_t < 1) {
        throw InvalidArgument("T must be positive");
    }
    auto t = static_cast<double>(big_t);
    return std::clamp(alpha_exact_raw(delta, t) / alpha_exact_raw(0, t), 0.0, 1.0);
}

namespace {

void sort_rotations(InversionPlan &plan) {
    std::sort(plan.rotations.begin(), plan.rotations.end(), [](const Rotation &a, const Rotation &b) {
        return a.pattern < b.pattern;
    });
}

// Zero and the wrapping pattern -2^(k-1) never receive hybrid rotations.
bool usable_pattern(const ClockGrid &grid, int64_t g) {
    return g != 0 && g >= grid.bottom() + (grid.signed_mode ? 1 : 0) && g <= grid.top();
}

}  // namespace

InversionPlan plan_canonical(size_t k, double t0, bool signed_mode, std::optional<double> c) {
    if (k < 1 || k > 16) {
        throw InvalidArgument("clock width must lie in [1, 16]");
    }
    if (!(t0 > 0)) {
        throw InvalidArgument("t0 must be positive");
    }
    ClockGrid grid{k, t0, signed_mode};
    InversionPlan plan{k, signed_mode, c.value_or(grid.spacing()), {}, {}};
    for (uint64_t p = 1; p < grid.size(); p++) {
        double h = inversion_amplitude(grid.value(p), plan.constant_c);
        plan.rotations.push_back({p, 2 * std::asin(h)});
    }
    return plan;
}

InversionPlan plan_hybrid(const EigenEstimateSet &estimates, std::optional<size_t> max_rotations) {
    if (!(estimates.time_scale > 0)) {
        throw InvalidArgument("estimate set has no positive t0");
    }
    auto grid = estimates.grid();
    std::vector<preprocess::EstimateEntry> kept;
    for (const auto &e : estimates.entries) {
        if (usable_pattern(grid, grid.decode(e.grid_int))) {
            kept.push_back(e);
        }
    }
    if (max_rotations && kept.size() > *max_rotations) {
        kept.resize(*max_rotations);
    }
    if (kept.empty()) {
        throw EmptyPlan("no relevant nonzero estimate to invert");
    }
    double c = INFINITY;
    for (const auto &e : kept) {
        c = std::min(c, std::abs(e.lambda_tilde));
    }
    InversionPlan plan{estimates.bit_width, estimates.signed_mode, c, {}, {}};
    for (const auto &e : kept) {
        plan.rotations.push_back({e.grid_int, 2 * std::asin(inversion_amplitude(e.lambda_tilde, c))});
    }
    sort_rotations(plan);
    return plan;
}

namespace {

struct Contribution {
    double alpha;
    double beta;
    double lambda;
};

}  // namespace

InversionPlan plan_enhanced(const EigenEstimateSet &estimates, const EnhancedOptions &options) {
    if (estimates.bit_width <= options.k) {
        throw InvalidArgument("enhanced plans need more preprocessing bits than clock bits");
    }
    if (!(options.t0 > 0)) {
        throw InvalidArgument("t0 must be positive");
    }
    if (estimates.entries.empty()) {
        throw EmptyPlan("no estimates to enhance");
    }
    double threshold = options.filter_threshold.value_or(std::ldexp(1.0, -static_cast<int>(options.k)));
    ClockGrid lgrid = estimates.grid();
    ClockGrid kgrid{options.k, options.t0, estimates.signed_mode};
    uint64_t big_t = kgrid.size();

    std::map<int64_t, std::vector<Contribution>> touched;
    for (const auto &e : estimates.entries) {
        if (lgrid.decode(e.grid_int) == 0) {
            continue;
        }
        double x = kgrid.position(e.lambda_tilde);
        double nearest = std::round(x);
        std::vector<int64_t> adjacent;
        if (std::abs(x - nearest) < 1e-9) {
            adjacent.push_back(static_cast<int64_t>(nearest));
        } else {
            auto lo = static_cast<int64_t>(std::floor(x));
            adjacent = {lo, lo + 1};
        }
        for (int64_t g : adjacent) {
            if (!usable_pattern(kgrid, g)) {
                continue;
            }
            double delta = kTwoPi * std::abs(x - static_cast<double>(g));
            double a = alpha_overlap(delta, options.alpha, big_t);
            if (a <= 1e-12) {
                continue;
            }
            touched[g].push_back({a, e.weight, e.lambda_tilde});
        }
    }

    InversionPlan plan{options.k, estimates.signed_mode, 0, {}, {}};
    std::map<int64_t, std::vector<Contribution>> kept;
    for (auto &[g, parts] : touched) {
        double r = 0;
        for (const auto &p : parts) {
            r += p.alpha * p.beta / p.lambda;
        }
        if (std::abs(r) >= threshold) {
            kept[g] = std::move(parts);
        }
    }
    if (kept.empty()) {
        throw EmptyPlan("every enhanced rotation fell below the relevance filter");
    }

    if (options.policy == AnglePolicy::LeastSquares) {
        double c = INFINITY;
        for (const auto &[g, parts] : kept) {
            for (const auto &p : parts) {
                c = std::min(c, std::abs(p.lambda));
            }
        }
        plan.constant_c = c;
        for (const auto &[g, parts] : kept) {
            double num = 0, den = 0;
            for (const auto &p : parts) {
                double w = (p.alpha * p.beta) * (p.alpha * p.beta);
                num += w / p.lambda;
                den += w;
            }
            double amp = std::clamp(c * num / den, -1.0, 1.0);
            plan.rotations.push_back({kgrid.encode(g), 2 * std::asin(amp)});
        }
    } else {
        std::map<int64_t, double> raw;
        double largest = 0;
        for (const auto &[g, parts] : kept) {
            double s = 0;
            for (const auto &p : parts) {
                s += p.alpha * p.beta / p.lambda;
            }
            s *= 2.0 / static_cast<double>(parts.size());
            raw[g] = s;
            largest = std::max(largest, std::abs(s));
        }
        plan.constant_c = 1 / largest;
        for (const auto &[g, s] : raw) {
            double arg = s * plan.constant_c;
            if (std::abs(arg) > 1 + 1e-12) {
                plan.diagnostics.push_back("arcsin argument " + std::to_string(arg) + " clamped at pattern " + std::to_string(g));
            }
            plan.rotations.push_back({kgrid.encode(g), std::asin(std::clamp(arg, -1.0, 1.0))});
        }
    }
    sort_rotations(plan);
    return plan;
}

sim::Circuit build_inversion_circuit(
    const InversionPlan &plan, std::span<const size_t> clock_qubits, size_t ancilla, size_t num_qubits) {
    if (clock_qubits.size() != plan.bit_width) {
        throw InvalidArgument("plan width does not match the clock register");
    }
    sim::Circuit c(num_qubits);
    for (const auto &r : plan.rotations) {
        std::vector<sim::Control> controls;
        for (size_t i = 0; i < clock_qubits.size(); i++) {
            bool one = (r.pattern >> i) & 1;
            controls.push_back({clock_qubits[i], one ? sim::Polarity::OnOne : sim::Polarity::OnZero});
        }
        c.append(sim::ry(ancilla, r.angle).with_controls(controls));
    }
    return c;
}

nlohmann::json to_json(const InversionPlan &plan) {
    nlohmann::json rot = nlohmann::json::array();
    for (const auto &r : plan.rotations) {
        rot.push_back({r.pattern, r.angle});
    }
    nlohmann::json doc{{"k", plan.bit_width}, {"C", plan.constant_c}, {"signed", plan.signed_mode}, {"rotations", rot}};
    if (!plan.diagnostics.empty()) {
        doc["diagnostics"] = plan.diagnostics;
    }
    return doc;
}

InversionPlan plan_from_json(const nlohmann::json &doc) {
    try {
        InversionPlan plan;
        plan.bit_width = doc.at("k").get<size_t>();
        plan.constant_c = doc.at("C").get<double>();
        plan.signed_mode = doc.value("signed", false);
        for (const auto &r : doc.at("rotations")) {
            if (!r.is_array() || r.size() != 2) {
                throw ParseError("rotations must be [pattern, theta] pairs");
            }
            plan.rotations.push_back({r[0].get<uint64_t>(), r[1].get<double>()});
        }
        if (doc.contains("diagnostics")) {
            plan.diagnostics = doc["diagnostics"].get<std::vector<std::string>>();
        }
        return plan;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("inversion plan: ") + e.what());
    }
}

}  // namespace hhlab::inversion
