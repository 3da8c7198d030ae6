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

#include "hhlab/qlsp/io.h"

#include <fstream>

#include "hhlab/errors.h"

namespace hhlab::qlsp {

using nlohmann::json;

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected a [re, im] pair, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Qlsp &problem) {
    json m = json::array();
    for (Eigen::Index r = 0; r < problem.matrix().rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < problem.matrix().cols(); c++) {
            row.push_back(complex_to_json(problem.matrix()(r, c)));
        }
        m.push_back(row);
    }
    json b = json::array();
    for (Eigen::Index i = 0; i < problem.b().size(); i++) {
        b.push_back(complex_to_json(problem.b()(i)));
    }
    return {{"matrix", m}, {"vector_b", b}, {"scale", problem.scale()}};
}

Qlsp qlsp_from_json(const json &doc) {
    if (!doc.is_object() || !doc.contains("matrix") || !doc.contains("vector_b")) {
        throw ParseError("problem document needs 'matrix' and 'vector_b'");
    }
    const auto &m = doc["matrix"];
    const auto &b = doc["vector_b"];
    if (!m.is_array() || m.empty() || !b.is_array()) {
        throw ParseError("'matrix' and 'vector_b' must be arrays");
    }
    auto n = static_cast<Eigen::Index>(m.size());
    Matrix a(n, n);
    for (Eigen::Index r = 0; r < n; r++) {
        const auto &row = m[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError("matrix row " + std::to_string(r) + " has the wrong length");
        }
        for (Eigen::Index c = 0; c < n; c++) {
            a(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
        }
    }
    if (static_cast<Eigen::Index>(b.size()) != n) {
        throw ParseError("vector_b length does not match the matrix");
    }
    Vector bv(n);
    for (Eigen::Index i = 0; i < n; i++) {
        bv(i) = complex_from_json(b[static_cast<size_t>(i)]);
    }
    double scale = doc.value("scale", 1.0);
    return Qlsp::from_hermitian(a, bv, scale);
}

Qlsp load_qlsp(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open problem file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw ParseError("problem file " + path.string() + ": " + e.what());
    }
    return qlsp_from_json(doc);
}

}  // namespace hhlab::qlsp
