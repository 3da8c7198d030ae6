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

#ifndef HHLAB_QLSP_IO_H
#define HHLAB_QLSP_IO_H

#include <filesystem>

#include "json.hpp"

#include "hhlab/qlsp/qlsp.h"

namespace hhlab::qlsp {

nlohmann::json to_json(const Qlsp &problem);
/// Reads {"matrix", "vector_b", "scale"}. Throws ParseError or InvalidProblem.
Qlsp qlsp_from_json(const nlohmann::json &doc);
Qlsp load_qlsp(const std::filesystem::path &path);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json &j);

}  // namespace hhlab::qlsp

#endif
