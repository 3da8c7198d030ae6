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

#ifndef HHLAB_VARIANT_H
#define HHLAB_VARIANT_H

#include <string>
#include <string_view>

namespace hhlab {

enum class Variant { Canonical, Hybrid, Enhanced };

std::string_view variant_name(Variant v);
/// Throws ParseError for unknown names.
Variant parse_variant(std::string_view name);

}  // namespace hhlab

#endif
