// Copyright 2026 The fif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Plain-text system files.
//
//   # comment
//   param a 1/5            named scalar, substituted wherever `a` or `-a` appears
//   interval 0 1
//   map 1/5 a 1/5 0 0      p q r h s of (x, y) -> (p x + h, q y + r x + s)
//
// Integers and fractions are exact; decimal literals are floating. A file that
// mixes both is read entirely in floating point (with a warning).

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fif/system.hpp"

namespace fif {

struct SpecFile {
  AnySystem system;
  std::vector<std::pair<std::string, std::string>> params;  // name, resolved literal
  std::vector<std::string> warnings;
};

using ParamOverrides = std::map<std::string, std::string>;

SpecFile parse_spec(std::string_view text, const ParamOverrides& overrides = {});
SpecFile load_spec(const std::string& path, const ParamOverrides& overrides = {});

// Canonical text; parse_spec(emit_spec(s)) reproduces s value for value.
std::string emit_spec(const AnySystem& sys);

// Parses "name=value" override strings.
ParamOverrides parse_overrides(const std::vector<std::string>& items);

}  // namespace fif
