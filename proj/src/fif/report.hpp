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

// JSON run reports. Scalars are written as strings ("7/15" or the shortest
// round-trip decimal) so that exact values survive; objects keep a fixed key
// order, which makes dumps byte-stable.

#include "json.hpp"

#include <optional>
#include <string>

#include "fif/attractor.hpp"
#include "fif/orbit_curves.hpp"
#include "fif/separation.hpp"

namespace fif {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& data);
std::string word_to_string(const Word& w);
Word parse_word(const std::string& text);

// {tool, version, input_sha256, depth, tol, seed}; absent values are null.
Json provenance(const std::string& input_text, std::optional<int> depth, std::optional<double> tol,
                std::optional<unsigned long long> seed = std::nullopt);

template <Scalar T>
Json system_json(const IfsSystem<T>& sys);
template <Scalar T>
Json validation_json(const ValidationReport<T>& r);
template <Scalar T>
Json evaluation_json(const T& x, const Evaluation<T>& e);
template <Scalar T>
Json sample_json(const GraphSample<T>& s);
template <Scalar T>
Json family_element_json(const FamilyElement<T>& e);
template <Scalar T>
Json wsp_json(const WspVerdict<T>& v);
template <Scalar T>
Json lifted_profile_json(const LiftedProfile<T>& p);
template <Scalar T>
Json orbit_json(const OrbitTrace<T>& t);
template <Scalar T>
Json curve_json(const CurveModel<T>& m);

// Two-space indented dump with a trailing newline.
std::string dump_report(const Json& j);

}  // namespace fif
