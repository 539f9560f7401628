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

#include "fif/report.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fif {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvalidArgument, "sha256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.indices.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(w.indices[k]);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad word letter '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw Error(ErrorCode::ParseError, "bad word letter '" + item + "'");
    w.indices.push_back(v);
  }
  return w;
}

namespace {

Json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <Scalar T>
Json point_json(const Point<T>& p) {
  return Json::array({format_scalar(p.x), format_scalar(p.y)});
}

template <Scalar T>
Json affine2_json(const Affine2<T>& g) {
  Json j;
  j["p"] = format_scalar(g.p);
  j["q"] = format_scalar(g.q);
  j["r"] = format_scalar(g.r);
  j["h"] = format_scalar(g.h);
  j["s"] = format_scalar(g.s);
  return j;
}

}  // namespace

Json provenance(const std::string& input_text, std::optional<int> depth, std::optional<double> tol,
                std::optional<unsigned long long> seed) {
  Json j;
  j["tool"] = "fif";
  j["version"] = kVersion;
  j["input_sha256"] = sha256_hex(input_text);
  j["depth"] = depth ? Json(*depth) : Json(nullptr);
  j["tol"] = tol ? number_or_null(*tol) : Json(nullptr);
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  return j;
}

template <Scalar T>
Json system_json(const IfsSystem<T>& sys) {
  Json j;
  j["exact"] = is_exact_v<T>;
  j["interval"] = Json::array({format_scalar(sys.a()), format_scalar(sys.b())});
  Json maps = Json::array();
  for (const auto& m : sys.maps()) maps.push_back(affine2_json(m));
  j["maps"] = maps;
  return j;
}

template <Scalar T>
Json validation_json(const ValidationReport<T>& r) {
  Json j;
  j["valid"] = r.valid();
  j["error"] = error_code_name(r.error);
  j["contractive"] = r.contractive;
  j["self_mapping"] = r.self_mapping;
  j["covering"] = r.covering;
  j["single_valued"] = r.single_valued;
  Json strips = Json::array();
  for (const auto& [lo, hi] : r.strips) strips.push_back(Json::array({format_scalar(lo), format_scalar(hi)}));
  j["strips"] = strips;
  Json inter = Json::array();
  for (const auto& s : r.intersections) {
    Json e;
    e["maps"] = Json::array({s.i + 1, s.j + 1});
    e["interval"] = Json::array({format_scalar(s.lo), format_scalar(s.hi)});
    e["overlap"] = s.is_overlap();
    inter.push_back(e);
  }
  j["intersections"] = inter;
  j["max_discrepancy"] = number_or_null(r.max_discrepancy);
  j["tolerance"] = r.tolerance;
  j["problems"] = r.problems;
  return j;
}

template <Scalar T>
Json evaluation_json(const T& x, const Evaluation<T>& e) {
  Json j;
  j["x"] = format_scalar(x);
  j["y"] = e.y;
  j["exact"] = e.exact ? Json(format_scalar(*e.exact)) : Json(nullptr);
  j["error_bound"] = e.error_bound;
  j["steps"] = e.steps;
  return j;
}

template <Scalar T>
Json sample_json(const GraphSample<T>& s) {
  Json j;
  j["depth"] = s.depth;
  j["points"] = s.points.size();
  j["resolution"] = s.resolution;
  j["resolution_bound"] = s.resolution_bound;
  j["tolerance"] = s.tolerance;
  return j;
}

template <Scalar T>
Json family_element_json(const FamilyElement<T>& e) {
  Json j;
  j["j"] = word_to_string(e.j_word);
  j["i"] = word_to_string(e.i_word);
  j["map"] = affine2_json(e.map2);
  return j;
}

template <Scalar T>
Json wsp_json(const WspVerdict<T>& v) {
  Json j;
  j["mode"] = v.planar ? "2d" : "1d";
  j["status"] = wsp_status_name(v.status);
  j["depth"] = v.depth;
  j["tol"] = v.tol;
  j["words"] = v.words;
  Json gaps = Json::array();
  for (const auto& g : v.gap_by_depth) {
    Json e;
    e["depth"] = g.depth;
    if (g.found) {
      e["delta"] = format_scalar(g.delta);
      e["delta_value"] = to_double(g.delta);
      e["argmin"] = family_element_json(g.argmin);
    } else {
      e["delta"] = nullptr;
      e["delta_value"] = nullptr;
      e["argmin"] = nullptr;
    }
    gaps.push_back(e);
  }
  j["gap_by_depth"] = gaps;
  Json wit = Json::array();
  for (const auto& w : v.witnesses) wit.push_back(family_element_json(w));
  j["witnesses"] = wit;
  j["coincidences"] = v.coincidence_count;
  Json ex = Json::array();
  for (const auto& [a, b] : v.coincidence_examples)
    ex.push_back(Json::array({word_to_string(a), word_to_string(b)}));
  j["coincidence_examples"] = ex;
  j["line_attractor"] = v.line_attractor;
  j["warnings"] = v.warnings;
  return j;
}

template <Scalar T>
Json lifted_profile_json(const LiftedProfile<T>& p) {
  Json j;
  j["depths"] = p.depths;
  j["deviation_1d"] = p.deviation_1d;
  j["deviation_2d"] = p.deviation_2d;
  j["consistent"] = p.consistent;
  return j;
}

template <Scalar T>
Json orbit_json(const OrbitTrace<T>& t) {
  Json j;
  j["map"] = affine2_json(t.g);
  j["origin"] = point_json(t.origin);
  j["points"] = t.points.size();
  j["crossing_index"] = t.crossing_index;
  j["direction"] = t.rightward ? "right" : "left";
  j["eps"] = t.eps;
  j["delta"] = t.delta;
  j["max_step"] = t.max_step;
  j["coverage"] = t.coverage;
  return j;
}

template <Scalar T>
Json curve_json(const CurveModel<T>& m) {
  Json j;
  j["kind"] = curve_kind_name(m.kind);
  Json c;
  for (const auto& [name, value] : m.coefficients) c[name] = number_or_null(value);
  j["coefficients"] = c;
  if (m.kind == CurveKind::Parabola) {
    Json e;
    e["A"] = format_scalar(m.parabola_a);
    e["B"] = format_scalar(m.parabola_b);
    e["C"] = format_scalar(m.parabola_c);
    j["parabola"] = e;
  }
  Json local;
  local["x0"] = format_scalar(m.x0);
  local["y0"] = format_scalar(m.y0);
  local["scale"] = format_scalar(m.scale);
  local["A"] = number_or_null(m.A);
  local["B"] = number_or_null(m.B);
  local["C"] = number_or_null(m.C);
  local["K"] = number_or_null(m.K);
  j["local_frame"] = local;
  j["near_boundary"] = m.near_boundary;
  return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

#define FIF_INSTANTIATE(T)                                                 \
  template Json system_json(const IfsSystem<T>&);                          \
  template Json validation_json(const ValidationReport<T>&);               \
  template Json evaluation_json(const T&, const Evaluation<T>&);           \
  template Json sample_json(const GraphSample<T>&);                        \
  template Json family_element_json(const FamilyElement<T>&);              \
  template Json wsp_json(const WspVerdict<T>&);                            \
  template Json lifted_profile_json(const LiftedProfile<T>&);              \
  template Json orbit_json(const OrbitTrace<T>&);                          \
  template Json curve_json(const CurveModel<T>&);

FIF_INSTANTIATE(double)
FIF_INSTANTIATE(Rational)

}  // namespace fif
