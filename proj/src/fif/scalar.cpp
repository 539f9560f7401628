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

#include "fif/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "fif/errors.hpp"

namespace fif {

std::string format_scalar(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string format_scalar(double v) {
  char buf[64];
  // %.17g always round-trips; try shorter forms first for readability.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ParsedScalar parse_scalar(std::string_view text) {
  ParsedScalar out;
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty scalar");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw Error(ErrorCode::ParseError, "malformed fraction '" + std::string(text) + "'");
    }
    if (num.front() == '+') num.remove_prefix(1);
    if (den.front() == '+') den.remove_prefix(1);
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    out.rational = Rational(n, d);
    out.rational.canonicalize();
    return out;
  }
  if (is_integer_literal(text)) {
    if (text.front() == '+') text.remove_prefix(1);
    out.rational = Rational(mpz_class(std::string(text)));
    return out;
  }
  double v = 0.0;
  std::string_view body = text;
  if (body.front() == '+') body.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
  }
  out.exact = false;
  out.real = v;
  return out;
}

}  // namespace fif
