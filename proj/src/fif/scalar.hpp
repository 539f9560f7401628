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

// Numeric backends. Every algorithm in the library is generic over one of two
// scalar types: exact GMP rationals (always canonical: lowest terms, positive
// denominator) or IEEE doubles.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace fif {

using Rational = mpq_class;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

// Exact for Rational: every finite double is a dyadic rational.
template <Scalar T>
T from_double(double v) {
  if constexpr (is_exact_v<T>) {
    return Rational(v);
  } else {
    return v;
  }
}

template <Scalar T>
T from_ratio(long num, long den) {
  if constexpr (is_exact_v<T>) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return Rational(abs(v)); }

template <Scalar T>
T max_value(const T& a, const T& b) {
  return a < b ? b : a;
}

template <Scalar T>
T min_value(const T& a, const T& b) {
  return b < a ? b : a;
}

// "n/d" (or "n") for rationals, shortest round-trip form for doubles.
std::string format_scalar(const Rational& v);
std::string format_scalar(double v);

// Parses "n", "n/d" (exact) or a decimal / exponent literal (floating).
// Throws Error(ParseError) on malformed input.
struct ParsedScalar {
  bool exact = true;
  Rational rational;
  double real = 0.0;
};
ParsedScalar parse_scalar(std::string_view text);

// Converts a parsed scalar into T; a floating literal into Rational is exact.
template <Scalar T>
T scalar_from(const ParsedScalar& v) {
  if constexpr (is_exact_v<T>) {
    return v.exact ? v.rational : Rational(v.real);
  } else {
    return v.exact ? v.rational.get_d() : v.real;
  }
}

}  // namespace fif
