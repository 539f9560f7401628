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

// Lower-triangular affine maps of the plane and their projections to the line.
//
//   Affine2: (x, y) -> (p x + h, q y + r x + s)
//   Affine1:  x     ->  p x + h
//
// Composition is function composition: compose(f, g) applies g first.

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "fif/errors.hpp"
#include "fif/scalar.hpp"

namespace fif {

template <Scalar T>
struct Point {
  T x{};
  T y{};

  friend bool operator==(const Point&, const Point&) = default;
};

template <Scalar T>
struct Affine1 {
  T p{1};
  T h{0};

  static Affine1 identity() { return Affine1{T(1), T(0)}; }

  T operator()(const T& x) const { return T(p * x + h); }
  bool is_identity() const { return p == 1 && h == 0; }

  friend bool operator==(const Affine1&, const Affine1&) = default;
};

template <Scalar T>
struct Affine2 {
  T p{1};
  T q{1};
  T r{0};
  T h{0};
  T s{0};

  static Affine2 identity() { return Affine2{T(1), T(1), T(0), T(0), T(0)}; }

  bool is_identity() const { return p == 1 && q == 1 && r == 0 && h == 0 && s == 0; }
  Affine1<T> projection() const { return Affine1<T>{p, h}; }

  friend bool operator==(const Affine2&, const Affine2&) = default;
};

template <Scalar T>
Affine1<T> compose(const Affine1<T>& f, const Affine1<T>& g) {
  return Affine1<T>{T(f.p * g.p), T(f.p * g.h + f.h)};
}

template <Scalar T>
Affine2<T> compose(const Affine2<T>& f, const Affine2<T>& g) {
  Affine2<T> out;
  out.p = f.p * g.p;
  out.q = f.q * g.q;
  out.r = f.q * g.r + f.r * g.p;
  out.h = f.p * g.h + f.h;
  out.s = f.q * g.s + f.r * g.h + f.s;
  return out;
}

template <Scalar T>
Affine1<T> invert(const Affine1<T>& g) {
  if (g.p == 0) throw Error(ErrorCode::SingularMap, "p = 0");
  return Affine1<T>{T(1 / g.p), T(-g.h / g.p)};
}

template <Scalar T>
Affine2<T> invert(const Affine2<T>& g) {
  if (g.p == 0) throw Error(ErrorCode::SingularMap, "p = 0");
  if (g.q == 0) throw Error(ErrorCode::SingularMap, "q = 0");
  const T pq = g.p * g.q;
  Affine2<T> out;
  out.p = 1 / g.p;
  out.q = 1 / g.q;
  out.h = -g.h / g.p;
  out.r = -g.r / pq;
  out.s = (g.r * g.h - g.s * g.p) / pq;
  return out;
}

template <Scalar T>
Point<T> apply(const Affine2<T>& g, const Point<T>& pt) {
  return Point<T>{T(g.p * pt.x + g.h), T(g.q * pt.y + g.r * pt.x + g.s)};
}

// Index word over generators 1..m; applied left to right as S_{i1} o ... o S_{ik}.
struct Word {
  std::vector<int> indices;

  bool empty() const { return indices.empty(); }
  std::size_t size() const { return indices.size(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

template <Scalar T>
Affine2<T> compose_word(const std::vector<Affine2<T>>& maps, const Word& w) {
  Affine2<T> acc = Affine2<T>::identity();
  for (int idx : w.indices) {
    if (idx < 1 || static_cast<std::size_t>(idx) > maps.size()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "generator index " + std::to_string(idx) + " not in 1.." + std::to_string(maps.size()));
    }
    acc = compose(acc, maps[static_cast<std::size_t>(idx - 1)]);
  }
  return acc;
}

template <Scalar T>
Affine1<T> compose_word(const std::vector<Affine1<T>>& maps, const Word& w) {
  Affine1<T> acc = Affine1<T>::identity();
  for (int idx : w.indices) {
    if (idx < 1 || static_cast<std::size_t>(idx) > maps.size()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "generator index " + std::to_string(idx) + " not in 1.." + std::to_string(maps.size()));
    }
    acc = compose(acc, maps[static_cast<std::size_t>(idx - 1)]);
  }
  return acc;
}

template <Scalar T>
std::vector<Affine1<T>> projections(const std::vector<Affine2<T>>& maps) {
  std::vector<Affine1<T>> out;
  out.reserve(maps.size());
  for (const auto& g : maps) out.push_back(g.projection());
  return out;
}

// Fixed point of a line map.
struct AtInfinity {};
struct Everywhere {};
template <Scalar T>
struct FixedPoint {
  T x;
};
template <Scalar T>
using FixedPoint1d = std::variant<FixedPoint<T>, AtInfinity, Everywhere>;

template <Scalar T>
FixedPoint1d<T> fixed_point_1d(const Affine1<T>& g) {
  if (g.p != 1) return FixedPoint<T>{T(g.h / (1 - g.p))};
  if (g.h != 0) return AtInfinity{};
  return Everywhere{};
}

// True when the fixed point of g lies outside the closed interval [a, b]
// (a map translating by a nonzero amount has its fixed point at infinity).
template <Scalar T>
bool fixed_point_outside(const Affine1<T>& g, const T& a, const T& b) {
  const auto fp = fixed_point_1d(g);
  if (std::holds_alternative<AtInfinity>(fp)) return true;
  if (std::holds_alternative<Everywhere>(fp)) return false;
  const T& x = std::get<FixedPoint<T>>(fp).x;
  return x < a || b < x;
}

template <Scalar T>
Affine2<double> to_double(const Affine2<T>& g) {
  return Affine2<double>{to_double(g.p), to_double(g.q), to_double(g.r), to_double(g.h), to_double(g.s)};
}

template <Scalar T>
Affine1<double> to_double(const Affine1<T>& g) {
  return Affine1<double>{to_double(g.p), to_double(g.h)};
}

template <Scalar T>
Point<double> to_double(const Point<T>& pt) {
  return Point<double>{to_double(pt.x), to_double(pt.y)};
}

// Conjugates g by the abscissa change x -> lambda x + mu (ordinates unchanged):
// returns phi o g o phi^-1 with phi(x, y) = (lambda x + mu, y).
template <Scalar T>
Affine2<T> conjugate_x(const Affine2<T>& g, const T& lambda, const T& mu) {
  if (lambda == 0) throw Error(ErrorCode::SingularMap, "lambda = 0");
  Affine2<T> out;
  out.p = g.p;
  out.q = g.q;
  out.h = lambda * g.h + mu * (1 - g.p);
  out.r = g.r / lambda;
  out.s = g.s - g.r * mu / lambda;
  return out;
}

}  // namespace fif
