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

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "fif/affine.hpp"

namespace fif {

// An ordered list of planar maps together with the interval [a, b] their
// projections act on. Construction only checks the shape; whether the maps
// really define a fractal interpolation function is decided by validate().
template <Scalar T>
class IfsSystem {
 public:
  IfsSystem(std::vector<Affine2<T>> maps, T a, T b) : maps_(std::move(maps)), a_(std::move(a)), b_(std::move(b)) {
    if (maps_.empty()) throw Error(ErrorCode::InvalidArgument, "system needs at least one map");
    if (!(a_ < b_)) throw Error(ErrorCode::InvalidArgument, "interval must satisfy a < b");
  }

  const std::vector<Affine2<T>>& maps() const { return maps_; }
  const Affine2<T>& map(std::size_t i) const { return maps_.at(i); }
  std::size_t size() const { return maps_.size(); }
  const T& a() const { return a_; }
  const T& b() const { return b_; }
  T length() const { return T(b_ - a_); }

  std::vector<Affine1<T>> projected() const { return projections(maps_); }

  // Image of [a, b] under the projection of map i, as an ordered pair.
  std::pair<T, T> strip(std::size_t i) const {
    const auto& g = maps_.at(i);
    T lo = g.p * a_ + g.h;
    T hi = g.p * b_ + g.h;
    if (hi < lo) std::swap(lo, hi);
    return {lo, hi};
  }

  Affine2<T> compose_word(const Word& w) const { return fif::compose_word(maps_, w); }
  Affine1<T> compose_word_1d(const Word& w) const { return compose_word(w).projection(); }

 private:
  std::vector<Affine2<T>> maps_;
  T a_;
  T b_;
};

template <Scalar T>
IfsSystem<double> to_double(const IfsSystem<T>& sys) {
  std::vector<Affine2<double>> maps;
  for (const auto& g : sys.maps()) maps.push_back(to_double(g));
  return IfsSystem<double>(std::move(maps), to_double(sys.a()), to_double(sys.b()));
}

// A system whose scalar backend is chosen at run time (by the input file).
using AnySystem = std::variant<IfsSystem<Rational>, IfsSystem<double>>;

inline bool is_exact(const AnySystem& sys) { return std::holds_alternative<IfsSystem<Rational>>(sys); }

}  // namespace fif
