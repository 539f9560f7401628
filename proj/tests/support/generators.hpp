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

// Random inputs for the property tests. Everything is driven by a seeded
// std::mt19937_64, so each run sees the same cases.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fif/affine.hpp"
#include "fif/system.hpp"

namespace fif::testing {

class Gen {
 public:
  explicit Gen(unsigned long long seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  // n / d with d in [1, max_den] and n / d in [lo, hi].
  Rational rational(double lo, double hi, long max_den = 30) {
    long d = integer(1, max_den);
    long nlo = static_cast<long>(std::ceil(lo * d)), nhi = static_cast<long>(std::floor(hi * d));
    if (nlo > nhi) return Rational(static_cast<long>(std::lround(lo * d)), d);
    Rational q(integer(nlo, nhi), d);
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(double lo, double hi, long max_den = 30) {
    for (;;) {
      Rational q = rational(lo, hi, max_den);
      if (q != 0) return q;
    }
  }

  template <Scalar T>
  T scalar(double lo, double hi) {
    if constexpr (is_exact_v<T>) {
      return rational(lo, hi);
    } else {
      return real(lo, hi);
    }
  }

  template <Scalar T>
  T nonzero_scalar(double lo, double hi) {
    for (;;) {
      T v = scalar<T>(lo, hi);
      if (v != 0) return v;
    }
  }

  // Invertible map with moderate coefficients.
  template <Scalar T>
  Affine2<T> affine2() {
    return Affine2<T>{nonzero_scalar<T>(-2, 2), nonzero_scalar<T>(-2, 2), scalar<T>(-2, 2), scalar<T>(-2, 2),
                      scalar<T>(-2, 2)};
  }

  // Classical interpolation system on [0, 1]: m maps sending [0, 1] onto
  // consecutive node intervals and the end points of the data onto
  // consecutive data points. Always a valid function graph.
  IfsSystem<Rational> interpolation_system(int m) {
    std::vector<Rational> xs{Rational(0), Rational(1)};
    while (static_cast<int>(xs.size()) < m + 1) {
      Rational x = rational(0.05, 0.95, 20);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Rational> ys;
    for (int k = 0; k <= m; ++k) ys.push_back(rational(-1, 1, 10));
    std::vector<Affine2<Rational>> maps;
    for (int i = 1; i <= m; ++i) {
      Rational q = nonzero_rational(-0.7, 0.7, 10);
      Affine2<Rational> g;
      g.p = xs[i] - xs[i - 1];
      g.h = xs[i - 1];
      g.q = q;
      g.s = ys[i - 1] - q * ys[0];
      g.r = ys[i] - ys[i - 1] - q * (ys[m] - ys[0]);
      maps.push_back(g);
    }
    return IfsSystem<Rational>(std::move(maps), Rational(0), Rational(1));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fif::testing
