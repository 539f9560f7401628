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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fif/system.hpp"

namespace fif {

// Guardrail on the number of materialized words / sample points.
inline constexpr std::size_t kDefaultWordBudget = 2'000'000;

template <Scalar T>
struct StripIntersection {
  std::size_t i = 0;  // 0-based map indices, i < j
  std::size_t j = 0;
  T lo{};
  T hi{};

  bool is_overlap() const { return lo < hi; }
};

template <Scalar T>
struct ValidationReport {
  bool contractive = false;
  bool self_mapping = false;
  bool covering = false;
  bool single_valued = false;
  std::vector<std::pair<T, T>> strips;
  std::vector<StripIntersection<T>> intersections;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> problems;
  ErrorCode error = ErrorCode::Ok;

  bool valid() const { return error == ErrorCode::Ok; }
};

// Checks contraction bounds, that the strips S_i'([a,b]) lie in [a,b] and cover
// it, and that the graph is single-valued wherever two strips meet. The last
// check compares the ordinates obtained through both branches; `tolerance`
// bounds the admissible discrepancy.
template <Scalar T>
ValidationReport<T> validate(const IfsSystem<T>& sys, double tolerance = 1e-9);

// Throws the report's error if the system is not valid.
template <Scalar T>
void require_valid(const IfsSystem<T>& sys);

// A-priori bound Y with |y| <= Y on the attractor.
template <Scalar T>
double vertical_bound(const IfsSystem<T>& sys);

template <Scalar T>
struct Evaluation {
  double y = 0.0;
  std::optional<T> exact;  // set when the backward orbit closed up exactly
  double error_bound = 0.0;
  int steps = 0;
};

// f(x) by backward iteration through the branch with the lowest index whose
// strip contains the current abscissa. A non-empty `first_branch` forces the
// first pull-back through that (0-based) branch instead.
template <Scalar T>
Evaluation<T> evaluate_f(const IfsSystem<T>& sys, const T& x, double tol,
                         std::optional<std::size_t> first_branch = std::nullopt);

template <Scalar T>
struct GraphSample {
  std::vector<Point<T>> points;  // sorted by x
  int depth = 0;
  double resolution = 0.0;        // largest gap between consecutive abscissae
  double resolution_bound = 0.0;  // (max |p_i|)^depth (b - a)
  double tolerance = 0.0;         // distance bound from the attractor
};

template <Scalar T>
std::vector<Point<T>> anchor_points(const IfsSystem<T>& sys);

template <Scalar T>
GraphSample<T> sample_attractor(const IfsSystem<T>& sys, int depth, std::size_t max_points = kDefaultWordBudget);

GraphSample<double> to_double(const GraphSample<Rational>& s);
inline const GraphSample<double>& to_double(const GraphSample<double>& s) { return s; }

// Largest spread max(y) - min(y) over all abscissa windows of the given width.
double max_window_spread(const std::vector<Point<double>>& sorted_points, double width);

struct ContinuityModulus {
  double delta = 0.0;
  int depth = 0;
  double resolution = 0.0;
};

// Empirical uniform-continuity delta: on a dense sample, every window
// of width delta + resolution has y-spread <= eps / 2, and delta < (sqrt(3) / 2) eps,
// so |x1 - x2| < delta implies |(x1, f(x1)) - (x2, f(x2))| < eps.
template <Scalar T>
ContinuityModulus modulus_of_continuity(const IfsSystem<T>& sys, double eps,
                                        std::size_t max_points = kDefaultWordBudget);

}  // namespace fif
