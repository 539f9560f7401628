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

// Orbits of near-identity family elements and the closed-form curves they
// trace out.
//
// Iterating g(x, y) = (p x + h, q y + r x + s) from a point on the graph puts
// the orbit on one of five explicit curves, selected by whether p = 1, q = 1
// and p = q. In the frame X = (x - x0) / L, Y = y - y0 with the orbit starting
// at the origin (L = b - a), and writing h, r, s for the coefficients of g in
// that frame:
//
//   Parabola     p = q = 1    Y = A X^2 + B X
//                             A = r / (2h), B = (2s - h r) / (2h)
//   ExpLinear    p = 1 != q   Y = A X + B (e^{K X} - 1)
//                             K = log q / h, A = r / (1 - q),
//                             B = (h r + (q - 1) s) / (q - 1)^2
//   LogLinear    q = 1 != p   Y = A X + B log(1 + X / C)
//                             C = h / (p - 1), A = r / (p - 1),
//                             B = (h r + (1 - p) s) / ((1 - p) log p)
//   PowerLinear  p != q       Y = A X + B (1 + X / C)^K - B
//                             A = r / (p - q), C = h / (p - 1), K = log q / log p,
//                             B = (h r + s (q - p)) / ((q - 1)(q - p))
//   XLogX        p = q != 1   Y = A (1 + X / C) log(1 + X / C) + B X
//                             C = h / (p - 1), A = r C / (p log p),
//                             B = (C r - s) / (C - C p)
//
// C is the fixed point of the projected map in the local frame (up to sign),
// so 1 + X / C > 0 along the whole orbit when that fixed point is outside [a, b].

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fif/attractor.hpp"
#include "fif/system.hpp"

namespace fif {

template <Scalar T>
struct OrbitTrace {
  Affine2<T> g;
  Point<T> origin;
  std::vector<Point<T>> points;  // g^n(origin), n = 0..crossing_index
  std::size_t crossing_index = 0;
  bool rightward = true;
  // Filled by epsilon_net.
  double eps = 0.0;
  double delta = 0.0;
  double max_step = 0.0;
  double coverage = 0.0;  // max distance from a sampled graph point to the orbit
};

// Iterates g from `origin` until the abscissa reaches or passes the far end
// of [a, b]; that terminal point is kept.
template <Scalar T>
OrbitTrace<T> orbit_until_exit(const Affine2<T>& g, const Point<T>& origin, const T& a, const T& b,
                               std::size_t max_iterations = 1'000'000);

// The first `count` + 1 iterates g^0(origin) .. g^count(origin).
template <Scalar T>
OrbitTrace<T> orbit_iterates(const Affine2<T>& g, const Point<T>& origin, std::size_t count);

// Largest displacement |g(P) - P| over the given points.
double max_displacement(const Affine2<double>& g, const std::vector<Point<double>>& pts);

// Smallest distance from every point of `pts` to the orbit, maximized.
double covering_radius(const std::vector<Point<double>>& orbit, const std::vector<Point<double>>& pts);

// Orbit of (a, f(a)) (or (b, f(b)) when g moves points left) that forms an
// eps-net of the graph. Requires the fixed point of g's projection outside
// [a, b] and every step |g(P) - P| on the graph below the continuity delta
// for eps.
template <Scalar T>
OrbitTrace<T> epsilon_net(const IfsSystem<T>& sys, const Affine2<T>& g, double eps,
                          std::size_t max_points = kDefaultWordBudget);

// epsilon_net with eps doubled from `start_eps` until the step condition holds.
template <Scalar T>
OrbitTrace<T> epsilon_net_auto(const IfsSystem<T>& sys, const Affine2<T>& g, double start_eps,
                               int max_doublings = 40);

enum class CurveKind { Parabola, ExpLinear, LogLinear, PowerLinear, XLogX };

const char* curve_kind_name(CurveKind kind) noexcept;

template <Scalar T>
struct CurveModel {
  CurveKind kind = CurveKind::Parabola;
  T a{};
  T b{};
  // Local frame: X = (x - x0) / scale, Y = y - y0.
  T x0{};
  T y0{};
  T scale{1};
  // Local coefficients; A and B are exact for the parabola.
  T exact_a{};
  T exact_b{};
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double K = 0.0;
  // The same curve in the original frame:
  //   Parabola     y = A x^2 + B x + C
  //   ExpLinear    y = A x + B e^{K x} + C
  //   LogLinear    y = A x + B log|x - C| + D
  //   PowerLinear  y = A x + B |x - C|^K + D
  //   XLogX        y = A (x - C) log|x - C| + D x + E
  std::vector<std::pair<std::string, double>> coefficients;
  // Parabola coefficients (A, B, C) in the original frame, exact in rational mode.
  T parabola_a{};
  T parabola_b{};
  T parabola_c{};
  // Floating-mode dispatch fell within the equality threshold of a case boundary.
  bool near_boundary = false;

  double coefficient(const std::string& name) const;
  // Local-frame evaluation (numerically stable form).
  double evaluate(double x) const;
  // Exact for the parabola in rational mode.
  T evaluate_exact(const T& x) const;
  // Evaluation through the original-frame coefficients.
  double evaluate_original(double x) const;
};

template <Scalar T>
CurveModel<T> classify_orbit_curve(const Affine2<T>& g, const Point<T>& origin, const T& a, const T& b);

// Largest |y_n - model(x_n)| over the trace; exact arithmetic for the
// parabola in rational mode.
template <Scalar T>
double verify_orbit_on_curve(const OrbitTrace<T>& trace, const CurveModel<T>& model);

template <Scalar T>
struct ParabolaFit {
  T A{};
  T B{};
  T C{};
  double max_residual = 0.0;
  bool is_line = false;
};

// Least-squares fit y = A x^2 + B x + C; returned only if the max-norm
// residual is <= tol.
template <Scalar T>
std::optional<ParabolaFit<T>> detect_parabola(const std::vector<Point<T>>& points, double tol);

// The fit regardless of the tolerance.
template <Scalar T>
ParabolaFit<T> fit_parabola(const std::vector<Point<T>>& points);

}  // namespace fif
