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

#include "fif/orbit_curves.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fif {

namespace {

// Dispatch threshold for floating-mode case selection.
constexpr double kCaseThreshold = 1e-9;

template <Scalar T>
bool case_equal(const T& lhs, const T& rhs) {
  if constexpr (is_exact_v<T>) {
    return lhs == rhs;
  } else {
    return std::fabs(lhs - rhs) < kCaseThreshold;
  }
}

void require_nonzero(double v, const char* what) {
  if (v == 0.0 || !std::isfinite(v)) throw Error(ErrorCode::DegenerateDenominator, what);
}

template <Scalar T>
void require_nonzero_exact(const T& v, const char* what) {
  if (v == 0) throw Error(ErrorCode::DegenerateDenominator, what);
}

}  // namespace

const char* curve_kind_name(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::Parabola: return "Parabola";
    case CurveKind::ExpLinear: return "ExpLinear";
    case CurveKind::LogLinear: return "LogLinear";
    case CurveKind::PowerLinear: return "PowerLinear";
    case CurveKind::XLogX: return "XLogX";
  }
  return "Unknown";
}

template <Scalar T>
OrbitTrace<T> orbit_until_exit(const Affine2<T>& g, const Point<T>& origin, const T& a, const T& b,
                               std::size_t max_iterations) {
  const auto g1 = g.projection();
  const T first = g1(origin.x);
  if (first == origin.x) throw Error(ErrorCode::FixedPointInside, "orbit origin is fixed by the projection");
  OrbitTrace<T> trace;
  trace.g = g;
  trace.origin = origin;
  trace.rightward = origin.x < first;
  trace.points.push_back(origin);
  auto inside = [&](const T& x) { return trace.rightward ? x < b : a < x; };
  while (inside(trace.points.back().x)) {
    if (trace.points.size() > max_iterations) {
      throw Error(ErrorCode::DepthTooLarge, "orbit did not leave [a, b] within " + std::to_string(max_iterations) +
                                                " iterations");
    }
    trace.points.push_back(apply(g, trace.points.back()));
  }
  trace.crossing_index = trace.points.size() - 1;
  return trace;
}

template <Scalar T>
OrbitTrace<T> orbit_iterates(const Affine2<T>& g, const Point<T>& origin, std::size_t count) {
  OrbitTrace<T> trace;
  trace.g = g;
  trace.origin = origin;
  trace.rightward = origin.x < g.projection()(origin.x);
  trace.points.push_back(origin);
  for (std::size_t n = 0; n < count; ++n) trace.points.push_back(apply(g, trace.points.back()));
  trace.crossing_index = count;
  return trace;
}

double max_displacement(const Affine2<double>& g, const std::vector<Point<double>>& pts) {
  double out = 0.0;
  for (const auto& pt : pts) {
    const auto img = apply(g, pt);
    out = std::max(out, std::hypot(img.x - pt.x, img.y - pt.y));
  }
  return out;
}

double covering_radius(const std::vector<Point<double>>& orbit, const std::vector<Point<double>>& pts) {
  if (orbit.empty()) return std::numeric_limits<double>::infinity();
  auto sorted = orbit;
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  double radius = 0.0;
  for (const auto& pt : pts) {
    const auto pos = std::lower_bound(sorted.begin(), sorted.end(), pt.x,
                                      [](const Point<double>& o, double x) { return o.x < x; });
    double best = std::numeric_limits<double>::infinity();
    for (auto it = pos; it != sorted.end() && it->x - pt.x < best; ++it) {
      best = std::min(best, std::hypot(it->x - pt.x, it->y - pt.y));
    }
    for (auto it = pos; it != sorted.begin();) {
      --it;
      if (pt.x - it->x >= best) break;
      best = std::min(best, std::hypot(it->x - pt.x, it->y - pt.y));
    }
    radius = std::max(radius, best);
  }
  return radius;
}

template <Scalar T>
OrbitTrace<T> epsilon_net(const IfsSystem<T>& sys, const Affine2<T>& g, double eps, std::size_t max_points) {
  if (!fixed_point_outside(g.projection(), sys.a(), sys.b())) {
    throw Error(ErrorCode::FixedPointInside, "fixed point of the projected map lies in [a, b]");
  }
  const auto modulus = modulus_of_continuity(sys, eps, max_points);
  const auto sample = sample_attractor(to_double(sys), modulus.depth, max_points);
  const double step = max_displacement(to_double(g), sample.points);
  if (!(step < modulus.delta)) {
    throw Error(ErrorCode::StepTooLarge, "step " + format_scalar(step) + " is not below delta " +
                                             format_scalar(modulus.delta) + " for eps " + format_scalar(eps));
  }
  const bool rightward = sys.a() < g.projection()(sys.a());
  const T x0 = rightward ? sys.a() : sys.b();
  const auto f0 = evaluate_f(sys, x0, 1e-15);
  const Point<T> origin{x0, f0.exact ? *f0.exact : from_double<T>(f0.y)};
  auto trace = orbit_until_exit(g, origin, sys.a(), sys.b());
  std::vector<Point<double>> orbit;
  orbit.reserve(trace.points.size());
  for (const auto& pt : trace.points) orbit.push_back({to_double(pt.x), to_double(pt.y)});
  trace.eps = eps;
  trace.delta = modulus.delta;
  trace.max_step = step;
  trace.coverage = covering_radius(orbit, sample.points);
  return trace;
}

template <Scalar T>
OrbitTrace<T> epsilon_net_auto(const IfsSystem<T>& sys, const Affine2<T>& g, double start_eps, int max_doublings) {
  double eps = start_eps;
  for (int k = 0;; ++k) {
    try {
      return epsilon_net(sys, g, eps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StepTooLarge || k >= max_doublings) throw;
    }
    eps *= 2;
  }
}

template <Scalar T>
double CurveModel<T>::coefficient(const std::string& name) const {
  for (const auto& [key, value] : coefficients) {
    if (key == name) return value;
  }
  throw Error(ErrorCode::InvalidArgument, "no coefficient " + name + " for " + curve_kind_name(kind));
}

template <Scalar T>
double CurveModel<T>::evaluate(double x) const {
  const double X = (x - to_double(x0)) / to_double(scale);
  double eta = 0.0;
  switch (kind) {
    case CurveKind::Parabola: eta = A * X * X + B * X; break;
    case CurveKind::ExpLinear: eta = A * X + B * std::expm1(K * X); break;
    case CurveKind::LogLinear: eta = A * X + B * std::log1p(X / C); break;
    case CurveKind::PowerLinear: eta = A * X + B * std::expm1(K * std::log1p(X / C)); break;
    case CurveKind::XLogX: {
      const double t = X / C;
      eta = A * (1 + t) * std::log1p(t) + B * X;
      break;
    }
  }
  return to_double(y0) + eta;
}

template <Scalar T>
T CurveModel<T>::evaluate_exact(const T& x) const {
  if (kind == CurveKind::Parabola) {
    const T X = (x - x0) / scale;
    return T(y0 + exact_a * X * X + exact_b * X);
  }
  return from_double<T>(evaluate(to_double(x)));
}

template <Scalar T>
double CurveModel<T>::evaluate_original(double x) const {
  auto c = [&](const char* n) { return coefficient(n); };
  switch (kind) {
    case CurveKind::Parabola: return (c("A") * x + c("B")) * x + c("C");
    case CurveKind::ExpLinear: return c("A") * x + c("B") * std::exp(c("K") * x) + c("C");
    case CurveKind::LogLinear: return c("A") * x + c("B") * std::log(std::fabs(x - c("C"))) + c("D");
    case CurveKind::PowerLinear:
      return c("A") * x + c("B") * std::pow(std::fabs(x - c("C")), c("K")) + c("D");
    case CurveKind::XLogX:
      return c("A") * (x - c("C")) * std::log(std::fabs(x - c("C"))) + c("D") * x + c("E");
  }
  return 0.0;
}

template <Scalar T>
CurveModel<T> classify_orbit_curve(const Affine2<T>& g, const Point<T>& origin, const T& a, const T& b) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "interval must satisfy a < b");
  if (!(g.p > 0) || !(g.q > 0)) throw Error(ErrorCode::NonpositiveRatio, "classification needs p > 0 and q > 0");
  if (!fixed_point_outside(g.projection(), a, b)) {
    throw Error(ErrorCode::FixedPointInside, "fixed point of the projected map lies in [a, b]");
  }

  CurveModel<T> m;
  m.a = a;
  m.b = b;
  m.x0 = origin.x;
  m.y0 = origin.y;
  m.scale = T(b - a);

  // g in the local frame centred at the origin with [a, b] of unit length.
  const T L = m.scale;
  const T hl = T((g.p * origin.x + g.h - origin.x) / L);
  const T rl = T(g.r * L);
  const T sl = T(g.q * origin.y + g.r * origin.x + g.s - origin.y);

  const bool p_one = case_equal(g.p, T(1));
  const bool q_one = case_equal(g.q, T(1));
  const bool p_eq_q = case_equal(g.p, g.q);
  if constexpr (!is_exact_v<T>) {
    m.near_boundary = (p_one && g.p != 1) || (q_one && g.q != 1) || (p_eq_q && g.p != g.q);
  }

  const double h = to_double(hl), r = to_double(rl), s = to_double(sl);
  const double pm1 = to_double(T(g.p - 1)), qm1 = to_double(T(g.q - 1)), qmp = to_double(T(g.q - g.p));
  const double p = to_double(g.p);
  const double Ld = to_double(L), x0 = to_double(origin.x), y0 = to_double(origin.y);

  if (p_one && q_one) {
    m.kind = CurveKind::Parabola;
    require_nonzero_exact(hl, "h = 0");
    m.exact_a = rl / (2 * hl);
    m.exact_b = (2 * sl - hl * rl) / (2 * hl);
    m.A = to_double(m.exact_a);
    m.B = to_double(m.exact_b);
    m.parabola_a = m.exact_a / (L * L);
    m.parabola_b = m.exact_b / L - 2 * m.exact_a * origin.x / (L * L);
    m.parabola_c = m.exact_a * origin.x * origin.x / (L * L) - m.exact_b * origin.x / L + origin.y;
    m.coefficients = {{"A", to_double(m.parabola_a)}, {"B", to_double(m.parabola_b)}, {"C", to_double(m.parabola_c)}};
    return m;
  }
  if (p_one) {
    m.kind = CurveKind::ExpLinear;
    require_nonzero(h, "h = 0");
    require_nonzero(qm1, "q - 1 = 0");
    m.K = std::log1p(qm1) / h;
    m.A = r / (-qm1);
    m.B = (h * r + qm1 * s) / (qm1 * qm1);
    m.coefficients = {{"A", m.A / Ld},
                      {"B", m.B * std::exp(-m.K * x0 / Ld)},
                      {"C", y0 - m.B - m.A * x0 / Ld},
                      {"K", m.K / Ld}};
    return m;
  }

  require_nonzero(pm1, "p - 1 = 0");
  m.C = h / pm1;
  require_nonzero(m.C, "C = 0");
  const double logp = std::log1p(pm1);
  const double shift = x0 - m.C * Ld;  // fixed point of the projection, original frame
  const double cl = std::fabs(m.C * Ld);
  if (q_one) {
    m.kind = CurveKind::LogLinear;
    m.A = r / pm1;
    m.B = (h * r - pm1 * s) / (-pm1 * logp);
    m.coefficients = {
        {"A", m.A / Ld}, {"B", m.B}, {"C", shift}, {"D", y0 - m.A * x0 / Ld - m.B * std::log(cl)}};
    return m;
  }
  if (p_eq_q) {
    m.kind = CurveKind::XLogX;
    m.A = r * m.C / (p * logp);
    require_nonzero(-m.C * pm1, "C - C p = 0");
    m.B = (m.C * r - s) / (-m.C * pm1);
    const double lead = m.A / (m.C * Ld);
    m.coefficients = {{"A", lead},
                      {"C", shift},
                      {"D", m.B / Ld - lead * std::log(cl)},
                      {"E", y0 - m.B * x0 / Ld + lead * shift * std::log(cl)}};
    return m;
  }
  m.kind = CurveKind::PowerLinear;
  require_nonzero(qmp, "p - q = 0");
  require_nonzero(qm1, "q - 1 = 0");
  m.A = r / (-qmp);
  m.B = (h * r + s * qmp) / (qm1 * qmp);
  m.K = std::log1p(qm1) / logp;
  m.coefficients = {{"A", m.A / Ld},
                    {"B", m.B / std::pow(cl, m.K)},
                    {"C", shift},
                    {"D", y0 - m.B - m.A * x0 / Ld},
                    {"K", m.K}};
  return m;
}

template <Scalar T>
double verify_orbit_on_curve(const OrbitTrace<T>& trace, const CurveModel<T>& model) {
  double worst = 0.0;
  for (const auto& pt : trace.points) {
    double res;
    if (is_exact_v<T> && model.kind == CurveKind::Parabola) {
      res = to_double(abs_value(T(pt.y - model.evaluate_exact(pt.x))));
    } else {
      res = std::fabs(to_double(pt.y) - model.evaluate(to_double(pt.x)));
    }
    worst = std::max(worst, res);
  }
  return worst;
}

namespace {

// Exact least squares through the 3x3 normal equations.
ParabolaFit<Rational> fit_exact(const std::vector<Point<Rational>>& pts) {
  std::array<Rational, 5> sx{};  // sum x^k
  std::array<Rational, 3> sxy{};  // sum x^k y
  for (const auto& pt : pts) {
    Rational xk(1);
    for (int k = 0; k < 5; ++k) {
      sx[k] += xk;
      if (k < 3) sxy[k] += xk * pt.y;
      xk *= pt.x;
    }
  }
  // Unknowns ordered (C, B, A).
  std::array<std::array<Rational, 4>, 3> m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = sx[i + j];
    m[i][3] = sxy[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    while (piv < 3 && m[piv][col] == 0) ++piv;
    if (piv == 3) throw Error(ErrorCode::InvalidArgument, "parabola fit needs three distinct abscissae");
    std::swap(m[piv], m[col]);
    for (int row = 0; row < 3; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  ParabolaFit<Rational> fit;
  fit.C = m[0][3] / m[0][0];
  fit.B = m[1][3] / m[1][1];
  fit.A = m[2][3] / m[2][2];
  Rational worst(0);
  for (const auto& pt : pts) {
    const Rational res = abs(pt.y - ((fit.A * pt.x + fit.B) * pt.x + fit.C));
    if (worst < res) worst = res;
  }
  fit.max_residual = worst.get_d();
  fit.is_line = fit.A == 0;
  return fit;
}

struct ScaledFit {
  Eigen::VectorXd coef;  // in the scaled variable t, highest power first
  double mid = 0.0;
  double half = 1.0;
  double max_residual = 0.0;
};

// Householder QR on the Vandermonde matrix in t = (x - mid) / half.
ScaledFit fit_scaled(const std::vector<Point<double>>& pts, int degree) {
  double lo = pts.front().x, hi = lo;
  for (const auto& pt : pts) {
    lo = std::min(lo, pt.x);
    hi = std::max(hi, pt.x);
  }
  ScaledFit f;
  f.mid = 0.5 * (lo + hi);
  f.half = hi > lo ? 0.5 * (hi - lo) : 1.0;
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd V(n, degree + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (pts[static_cast<std::size_t>(i)].x - f.mid) / f.half;
    double tk = 1.0;
    for (int k = degree; k >= 0; --k) {
      V(i, k) = tk;
      tk *= t;
    }
    y(i) = pts[static_cast<std::size_t>(i)].y;
  }
  f.coef = V.colPivHouseholderQr().solve(y);
  f.max_residual = (V * f.coef - y).cwiseAbs().maxCoeff();
  return f;
}

ParabolaFit<double> fit_double(const std::vector<Point<double>>& pts) {
  const auto f = fit_scaled(pts, 2);
  const double al = f.coef(0), be = f.coef(1), ga = f.coef(2), m = f.mid, s = f.half;
  ParabolaFit<double> fit;
  fit.A = al / (s * s);
  fit.B = be / s - 2 * al * m / (s * s);
  fit.C = al * m * m / (s * s) - be * m / s + ga;
  fit.max_residual = f.max_residual;
  return fit;
}

}  // namespace

template <Scalar T>
ParabolaFit<T> fit_parabola(const std::vector<Point<T>>& points) {
  if (points.size() < 3) throw Error(ErrorCode::InvalidArgument, "parabola fit needs at least three points");
  if constexpr (is_exact_v<T>) {
    return fit_exact(points);
  } else {
    return fit_double(points);
  }
}

template <Scalar T>
std::optional<ParabolaFit<T>> detect_parabola(const std::vector<Point<T>>& points, double tol) {
  auto fit = fit_parabola(points);
  if constexpr (!is_exact_v<T>) {
    // Curvature invisible at this tolerance: report the chord as a degenerate parabola.
    const auto quad = fit_scaled(points, 2);
    if (std::fabs(quad.coef(0)) <= tol) {
      const auto line = fit_scaled(points, 1);
      if (line.max_residual <= tol) {
        fit.A = 0.0;
        fit.B = line.coef(0) / line.half;
        fit.C = line.coef(1) - line.coef(0) * line.mid / line.half;
        fit.max_residual = line.max_residual;
        fit.is_line = true;
      }
    }
  }
  if (fit.max_residual <= tol) return fit;
  return std::nullopt;
}

#define FIF_INSTANTIATE(T)                                                                                       \
  template OrbitTrace<T> orbit_until_exit(const Affine2<T>&, const Point<T>&, const T&, const T&, std::size_t); \
  template OrbitTrace<T> orbit_iterates(const Affine2<T>&, const Point<T>&, std::size_t);                       \
  template OrbitTrace<T> epsilon_net(const IfsSystem<T>&, const Affine2<T>&, double, std::size_t);              \
  template OrbitTrace<T> epsilon_net_auto(const IfsSystem<T>&, const Affine2<T>&, double, int);                 \
  template struct CurveModel<T>;                                                                                 \
  template CurveModel<T> classify_orbit_curve(const Affine2<T>&, const Point<T>&, const T&, const T&);          \
  template double verify_orbit_on_curve(const OrbitTrace<T>&, const CurveModel<T>&);                             \
  template ParabolaFit<T> fit_parabola(const std::vector<Point<T>>&);                                            \
  template std::optional<ParabolaFit<T>> detect_parabola(const std::vector<Point<T>>&, double);

FIF_INSTANTIATE(Rational)
FIF_INSTANTIATE(double)

#undef FIF_INSTANTIATE

}  // namespace fif
