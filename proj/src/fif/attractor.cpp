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

#include "fif/attractor.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace fif {

namespace {

// Slack for interval comparisons in floating mode; exact mode uses none.
template <Scalar T>
T interval_slack(const IfsSystem<T>& sys) {
  if constexpr (is_exact_v<T>) {
    return T(0);
  } else {
    return 1e-12 * sys.length();
  }
}

template <Scalar T>
bool contains(const std::pair<T, T>& strip, const T& x, const T& slack) {
  return strip.first - slack <= x && x <= strip.second + slack;
}

template <Scalar T>
std::size_t select_branch(const IfsSystem<T>& sys, const std::vector<std::pair<T, T>>& strips, const T& x) {
  for (std::size_t i = 0; i < strips.size(); ++i) {
    if (contains(strips[i], x, T(0))) return i;
  }
  // Only reachable through rounding in floating mode: take the nearest strip.
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < strips.size(); ++i) {
    const double d = std::max(to_double(strips[i].first) - to_double(x), to_double(x) - to_double(strips[i].second));
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  (void)sys;
  return best;
}

template <Scalar T>
std::vector<std::pair<T, T>> all_strips(const IfsSystem<T>& sys) {
  std::vector<std::pair<T, T>> out;
  for (std::size_t i = 0; i < sys.size(); ++i) out.push_back(sys.strip(i));
  return out;
}

template <Scalar T>
void sort_unique(std::vector<Point<T>>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point<T>& l, const Point<T>& r) {
    return l.x < r.x || (l.x == r.x && l.y < r.y);
  });
  if constexpr (is_exact_v<T>) {
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  } else {
    constexpr double quantum = 1e-12;
    std::vector<Point<T>> out;
    out.reserve(pts.size());
    for (const auto& pt : pts) {
      bool dup = false;
      // Points within the quantum are adjacent after sorting up to a few slots.
      for (auto it = out.rbegin(); it != out.rend() && pt.x - it->x <= quantum; ++it) {
        if (std::fabs(pt.y - it->y) <= quantum) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(pt);
    }
    pts = std::move(out);
  }
}

}  // namespace

template <Scalar T>
ValidationReport<T> validate(const IfsSystem<T>& sys, double tolerance) {
  ValidationReport<T> rep;
  rep.tolerance = tolerance;
  rep.strips = all_strips(sys);
  const T slack = interval_slack(sys);

  rep.contractive = true;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto& g = sys.map(i);
    if (!(abs_value(g.p) < 1) || !(abs_value(g.q) < 1) || g.p == 0) {
      rep.contractive = false;
      rep.problems.push_back("map " + std::to_string(i + 1) + " violates |p| < 1, |q| < 1, p != 0");
    }
  }

  rep.self_mapping = true;
  for (std::size_t i = 0; i < rep.strips.size(); ++i) {
    const auto& [lo, hi] = rep.strips[i];
    if (lo < sys.a() - slack || sys.b() + slack < hi) {
      rep.self_mapping = false;
      rep.problems.push_back("strip of map " + std::to_string(i + 1) + " leaves [a, b]");
    }
  }

  auto sorted = rep.strips;
  std::sort(sorted.begin(), sorted.end());
  T reach = sys.a();
  rep.covering = true;
  for (const auto& [lo, hi] : sorted) {
    if (reach + slack < lo) {
      rep.covering = false;
      rep.problems.push_back("gap in strip cover between " + format_scalar(reach) + " and " + format_scalar(lo));
    }
    reach = max_value(reach, hi);
  }
  if (reach + slack < sys.b()) {
    rep.covering = false;
    rep.problems.push_back("strip cover ends at " + format_scalar(reach) + " before b");
  }

  for (std::size_t i = 0; i < rep.strips.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.strips.size(); ++j) {
      T lo = max_value(rep.strips[i].first, rep.strips[j].first);
      T hi = min_value(rep.strips[i].second, rep.strips[j].second);
      if (!(hi < lo)) rep.intersections.push_back({i, j, lo, hi});
    }
  }

  rep.single_valued = true;
  if (rep.contractive && rep.self_mapping) {
    constexpr int kInterior = 7;
    const double eval_tol = tolerance / 8;
    for (const auto& sec : rep.intersections) {
      std::vector<T> xs{sec.lo};
      if (sec.is_overlap()) {
        for (int k = 1; k <= kInterior; ++k) {
          xs.push_back(T(sec.lo + (sec.hi - sec.lo) * T(k) / T(kInterior + 1)));
        }
        xs.push_back(sec.hi);
      }
      for (const auto& x : xs) {
        const auto yi = evaluate_f(sys, x, eval_tol, sec.i);
        const auto yj = evaluate_f(sys, x, eval_tol, sec.j);
        double diff;
        if (yi.exact && yj.exact) {
          diff = std::fabs(to_double(T(*yi.exact - *yj.exact)));
        } else {
          diff = std::fabs(yi.y - yj.y);
        }
        rep.max_discrepancy = std::max(rep.max_discrepancy, diff);
      }
    }
    if (rep.max_discrepancy > tolerance) {
      rep.single_valued = false;
      rep.problems.push_back("branches disagree by " + format_scalar(rep.max_discrepancy) + " on a shared abscissa");
    }
  }

  if (!rep.contractive) {
    rep.error = ErrorCode::NotContractive;
  } else if (!rep.self_mapping || !rep.covering) {
    rep.error = ErrorCode::NotCovering;
  } else if (!rep.single_valued) {
    rep.error = ErrorCode::NotAFunctionGraph;
  }
  return rep;
}

template <Scalar T>
void require_valid(const IfsSystem<T>& sys) {
  const auto rep = validate(sys);
  if (!rep.valid()) {
    std::string msg;
    for (const auto& p : rep.problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(rep.error, msg);
  }
}

template <Scalar T>
double vertical_bound(const IfsSystem<T>& sys) {
  const double xmax = std::max(std::fabs(to_double(sys.a())), std::fabs(to_double(sys.b())));
  double bound = 0.0;
  for (const auto& g : sys.maps()) {
    const double q = std::fabs(to_double(g.q));
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    bound = std::max(bound, (std::fabs(to_double(g.r)) * xmax + std::fabs(to_double(g.s))) / (1.0 - q));
  }
  return bound;
}

template <Scalar T>
Evaluation<T> evaluate_f(const IfsSystem<T>& sys, const T& x, double tol, std::optional<std::size_t> first_branch) {
  if (x < sys.a() || sys.b() < x) {
    throw Error(ErrorCode::OutOfDomain, "x = " + format_scalar(x) + " outside [a, b]");
  }
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (first_branch && !contains(sys.strip(*first_branch), x, interval_slack(sys))) {
    throw Error(ErrorCode::OutOfDomain, "x not in strip of branch " + std::to_string(*first_branch + 1));
  }
  const auto strips = all_strips(sys);
  const double ybound = vertical_bound(sys);
  constexpr int kMaxSteps = 100000;

  // Invariant: f(x) = c + m f(cur).
  T cur = x;
  T c(0);
  T m(1);
  struct Visit {
    T c;
    T m;
  };
  std::map<T, Visit> seen;
  Evaluation<T> out;
  for (int step = 0;; ++step) {
    if (m == 0) {
      out.exact = c;
      break;
    }
    if constexpr (is_exact_v<T>) {
      auto [it, inserted] = seen.try_emplace(cur, Visit{c, m});
      if (!inserted) {
        // Backward orbit closed a cycle: c_k + m_k f(cur) = c + m f(cur).
        const Visit& prev = it->second;
        const T fcur = (c - prev.c) / (prev.m - m);
        out.exact = T(prev.c + prev.m * fcur);
        break;
      }
    }
    if (std::fabs(to_double(m)) * ybound <= tol || step >= kMaxSteps) break;
    const std::size_t i = (step == 0 && first_branch) ? *first_branch : select_branch(sys, strips, cur);
    const auto& g = sys.map(i);
    T prev = (cur - g.h) / g.p;
    if constexpr (!is_exact_v<T>) prev = std::clamp(prev, sys.a(), sys.b());
    c += m * (g.r * prev + g.s);
    m *= g.q;
    cur = prev;
    out.steps = step + 1;
  }
  if (out.exact) {
    out.y = to_double(*out.exact);
    out.error_bound = 0.0;
  } else {
    out.y = to_double(c);
    out.error_bound = std::fabs(to_double(m)) * ybound;
  }
  return out;
}

template <Scalar T>
std::vector<Point<T>> anchor_points(const IfsSystem<T>& sys) {
  std::vector<Point<T>> pts;
  for (const auto& g : sys.maps()) {
    if (g.p == 1 || g.q == 1) continue;
    const T fx = g.h / (1 - g.p);
    const T fy = (g.r * fx + g.s) / (1 - g.q);
    if (fx < sys.a() || sys.b() < fx) continue;
    pts.push_back({fx, fy});
  }
  for (const T& x : {sys.a(), sys.b()}) {
    const auto e = evaluate_f(sys, x, 1e-15);
    pts.push_back({x, e.exact ? *e.exact : from_double<T>(e.y)});
  }
  sort_unique(pts);
  return pts;
}

template <Scalar T>
GraphSample<T> sample_attractor(const IfsSystem<T>& sys, int depth, std::size_t max_points) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  auto level = anchor_points(sys);
  const double m = static_cast<double>(sys.size());
  if (static_cast<double>(level.size()) * std::pow(m, depth) > static_cast<double>(max_points)) {
    throw Error(ErrorCode::DepthTooLarge, "sampling depth " + std::to_string(depth) + " exceeds budget of " +
                                              std::to_string(max_points) + " points");
  }
  for (int d = 0; d < depth; ++d) {
    std::vector<Point<T>> next;
    next.reserve(level.size() * sys.size());
    for (const auto& g : sys.maps()) {
      for (const auto& pt : level) next.push_back(apply(g, pt));
    }
    sort_unique(next);
    level = std::move(next);
  }
  GraphSample<T> out;
  out.points = std::move(level);
  out.depth = depth;
  for (std::size_t k = 1; k < out.points.size(); ++k) {
    out.resolution = std::max(out.resolution, to_double(T(out.points[k].x - out.points[k - 1].x)));
  }
  double pmax = 0.0;
  for (const auto& g : sys.maps()) pmax = std::max(pmax, std::fabs(to_double(g.p)));
  out.resolution_bound = std::pow(pmax, depth) * to_double(sys.length());
  if constexpr (!is_exact_v<T>) {
    double extent = 1.0;
    for (const auto& pt : out.points) extent = std::max({extent, std::fabs(pt.x), std::fabs(pt.y)});
    out.tolerance = 4.0 * (depth + 2) * DBL_EPSILON * extent + 1e-12;
  }
  return out;
}

GraphSample<double> to_double(const GraphSample<Rational>& s) {
  GraphSample<double> out;
  out.points.reserve(s.points.size());
  for (const auto& pt : s.points) out.points.push_back({pt.x.get_d(), pt.y.get_d()});
  out.depth = s.depth;
  out.resolution = s.resolution;
  out.resolution_bound = s.resolution_bound;
  out.tolerance = s.tolerance;
  return out;
}

double max_window_spread(const std::vector<Point<double>>& pts, double width) {
  std::deque<std::size_t> hi, lo;  // monotone deques of indices for max / min y
  double spread = 0.0;
  std::size_t left = 0;
  for (std::size_t right = 0; right < pts.size(); ++right) {
    while (!hi.empty() && pts[hi.back()].y <= pts[right].y) hi.pop_back();
    hi.push_back(right);
    while (!lo.empty() && pts[lo.back()].y >= pts[right].y) lo.pop_back();
    lo.push_back(right);
    while (pts[right].x - pts[left].x > width) {
      ++left;
      if (hi.front() < left) hi.pop_front();
      if (lo.front() < left) lo.pop_front();
    }
    spread = std::max(spread, pts[hi.front()].y - pts[lo.front()].y);
  }
  return spread;
}

template <Scalar T>
ContinuityModulus modulus_of_continuity(const IfsSystem<T>& sys, double eps, std::size_t max_points) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const auto dsys = to_double(sys);
  // With spread <= eps / 2, any delta below (sqrt(3) / 2) eps keeps ||dP|| < eps.
  const double cap = std::min(0.999 * 0.5 * std::sqrt(3.0) * eps, dsys.length());
  for (int depth = 1;; ++depth) {
    GraphSample<double> sample;
    try {
      sample = sample_attractor(dsys, depth, max_points);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DepthTooLarge) break;
      throw;
    }
    const double res = sample.resolution;
    auto admissible = [&](double delta) { return max_window_spread(sample.points, delta + res) <= eps / 2; };
    double delta = 0.0;
    if (admissible(cap)) {
      delta = cap;
    } else if (admissible(0.0)) {
      double good = 0.0, bad = cap;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (good + bad);
        (admissible(mid) ? good : bad) = mid;
      }
      delta = good;
    }
    if (delta > 0 && res <= delta / 8) return ContinuityModulus{delta, depth, res};
  }
  throw Error(ErrorCode::ResolutionInsufficient,
              "no delta certified for eps = " + format_scalar(eps) + " within the point budget");
}

#define FIF_INSTANTIATE(T)                                                                              \
  template ValidationReport<T> validate(const IfsSystem<T>&, double);                                   \
  template void require_valid(const IfsSystem<T>&);                                                     \
  template double vertical_bound(const IfsSystem<T>&);                                                  \
  template Evaluation<T> evaluate_f(const IfsSystem<T>&, const T&, double, std::optional<std::size_t>); \
  template std::vector<Point<T>> anchor_points(const IfsSystem<T>&);                                    \
  template GraphSample<T> sample_attractor(const IfsSystem<T>&, int, std::size_t);                      \
  template ContinuityModulus modulus_of_continuity(const IfsSystem<T>&, double, std::size_t);

FIF_INSTANTIATE(Rational)
FIF_INSTANTIATE(double)

#undef FIF_INSTANTIATE

}  // namespace fif
