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

#include <doctest.h>

#include <cmath>

#include "fif/examples.hpp"
#include "fif/orbit_curves.hpp"
#include "fif/separation.hpp"
#include "support/generators.hpp"

using namespace fif;
using R = Rational;
using fif::testing::Gen;

namespace {

R q(long n, long d) { return from_ratio<R>(n, d); }

// y = 0 on [0, 1].
IfsSystem<R> flat_system() {
  return IfsSystem<R>({{q(1, 2), q(1, 2), R(0), R(0), R(0)}, {q(1, 2), q(1, 2), R(0), q(1, 2), R(0)}}, R(0), R(1));
}

// A map of the requested kind that moves points to the right, with
// coefficients small enough that 50 iterates stay moderate.
template <Scalar T>
Affine2<T> random_map(Gen& gen, CurveKind kind) {
  auto off_one = [&] {
    for (;;) {
      T v = gen.scalar<T>(0.9, 1.1);
      if (v != 1) return v;
    }
  };
  Affine2<T> g;
  g.h = gen.scalar<T>(0.02, 0.1);
  if (g.h == 0) g.h = T(1) / 50;
  g.r = gen.scalar<T>(-0.5, 0.5);
  g.s = gen.scalar<T>(-0.5, 0.5);
  switch (kind) {
    case CurveKind::Parabola: g.p = 1; g.q = 1; break;
    case CurveKind::ExpLinear: g.p = 1; g.q = off_one(); break;
    case CurveKind::LogLinear: g.p = off_one(); g.q = 1; break;
    case CurveKind::XLogX: g.p = off_one(); g.q = g.p; break;
    case CurveKind::PowerLinear:
      g.p = off_one();
      do g.q = off_one(); while (g.q == g.p);
      break;
  }
  return g;
}

template <Scalar T>
void check_random_case(CurveKind kind, unsigned long long seed) {
  Gen gen(seed);
  for (int k = 0; k < 100; ++k) {
    auto g = random_map<T>(gen, kind);
    Point<T> origin{T(0), gen.scalar<T>(-1, 1)};
    auto trace = orbit_iterates(g, origin, 50);
    auto model = classify_orbit_curve(g, origin, T(0), trace.points.back().x);
    REQUIRE(model.kind == kind);
    double res = verify_orbit_on_curve(trace, model);
    CHECK(res < 1e-9);
    if (is_exact_v<T> && kind == CurveKind::Parabola) CHECK(res == 0.0);
    // Original-frame coefficients describe the same curve.
    for (const auto& pt : trace.points) {
      double x = to_double(pt.x);
      CHECK(std::fabs(model.evaluate_original(x) - model.evaluate(x)) < 1e-9 * (1 + std::fabs(model.evaluate(x))));
    }
  }
}

}  // namespace

TEST_CASE("orbit_until_exit") {
  Affine2<R> g{R(1), R(1), R(0), q(1, 3), R(0)};
  auto t = orbit_until_exit(g, Point<R>{R(0), R(0)}, R(0), R(1));
  CHECK(t.crossing_index == 3);
  CHECK(t.points.back().x == R(1));
  auto over = orbit_until_exit(Affine2<R>{R(1), R(1), R(0), q(2, 5), R(0)}, Point<R>{R(0), R(0)}, R(0), R(1));
  CHECK(over.crossing_index == 3);
  CHECK(over.points.back().x == q(6, 5));
  auto left = orbit_until_exit(Affine2<R>{R(1), R(1), R(0), q(-1, 2), R(0)}, Point<R>{R(1), R(0)}, R(0), R(1));
  CHECK_FALSE(left.rightward);
  CHECK(left.crossing_index == 2);
  for (std::size_t n = 1; n < t.points.size(); ++n) CHECK(t.points[n] == apply(g, t.points[n - 1]));
  CHECK_THROWS_AS(orbit_until_exit(Affine2<R>::identity(), Point<R>{R(0), R(0)}, R(0), R(1)), Error);
  CHECK_THROWS_AS(orbit_until_exit(Affine2<R>{R(1), R(1), R(0), q(1, 1000), R(0)}, Point<R>{R(0), R(0)}, R(0), R(1),
                                   10),
                  Error);
}

TEST_CASE("epsilon_net: translation on a flat graph") {
  auto sys = flat_system();
  Affine2<R> g{R(1), R(1), R(0), q(1, 2), R(0)};
  for (double eps : {0.6, 1.0}) {
    auto t = epsilon_net(sys, g, eps);
    REQUIRE(t.points.size() == 3);
    CHECK(t.points[0] == Point<R>{R(0), R(0)});
    CHECK(t.points[1] == Point<R>{q(1, 2), R(0)});
    CHECK(t.points[2] == Point<R>{R(1), R(0)});
    CHECK(t.crossing_index == 2);
    CHECK(t.coverage <= eps);
  }
  // Step 1/2 is not below the continuity delta for eps = 1/2.
  CHECK_THROWS_AS(epsilon_net(sys, g, 0.5), Error);
  auto t = epsilon_net_auto(sys, g, 0.1);
  CHECK(t.coverage <= t.eps);
  CHECK(t.max_step < t.delta);
  // Leftward motion starts at b.
  auto back = epsilon_net(sys, Affine2<R>{R(1), R(1), R(0), q(-1, 2), R(0)}, 0.6);
  CHECK(back.points.front().x == R(1));
  CHECK_FALSE(back.rightward);
}

TEST_CASE("epsilon_net: errors") {
  auto sys = flat_system();
  try {
    epsilon_net(sys, Affine2<R>{q(1, 2), R(1), R(0), q(1, 4), R(0)}, 0.5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FixedPointInside);
  }
  CHECK_THROWS_AS(epsilon_net(sys, Affine2<R>::identity(), 0.5), Error);
}

TEST_CASE("epsilon_net: near-identity element of the mixed-ratio parabola") {
  auto sys = mixed_parabola();
  auto v = wsp_check_1d(sys, 11, 0.05);
  const auto& best = v.gap_by_depth.back().argmin;
  REQUIRE(best.map1.p == 1);
  auto t = epsilon_net_auto(sys, best.map2, 0.05);
  auto dense = to_double(sample_attractor(sys, 10));
  std::vector<Point<double>> orbit;
  for (const auto& p : t.points) orbit.push_back(to_double(p));
  CHECK(covering_radius(orbit, dense.points) <= t.eps);
  for (std::size_t n = 1; n < t.points.size(); ++n) {
    CHECK(t.points[n] == apply(best.map2, t.points[n - 1]));
    CHECK((t.points[n].x > t.points[n - 1].x) == t.rightward);
  }
  // Orbit points stay on the graph y = x^2.
  for (const auto& p : t.points) CHECK(p.y == p.x * p.x);
}

TEST_CASE("classify: parabola") {
  Affine2<R> g{R(1), R(1), R(1), q(1, 2), q(1, 4)};
  auto m = classify_orbit_curve(g, Point<R>{R(0), R(0)}, R(0), R(1));
  CHECK(m.kind == CurveKind::Parabola);
  CHECK(m.exact_a == 1);
  CHECK(m.exact_b == 0);
  CHECK(m.parabola_a == 1);
  CHECK(m.parabola_b == 0);
  CHECK(m.parabola_c == 0);
  auto t = orbit_until_exit(g, Point<R>{R(0), R(0)}, R(0), R(1));
  REQUIRE(t.points.size() == 3);
  CHECK(t.points[1] == Point<R>{q(1, 2), q(1, 4)});
  CHECK(t.points[2] == Point<R>{R(1), R(1)});
  CHECK(verify_orbit_on_curve(t, m) == 0.0);

  auto wrong = m;
  wrong.exact_b += q(1, 1000);
  wrong.B += 1e-3;
  CHECK(verify_orbit_on_curve(t, wrong) >= 1e-4);
  CHECK(verify_orbit_on_curve(orbit_iterates(g, Point<R>{R(0), R(0)}, 0), m) == 0.0);
}

TEST_CASE("classify: exponential case") {
  Affine2<R> g{R(1), q(1, 2), R(0), R(1), R(1)};
  auto m = classify_orbit_curve(g, Point<R>{R(0), R(0)}, R(0), R(2));
  CHECK(m.kind == CurveKind::ExpLinear);
  CHECK(m.coefficient("K") == doctest::Approx(-std::log(2.0)));
  CHECK(std::fabs(m.coefficient("A")) < 1e-15);
  CHECK(m.coefficient("B") == doctest::Approx(-2.0));
  CHECK(m.coefficient("C") == doctest::Approx(2.0));
  auto t = orbit_until_exit(g, Point<R>{R(0), R(0)}, R(0), R(2));
  REQUIRE(t.points.size() == 3);
  CHECK(t.points[1] == Point<R>{R(1), R(1)});
  CHECK(t.points[2] == Point<R>{R(2), q(3, 2)});
  CHECK(verify_orbit_on_curve(t, m) < 1e-15);
  for (double x : {0.0, 0.25, 1.0, 1.7, 2.0}) CHECK(m.evaluate(x) == doctest::Approx(2 - std::pow(2.0, 1 - x)));
}

TEST_CASE("classify: errors") {
  CHECK_THROWS_AS(classify_orbit_curve(Affine2<R>::identity(), Point<R>{R(0), R(0)}, R(0), R(1)), Error);
  try {
    classify_orbit_curve(Affine2<R>{q(-1, 2), R(1), R(0), R(2), R(0)}, Point<R>{R(0), R(0)}, R(0), R(1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveRatio);
  }
  try {
    classify_orbit_curve(Affine2<R>{q(1, 2), R(1), R(0), q(1, 4), R(0)}, Point<R>{R(0), R(0)}, R(0), R(1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FixedPointInside);
  }
  CHECK_THROWS_AS(classify_orbit_curve(Affine2<R>{R(1), R(1), R(0), R(1), R(0)}, Point<R>{R(0), R(0)}, R(1), R(0)),
                  Error);
}

TEST_CASE("classify: random maps of every kind, exact") {
  check_random_case<R>(CurveKind::Parabola, 31);
  check_random_case<R>(CurveKind::ExpLinear, 32);
  check_random_case<R>(CurveKind::LogLinear, 33);
  check_random_case<R>(CurveKind::PowerLinear, 34);
  check_random_case<R>(CurveKind::XLogX, 35);
}

TEST_CASE("classify: random maps of every kind, floating") {
  check_random_case<double>(CurveKind::Parabola, 41);
  check_random_case<double>(CurveKind::ExpLinear, 42);
  check_random_case<double>(CurveKind::LogLinear, 43);
  check_random_case<double>(CurveKind::PowerLinear, 44);
}

TEST_CASE("classify: the exponential model tends to the parabola as q -> 1") {
  const Affine2<double> base{1.0, 1.0, 0.3, 0.1, 0.05};
  auto para = classify_orbit_curve(base, Point<double>{0.0, 0.0}, 0.0, 1.0);
  REQUIRE(para.kind == CurveKind::Parabola);
  for (int k = 3; k <= 6; ++k) {
    for (double sign : {-1.0, 1.0}) {
      auto g = base;
      g.q = 1 + sign * std::pow(10.0, -k);
      auto m = classify_orbit_curve(g, Point<double>{0.0, 0.0}, 0.0, 1.0);
      REQUIRE(m.kind == CurveKind::ExpLinear);
      for (int i = 0; i <= 20; ++i) {
        double x = i / 20.0;
        CHECK(std::fabs(m.evaluate(x) - para.evaluate(x)) < std::pow(10.0, -k + 2));
      }
    }
  }
  auto g = base;
  g.q = 1 + 1e-12;
  auto m = classify_orbit_curve(g, Point<double>{0.0, 0.0}, 0.0, 1.0);
  CHECK(m.kind == CurveKind::Parabola);
  CHECK(m.near_boundary);
}

TEST_CASE("classify: covariance under rescaling the abscissa") {
  Gen gen(36);
  const CurveKind kinds[] = {CurveKind::Parabola, CurveKind::ExpLinear, CurveKind::LogLinear,
                             CurveKind::PowerLinear, CurveKind::XLogX};
  for (auto kind : kinds) {
    for (int k = 0; k < 20; ++k) {
      auto g = random_map<R>(gen, kind);
      Point<R> origin{R(0), gen.rational(-1, 1)};
      auto trace = orbit_iterates(g, origin, 20);
      R b = trace.points.back().x;
      R lambda = gen.rational(0.2, 5, 7), mu = gen.rational(-3, 3);
      if (lambda <= 0) lambda = 1;
      auto m1 = classify_orbit_curve(g, origin, R(0), b);
      auto m2 = classify_orbit_curve(conjugate_x(g, lambda, mu), Point<R>{mu, origin.y}, mu, R(lambda * b + mu));
      CHECK(m2.kind == m1.kind);
      for (const auto& p : trace.points) {
        double x1 = p.x.get_d(), x2 = R(lambda * p.x + mu).get_d();
        CHECK(std::fabs(m1.evaluate(x1) - m2.evaluate(x2)) < 1e-10 * (1 + std::fabs(m1.evaluate(x1))));
        CHECK(std::fabs(m1.evaluate_original(x1) - m2.evaluate_original(x2)) <
              1e-9 * (1 + std::fabs(m1.evaluate(x1))));
      }
    }
  }
}

TEST_CASE("detect_parabola") {
  std::vector<Point<R>> pts;
  for (int k = 0; k <= 20; ++k) pts.push_back({q(k, 20), q(k * k, 400)});
  auto fit = detect_parabola(pts, 0.0);
  REQUIRE(fit);
  CHECK(fit->A == 1);
  CHECK(fit->B == 0);
  CHECK(fit->C == 0);
  CHECK(fit->max_residual == 0.0);

  std::vector<Point<double>> dpts;
  for (int k = 0; k <= 50; ++k) dpts.push_back({k / 50.0, 3 * (k / 50.0) * (k / 50.0) - 0.5 * (k / 50.0) + 2});
  auto dfit = detect_parabola(dpts, 1e-12);
  REQUIRE(dfit);
  CHECK(dfit->A == doctest::Approx(3.0));
  CHECK(dfit->B == doctest::Approx(-0.5));
  CHECK(dfit->C == doctest::Approx(2.0));

  std::vector<Point<double>> line;
  for (int k = 0; k <= 10; ++k) line.push_back({k / 10.0, 2 * k / 10.0 + 1});
  auto lfit = detect_parabola(line, 1e-12);
  REQUIRE(lfit);
  CHECK(lfit->is_line);

  auto mixed = to_double(sample_attractor(mixed_parabola(), 10));
  auto mfit = detect_parabola(mixed.points, 1e-8);
  REQUIRE(mfit);
  CHECK(mfit->max_residual < 1e-8);

  auto overlap = to_double(sample_attractor(overlap_example(), 5));
  CHECK_FALSE(detect_parabola(overlap.points, 1e-8));
  CHECK(fit_parabola(overlap.points).max_residual > 1e-2);

  CHECK_THROWS_AS(fit_parabola(std::vector<Point<R>>{{R(0), R(0)}, {R(1), R(1)}}), Error);
}
