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

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "fif/examples.hpp"
#include "fif/separation.hpp"
#include "support/generators.hpp"

using namespace fif;
using R = Rational;
using fif::testing::Gen;

namespace {

R q(long n, long d) { return from_ratio<R>(n, d); }

// All words of length <= depth, by plain recursion.
std::vector<Word> all_words(std::size_t m, int depth) {
  std::vector<Word> out{Word{}};
  std::vector<Word> level{Word{}};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (std::size_t i = 1; i <= m; ++i) {
        Word v = w;
        v.indices.push_back(static_cast<int>(i));
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// Smallest deviation over all non-identity g_j^-1 g_i, |i|, |j| <= depth,
// computed pair by pair.
std::optional<R> brute_force_gap(const IfsSystem<R>& sys, int depth, bool planar) {
  const auto words = all_words(sys.size(), depth);
  std::vector<Affine2<R>> maps, inverses;
  for (const auto& w : words) {
    maps.push_back(compose_word(sys.maps(), w));
    inverses.push_back(invert(maps.back()));
  }
  const auto frame = planar_frame(sys);
  const R width = sys.b() - sys.a();
  std::optional<R> best;
  for (std::size_t j = 0; j < words.size(); ++j)
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto g = compose(inverses[j], maps[i]);
      R dev;
      if (planar) {
        if (g.is_identity()) continue;
        R fa = frame.fa;
        dev = max_value<R>(abs(g.p - 1), abs(g.q - 1));
        dev = max_value<R>(dev, abs(g.p * sys.a() + g.h - sys.a()) / width);
        dev = max_value<R>(dev, abs(g.q * fa + g.r * sys.a() + g.s - fa) / frame.height);
        dev = max_value<R>(dev, abs(g.r) * width / frame.height);
      } else {
        const auto g1 = g.projection();
        if (g1.is_identity()) continue;
        dev = max_value<R>(abs(g1.p - 1), abs(g1.p * sys.a() + g1.h - sys.a()) / width);
      }
      if (!best || dev < *best) best = dev;
    }
  return best;
}

IfsSystem<R> conjugated(const IfsSystem<R>& sys, const R& lambda, const R& mu) {
  std::vector<Affine2<R>> maps;
  for (const auto& g : sys.maps()) maps.push_back(conjugate_x(g, lambda, mu));
  return IfsSystem<R>(std::move(maps), lambda * sys.a() + mu, lambda * sys.b() + mu);
}

}  // namespace

TEST_CASE("family elements") {
  auto sys = overlap_example();
  auto e = make_family_element(sys, Word{{3, 1}}, Word{{2, 4}});
  CHECK(e.map2.is_identity());
  CHECK(e.map1 == e.map2.projection());
  Gen gen(21);
  for (int k = 0; k < 100; ++k) {
    Word wi, wj;
    for (long n = gen.integer(0, 4); n > 0; --n) wi.indices.push_back(static_cast<int>(gen.integer(1, 4)));
    for (long n = gen.integer(0, 4); n > 0; --n) wj.indices.push_back(static_cast<int>(gen.integer(1, 4)));
    auto f = make_family_element(sys, wj, wi);
    CHECK(f.map1 == f.map2.projection());
    CHECK(compose(sys.compose_word(wj), f.map2) == sys.compose_word(wi));
    CHECK(f.j_word == wj);
    CHECK(f.i_word == wi);
  }
  auto same = make_family_element(sys, Word{{1, 2}}, Word{{1, 2}});
  CHECK(same.map2.is_identity());
  CHECK(deviation_1d(same.map1, sys.a(), sys.b()) == 0);
  CHECK(deviation_2d(same.map2, planar_frame(sys)) == 0);
}

TEST_CASE("deviation") {
  CHECK(deviation_1d(Affine1<R>{R(1), q(1, 4)}, R(0), R(1)) == q(1, 4));
  CHECK(deviation_1d(Affine1<R>{q(1, 2), R(0)}, R(0), R(1)) == q(1, 2));
  CHECK(deviation_1d(Affine1<R>{R(1), q(1, 4)}, R(0), R(2)) == q(1, 8));
  // Measured at the left end: x -> 2x - 2 on [2, 3] moves 2 to 2.
  CHECK(deviation_1d(Affine1<R>{R(2), R(-2)}, R(2), R(3)) == R(1));
  auto frame = planar_frame(dyadic_parabola());
  CHECK(frame.fa == 0);
  CHECK(frame.height == 1);
  CHECK(deviation_2d(Affine2<R>{R(1), q(3, 4), R(0), R(0), R(0)}, frame) == q(1, 4));
  CHECK(deviation_2d(Affine2<R>{R(1), R(1), q(1, 3), R(0), R(0)}, frame) == q(1, 3));
}

TEST_CASE("word table") {
  auto sys = overlap_example();
  WordTable<R> table(sys, 3);
  CHECK(table.size() == 1 + 4 + 16 + 64);
  CHECK(table.count_upto(1) == 5);
  for (std::size_t k = 0; k < table.size(); ++k) {
    auto w = table.word(k);
    CHECK(table.map2(k) == sys.compose_word(w));
    CHECK(table.map1(k) == sys.compose_word_1d(w));
    CHECK(table.u(k) == sys.compose_word_1d(w)(sys.a()));
  }
  CHECK_THROWS_AS(WordTable<R>(sys, 12, 1000), Error);
}

TEST_CASE("enumerate_family_1d: one map") {
  IfsSystem<R> half({{q(1, 2), q(1, 2), R(0), R(0), R(0)}}, R(0), R(1));
  auto fam = enumerate_family_1d(half, 1);
  REQUIRE(fam.elements.size() == 3);
  CHECK(fam.elements[0] == Affine1<R>{q(1, 2), R(0)});
  CHECK(fam.elements[1] == Affine1<R>::identity());
  CHECK(fam.elements[2] == Affine1<R>{R(2), R(0)});
  CHECK(fam.pairs_materialized == 4);
}

TEST_CASE("enumerate_family_1d: dyadic translations are integers") {
  auto fam = enumerate_family_1d(dyadic_parabola(), 6);
  std::optional<R> smallest;
  for (const auto& g : fam.elements) {
    if (g.p != 1) continue;
    CHECK(g.h.get_den() == 1);
    if (g.h != 0 && (!smallest || abs(g.h) < *smallest)) smallest = abs(g.h);
  }
  REQUIRE(smallest);
  CHECK(*smallest == 1);
  // The ratio threshold only prunes.
  auto near = enumerate_family_1d(dyadic_parabola(), 6, 0.1);
  for (const auto& g : near.elements) CHECK(g.p == 1);
  CHECK_THROWS_AS(enumerate_family_1d(dyadic_parabola(), 6, INFINITY, 1000), Error);
}

TEST_CASE("overlap example: identity from distinct words is a coincidence") {
  auto v = wsp_check_1d(overlap_example(), 2, 1e-3);
  CHECK(v.coincidence_count > 0);
  bool seen = false;
  for (const auto& [a, b] : v.coincidence_examples) {
    if ((a == Word{{2, 4}} && b == Word{{3, 1}}) || (a == Word{{3, 1}} && b == Word{{2, 4}})) seen = true;
  }
  CHECK(seen);
  for (const auto& g : v.gap_by_depth) CHECK(g.delta > 0);
  auto v2 = wsp_check_2d(overlap_example(), 2, 1e-3);
  CHECK(v2.coincidence_count > 0);
}

TEST_CASE("wsp: dyadic parabola has no witness") {
  auto v = wsp_check_1d(dyadic_parabola(), 12, 1e-3);
  CHECK(v.status == WspStatus::NoWitnessUpToDepth);
  CHECK(v.gap_by_depth.size() == 11);
  for (const auto& g : v.gap_by_depth) {
    REQUIRE(g.found);
    CHECK(g.delta == q(1, 2));
  }
  CHECK(v.witnesses.empty());
  auto v2 = wsp_check_2d(dyadic_parabola(), 8, 1e-3);
  CHECK(v2.status == WspStatus::NoWitnessUpToDepth);
  CHECK_FALSE(v2.line_attractor);
  for (const auto& g : v2.gap_by_depth) CHECK(g.delta >= q(1, 2));
}

TEST_CASE("wsp: mixed-ratio parabola") {
  auto sys = mixed_parabola();
  auto v = wsp_check_1d(sys, 9, 0.06);
  CHECK(v.status == WspStatus::WitnessFound);
  REQUIRE_FALSE(v.witnesses.empty());
  for (const auto& w : v.witnesses) {
    CHECK_FALSE(w.map1.is_identity());
    CHECK(deviation_1d(w.map1, sys.a(), sys.b()) > 0);
  }
  for (std::size_t k = 1; k < v.witnesses.size(); ++k)
    CHECK(deviation_1d(v.witnesses[k].map1, sys.a(), sys.b()) <
          deviation_1d(v.witnesses[k - 1].map1, sys.a(), sys.b()));
  auto lifted = lift_profile(sys, v);
  CHECK(lifted.consistent);
  CHECK(lifted.depths.size() == v.gap_by_depth.size());
  CHECK(wsp_check_1d(sys, 9, 0.01).status == WspStatus::NoWitnessUpToDepth);
}

TEST_CASE("wsp: argument checks") {
  CHECK_THROWS_AS(wsp_check_1d(dyadic_parabola(), 1, 1e-3), Error);
  CHECK_THROWS_AS(wsp_check_2d(dyadic_parabola(), 1, 1e-3), Error);
  WspOptions tight;
  tight.word_budget = 100;
  try {
    wsp_check_1d(dyadic_parabola(), 10, 1e-3, tight);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthTooLarge);
  }
}

TEST_CASE("gap profile agrees with pairwise enumeration") {
  Gen gen(22);
  std::vector<IfsSystem<R>> systems{overlap_example(), dyadic_parabola(), mixed_parabola(),
                                    overlap_example(q(-1, 4))};
  for (int k = 0; k < 12; ++k) systems.push_back(gen.interpolation_system(static_cast<int>(gen.integer(2, 3))));
  for (const auto& sys : systems) {
    const int depth = sys.size() == 2 ? 5 : 3;
    auto v1 = wsp_check_1d(sys, depth, 1e-3);
    auto v2 = wsp_check_2d(sys, depth, 1e-3);
    for (int d = 2; d <= depth; ++d) {
      auto b1 = brute_force_gap(sys, d, false);
      auto b2 = brute_force_gap(sys, d, true);
      const auto& e1 = v1.gap_by_depth[static_cast<std::size_t>(d - 2)];
      const auto& e2 = v2.gap_by_depth[static_cast<std::size_t>(d - 2)];
      REQUIRE(b1.has_value() == e1.found);
      REQUIRE(b2.has_value() == e2.found);
      if (b1) CHECK(e1.delta == *b1);
      if (b2) CHECK(e2.delta == *b2);
    }
  }
}

TEST_CASE("gap profile is non-increasing and covariant under rescaling") {
  Gen gen(23);
  for (int k = 0; k < 40; ++k) {
    auto sys = gen.interpolation_system(static_cast<int>(gen.integer(2, 3)));
    auto v = wsp_check_1d(sys, 5, 1e-2);
    for (std::size_t d = 1; d < v.gap_by_depth.size(); ++d)
      CHECK_FALSE(v.gap_by_depth[d - 1].delta < v.gap_by_depth[d].delta);
    R lambda = gen.rational(0.2, 5, 7), mu = gen.rational(-3, 3);
    if (lambda == 0) lambda = 1;
    auto w = wsp_check_1d(conjugated(sys, lambda, mu), 5, 1e-2);
    CHECK(w.status == v.status);
    CHECK(w.coincidence_count == v.coincidence_count);
    for (std::size_t d = 0; d < v.gap_by_depth.size(); ++d) CHECK(w.gap_by_depth[d].delta == v.gap_by_depth[d].delta);
  }
}

TEST_CASE("graph transport") {
  auto sys = overlap_example();
  auto id = make_family_element(sys, Word{}, Word{});
  Gen gen(24);
  for (int k = 0; k < 20; ++k) CHECK(graph_transport_check(sys, id, gen.rational(0, 1), 1e-9));

  // g = S31^-1 S24 is the identity, so every abscissa whose image stays in
  // the interval passes; sampled over the preimage of the overlap.
  auto e = make_family_element(sys, Word{{3, 1}}, Word{{2, 4}});
  for (int k = 0; k <= 20; ++k) {
    R x = q(7, 15) + q(1, 15) * q(k, 20);
    CHECK(graph_transport_residual(sys, e, x, 1e-9) == 0.0);
  }

  auto mixed = mixed_parabola();
  auto dmixed = to_double(mixed);
  int checked = 0;
  while (checked < 100) {
    Word wi, wj;
    for (long n = gen.integer(1, 5); n > 0; --n) wi.indices.push_back(static_cast<int>(gen.integer(1, 2)));
    for (long n = gen.integer(1, 5); n > 0; --n) wj.indices.push_back(static_cast<int>(gen.integer(1, 2)));
    auto f = make_family_element(mixed, wj, wi);
    R x = gen.rational(0, 1, 200);
    R xi = f.map1(x);
    if (xi < 0 || xi > 1) continue;
    ++checked;
    CHECK(graph_transport_check(mixed, f, x, 1e-7));
    auto fd = make_family_element(dmixed, wj, wi);
    CHECK(graph_transport_check(dmixed, fd, x.get_d(), 1e-7));
  }
  CHECK_THROWS_AS(graph_transport_residual(mixed, make_family_element(mixed, Word{{1}}, Word{}), R(1), 1e-7),
                  Error);
}

TEST_CASE("line attractor") {
  IfsSystem<R> line({{q(1, 2), q(1, 2), R(0), R(0), R(0)}, {q(1, 2), q(1, 2), R(0), q(1, 2), q(1, 2)}}, R(0), R(1));
  CHECK(is_line_attractor(line));
  CHECK_FALSE(is_line_attractor(dyadic_parabola()));
  auto v = wsp_check_2d(line, 3, 1e-3);
  CHECK(v.line_attractor);
  CHECK_FALSE(v.warnings.empty());
}
