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

#include "fif/examples.hpp"

#include <algorithm>

#include "fif/attractor.hpp"

namespace fif {

namespace {

Rational q(long n, long d) { return from_ratio<Rational>(n, d); }

}  // namespace

IfsSystem<Rational> overlap_example(const Rational& a) {
  if (!(abs_value(a) < 1)) throw Error(ErrorCode::InvalidArgument, "parameter a must satisfy |a| < 1");
  return IfsSystem<Rational>({{q(1, 5), a, q(1, 5), q(0, 1), q(0, 1)},
                              {q(1, 3), q(-1, 5), q(-1, 5), q(1, 5), q(1, 5)},
                              {q(1, 3), q(-1, 5), q(1, 5), q(7, 15), q(0, 1)},
                              {q(1, 5), a, q(-1, 5), q(4, 5), q(1, 5)}},
                             Rational(0), Rational(1));
}

std::string overlap_example_text() {
  return "# Four-map fractal function with overlapping pieces S2(G) and S3(G)\n"
         "param a 1/5\n"
         "interval 0 1\n"
         "#   p    q    r     h     s\n"
         "map 1/5  a    1/5   0     0\n"
         "map 1/3  -1/5 -1/5  1/5   1/5\n"
         "map 1/3  -1/5 1/5   7/15  0\n"
         "map 1/5  a    -1/5  4/5   1/5\n";
}

IfsSystem<Rational> dyadic_parabola() {
  return IfsSystem<Rational>({{q(1, 2), q(1, 4), q(0, 1), q(0, 1), q(0, 1)},
                              {q(1, 2), q(1, 4), q(1, 2), q(1, 2), q(1, 4)}},
                             Rational(0), Rational(1));
}

std::string dyadic_parabola_text() {
  return "# y = x^2 on [0, 1], two halves\n"
         "interval 0 1\n"
         "map 1/2 1/4 0   0   0\n"
         "map 1/2 1/4 1/2 1/2 1/4\n";
}

IfsSystem<Rational> mixed_parabola() {
  return IfsSystem<Rational>({{q(1, 2), q(1, 4), q(0, 1), q(0, 1), q(0, 1)},
                              {q(2, 3), q(4, 9), q(4, 9), q(1, 3), q(1, 9)}},
                             Rational(0), Rational(1));
}

std::string mixed_parabola_text() {
  return "# y = x^2 on [0, 1], ratios 1/2 and 2/3, overlapping on [1/3, 1/2]\n"
         "interval 0 1\n"
         "map 1/2 1/4 0   0   0\n"
         "map 2/3 4/9 4/9 1/3 1/9\n";
}

SvgFigure overlap_figure(const Rational& a, int depth) {
  auto sys = overlap_example(a);
  require_valid(sys);
  auto sample = to_double(sample_attractor(sys, depth));
  auto image = [&](std::size_t i) {
    auto g = to_double(sys.map(i));
    std::vector<Point<double>> pts;
    pts.reserve(sample.points.size());
    for (const auto& p : sample.points) pts.push_back(apply(g, p));
    std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) { return u.x < v.x; });
    return pts;
  };

  SvgFigure fig;
  fig.title = "a = " + format_scalar(a);
  fig.bands.push_back({7.0 / 15.0, 8.0 / 15.0, "#f2e6a6", "overlap [7/15, 8/15]"});
  fig.series.push_back({sample.points, "#000000", 1.0, "graph"});
  fig.series.push_back({image(1), "#1f4fd6", 2.5, "S2(G)"});
  fig.series.push_back({image(2), "#d62a1f", 2.5, "S3(G)"});
  for (Rational x : {Rational(0), Rational(1, 5), Rational(7, 15), Rational(8, 15), Rational(4, 5), Rational(1)}) {
    x.canonicalize();
    auto e = evaluate_f(sys, x, 1e-15);
    SvgMarker m;
    m.at = {x.get_d(), e.y};
    m.x_text = format_scalar(x);
    m.y_text = e.exact ? format_scalar(*e.exact) : format_scalar(e.y);
    m.label = "(" + m.x_text + ", " + m.y_text + ")";
    fig.markers.push_back(m);
  }
  return fig;
}

}  // namespace fif
