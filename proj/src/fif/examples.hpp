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

// Systems used throughout the tests, the CLI and the documentation.

#include <string>

#include "fif/emit.hpp"
#include "fif/system.hpp"

namespace fif {

// Four maps on [0, 1] whose graph passes through (0,0), (1/5,1/5), (7/15,0),
// (8/15,0), (4/5,1/5), (1,0). The strips of maps 2 and 3 overlap on
// [7/15, 8/15], where S2 S4 = S3 S1. `a` is the free vertical factor of maps
// 1 and 4 (|a| < 1).
IfsSystem<Rational> overlap_example(const Rational& a = Rational(1, 5));
std::string overlap_example_text();

// y = x^2 on [0, 1] from two halves with equal ratio 1/2.
IfsSystem<Rational> dyadic_parabola();
std::string dyadic_parabola_text();

// y = x^2 on [0, 1] from pieces with ratios 1/2 and 2/3 (overlapping on [1/3, 1/2]).
IfsSystem<Rational> mixed_parabola();
std::string mixed_parabola_text();

// The four-map system drawn at the given sample depth: the whole graph, the
// pieces S2(G) (blue) and S3(G) (red), the shaded overlap strip and the six
// interpolation points, whose data-x / data-y attributes carry f computed by
// evaluate_f (exact when the backward orbit closes).
SvgFigure overlap_figure(const Rational& a = Rational(1, 5), int depth = 6);

}  // namespace fif
