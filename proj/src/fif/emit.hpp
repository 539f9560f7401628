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

// CSV and SVG output. Both are pure functions of their input, formatted with
// fixed printf conversions, so equal inputs give equal bytes.

#include <string>
#include <vector>

#include "fif/affine.hpp"

namespace fif {

// Header "x,y", one point per line, %.17g.
std::string points_csv(const std::vector<Point<double>>& points);

struct SvgSeries {
  std::vector<Point<double>> points;  // drawn as a polyline in the given order
  std::string stroke = "#000000";
  double stroke_width = 1.0;
  std::string label;
};

struct SvgMarker {
  Point<double> at;
  std::string label;  // also written to data-x / data-y when x_text / y_text are empty
  std::string x_text;
  std::string y_text;
};

struct SvgBand {
  double lo = 0.0;
  double hi = 0.0;
  std::string fill = "#dddddd";
  std::string label;
};

struct SvgFigure {
  std::string title;
  std::vector<SvgBand> bands;
  std::vector<SvgSeries> series;
  std::vector<SvgMarker> markers;
  int width = 800;
  int height = 500;
};

std::string render_svg(const SvgFigure& fig);

}  // namespace fif
