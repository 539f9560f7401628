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

#include "fif/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fif {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Box {
  double x0, x1, y0, y1;
};

// Axis tick step of the form {1, 2, 5} * 10^k giving roughly `target` ticks.
double tick_step(double span, int target) {
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

std::string points_csv(const std::vector<Point<double>>& points) {
  std::string out = "x,y\n";
  char buf[80];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
    out += buf;
  }
  return out;
}

std::string render_svg(const SvgFigure& fig) {
  Box box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto grow = [&](const Point<double>& p) {
    box.x0 = std::min(box.x0, p.x);
    box.x1 = std::max(box.x1, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.y1 = std::max(box.y1, p.y);
  };
  for (const auto& s : fig.series)
    for (const auto& p : s.points) grow(p);
  for (const auto& m : fig.markers) grow(m.at);
  if (!std::isfinite(box.x0)) box = {0, 1, 0, 1};
  box.y0 = std::min(box.y0, 0.0);
  box.y1 = std::max(box.y1, 0.0);
  if (box.x1 - box.x0 <= 0) box.x1 = box.x0 + 1;
  if (box.y1 - box.y0 <= 0) box.y1 = box.y0 + 1;
  double pad_y = 0.05 * (box.y1 - box.y0);
  box.y0 -= pad_y;
  box.y1 += pad_y;

  const double left = 60, right = 20, top = fig.title.empty() ? 20 : 40, bottom = 40;
  const double pw = fig.width - left - right, ph = fig.height - top - bottom;
  auto sx = [&](double x) { return left + (x - box.x0) / (box.x1 - box.x0) * pw; };
  auto sy = [&](double y) { return top + (box.y1 - y) / (box.y1 - box.y0) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(fig.width) + "\" height=\"" +
         std::to_string(fig.height) + "\" viewBox=\"0 0 " + std::to_string(fig.width) + " " +
         std::to_string(fig.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(fig.width) + "\" height=\"" +
         std::to_string(fig.height) + "\" fill=\"#ffffff\"/>\n";
  if (!fig.title.empty())
    out += "<text x=\"" + fmt("%.2f", fig.width / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + escape(fig.title) +
           "</text>\n";

  for (const auto& b : fig.bands) {
    out += "<rect class=\"band\" data-lo=\"" + fmt("%.17g", b.lo) + "\" data-hi=\"" + fmt("%.17g", b.hi) +
           "\" x=\"" + fmt("%.3f", sx(b.lo)) + "\" y=\"" + fmt("%.3f", top) + "\" width=\"" +
           fmt("%.3f", sx(b.hi) - sx(b.lo)) + "\" height=\"" + fmt("%.3f", ph) + "\" fill=\"" + b.fill +
           "\" fill-opacity=\"0.6\">";
    if (!b.label.empty()) out += "<title>" + escape(b.label) + "</title>";
    out += "</rect>\n";
  }

  // Axes: frame, the line y = 0, ticks.
  out += "<g class=\"axes\" stroke=\"#444444\" stroke-width=\"1\" fill=\"none\">\n";
  out += "<rect x=\"" + fmt("%.3f", left) + "\" y=\"" + fmt("%.3f", top) + "\" width=\"" + fmt("%.3f", pw) +
         "\" height=\"" + fmt("%.3f", ph) + "\"/>\n";
  out += "<line x1=\"" + fmt("%.3f", left) + "\" y1=\"" + fmt("%.3f", sy(0)) + "\" x2=\"" + fmt("%.3f", left + pw) +
         "\" y2=\"" + fmt("%.3f", sy(0)) + "\" stroke-dasharray=\"4 3\"/>\n";
  out += "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n";
  double xs = tick_step(box.x1 - box.x0, 8);
  for (double t = std::ceil(box.x0 / xs) * xs; t <= box.x1 + 1e-9 * xs; t += xs) {
    double v = std::fabs(t) < 1e-12 * xs ? 0.0 : t;
    out += "<text x=\"" + fmt("%.3f", sx(v)) + "\" y=\"" + fmt("%.3f", top + ph + 16) +
           "\" text-anchor=\"middle\">" + fmt("%g", v) + "</text>\n";
  }
  double ys = tick_step(box.y1 - box.y0, 6);
  for (double t = std::ceil(box.y0 / ys) * ys; t <= box.y1 + 1e-9 * ys; t += ys) {
    double v = std::fabs(t) < 1e-12 * ys ? 0.0 : t;
    out += "<text x=\"" + fmt("%.3f", left - 6) + "\" y=\"" + fmt("%.3f", sy(v) + 4) +
           "\" text-anchor=\"end\">" + fmt("%g", v) + "</text>\n";
  }
  out += "</g>\n";

  for (const auto& s : fig.series) {
    out += "<polyline class=\"series\"";
    if (!s.label.empty()) out += " data-label=\"" + escape(s.label) + "\"";
    out += " fill=\"none\" stroke=\"" + s.stroke + "\" stroke-width=\"" + fmt("%g", s.stroke_width) +
           "\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k) out += ' ';
      out += fmt("%.3f", sx(s.points[k].x)) + "," + fmt("%.3f", sy(s.points[k].y));
    }
    out += "\"/>\n";
  }

  for (const auto& m : fig.markers) {
    std::string xt = m.x_text.empty() ? fmt("%.17g", m.at.x) : m.x_text;
    std::string yt = m.y_text.empty() ? fmt("%.17g", m.at.y) : m.y_text;
    out += "<circle class=\"marker\" data-x=\"" + escape(xt) + "\" data-y=\"" + escape(yt) + "\" cx=\"" +
           fmt("%.3f", sx(m.at.x)) + "\" cy=\"" + fmt("%.3f", sy(m.at.y)) +
           "\" r=\"4\" fill=\"#000000\"/>\n";
    if (!m.label.empty())
      out += "<text x=\"" + fmt("%.3f", sx(m.at.x) + 6) + "\" y=\"" + fmt("%.3f", sy(m.at.y) - 6) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(m.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fif
