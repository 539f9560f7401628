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

// Command-line front end. All computation goes through the C interface.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fif.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitWitness = 3;

struct CString {
  char* p = nullptr;
  ~CString() { fif_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct SystemHandle {
  fif_system* p = nullptr;
  ~SystemHandle() { fif_system_free(p); }
};

int fail(fif_status st) {
  std::cerr << "error: " << (*fif_last_error() ? fif_last_error() : fif_status_name(st)) << "\n";
  return st == FIF_E_DEPTH_TOO_LARGE ? kExitBudget : kExitError;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: IoError: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

std::size_t word_budget() {
  const char* env = std::getenv("FIF_WORD_BUDGET");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') {
    std::cerr << "warning: ignoring malformed FIF_WORD_BUDGET\n";
    return 0;
  }
  return static_cast<std::size_t>(v);
}

fif_status load(const std::string& path, const std::vector<std::string>& params, SystemHandle& out) {
  std::vector<const char*> ov;
  for (const auto& p : params) ov.push_back(p.c_str());
  ov.push_back(nullptr);
  return fif_system_from_file(path.c_str(), ov.data(), &out.p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine fractal interpolation functions with overlapping pieces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fif_version()));
  std::vector<std::string> params;

  std::string spec;
  int depth = 0;
  double tol = 1e-9;
  std::string out, svg, mode = "1d", x, gi, gj;
  double eps = 0.0;
  bool json = false;

  auto* validate = app.add_subcommand("validate", "Check that the system defines a function graph");
  validate->add_option("spec", spec, "System file")->required();
  validate->add_option("--tol", tol, "Single-valuedness tolerance");

  auto* render = app.add_subcommand("render", "Sample the attractor");
  render->add_option("spec", spec, "System file")->required();
  render->add_option("--depth", depth, "Word length")->required();
  render->add_option("--out", out, "CSV output")->required();
  render->add_option("--svg", svg, "SVG output");

  auto* eval = app.add_subcommand("eval", "Evaluate f at one abscissa");
  eval->add_option("spec", spec, "System file")->required();
  eval->add_option("--x", x, "Abscissa (fraction or decimal)")->required();
  eval->add_option("--tol", tol, "Absolute error bound");
  eval->add_flag("--json", json, "Print the full report instead of the value");

  auto* wsp = app.add_subcommand("wsp", "Search the associated family for elements near the identity");
  wsp->add_option("spec", spec, "System file")->required();
  wsp->add_option("--depth", depth, "Maximal word length")->required();
  wsp->add_option("--tol", tol, "Witness threshold")->required();
  wsp->add_option("--mode", mode, "1d, 2d or both")->check(CLI::IsMember({"1d", "2d", "both"}));

  auto* orbit = app.add_subcommand("orbit", "Orbit of g_j^-1 g_i forming an eps-net of the graph");
  orbit->add_option("spec", spec, "System file")->required();
  orbit->add_option("--gi", gi, "Word i, e.g. 2,4")->required();
  orbit->add_option("--gj", gj, "Word j, e.g. 3,1")->required();
  orbit->add_option("--eps", eps, "Net radius")->required();
  orbit->add_option("--out", out, "CSV output (default: standard output)");

  std::string cp, cq, cr, ch, cs, cx0, cy0, ca, cb;
  auto* classify = app.add_subcommand("classify", "Curve carrying the orbit of a point under one affine map");
  classify->set_help_flag("--help", "Print this help message and exit");
  classify->add_option("--p", cp)->required();
  classify->add_option("--q", cq)->required();
  classify->add_option("--r", cr)->required();
  classify->add_option("--h", ch)->required();
  classify->add_option("--s", cs)->required();
  classify->add_option("--x0", cx0)->required();
  classify->add_option("--y0", cy0)->required();
  classify->add_option("--a", ca)->required();
  classify->add_option("--b", cb)->required();

  for (auto* sub : {validate, render, eval, wsp, orbit})
    sub->add_option("--param", params, "Override a parameter of the system file (name=value)");

  std::optional<std::string> fig_param;
  int fig_depth = 6;
  auto* figure = app.add_subcommand("example-figure1", "Draw the four-map overlap example");
  figure->add_option("--param", fig_param, "Value of a (exact fraction)");
  figure->add_option("--depth", fig_depth, "Sample depth");
  figure->add_option("--out", out, "SVG output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  const std::size_t budget = word_budget();

  if (*figure) {
    CString svg_text, report;
    auto st = fif_example_figure1(fig_param ? fig_param->c_str() : nullptr, fig_depth, &svg_text.p, &report.p);
    if (st != FIF_OK) return fail(st);
    if (!write_file(out, svg_text.str())) return kExitError;
    std::cout << report.str();
    return kExitOk;
  }

  if (*classify) {
    CString report;
    auto st = fif_classify(cp.c_str(), cq.c_str(), cr.c_str(), ch.c_str(), cs.c_str(), cx0.c_str(), cy0.c_str(),
                           ca.c_str(), cb.c_str(), &report.p);
    if (st != FIF_OK) return fail(st);
    std::cout << report.str();
    return kExitOk;
  }

  SystemHandle sys;
  if (auto st = load(spec, params, sys); st != FIF_OK) return fail(st);

  if (*validate) {
    CString report;
    auto st = fif_validate(sys.p, tol, &report.p);
    std::cout << report.str();
    if (st != FIF_OK) return fail(st);
    return kExitOk;
  }

  if (*render) {
    CString csv, svg_text, report;
    auto st = fif_render(sys.p, depth, budget, &csv.p, svg.empty() ? nullptr : &svg_text.p, &report.p);
    if (st != FIF_OK) return fail(st);
    if (!write_file(out, csv.str())) return kExitError;
    if (!svg.empty() && !write_file(svg, svg_text.str())) return kExitError;
    std::cout << report.str();
    return kExitOk;
  }

  if (*eval) {
    double y = 0.0;
    CString exact, report;
    auto st = fif_evaluate(sys.p, x.c_str(), tol, &y, &exact.p, &report.p);
    if (st != FIF_OK) return fail(st);
    if (json) {
      std::cout << report.str();
    } else {
      char buf[64];
      // Shortest representation that reads back to the same double.
      for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, y);
        if (std::strtod(buf, nullptr) == y) break;
      }
      std::cout << buf << "\n";
    }
    return kExitOk;
  }

  if (*wsp) {
    int found = 0;
    CString report;
    auto st = fif_wsp(sys.p, depth, tol, mode.c_str(), budget, &found, &report.p);
    if (st != FIF_OK) return fail(st);
    std::cout << report.str();
    return found ? kExitWitness : kExitOk;
  }

  if (*orbit) {
    CString csv, report;
    auto st = fif_orbit(sys.p, gi.c_str(), gj.c_str(), eps, &csv.p, &report.p);
    if (st != FIF_OK) return fail(st);
    if (out.empty()) {
      std::cout << csv.str();
    } else {
      if (!write_file(out, csv.str())) return kExitError;
      std::cout << report.str();
    }
    return kExitOk;
  }
  return kExitError;
}
