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

#include "fif.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "fif/attractor.hpp"
#include "fif/emit.hpp"
#include "fif/examples.hpp"
#include "fif/orbit_curves.hpp"
#include "fif/report.hpp"
#include "fif/separation.hpp"
#include "fif/spec_file.hpp"

struct fif_system {
  fif::AnySystem sys;
  std::string text;  // canonical form, hashed into report provenance
  std::vector<std::string> warnings;
};

namespace {

thread_local std::string last_error;

fif_status to_status(fif::ErrorCode c) { return static_cast<fif_status>(static_cast<int>(c)); }

template <class F>
fif_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return FIF_OK;
  } catch (const fif::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FIF_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FIF_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

void require(const void* p, const char* what) {
  if (!p) throw fif::Error(fif::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

fif::ParamOverrides overrides_of(const char* const* items) {
  std::vector<std::string> v;
  if (items)
    for (; *items; ++items) v.emplace_back(*items);
  return fif::parse_overrides(v);
}

fif_system* wrap(fif::SpecFile spec) {
  auto* s = new fif_system{std::move(spec.system), {}, std::move(spec.warnings)};
  s->text = fif::emit_spec(s->sys);
  return s;
}

fif::Json base_report(const fif_system* s, const char* op, std::optional<int> depth, std::optional<double> tol) {
  fif::Json j;
  j["operation"] = op;
  j["provenance"] = fif::provenance(s->text, depth, tol);
  j["warnings"] = s->warnings;
  return j;
}

template <class T>
T scalar_arg(const char* text, const char* what) {
  require(text, what);
  return fif::scalar_from<T>(fif::parse_scalar(text));
}

std::size_t budget_or_default(std::size_t n) { return n ? n : fif::kDefaultWordBudget; }

}  // namespace

extern "C" {

const char* fif_version(void) { return fif::kVersion; }

const char* fif_status_name(fif_status status) {
  if (status == FIF_E_INTERNAL) return "Internal";
  if (status < FIF_OK || status > FIF_E_INTERNAL) return "Unknown";
  return fif::error_code_name(static_cast<fif::ErrorCode>(status));
}

const char* fif_last_error(void) { return last_error.c_str(); }

void fif_string_free(char* s) { std::free(s); }

void fif_buffer_free(double* buf) { std::free(buf); }

fif_status fif_system_from_text(const char* text, const char* const* overrides, fif_system** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(fif::parse_spec(text, overrides_of(overrides)));
  });
}

fif_status fif_system_from_file(const char* path, const char* const* overrides, fif_system** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(fif::load_spec(path, overrides_of(overrides)));
  });
}

fif_status fif_system_example(const char* name, const char* param, fif_system** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    std::string n = name;
    fif::SpecFile spec{fif::dyadic_parabola(), {}, {}};
    if (n == "overlap") {
      fif::Rational a(1, 5);
      if (param) {
        auto v = fif::parse_scalar(param);
        if (!v.exact) throw fif::Error(fif::ErrorCode::ParseError, "parameter must be an exact fraction");
        a = v.rational;
      }
      spec.system = fif::overlap_example(a);
    } else if (n == "dyadic-parabola") {
    } else if (n == "mixed-parabola") {
      spec.system = fif::mixed_parabola();
    } else {
      throw fif::Error(fif::ErrorCode::InvalidArgument, "unknown example '" + n + "'");
    }
    *out = wrap(std::move(spec));
  });
}

void fif_system_free(fif_system* sys) { delete sys; }

int fif_system_is_exact(const fif_system* sys) { return sys && fif::is_exact(sys->sys) ? 1 : 0; }

size_t fif_system_map_count(const fif_system* sys) {
  if (!sys) return 0;
  return std::visit([](const auto& s) { return s.size(); }, sys->sys);
}

fif_status fif_system_to_text(const fif_system* sys, char** out) {
  return guard([&] {
    require(sys, "sys");
    require(out, "out");
    *out = dup(sys->text);
  });
}

fif_status fif_validate(const fif_system* sys, double tol, char** report) {
  fif_status verdict = FIF_OK;
  fif_status st = guard([&] {
    require(sys, "sys");
    std::visit(
        [&](const auto& s) {
          auto r = fif::validate(s, tol);
          auto j = base_report(sys, "validate", std::nullopt, tol);
          j["system"] = fif::system_json(s);
          j["validation"] = fif::validation_json(r);
          set(report, fif::dump_report(j));
          verdict = to_status(r.error);
          if (!r.valid())
            last_error = std::string(fif::error_code_name(r.error)) +
                         (r.problems.empty() ? std::string() : ": " + r.problems.front());
        },
        sys->sys);
  });
  if (st != FIF_OK) return st;
  return verdict;
}

fif_status fif_evaluate(const fif_system* sys, const char* x, double tol, double* y, char** exact, char** report) {
  return guard([&] {
    require(sys, "sys");
    require(x, "x");
    auto parsed = fif::parse_scalar(x);
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s.a())>;
          fif::require_valid(s);
          T xv = fif::scalar_from<T>(parsed);
          auto e = fif::evaluate_f(s, xv, tol);
          if (y) *y = e.y;
          if (exact) *exact = e.exact ? dup(fif::format_scalar(*e.exact)) : nullptr;
          if (report) {
            auto j = base_report(sys, "eval", std::nullopt, tol);
            j["evaluation"] = fif::evaluation_json(xv, e);
            *report = dup(fif::dump_report(j));
          }
        },
        sys->sys);
  });
}

fif_status fif_render(const fif_system* sys, int depth, size_t max_points, char** csv, char** svg, char** report) {
  return guard([&] {
    require(sys, "sys");
    std::visit(
        [&](const auto& s) {
          fif::require_valid(s);
          auto sample = fif::sample_attractor(s, depth, budget_or_default(max_points));
          auto pts = fif::to_double(sample);
          set(csv, fif::points_csv(pts.points));
          if (svg) {
            fif::SvgFigure fig;
            fig.series.push_back({pts.points, "#000000", 1.0, "graph"});
            *svg = dup(fif::render_svg(fig));
          }
          if (report) {
            auto j = base_report(sys, "render", depth, std::nullopt);
            j["sample"] = fif::sample_json(sample);
            *report = dup(fif::dump_report(j));
          }
        },
        sys->sys);
  });
}

fif_status fif_sample(const fif_system* sys, int depth, size_t max_points, double** xy, size_t* count) {
  return guard([&] {
    require(sys, "sys");
    require(xy, "xy");
    require(count, "count");
    std::visit(
        [&](const auto& s) {
          fif::require_valid(s);
          auto pts = fif::to_double(fif::sample_attractor(s, depth, budget_or_default(max_points)));
          auto* buf = static_cast<double*>(std::malloc(2 * pts.points.size() * sizeof(double) + 1));
          if (!buf) throw std::bad_alloc();
          for (std::size_t k = 0; k < pts.points.size(); ++k) {
            buf[2 * k] = pts.points[k].x;
            buf[2 * k + 1] = pts.points[k].y;
          }
          *xy = buf;
          *count = pts.points.size();
        },
        sys->sys);
  });
}

fif_status fif_wsp(const fif_system* sys, int depth, double tol, const char* mode, size_t word_budget,
                   int* witness_found, char** report) {
  return guard([&] {
    require(sys, "sys");
    std::string m = mode ? mode : "1d";
    if (m != "1d" && m != "2d" && m != "both")
      throw fif::Error(fif::ErrorCode::InvalidArgument, "mode must be 1d, 2d or both");
    fif::WspOptions opts;
    opts.word_budget = budget_or_default(word_budget);
    std::visit(
        [&](const auto& s) {
          fif::require_valid(s);
          auto j = base_report(sys, "wsp", depth, tol);
          j["mode"] = m;
          bool found = false;
          if (m == "1d" || m == "both") {
            auto v = fif::wsp_check_1d(s, depth, tol, opts);
            found = found || v.status == fif::WspStatus::WitnessFound;
            j["wsp_1d"] = fif::wsp_json(v);
            if (m == "both") j["lifted_profile"] = fif::lifted_profile_json(fif::lift_profile(s, v));
          }
          if (m == "2d" || m == "both") {
            auto v = fif::wsp_check_2d(s, depth, tol, opts);
            found = found || v.status == fif::WspStatus::WitnessFound;
            j["wsp_2d"] = fif::wsp_json(v);
          }
          j["witness_found"] = found;
          if (witness_found) *witness_found = found ? 1 : 0;
          set(report, fif::dump_report(j));
        },
        sys->sys);
  });
}

fif_status fif_orbit(const fif_system* sys, const char* gi, const char* gj, double eps, char** csv, char** report) {
  return guard([&] {
    require(sys, "sys");
    require(gi, "gi");
    require(gj, "gj");
    auto wi = fif::parse_word(gi);
    auto wj = fif::parse_word(gj);
    std::visit(
        [&](const auto& s) {
          fif::require_valid(s);
          auto element = fif::make_family_element(s, wj, wi);
          auto trace = fif::epsilon_net(s, element.map2, eps);
          std::vector<fif::Point<double>> pts;
          pts.reserve(trace.points.size());
          for (const auto& p : trace.points) pts.push_back(fif::to_double(p));
          set(csv, fif::points_csv(pts));
          if (report) {
            auto j = base_report(sys, "orbit", std::nullopt, eps);
            j["element"] = fif::family_element_json(element);
            j["orbit"] = fif::orbit_json(trace);
            *report = dup(fif::dump_report(j));
          }
        },
        sys->sys);
  });
}

fif_status fif_classify(const char* p, const char* q, const char* r, const char* h, const char* s, const char* x0,
                        const char* y0, const char* a, const char* b, char** report) {
  return guard([&] {
    const char* args[] = {p, q, r, h, s, x0, y0, a, b};
    const char* names[] = {"p", "q", "r", "h", "s", "x0", "y0", "a", "b"};
    bool exact = true;
    std::string joined;
    for (int k = 0; k < 9; ++k) {
      require(args[k], names[k]);
      exact = exact && fif::parse_scalar(args[k]).exact;
      joined += std::string(names[k]) + "=" + args[k] + "\n";
    }
    auto run = [&]<class T>(T) {
      fif::Affine2<T> g{scalar_arg<T>(p, "p"), scalar_arg<T>(q, "q"), scalar_arg<T>(r, "r"), scalar_arg<T>(h, "h"),
                        scalar_arg<T>(s, "s")};
      fif::Point<T> origin{scalar_arg<T>(x0, "x0"), scalar_arg<T>(y0, "y0")};
      T av = scalar_arg<T>(a, "a"), bv = scalar_arg<T>(b, "b");
      auto model = fif::classify_orbit_curve(g, origin, av, bv);
      auto trace = fif::orbit_until_exit(g, origin, av, bv);
      double residual = fif::verify_orbit_on_curve(trace, model);
      fif::Json j;
      j["operation"] = "classify";
      j["provenance"] = fif::provenance(joined, std::nullopt, std::nullopt);
      j["exact"] = fif::is_exact_v<T>;
      j["curve"] = fif::curve_json(model);
      j["orbit_points"] = trace.points.size();
      j["residual"] = residual;
      set(report, fif::dump_report(j));
    };
    if (exact)
      run(fif::Rational(0));
    else
      run(0.0);
  });
}

fif_status fif_example_figure1(const char* param, int depth, char** svg, char** report) {
  return guard([&] {
    fif::Rational a(1, 5);
    if (param) {
      auto v = fif::parse_scalar(param);
      if (!v.exact) throw fif::Error(fif::ErrorCode::ParseError, "parameter must be an exact fraction");
      a = v.rational;
    }
    auto fig = fif::overlap_figure(a, depth);
    set(svg, fif::render_svg(fig));
    if (report) {
      fif::AnySystem any = fif::overlap_example(a);
      fif::Json j;
      j["operation"] = "example-figure1";
      j["provenance"] = fif::provenance(fif::emit_spec(any), depth, std::nullopt);
      j["a"] = fif::format_scalar(a);
      fif::Json marks = fif::Json::array();
      for (const auto& m : fig.markers) marks.push_back(fif::Json::array({m.x_text, m.y_text}));
      j["marked_points"] = marks;
      j["series"] = fif::Json::array();
      for (const auto& s : fig.series) j["series"].push_back({{"label", s.label}, {"points", s.points.size()}});
      *report = dup(fif::dump_report(j));
    }
  });
}

}  // extern "C"
