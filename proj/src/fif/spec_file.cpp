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

#include "fif/spec_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace fif {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

template <Scalar T>
AnySystem build(const std::vector<ParsedScalar>& interval, const std::vector<std::vector<ParsedScalar>>& maps) {
  std::vector<Affine2<T>> out;
  for (const auto& m : maps) {
    out.push_back(Affine2<T>{scalar_from<T>(m[0]), scalar_from<T>(m[1]), scalar_from<T>(m[2]), scalar_from<T>(m[3]),
                             scalar_from<T>(m[4])});
  }
  return IfsSystem<T>(std::move(out), scalar_from<T>(interval[0]), scalar_from<T>(interval[1]));
}

std::string emit_double(double v) {
  std::string s = format_scalar(v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

SpecFile parse_spec(std::string_view text, const ParamOverrides& overrides) {
  const auto lines = tokenize(text);
  std::map<std::string, ParsedScalar> params;
  SpecFile out{IfsSystem<Rational>({Affine2<Rational>::identity()}, Rational(0), Rational(1)), {}, {}};

  for (const auto& line : lines) {
    if (line.tokens[0] != "param") continue;
    if (line.tokens.size() != 3) fail(line.number, "expected 'param <name> <value>'");
    const auto& name = line.tokens[1];
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
      fail(line.number, "parameter names must start with a letter");
    }
    const auto it = overrides.find(name);
    const std::string literal = it != overrides.end() ? it->second : line.tokens[2];
    params[name] = parse_scalar(literal);
    out.params.emplace_back(name, literal);
  }
  for (const auto& [name, value] : overrides) {
    if (!params.contains(name)) throw Error(ErrorCode::ParseError, "unknown parameter '" + name + "'");
  }

  auto scalar = [&](const std::string& tok, int line) -> ParsedScalar {
    const bool neg = tok.size() > 1 && tok[0] == '-';
    const std::string key = neg ? tok.substr(1) : tok;
    if (const auto it = params.find(key); it != params.end()) {
      ParsedScalar v = it->second;
      if (neg) {
        v.rational = -v.rational;
        v.real = -v.real;
      }
      return v;
    }
    try {
      return parse_scalar(tok);
    } catch (const Error& e) {
      fail(line, e.what());
    }
  };

  std::optional<std::vector<ParsedScalar>> interval;
  std::vector<std::vector<ParsedScalar>> maps;
  for (const auto& line : lines) {
    const auto& kw = line.tokens[0];
    if (kw == "param") continue;
    std::vector<ParsedScalar> vals;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) vals.push_back(scalar(line.tokens[k], line.number));
    if (kw == "interval") {
      if (vals.size() != 2) fail(line.number, "expected 'interval <a> <b>'");
      if (interval) fail(line.number, "duplicate interval");
      interval = vals;
    } else if (kw == "map") {
      if (vals.size() != 5) fail(line.number, "expected 'map <p> <q> <r> <h> <s>'");
      maps.push_back(vals);
    } else {
      fail(line.number, "unknown keyword '" + kw + "'");
    }
  }
  if (!interval) throw Error(ErrorCode::ParseError, "missing 'interval' line");
  if (maps.empty()) throw Error(ErrorCode::ParseError, "no 'map' lines");

  bool any_exact = false, any_float = false;
  for (const auto& v : *interval) (v.exact ? any_exact : any_float) = true;
  for (const auto& m : maps) {
    for (const auto& v : m) (v.exact ? any_exact : any_float) = true;
  }
  try {
    if (any_float) {
      if (any_exact) out.warnings.push_back("file mixes exact and decimal coefficients; using floating arithmetic");
      out.system = build<double>(*interval, maps);
    } else {
      out.system = build<Rational>(*interval, maps);
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return out;
}

SpecFile load_spec(const std::string& path, const ParamOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), overrides);
}

std::string emit_spec(const AnySystem& any) {
  return std::visit(
      [](const auto& sys) {
        using T = std::decay_t<decltype(sys.a())>;
        auto fmt = [](const T& v) {
          if constexpr (is_exact_v<T>) {
            return format_scalar(v);
          } else {
            return emit_double(v);
          }
        };
        std::string out = "interval " + fmt(sys.a()) + " " + fmt(sys.b()) + "\n";
        for (const auto& g : sys.maps()) {
          out += "map " + fmt(g.p) + " " + fmt(g.q) + " " + fmt(g.r) + " " + fmt(g.h) + " " + fmt(g.s) + "\n";
        }
        return out;
      },
      any);
}

ParamOverrides parse_overrides(const std::vector<std::string>& items) {
  ParamOverrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::ParseError, "parameter override '" + item + "' is not name=value");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

}  // namespace fif
