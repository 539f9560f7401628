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

#include "fif/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace fif {

namespace {

// Deviations at or below this are treated as the identity in floating mode.
constexpr double kFloatIdentity = 1e-12;

template <Scalar T>
bool identity_deviation(const T& dev) {
  if constexpr (is_exact_v<T>) {
    return dev == 0;
  } else {
    return dev <= kFloatIdentity;
  }
}

template <Scalar T>
bool same_ratio(const T& p1, const T& p2) {
  if constexpr (is_exact_v<T>) {
    return p1 == p2;
  } else {
    return std::fabs(p1 - p2) <= kFloatIdentity * std::max(std::fabs(p1), std::fabs(p2));
  }
}

// Words of one prefix of the table grouped by (numerically) equal ratio p,
// groups sorted by p and members sorted by u.
template <Scalar T>
struct Groups {
  struct Group {
    T p;
    std::vector<std::size_t> members;
  };
  std::vector<Group> list;
};

template <Scalar T>
Groups<T> group_words(const WordTable<T>& table, std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
    if (table.p(l) != table.p(r)) return table.p(l) < table.p(r);
    if (table.u(l) != table.u(r)) return table.u(l) < table.u(r);
    return l < r;
  });
  Groups<T> out;
  for (std::size_t k : idx) {
    if (out.list.empty() || !same_ratio(out.list.back().p, table.p(k))) {
      out.list.push_back({table.p(k), {}});
    }
    out.list.back().members.push_back(k);
  }
  if constexpr (!is_exact_v<T>) {
    // Merged groups may have lost the u ordering.
    for (auto& g : out.list) {
      std::stable_sort(g.members.begin(), g.members.end(),
                       [&](std::size_t l, std::size_t r) { return table.u(l) < table.u(r); });
    }
  }
  return out;
}

// |p_A / p_B - 1|, the ratio part of the deviation of any element g_j^-1 g_i
// with i in A and j in B.
template <Scalar T>
T ratio_bound(const T& pa, const T& pb) {
  return T(abs_value(T(pa - pb)) / abs_value(pb));
}

template <Scalar T>
struct MinSearch {
  bool found = false;
  T dev{};
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t coincidences = 0;
  std::vector<std::pair<std::size_t, std::size_t>> examples;  // (j, i)
};

template <Scalar T>
MinSearch<T> min_deviation_1d(const WordTable<T>& table, const Groups<T>& groups, const T& width,
                              std::size_t example_limit) {
  MinSearch<T> best;
  auto offer = [&](const T& dev, std::size_t i, std::size_t j) {
    if (!best.found || dev < best.dev) {
      best.found = true;
      best.dev = dev;
      best.i = i;
      best.j = j;
    }
  };
  const auto& gl = groups.list;
  for (std::size_t bi = 0; bi < gl.size(); ++bi) {
    const auto& gb = gl[bi];
    const T scale = T(abs_value(gb.p) * width);

    // Same ratio: adjacent members in u order; runs of equal u are coincidences.
    {
      const auto& mem = gb.members;
      std::size_t run_start = 0;
      for (std::size_t k = 1; k <= mem.size(); ++k) {
        bool same = false;
        if (k < mem.size()) {
          const T dev = T((table.u(mem[k]) - table.u(mem[k - 1])) / scale);
          same = identity_deviation(dev);
          if (!same) offer(dev, mem[k], mem[k - 1]);
        }
        if (!same) {
          const std::size_t run = k - run_start;
          best.coincidences += run * (run - 1);
          for (std::size_t x = run_start; x < k; ++x) {
            for (std::size_t y = run_start; y < k && best.examples.size() < example_limit; ++y) {
              if (x != y) best.examples.emplace_back(mem[x], mem[y]);
            }
          }
          run_start = k;
        }
      }
    }

    // Other ratios, scanned outward while the ratio bound can still improve.
    auto scan = [&](std::size_t ai) {
      const auto& ga = gl[ai];
      const T lb = ratio_bound(ga.p, gb.p);
      if (best.found && !(lb < best.dev)) return false;
      std::size_t x = 0, y = 0;
      bool have = false;
      T closest{};
      std::size_t ci = 0, cj = 0;
      while (x < ga.members.size() && y < gb.members.size()) {
        const T& ua = table.u(ga.members[x]);
        const T& ub = table.u(gb.members[y]);
        const T d = abs_value(T(ua - ub));
        if (!have || d < closest) {
          have = true;
          closest = d;
          ci = ga.members[x];
          cj = gb.members[y];
        }
        if (ua < ub) {
          ++x;
        } else {
          ++y;
        }
      }
      if (have) {
        const T dev = max_value(lb, T(closest / scale));
        offer(dev, ci, cj);
      }
      return true;
    };
    for (std::size_t ai = bi + 1; ai < gl.size(); ++ai) {
      if (!scan(ai)) break;
    }
    for (std::size_t ai = bi; ai-- > 0;) {
      if (!scan(ai)) break;
    }
  }
  return best;
}

// Calls f(i, j) for every ordered pair of distinct words whose element
// g_j^-1 g_i has 1-D deviation below tau. Returns false if the pair budget ran out.
template <Scalar T, class F>
bool for_each_pair_below(const WordTable<T>& table, const Groups<T>& groups, const T& width, const T& tau,
                         std::size_t budget, F&& f) {
  std::size_t emitted = 0;
  const auto& gl = groups.list;
  for (std::size_t bi = 0; bi < gl.size(); ++bi) {
    const auto& gb = gl[bi];
    auto scan = [&](std::size_t ai) {
      const auto& ga = gl[ai];
      if (!(ratio_bound(ga.p, gb.p) < tau)) return true;
      for (std::size_t j : gb.members) {
        const T window = T(tau * abs_value(table.p(j)) * width);
        const T lo = T(table.u(j) - window);
        auto it = std::lower_bound(ga.members.begin(), ga.members.end(), lo,
                                   [&](std::size_t k, const T& v) { return table.u(k) < v; });
        for (; it != ga.members.end(); ++it) {
          const T d = T(table.u(*it) - table.u(j));
          if (!(d < window)) break;
          if (!(abs_value(d) < window) || *it == j) continue;
          if (++emitted > budget) return false;
          f(*it, j);
        }
      }
      return true;
    };
    if (!scan(bi)) return false;
    for (std::size_t ai = bi + 1; ai < gl.size() && ratio_bound(gl[ai].p, gb.p) < tau; ++ai) {
      if (!scan(ai)) return false;
    }
    for (std::size_t ai = bi; ai-- > 0 && ratio_bound(gl[ai].p, gb.p) < tau;) {
      if (!scan(ai)) return false;
    }
  }
  return true;
}

template <Scalar T>
FamilyElement<T> element_from_table(const WordTable<T>& table, std::size_t i, std::size_t j) {
  FamilyElement<T> e;
  e.i_word = table.word(i);
  e.j_word = table.word(j);
  e.map2 = compose(invert(table.map2(j)), table.map2(i));
  e.map1 = e.map2.projection();
  return e;
}

template <Scalar T>
void finish_verdict(WspVerdict<T>& v) {
  if (v.gap_by_depth.empty()) return;
  const auto& last = v.gap_by_depth.back();
  if (last.found && to_double(last.delta) < v.tol) v.status = WspStatus::WitnessFound;
  if (v.status != WspStatus::WitnessFound) return;
  const T* prev = nullptr;
  for (const auto& entry : v.gap_by_depth) {
    if (!entry.found) continue;
    if (prev == nullptr || entry.delta < *prev) {
      v.witnesses.push_back(entry.argmin);
      prev = &entry.delta;
    }
  }
}

}  // namespace

const char* wsp_status_name(WspStatus s) noexcept {
  return s == WspStatus::WitnessFound ? "WitnessFound" : "NoWitnessUpToDepth";
}

template <Scalar T>
FamilyElement<T> make_family_element(const IfsSystem<T>& sys, const Word& j_word, const Word& i_word) {
  FamilyElement<T> e;
  e.j_word = j_word;
  e.i_word = i_word;
  e.map2 = compose(invert(sys.compose_word(j_word)), sys.compose_word(i_word));
  e.map1 = e.map2.projection();
  return e;
}

template <Scalar T>
T deviation_1d(const Affine1<T>& g, const T& a, const T& b) {
  const T shift = T(g(a) - a);
  return max_value(abs_value(T(g.p - 1)), T(abs_value(shift) / (b - a)));
}

template <Scalar T>
PlanarFrame<T> planar_frame(const IfsSystem<T>& sys) {
  PlanarFrame<T> frame;
  frame.a = sys.a();
  frame.width = sys.length();
  const auto fa = evaluate_f(sys, sys.a(), 1e-15);
  frame.fa = fa.exact ? *fa.exact : from_double<T>(fa.y);
  const auto dsys = to_double(sys);
  const double m = static_cast<double>(sys.size());
  const int depth = std::clamp(static_cast<int>(std::floor(std::log(4096.0) / std::log(std::max(m, 2.0)))), 1, 12);
  const auto sample = sample_attractor(dsys, depth);
  double lo = sample.points.front().y, hi = lo;
  for (const auto& pt : sample.points) {
    lo = std::min(lo, pt.y);
    hi = std::max(hi, pt.y);
  }
  frame.height = hi > lo ? from_double<T>(hi - lo) : frame.width;
  return frame;
}

template <Scalar T>
T deviation_2d(const Affine2<T>& g, const PlanarFrame<T>& frame) {
  const T dx = T(abs_value(T(g.p * frame.a + g.h - frame.a)) / frame.width);
  const T dy = T(abs_value(T(g.q * frame.fa + g.r * frame.a + g.s - frame.fa)) / frame.height);
  const T dr = T(abs_value(g.r) * frame.width / frame.height);
  T dev = max_value(abs_value(T(g.p - 1)), abs_value(T(g.q - 1)));
  dev = max_value(dev, dx);
  dev = max_value(dev, dy);
  return max_value(dev, dr);
}

template <Scalar T>
WordTable<T>::WordTable(const IfsSystem<T>& sys, int depth, std::size_t budget)
    : sys_(&sys), a_(sys.a()), depth_(depth) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  const std::size_t m = sys.size();
  double total = 0.0, level = 1.0;
  for (int d = 0; d <= depth; ++d) {
    total += level;
    level *= static_cast<double>(m);
  }
  if (total > static_cast<double>(budget)) {
    throw Error(ErrorCode::DepthTooLarge, "depth " + std::to_string(depth) + " needs " +
                                              std::to_string(static_cast<long long>(total)) +
                                              " words, budget is " + std::to_string(budget));
  }
  const auto n = static_cast<std::size_t>(total);
  parent_.reserve(n);
  letter_.reserve(n);
  p_.reserve(n);
  u_.reserve(n);
  parent_.push_back(-1);
  letter_.push_back(0);
  p_.emplace_back(1);
  u_.push_back(a_);
  count_upto_.push_back(1);
  std::size_t begin = 0, end = 1;
  const auto proj = sys.projected();
  for (int d = 1; d <= depth; ++d) {
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        // Appending a letter on the right: g_{w i} = g_w o S_i.
        const Affine1<T> gw = map1(k);
        const Affine1<T> g = compose(gw, proj[i]);
        parent_.push_back(static_cast<std::int32_t>(k));
        letter_.push_back(static_cast<std::uint16_t>(i + 1));
        p_.push_back(g.p);
        u_.push_back(g(a_));
      }
    }
    begin = end;
    end = parent_.size();
    count_upto_.push_back(end);
  }
}

template <Scalar T>
Word WordTable<T>::word(std::size_t k) const {
  Word w;
  for (auto cur = static_cast<std::int32_t>(k); cur > 0; cur = parent_[static_cast<std::size_t>(cur)]) {
    w.indices.push_back(letter_[static_cast<std::size_t>(cur)]);
  }
  std::reverse(w.indices.begin(), w.indices.end());
  return w;
}

template <Scalar T>
const Affine2<T>& WordTable<T>::map2(std::size_t k) const {
  std::vector<std::size_t> chain;
  for (std::size_t cur = k; !map2_.contains(cur);) {
    chain.push_back(cur);
    if (parent_[cur] < 0) break;
    cur = static_cast<std::size_t>(parent_[cur]);
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const std::size_t node = *it;
    if (parent_[node] < 0) {
      map2_.emplace(node, Affine2<T>::identity());
    } else {
      const auto& prefix = map2_.at(static_cast<std::size_t>(parent_[node]));
      map2_.emplace(node, compose(prefix, sys_->map(letter_[node] - 1u)));
    }
  }
  return map2_.at(k);
}

template <Scalar T>
FamilyEnumeration<T> enumerate_family_1d(const IfsSystem<T>& sys, int depth, double ratio_threshold,
                                         std::size_t budget) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  WordTable<T> table(sys, depth, budget);
  const auto groups = group_words(table, table.size());
  FamilyEnumeration<T> out;
  auto less = [](const Affine1<T>& l, const Affine1<T>& r) { return l.p < r.p || (l.p == r.p && l.h < r.h); };
  std::set<Affine1<T>, decltype(less)> seen(less);
  // g_j^-1 g_i (x) = (p_i / p_j) x + (h_i - h_j) / p_j
  std::vector<T> h(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) h[k] = table.map1(k).h;
  Affine1<T> e;
  T inv_pj;
  const auto& gl = groups.list;
  for (const auto& gb : gl) {
    for (const auto& ga : gl) {
      if (!(to_double(ratio_bound(ga.p, gb.p)) < ratio_threshold)) continue;
      for (std::size_t j : gb.members) {
        inv_pj = T(1) / table.p(j);
        for (std::size_t i : ga.members) {
          if (++out.pairs_materialized > budget) {
            throw Error(ErrorCode::DepthTooLarge, "family enumeration exceeds budget of " + std::to_string(budget));
          }
          e.p = table.p(i) * inv_pj;
          e.h = (h[i] - h[j]) * inv_pj;
          seen.insert(e);
        }
      }
    }
  }
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

template <Scalar T>
WspVerdict<T> wsp_check_1d(const IfsSystem<T>& sys, int depth, double tol, const WspOptions& opts) {
  if (depth < 2) throw Error(ErrorCode::InvalidArgument, "depth must be >= 2");
  WordTable<T> table(sys, depth, opts.word_budget);
  WspVerdict<T> v;
  v.depth = depth;
  v.tol = tol;
  v.words = table.size();
  const T width = sys.length();
  for (int d = 2; d <= depth; ++d) {
    const auto groups = group_words(table, table.count_upto(d));
    const auto res = min_deviation_1d(table, groups, width, opts.coincidence_examples);
    GapEntry<T> entry;
    entry.depth = d;
    entry.found = res.found;
    if (res.found) {
      entry.argmin = element_from_table(table, res.i, res.j);
      entry.delta = deviation_1d(entry.argmin.map1, sys.a(), sys.b());
    }
    v.gap_by_depth.push_back(std::move(entry));
    if (d == depth) {
      v.coincidence_count = res.coincidences;
      for (const auto& [j, i] : res.examples) v.coincidence_examples.emplace_back(table.word(j), table.word(i));
    }
  }
  finish_verdict(v);
  return v;
}

template <Scalar T>
WspVerdict<T> wsp_check_2d(const IfsSystem<T>& sys, int depth, double tol, const WspOptions& opts) {
  if (depth < 2) throw Error(ErrorCode::InvalidArgument, "depth must be >= 2");
  WordTable<T> table(sys, depth, opts.word_budget);
  const auto frame = planar_frame(sys);
  WspVerdict<T> v;
  v.planar = true;
  v.depth = depth;
  v.tol = tol;
  v.words = table.size();
  v.line_attractor = is_line_attractor(sys);
  if (v.line_attractor) {
    v.warnings.push_back("attractor is a straight line segment; planar and projected verdicts need not agree");
  }
  const T width = sys.length();
  const std::size_t pair_budget = 4 * opts.word_budget;

  for (int d = 2; d <= depth; ++d) {
    const std::size_t n = table.count_upto(d);
    const auto groups = group_words(table, n);
    const auto res1 = min_deviation_1d(table, groups, width, 0);

    // Upper bound of the 1-D deviation over all pairs; once tau exceeds it
    // every pair has been examined.
    T pmin = abs_value(table.p(0)), pmax = pmin, umin = table.u(0), umax = umin;
    for (std::size_t k = 0; k < n; ++k) {
      pmin = min_value(pmin, abs_value(table.p(k)));
      pmax = max_value(pmax, abs_value(table.p(k)));
      umin = min_value(umin, table.u(k));
      umax = max_value(umax, table.u(k));
    }
    const T all_pairs = max_value(T(pmax / pmin + 1), T((umax - umin) / (pmin * width)));

    T tau = res1.found ? T(2 * res1.dev) : from_double<T>(1e-3);
    if (identity_deviation(tau)) tau = from_double<T>(1e-3);
    GapEntry<T> entry;
    entry.depth = d;
    std::size_t coincidences = 0;
    std::vector<std::pair<std::size_t, std::size_t>> examples;
    for (;;) {
      entry.found = false;
      coincidences = 0;
      examples.clear();
      std::size_t bi = 0, bj = 0;
      const bool complete = for_each_pair_below(table, groups, width, tau, pair_budget, [&](std::size_t i, std::size_t j) {
        const Affine2<T> g = compose(invert(table.map2(j)), table.map2(i));
        const T dev = deviation_2d(g, frame);
        if (identity_deviation(dev)) {
          ++coincidences;
          if (examples.size() < opts.coincidence_examples) examples.emplace_back(j, i);
          return;
        }
        if (!entry.found || dev < entry.delta) {
          entry.found = true;
          entry.delta = dev;
          bi = i;
          bj = j;
        }
      });
      if (!complete) {
        throw Error(ErrorCode::DepthTooLarge, "planar candidate pairs exceed budget of " + std::to_string(pair_budget));
      }
      if ((entry.found && entry.delta < tau) || all_pairs < tau) {
        if (entry.found) entry.argmin = element_from_table(table, bi, bj);
        break;
      }
      tau = T(tau * 2);
    }
    v.gap_by_depth.push_back(std::move(entry));
    if (d == depth) {
      v.coincidence_count = coincidences;
      for (const auto& [j, i] : examples) v.coincidence_examples.emplace_back(table.word(j), table.word(i));
    }
  }
  finish_verdict(v);
  return v;
}

template <Scalar T>
LiftedProfile<T> lift_profile(const IfsSystem<T>& sys, const WspVerdict<T>& verdict_1d) {
  LiftedProfile<T> out;
  const auto frame = planar_frame(sys);
  for (const auto& entry : verdict_1d.gap_by_depth) {
    if (!entry.found) continue;
    out.depths.push_back(entry.depth);
    out.deviation_1d.push_back(to_double(entry.delta));
    out.deviation_2d.push_back(to_double(deviation_2d(entry.argmin.map2, frame)));
  }
  for (std::size_t k = 1; k < out.depths.size(); ++k) {
    if (out.deviation_1d[k] < out.deviation_1d[k - 1] && !(out.deviation_2d[k] < out.deviation_2d[k - 1])) {
      out.consistent = false;
    }
  }
  return out;
}

template <Scalar T>
bool is_line_attractor(const IfsSystem<T>& sys) {
  const auto sample = sample_attractor(sys, 2);
  const auto& pts = sample.points;
  const auto& first = pts.front();
  const auto& last = pts.back();
  const T dx = T(last.x - first.x), dy = T(last.y - first.y);
  double scale = 1.0;
  for (const auto& pt : pts) scale = std::max({scale, std::fabs(to_double(pt.x)), std::fabs(to_double(pt.y))});
  for (const auto& pt : pts) {
    const T cross = T((pt.x - first.x) * dy - (pt.y - first.y) * dx);
    if constexpr (is_exact_v<T>) {
      if (cross != 0) return false;
    } else {
      if (std::fabs(cross) > 1e-12 * scale * scale) return false;
    }
  }
  return true;
}

template <Scalar T>
double graph_transport_residual(const IfsSystem<T>& sys, const FamilyElement<T>& element, const T& x, double tol) {
  const T xi = element.map1(x);
  if (xi < sys.a() || sys.b() < xi) {
    throw Error(ErrorCode::OutOfDomain, "projected image " + format_scalar(xi) + " leaves [a, b]");
  }
  // The ordinate error at x is multiplied by |q| on the way through g.
  const double gain = std::max(1.0, std::fabs(to_double(element.map2.q)));
  const auto fx = evaluate_f(sys, x, tol / (8 * gain));
  const auto fxi = evaluate_f(sys, xi, tol / 8);
  if (fx.exact && fxi.exact) {
    const auto img = apply(element.map2, Point<T>{x, *fx.exact});
    return std::hypot(to_double(T(img.x - xi)), to_double(T(img.y - *fxi.exact)));
  }
  const auto img = apply(to_double(element.map2), Point<double>{to_double(x), fx.y});
  return std::hypot(img.x - to_double(xi), img.y - fxi.y);
}

template <Scalar T>
bool graph_transport_check(const IfsSystem<T>& sys, const FamilyElement<T>& element, const T& x, double tol) {
  return graph_transport_residual(sys, element, x, tol) <= tol;
}

#define FIF_INSTANTIATE(T)                                                                                   \
  template class WordTable<T>;                                                                               \
  template FamilyElement<T> make_family_element(const IfsSystem<T>&, const Word&, const Word&);              \
  template T deviation_1d(const Affine1<T>&, const T&, const T&);                                            \
  template PlanarFrame<T> planar_frame(const IfsSystem<T>&);                                                 \
  template T deviation_2d(const Affine2<T>&, const PlanarFrame<T>&);                                         \
  template FamilyEnumeration<T> enumerate_family_1d(const IfsSystem<T>&, int, double, std::size_t);          \
  template WspVerdict<T> wsp_check_1d(const IfsSystem<T>&, int, double, const WspOptions&);                  \
  template WspVerdict<T> wsp_check_2d(const IfsSystem<T>&, int, double, const WspOptions&);                  \
  template LiftedProfile<T> lift_profile(const IfsSystem<T>&, const WspVerdict<T>&);                         \
  template bool is_line_attractor(const IfsSystem<T>&);                                                      \
  template double graph_transport_residual(const IfsSystem<T>&, const FamilyElement<T>&, const T&, double); \
  template bool graph_transport_check(const IfsSystem<T>&, const FamilyElement<T>&, const T&, double);

FIF_INSTANTIATE(Rational)
FIF_INSTANTIATE(double)

#undef FIF_INSTANTIATE

}  // namespace fif
