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

// Associated family F = G^-1 o G of a system and a bounded-depth search for
// elements close to the identity.
//
// Deviation from the identity is measured in the frame where [a, b] becomes
// [0, 1]:
//   1-D: max(|p - 1|, |g(a) - a| / (b - a))
//   2-D: additionally |q - 1|, |r| (b - a) / H and the vertical displacement of
//        (a, f(a)) divided by H, where H is the vertical extent of the attractor.
// Both are invariant under affine changes of the abscissa.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fif/attractor.hpp"
#include "fif/system.hpp"

namespace fif {

template <Scalar T>
struct FamilyElement {
  Word j_word;
  Word i_word;
  Affine2<T> map2;  // g_j^-1 g_i
  Affine1<T> map1;  // its projection
};

// Builds g_j^-1 g_i from the two words.
template <Scalar T>
FamilyElement<T> make_family_element(const IfsSystem<T>& sys, const Word& j_word, const Word& i_word);

template <Scalar T>
T deviation_1d(const Affine1<T>& g, const T& a, const T& b);

// Normalization data for the planar deviation.
template <Scalar T>
struct PlanarFrame {
  T a{};
  T width{};   // b - a
  T fa{};      // f(a)
  T height{};  // vertical extent of the attractor (width if the attractor is flat)
};

template <Scalar T>
PlanarFrame<T> planar_frame(const IfsSystem<T>& sys);

template <Scalar T>
T deviation_2d(const Affine2<T>& g, const PlanarFrame<T>& frame);

// All words of length <= depth in breadth-first order, stored as a prefix tree
// with the projected coefficients of each composed map memoized.
template <Scalar T>
class WordTable {
 public:
  WordTable(const IfsSystem<T>& sys, int depth, std::size_t budget = kDefaultWordBudget);

  std::size_t size() const { return parent_.size(); }
  int depth() const { return depth_; }
  // Number of words of length <= d.
  std::size_t count_upto(int d) const { return count_upto_.at(static_cast<std::size_t>(d)); }

  Word word(std::size_t k) const;
  const T& p(std::size_t k) const { return p_[k]; }
  // Image of the left endpoint a under the projected word map.
  const T& u(std::size_t k) const { return u_[k]; }
  Affine1<T> map1(std::size_t k) const { return Affine1<T>{p_[k], T(u_[k] - p_[k] * a_)}; }
  // Planar word map, composed along the prefix chain and memoized.
  const Affine2<T>& map2(std::size_t k) const;

 private:
  const IfsSystem<T>* sys_;
  T a_;
  int depth_;
  std::vector<std::int32_t> parent_;
  std::vector<std::uint16_t> letter_;
  std::vector<T> p_;
  std::vector<T> u_;
  std::vector<std::size_t> count_upto_;
  mutable std::unordered_map<std::size_t, Affine2<T>> map2_;
};

template <Scalar T>
struct FamilyEnumeration {
  std::vector<Affine1<T>> elements;  // deduplicated, sorted by (p, h)
  std::size_t pairs_materialized = 0;
};

// The set {g_j'^-1 g_i' : |i|, |j| <= depth}. Only pairs with
// |p_i / p_j - 1| < ratio_threshold are composed.
template <Scalar T>
FamilyEnumeration<T> enumerate_family_1d(const IfsSystem<T>& sys, int depth,
                                         double ratio_threshold = std::numeric_limits<double>::infinity(),
                                         std::size_t budget = kDefaultWordBudget);

enum class WspStatus { NoWitnessUpToDepth, WitnessFound };

const char* wsp_status_name(WspStatus s) noexcept;

template <Scalar T>
struct GapEntry {
  int depth = 0;
  bool found = false;  // false when the family has no non-identity element yet
  T delta{};           // smallest non-identity deviation with |i|, |j| <= depth
  FamilyElement<T> argmin;
};

template <Scalar T>
struct WspVerdict {
  WspStatus status = WspStatus::NoWitnessUpToDepth;
  bool planar = false;
  int depth = 0;
  double tol = 0.0;
  std::size_t words = 0;
  std::vector<GapEntry<T>> gap_by_depth;
  // Minimizers at the depths where delta* strictly decreased; only filled
  // when a witness was found.
  std::vector<FamilyElement<T>> witnesses;
  // Exact identities realized by distinct word pairs (never witnesses).
  std::size_t coincidence_count = 0;
  std::vector<std::pair<Word, Word>> coincidence_examples;
  bool line_attractor = false;
  std::vector<std::string> warnings;
};

struct WspOptions {
  std::size_t word_budget = kDefaultWordBudget;
  std::size_t coincidence_examples = 16;
};

template <Scalar T>
WspVerdict<T> wsp_check_1d(const IfsSystem<T>& sys, int depth, double tol, const WspOptions& opts = {});

template <Scalar T>
WspVerdict<T> wsp_check_2d(const IfsSystem<T>& sys, int depth, double tol, const WspOptions& opts = {});

// Lifts the 1-D minimizers of each depth to the plane and records both
// deviations; `consistent` holds when every strict decrease of the 1-D
// deviation along the profile is matched by a strict decrease in 2-D.
template <Scalar T>
struct LiftedProfile {
  std::vector<int> depths;
  std::vector<double> deviation_1d;
  std::vector<double> deviation_2d;
  bool consistent = true;
};

template <Scalar T>
LiftedProfile<T> lift_profile(const IfsSystem<T>& sys, const WspVerdict<T>& verdict_1d);

// True when all points of a depth-2 sample lie on one straight line.
template <Scalar T>
bool is_line_attractor(const IfsSystem<T>& sys);

// Graph transport: g(x, f(x)) == (g'(x), f(g'(x))) within tol.
template <Scalar T>
double graph_transport_residual(const IfsSystem<T>& sys, const FamilyElement<T>& element, const T& x, double tol);

template <Scalar T>
bool graph_transport_check(const IfsSystem<T>& sys, const FamilyElement<T>& element, const T& x, double tol);

}  // namespace fif
