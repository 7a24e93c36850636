// Copyright 2026 The Smock Authors
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

// Named pattern families and the lattice machinery behind tangent cones at
// infinity: polyhedral norms, weighted word metrics and their rescalings.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smock/gh.hpp"
#include "smock/smocked.hpp"

namespace smock {

struct Example31 {
  SmockingPattern pattern;
  double total_length = 0.0;  // L_k
  int count = 0;              // N_k
  double gap = 0.0;           // equal gap between neighbouring intervals
  double expected_endpoint_distance = 0.0;
};

// k intervals of total length 2/3 (k odd) or 1/3 (k even) in [-1, 1],
// equal gaps between them and half a gap at each end. Window [-2, 2].
Example31 example31(int k);

// Ball(0, 1/k) in dimension n, window [-w, w]^n.
SmockingPattern example32(int k, std::size_t n, double window_half_width = 8.0);

// Interval [k^2, k^2 + k]. The default window is [-w, w] with
// w = max(k^2 + k + 1, 64).
SmockingPattern remark36(int k, std::optional<double> window_half_width = std::nullopt);

using LatticePoint = std::vector<std::int64_t>;

// num / den with a positive common denominator.
struct RationalVector {
  LatticePoint num;
  std::int64_t den = 1;
};

class NormSpec {
 public:
  // Throws kInvalidArgument unless the generators are nonzero, closed under
  // negation with equal weights, weights positive and finite, and the
  // generators span R^n.
  static NormSpec make(std::vector<LatticePoint> generators, std::vector<double> weights);
  // {+-e_i} with unit weights.
  static NormSpec l1(std::size_t n);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<LatticePoint>& generators() const noexcept { return generators_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  // One representative of every +-v pair.
  const std::vector<std::size_t>& half() const noexcept { return half_; }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticePoint> generators_;
  std::vector<double> weights_;
  std::vector<std::size_t> half_;
};

// F_V(x) = min sum |a_i| l_i over real representations x = sum a_i v_i,
// solved exactly as a linear program by enumerating bases of the
// generators. Throws kNoRepresentation when no basis exists.
double polyhedral_norm(const NormSpec& spec, const RationalVector& x);
double polyhedral_norm(const NormSpec& spec, const LatticePoint& x);

// Closed integer box [lo, hi].
struct SearchBox {
  LatticePoint lo;
  LatticePoint hi;
};

// Dijkstra over Z^n with edges p -> p + v_i of length l_i, restricted to a
// box about 0. A path leaving the box costs at least
// ceil((m + 1) / |v|_inf,max) * l_min, m the box's inner radius; the result
// is returned once it does not exceed that. Without a box, the box doubles
// until this holds. With an explicit box that fails the test, or one
// missing 0 or p, throws kSearchBoxTooSmall.
double lattice_word_metric(const NormSpec& spec, const LatticePoint& p,
                           const std::optional<SearchBox>& box = std::nullopt);

// lattice_word_metric(lambda x) / lambda. Throws kInvalidArgument unless
// lambda >= 1 and lambda x is a lattice point.
double stable_norm_estimate(const NormSpec& spec, const RationalVector& x, std::int64_t lambda);

// max over sample pairs of |d_G(0, p - q) - F_V(p - q)|.
double norm_defect(const NormSpec& spec, std::span<const LatticePoint> sample);

// Balls of radius `node_radius` (< 1/2) at the lattice points with
// |p|_inf <= k; window [-(k + 1), k + 1]^n.
SmockingPattern lattice_nodes(const NormSpec& spec, double node_radius, int k);

struct Example31Family {};
struct Example32Family {
  std::size_t dimension = 2;
};
struct Remark36Family {};
struct LatticeFamily {
  NormSpec spec;
  double node_radius = 0.25;
};
// The same pattern for every k.
struct CustomFamily {
  SmockingPattern pattern;
};

using FamilySpec = std::variant<Example31Family, Example32Family, Remark36Family, LatticeFamily, CustomFamily>;

// Throws kInvalidArgument for k < 1.
SmockingPattern instantiate(const FamilySpec& family, int k);
std::string family_name(const FamilySpec& family);
PatternFamily as_pattern_family(FamilySpec family);

}  // namespace smock
