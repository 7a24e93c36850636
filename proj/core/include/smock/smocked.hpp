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

// The smocked metric engine. A SmockingPattern is a validated finite list
// of disjoint stitches; SmockedSpace evaluates the quotient distance obtained
// by collapsing every stitch to a point.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smock/euclid.hpp"
#include "smock/finite_metric_space.hpp"

namespace smock {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class SmockingPattern {
 public:
  // Sorts stitches by id (ids must be unique), checks shapes, connectivity,
  // pairwise disjointness and that every stitch meets the window.
  // A pair closer than `separation_tol` but not touching is rejected as
  // kZeroSeparation; touching pairs as kOverlappingStitches.
  static SmockingPattern validate(std::size_t dimension, std::vector<Stitch> stitches, Box window,
                                  double separation_tol = 1e-12);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return stitches_.size(); }
  bool empty() const noexcept { return stitches_.empty(); }
  const std::vector<Stitch>& stitches() const noexcept { return stitches_; }
  const Stitch& stitch(std::size_t index) const { return stitches_.at(index); }
  const Box& window() const noexcept { return window_; }

  // Minimal separation; +inf with fewer than two stitches.
  double delta() const noexcept { return delta_; }
  double l_min() const noexcept { return l_min_; }
  double l_max() const noexcept { return l_max_; }
  double separation(std::size_t i, std::size_t j) const { return sep_[i * stitches_.size() + j]; }
  double total_volume() const;

  // Lowest-index stitch containing p.
  std::optional<std::size_t> containing(const Point& p) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Stitch> stitches_;
  Box window_;
  std::vector<double> sep_;
  double delta_ = kInfinity;
  double l_min_ = 0.0;
  double l_max_ = 0.0;
};

// k -> X_k for k >= 1.
using PatternFamily = std::function<SmockingPattern(int)>;

struct SmockingConstants {
  double depth_h = 0.0;
  double depth_error = 0.0;  // grid_step * sqrt(N)
  bool depth_infinite = false;
  double l_min = 0.0;
  double l_max = 0.0;
  double delta = kInfinity;
  Box window;
  double grid_step = 0.0;
  std::size_t stitches_in_window = 0;
};

// Depth is the largest distance to the stitch set over a grid on `window`;
// it is reported as infinite when that exceeds the window diagonal.
SmockingConstants smocking_constants(const SmockingPattern& pattern, const Box& window, double grid_step);

// A point of the quotient: a free Euclidean point or a collapsed stitch
// (by index into the pattern).
class SpacePoint {
 public:
  static SpacePoint free(Point p) { return SpacePoint(std::move(p)); }
  static SpacePoint collapsed(std::size_t stitch_index) { return SpacePoint(stitch_index); }

  bool is_collapsed() const noexcept { return std::holds_alternative<std::size_t>(value_); }
  const Point& point() const { return std::get<Point>(value_); }
  std::size_t stitch() const { return std::get<std::size_t>(value_); }

  friend bool operator==(const SpacePoint&, const SpacePoint&) = default;

 private:
  explicit SpacePoint(Point p) : value_(std::move(p)) {}
  explicit SpacePoint(std::size_t s) : value_(s) {}
  std::variant<Point, std::size_t> value_;
};

// Per-point cache for O(stitches) distance evaluation: entry[i] is the
// Euclidean distance from the point's set to stitch i, via[i] the cheapest
// way to reach the point from stitch i through the stitch closure.
struct LiftProfile {
  SpacePoint point = SpacePoint::collapsed(0);
  Point lift;
  std::vector<double> entry;
  std::vector<double> via;
};

class SmockedSpace {
 public:
  // Basepoint defaults to pi(0).
  explicit SmockedSpace(SmockingPattern pattern);
  SmockedSpace(SmockingPattern pattern, const Point& basepoint_lift);

  const SmockingPattern& pattern() const noexcept { return pattern_; }
  std::size_t dimension() const noexcept { return pattern_.dimension(); }
  const SpacePoint& basepoint() const noexcept { return basepoint_; }

  // The smocking map.
  SpacePoint project(const Point& z) const;
  Point lift(const SpacePoint& x) const;
  // The point's underlying Euclidean set (a one-point cloud when free).
  Shape lift_set(const SpacePoint& x) const;

  // Shortest path over {u, v} and the stitches that can shorten the
  // direct hop, collapsed stitches having zero internal length.
  // Throws kLiftOutsideWindow when a free endpoint lies outside the window.
  double distance(const SpacePoint& u, const SpacePoint& v) const;
  double pseudometric(const Point& v, const Point& w) const;

  // Smocked distance between stitches i and j (all-pairs closure).
  double stitch_closure(std::size_t i, std::size_t j) const { return closure_[i * pattern_.size() + j]; }

  LiftProfile profile(const SpacePoint& x) const;
  // Equal to distance(a.point, b.point); no window check.
  double distance(const LiftProfile& a, const LiftProfile& b) const;

 private:
  void check_in_window(const SpacePoint& x) const;

  SmockingPattern pattern_;
  SpacePoint basepoint_;
  std::vector<double> closure_;
};

// Length of the best path through exactly k stitches with consecutive
// indices distinct, by enumeration of all n(n-1)^(k-1) index sequences.
// Returns +inf when no such sequence exists. Brute-force oracle for small
// patterns; throws kBudgetExceeded above `budget` sequences.
double d_k_exact(const SmockedSpace& space, const Point& v, const Point& w, std::size_t k,
                 std::uint64_t budget = 20'000'000);

// min over 0 <= k <= k_max of d_k_exact, by depth-first enumeration of the
// same sequences with branches cut once their partial length reaches the
// best total found. Throws kBudgetExceeded above `budget` visited prefixes.
double min_d_k_exact(const SmockedSpace& space, const Point& v, const Point& w, std::size_t k_max,
                     std::uint64_t budget = 200'000'000);

// 1 + floor(L0 / delta0); 1 when delta0 is infinite.
std::uint64_t crossing_bound(double l0, double delta0);

// r + crossing_bound(r + L, delta0) * L.
double preimage_radius(double r, double l, double delta0);

// Preimage radius about `center` computed from the stitches the lift of an
// r-path can reach: iterates L and delta over stitches within the current
// radius until the set stops growing.
struct PreimageBound {
  double radius = 0.0;
  double l = 0.0;
  double delta = kInfinity;
  std::vector<std::size_t> stitches;
};
PreimageBound local_preimage_bound(const SmockingPattern& pattern, const Shape& center, double r);

// Indices of distinct stitches touched by the polyline through `vertices`.
std::vector<std::size_t> stitches_met(const SmockingPattern& pattern, std::span<const Point> vertices,
                                      double tol = 1e-12);

struct BallNet {
  FiniteMetricSpace metric;
  std::vector<SpacePoint> points;
  double eps = 0.0;
  double grid_step = 0.0;
  double resolution = 0.0;  // covering slack of the candidate grid
};

// Greedy eps/2-separated net of the closed ball B_R(center). Candidates are
// the lifts on a grid of spacing `grid_step` (default eps) anchored at the
// center lift plus every collapsed stitch in range, visited in order of
// distance to the center. Eps-balls cover the ball up to `resolution`.
BallNet ball_net(const SmockedSpace& space, const SpacePoint& center, double radius, double eps,
                 double grid_step = 0.0);

std::string label_of(const SmockedSpace& space, const SpacePoint& x);

}  // namespace smock
