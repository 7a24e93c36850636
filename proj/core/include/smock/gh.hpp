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

// Gromov-Hausdorff machinery on finite metric spaces, computed through
// correspondences: d_GH = (1/2) inf over correspondences of the distortion.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smock/finite_metric_space.hpp"
#include "smock/smocked.hpp"

namespace smock {

struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Throws kInvalidCorrespondence unless both projections are onto.
void check_correspondence(const Correspondence& c, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

double distortion(const Correspondence& c, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

// |Y|^|X| * |X|^|Y|, saturating.
double map_pair_count(std::size_t nx, std::size_t ny);
inline constexpr double kDefaultExactBudget = 9'765'625.0;  // 5x5 spaces

// Half the least distortion over graph(f) u graph(g)^T for all maps
// f: X -> Y and g: Y -> X. Every correspondence contains such a union with
// no larger distortion, so this is exact. Throws kBudgetExceeded when
// map_pair_count exceeds the budget.
double gh_exact_small(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double budget = kDefaultExactBudget);

struct GhUpperOptions {
  // Cap on pair-pair evaluations spent in local-swap refinement; a round
  // of swaps starts only if it fits entirely.
  double refine_work = 2e8;
};

struct GhUpperResult {
  double value = 0.0;
  Correspondence correspondence;
};

// Half the distortion of a constructed correspondence: the better of the
// label-matched and the nearest-coordinate map pairs (nearest profile of
// distance to base and eccentricity when coordinates are missing), refined
// by local swaps.
GhUpperResult gh_upper_witness(const FiniteMetricSpace& x, const FiniteMetricSpace& y, GhUpperOptions opts = {});
double gh_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y, GhUpperOptions opts = {});

// (1/2) |diam X - diam Y|.
double gh_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct ConvergenceRow {
  int k = 0;
  double radius = 0.0;
  double gh_upper = 0.0;
  double gh_lower = 0.0;
  double net_eps = 0.0;
  bool exact = false;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
};
using ConvergenceCurve = std::vector<ConvergenceRow>;

struct CurveOptions {
  double exact_budget = kDefaultExactBudget;
  GhUpperOptions upper;
};

// GH brackets between a k-indexed space and a fixed limit, rows in the
// order of `ks`. Uses the exact solver when it fits the budget.
ConvergenceCurve convergence_curve(std::span<const int> ks, const std::function<FiniteMetricSpace(int)>& space_of_k,
                                   const FiniteMetricSpace& limit, double radius, double net_eps,
                                   CurveOptions opts = {});

// Brackets between B_R-nets about pi_k(0) of each family member and the
// B_R-net about the limit's basepoint.
ConvergenceCurve pgh_curve(const PatternFamily& family, const SmockedSpace& limit, double radius, double eps,
                           std::span<const int> ks, CurveOptions opts = {});

struct LocalConstantsRow {
  int k = 0;
  double l_r = 0.0;
  double delta_r = kInfinity;
  std::size_t stitch_count = 0;
  double ball_radius = 0.0;  // r + L_r
};

struct LocalConstantsReport {
  std::vector<LocalConstantsRow> rows;
  // Smallest k from which L_r never exceeds and delta_r never drops below
  // their values at k; stabilized when it falls in the first half of ks.
  std::optional<int> k_r;
  bool stabilized = false;
};

// Per k: largest diameter and least separation among stitches meeting the
// closed ball B_{r + L_r}(0), with L_r solved as a fixed point.
LocalConstantsReport local_constants_report(const PatternFamily& family, double r, std::span<const int> ks);

}  // namespace smock
