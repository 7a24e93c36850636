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

// Pushforward of Lebesgue measure under the smocking map. A collapsed stitch
// of positive volume becomes an atom of that mass at its point.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "smock/smocked.hpp"

namespace smock {

// Interval arithmetic and Gauss-Legendre quadrature between breakpoints.
// Dimension 1 only.
struct Exact1D {};

// Uniform samples from per-batch mt19937_64 streams seeded from `seed`.
struct MonteCarlo {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100'000;
};

// Midpoint rule on cells of side at most `step`.
struct GridMethod {
  double step = 0.01;
};

using MeasureMethod = std::variant<Exact1D, MonteCarlo, GridMethod>;

class PushforwardMeasure {
 public:
  // Throws kMethodMismatch for Exact1D outside dimension 1, and
  // kInvalidArgument for a zero sample count or a nonpositive grid step.
  PushforwardMeasure(const SmockedSpace& space, MeasureMethod method);

  const SmockedSpace& space() const noexcept { return *space_; }
  const MeasureMethod& method() const noexcept { return method_; }

 private:
  const SmockedSpace* space_;
  MeasureMethod method_;
};

// value with |value - truth| <= error for exact and grid methods; error is
// one standard error for Monte Carlo.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// (1 - (|x - c| / radius)^2)^2 inside the ball, 0 outside.
struct Bump {
  Point center;
  double radius = 1.0;
};
// max(0, 1 - slope |x - c|).
struct Tent {
  Point center;
  double slope = 1.0;
};
struct Constant {
  double value = 1.0;
};
using TestFunction = std::variant<Bump, Tent, Constant>;

double evaluate(const TestFunction& phi, const Point& x);
// phi at the lift of x (a collapsed stitch's representative point).
double evaluate(const TestFunction& phi, const SmockedSpace& space, const SpacePoint& x);
double lipschitz_constant(const TestFunction& phi);
double sup_norm(const TestFunction& phi);

// Lebesgue measure of {z : d(pi(z), center) < r}. Sampling methods work in
// the box about the center's set given by local_preimage_bound, which must
// lie inside the window (kLiftOutsideWindow otherwise).
Estimate ball_volume(const PushforwardMeasure& m, const SpacePoint& center, double r);

// Integral over `support` of phi(pi(z)) dz. Stitches inside the support
// box contribute phi(point) * volume as exact atoms. Throws
// kSupportOutsideWindow unless the box lies in the window.
Estimate integrate(const PushforwardMeasure& m, const TestFunction& phi, const Box& support);

struct WeakConvergenceRow {
  int k = 0;
  std::size_t phi = 0;
  Estimate mu_k;
  Estimate mu_limit;
  double gap = 0.0;        // mu_k - mu_limit
  double gap_error = 0.0;  // paired standard error under Monte Carlo
  double stitch_volume = 0.0;
  bool increased = false;  // |gap| grew beyond the errors since the previous k
};

struct WeakConvergenceReport {
  std::vector<WeakConvergenceRow> rows;  // k-major, phi-minor
  std::size_t increases = 0;
};

// Integrals of each phi against mu_k and mu_limit over `support`. Under
// Monte Carlo both use the same samples, so the gap's error only reflects
// where the two spaces differ.
WeakConvergenceReport weak_convergence_check(const PatternFamily& family, std::span<const TestFunction> phis,
                                             std::span<const int> ks, const SmockedSpace& limit,
                                             const MeasureMethod& method, const Box& support);

}  // namespace smock
