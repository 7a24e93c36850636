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

// Scene files: one JSON document describing a pattern source, its window
// and basepoint, and the parameters of an experiment.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smock/constructions.hpp"
#include "smock/euclid.hpp"
#include "smock/finite_metric_space.hpp"
#include "smock/measure.hpp"
#include "smock/smocked.hpp"

namespace smock::cli {

enum class SceneErrorKind {
  kSyntax,
  kSchema,
  kUnknownFamily,
  kMissingSeed,
  kDimensionMismatch,
  kInvalidWindow,
  kInvalidPattern,
};

struct SceneIssue {
  SceneErrorKind kind;
  std::string path;  // JSON pointer, e.g. /experiment/measure/seed
  std::string message;
};

class SceneError : public std::runtime_error {
 public:
  explicit SceneError(std::vector<SceneIssue> issues);
  const std::vector<SceneIssue>& issues() const noexcept { return issues_; }
  bool has(SceneErrorKind kind) const;

 private:
  std::vector<SceneIssue> issues_;
};

struct MeasureSettings {
  std::string method = "exact";  // exact | monte-carlo | grid
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 100'000;
  double step = 0.01;
  std::string mode = "weak";  // weak | ball
};

struct Experiment {
  std::vector<std::pair<Point, Point>> pairs;  // dist
  double radius = 1.0;                         // net, converge: R; local-bounds: r
  double eps = 0.1;
  double grid_step = 0.1;    // constants
  double resolution = 0.01;  // hausdorff
  CompactSet target;         // hausdorff
  // converge and measure: the limit pattern; empty means E^N on the window.
  std::vector<Stitch> limit;
  // gh: two explicit finite metric spaces.
  std::vector<FiniteMetricSpace> spaces;
  std::optional<NormSpec> norm;
  RationalVector x;
  std::vector<std::int64_t> lambdas;
  std::optional<SearchBox> sample_box;  // defect
  MeasureSettings measure;
  std::vector<TestFunction> panel;
  std::string panel_id;
  std::optional<Box> support;
  std::vector<Point> ball_centers;
  std::vector<double> ball_radii;
  std::optional<double> budget;
};

struct Scene {
  int version = 1;
  std::size_t dimension = 0;
  // Exactly one source: an explicit pattern (run as the only k = 1) or a
  // family with its parameter list.
  std::optional<SmockingPattern> pattern;
  std::optional<FamilySpec> family;
  std::vector<int> ks;
  std::optional<Box> window;  // overrides family windows when given
  Point basepoint;
  Experiment experiment;
  std::uint64_t source_hash = 0;

  // The pattern for parameter k (the window override applied).
  SmockingPattern pattern_at(int k) const;
  std::string source_name() const;
};

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

// Collects every issue it can find before throwing SceneError.
Scene parse_scene(std::string_view text);
Scene load_scene(const std::string& path);

}  // namespace smock::cli
