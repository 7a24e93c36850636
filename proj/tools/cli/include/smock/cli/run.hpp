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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "smock/cli/report.hpp"
#include "smock/cli/scene.hpp"

namespace smock::cli {

struct RunOptions {
  std::optional<std::filesystem::path> plot_dir;
  std::optional<double> budget;          // overrides experiment.budget
  std::optional<std::uint64_t> seed;     // overrides experiment.measure.seed
};

const std::vector<std::string>& commands();
const std::vector<std::string>& demo_names();

// Throws SceneError for missing experiment fields and smock::Error from the
// library; never truncates silently.
Report build_report(const std::string& command, const Scene& scene, const RunOptions& opts);
Report build_demo(const std::string& name, const RunOptions& opts);
// The embedded scene a demo runs.
std::string demo_scene(const std::string& name);

// Writes CSV to `out` and a summary to `log`. Exit status: 0 on success,
// 2 on invalid input, 3 when a budget is exceeded, 1 otherwise.
int run(const std::string& command, const Scene& scene, const RunOptions& opts, std::ostream& out, std::ostream& log);
int run_demo(const std::string& name, const RunOptions& opts, std::ostream& out, std::ostream& log);

}  // namespace smock::cli
