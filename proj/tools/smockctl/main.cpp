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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "smock/cli/run.hpp"

int main(int argc, char** argv) {
  using namespace smock::cli;
  CLI::App app{"smockctl: experiments on smocked metric spaces"};
  app.require_subcommand(1);

  std::string scene_path;
  std::string out_path;
  std::string plot_dir;
  std::optional<double> budget;
  std::optional<std::uint64_t> seed;
  std::string demo;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write CSV here instead of standard output");
    sub->add_option("--plot-dir", plot_dir, "Write x/y series files into this directory");
    sub->add_option("--budget", budget, "Exact-solver budget (map pairs)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Override the Monte Carlo seed");
  };
  for (const std::string& name : commands()) {
    CLI::App* sub = app.add_subcommand(name, name == "demo" ? "Run a named reproduction end to end" : "Run " + name);
    add_common(sub);
    if (name == "demo") {
      sub->add_option("name", demo, "example31 | example32 | remark36 | lattice-l1")
          ->required()
          ->check(CLI::IsMember(demo_names()));
    } else {
      sub->add_option("--scene", scene_path, "Scene file (JSON)")->required()->check(CLI::ExistingFile);
    }
  }
  CLI11_PARSE(app, argc, argv);

  RunOptions opts;
  if (!plot_dir.empty()) opts.plot_dir = plot_dir;
  opts.budget = budget;
  opts.seed = seed;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "demo") return run_demo(demo, opts, out, std::cerr);
  try {
    const Scene scene = load_scene(scene_path);
    return run(command, scene, opts, out, std::cerr);
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
