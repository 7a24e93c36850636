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

#include <benchmark/benchmark.h>

#include <random>

#include "smock/constructions.hpp"
#include "smock/gh.hpp"
#include "smock/measure.hpp"
#include "smock/smocked.hpp"

namespace smock {
namespace {

SmockingPattern grid_of_balls(int side) {
  std::vector<Stitch> s;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      s.push_back({Ball{Point{i - side / 2.0, j - side / 2.0}, 0.3}, i * side + j});
    }
  }
  const double w = side / 2.0 + 1.0;
  return SmockingPattern::validate(2, std::move(s), Box{Point{-w, -w}, Point{w, w}});
}

void BM_SmockedDistance(benchmark::State& state) {
  const SmockedSpace space(grid_of_balls(static_cast<int>(state.range(0))));
  std::mt19937_64 rng(1);
  const double w = state.range(0) / 2.0;
  std::uniform_real_distribution<double> u(-w, w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(space.pseudometric(Point{u(rng), u(rng)}, Point{u(rng), u(rng)}));
  }
}
BENCHMARK(BM_SmockedDistance)->Arg(4)->Arg(8)->Arg(16);

void BM_BallNet(benchmark::State& state) {
  const SmockedSpace space(example32(8, 2));
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball_net(space, space.basepoint(), 2.0, eps).metric.size());
}
BENCHMARK(BM_BallNet)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GhUpper(benchmark::State& state) {
  const SmockedSpace a(example32(4, 2));
  const SmockedSpace b(SmockingPattern::validate(2, {}, a.pattern().window()));
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const auto x = ball_net(a, a.basepoint(), 1.0, eps).metric;
  const auto y = ball_net(b, b.basepoint(), 1.0, eps).metric;
  for (auto _ : state) benchmark::DoNotOptimize(gh_upper(x, y));
}
BENCHMARK(BM_GhUpper)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_GhExactSmall(benchmark::State& state) {
  std::vector<double> d(25), e(25);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      d[i * 5 + j] = std::abs(i - j);
      e[i * 5 + j] = i == j ? 0.0 : 1.0 + 0.1 * (i + j);
    }
  }
  const FiniteMetricSpace x({"a", "b", "c", "d", "e"}, d);
  const FiniteMetricSpace y({"a", "b", "c", "d", "e"}, e);
  for (auto _ : state) benchmark::DoNotOptimize(gh_exact_small(x, y));
}
BENCHMARK(BM_GhExactSmall)->Unit(benchmark::kMillisecond);

void BM_WordMetric(benchmark::State& state) {
  const NormSpec spec =
      NormSpec::make({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 2}, {-1, -2}}, {1, 1, 1, 1, 1.5, 1.5});
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lattice_word_metric(spec, {n, n}));
}
BENCHMARK(BM_WordMetric)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_MonteCarloIntegral(benchmark::State& state) {
  const SmockedSpace space(example32(4, 2));
  const PushforwardMeasure m(space, MonteCarlo{1, static_cast<std::uint64_t>(state.range(0))});
  const Box support{Point{-2.0, -2.0}, Point{2.0, 2.0}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate(m, Bump{Point{0.0, 0.0}, 1.0}, support).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloIntegral)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace smock

BENCHMARK_MAIN();
