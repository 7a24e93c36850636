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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "smock/cli/run.hpp"
#include "smock/constructions.hpp"
#include "smock/gh.hpp"
#include "smock/measure.hpp"
#include "smock/smocked.hpp"

namespace smock {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Box cube(std::size_t dim, double w) {
  return Box{Point(std::vector<double>(dim, -w)), Point(std::vector<double>(dim, w))};
}

Outcome example31_endpoints() {
  std::set<long long> values;
  double worst = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const Example31 e = example31(k);
    const double want = 2.0 - (k % 2 == 1 ? 2.0 / 3.0 : 1.0 / 3.0);
    const SmockedSpace s(e.pattern);
    const double d = s.distance(s.project(Point{-1.0}), s.project(Point{1.0}));
    worst = std::max(worst, std::abs(d - want));
    values.insert(std::llround(d * 1e9));
  }
  const bool two = values == std::set<long long>{std::llround(4e9 / 3.0), std::llround(5e9 / 3.0)};
  return {worst <= 1e-12 && two, fmt("max |d - (2 - L_k)| = %.3g, distinct values %zu", worst, values.size())};
}

Outcome example32_curve() {
  const SmockedSpace limit(SmockingPattern::validate(2, {}, cube(2, 8.0)));
  std::vector<int> ks;
  for (int k = 2; k <= 32; ++k) ks.push_back(k);
  const double eps = 0.05;
  const auto curve = pgh_curve([](int k) { return example32(k, 2); }, limit, 2.0, eps, ks);
  bool bound = true;
  bool monotone = true;
  double running_min = kInfinity;
  double worst_rise = 0.0;
  for (const auto& row : curve) {
    bound = bound && row.gh_upper <= 4.0 / row.k + row.net_eps + 1e-12;
    // Rises below the net resolution are not resolved by the bracket.
    worst_rise = std::max(worst_rise, row.gh_upper - running_min);
    monotone = monotone && row.gh_upper <= running_min + row.net_eps + 1e-12;
    running_min = std::min(running_min, row.gh_upper);
  }
  const double first = curve.front().gh_upper;
  const double last = curve.back().gh_upper;
  const bool ok = bound && monotone && last < 0.2 && last < first;
  return {ok, fmt("gh_upper(2) = %.4g, gh_upper(32) = %.4g, bound %s, largest rise %.4g (net_eps %.2g)", first, last,
                  bound ? "held" : "violated", worst_rise, eps)};
}

Outcome remark36_euclidean() {
  double worst = 0.0;
  bool lmax = true;
  std::size_t sizes = 0;
  for (int k = 4; k <= 12; ++k) {
    const SmockedSpace s(remark36(k));
    lmax = lmax && s.pattern().l_max() == static_cast<double>(k);
    const BallNet net = ball_net(s, s.basepoint(), 5.0, 0.25);
    sizes += net.metric.size();
    for (std::size_t i = 0; i < net.metric.size(); ++i) {
      for (std::size_t j = 0; j < net.metric.size(); ++j) {
        worst = std::max(worst, std::abs(net.metric(i, j) - distance(s.lift(net.points[i]), s.lift(net.points[j]))));
      }
    }
  }
  return {worst <= 1e-12 && lmax, fmt("k = 4..12, %zu net points, max deviation %.3g, L_max = k %s", sizes, worst,
                                      lmax ? "held" : "failed")};
}

Outcome engine_vs_oracle() {
  std::mt19937_64 rng(20261014);
  double worst = 0.0;
  std::size_t queries = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const SmockedSpace s(oracle::random_pattern(rng, dim, 5, 0.05));
    for (int q = 0; q < 5; ++q, ++queries) {
      const Point v = oracle::random_point(rng, dim, 2.5);
      const Point w = oracle::random_point(rng, dim, 2.5);
      const std::uint64_t m = crossing_bound(distance(v, w), s.pattern().delta());
      worst = std::max(worst, std::abs(s.pseudometric(v, w) - min_d_k_exact(s, v, w, m)));
    }
  }
  return {worst <= 1e-9, fmt("200 patterns, %zu pairs, max |engine - oracle| = %.3g", queries, worst)};
}

Outcome metric_axioms() {
  std::mt19937_64 rng(7);
  double triangle = 0.0, expand = 0.0, refine = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const SmockingPattern big = oracle::random_pattern(rng, dim, 6, 0.05);
    const SmockedSpace s(big);
    std::vector<Stitch> part(big.stitches().begin(), big.stitches().begin() + big.size() / 2);
    const SmockedSpace coarse(SmockingPattern::validate(dim, part, big.window()));
    for (int q = 0; q < 10; ++q) {
      const Point a = oracle::random_point(rng, dim, 2.5);
      const Point b = oracle::random_point(rng, dim, 2.5);
      const Point c = oracle::random_point(rng, dim, 2.5);
      const double ab = s.pseudometric(a, b);
      triangle = std::max(triangle, s.pseudometric(a, c) - ab - s.pseudometric(b, c));
      expand = std::max(expand, ab - distance(a, b));
      refine = std::max(refine, ab - coarse.pseudometric(a, b));
    }
  }
  const bool ok = triangle <= 1e-9 && expand <= 0.0 && refine <= 0.0;
  return {ok, fmt("1000 triples: triangle excess %.3g, d - |v-w| max %.3g, refinement increase %.3g", triangle, expand,
                  refine)};
}

FiniteMetricSpace two_points(double a) { return FiniteMetricSpace({"0", "1"}, {0.0, a, a, 0.0}); }

Outcome gh_solver() {
  const std::vector<double> gaps{0.5, 1.0, 2.0, 3.0};
  double pair_err = 0.0;
  for (double a : gaps) {
    for (double b : gaps) pair_err = std::max(pair_err, std::abs(gh_exact_small(two_points(a), two_points(b)) - std::abs(a - b) / 2.0));
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> n(1, 4);
  std::uniform_real_distribution<double> lam(0.1, 10.0);
  int order = 0;
  double scale_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::random_metric_space(rng, n(rng));
    const auto y = oracle::random_metric_space(rng, n(rng));
    const double e = gh_exact_small(x, y);
    if (!(gh_lower(x, y) <= e + 1e-12 && e <= gh_upper(x, y) + 1e-12)) ++order;
    const double l = lam(rng);
    scale_err = std::max(scale_err, std::abs(gh_exact_small(x.scaled(l), y.scaled(l)) - l * e));
  }
  return {pair_err == 0.0 && order == 0 && scale_err <= 1e-9,
          fmt("2-point error %.3g, bracket violations %d, scaling error %.3g", pair_err, order, scale_err)};
}

Outcome crossing_and_preimage() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const SmockingPattern p = oracle::random_pattern(rng, dim, 6, 0.05);
    const double l0 = 0.2 + 4.0 * unit(rng);
    std::vector<Point> poly{oracle::random_point(rng, dim, 2.0)};
    double left = l0;
    for (int i = 0; i < 6 && left > 0.0; ++i) {
      Point dir = oracle::random_point(rng, dim, 1.0);
      const double len = std::min(left, (0.2 + unit(rng)) * l0 / 3.0);
      const double n = norm(dir);
      if (n == 0.0) continue;
      poly.push_back(poly.back() + (len / n) * dir);
      left -= len;
    }
    if (stitches_met(p, poly).size() > crossing_bound(l0, p.delta())) ++violations;
  }

  int accepted = 0, outside = 0;
  const double r = 1.0;
  for (int trial = 0; accepted < 10'000; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const SmockedSpace s(oracle::random_pattern(rng, dim, 6, 0.1, 8.0));
    const double big = preimage_radius(r, s.pattern().l_max(), s.pattern().delta());
    const double box = std::min(7.5, big + 1.0);
    for (int q = 0; q < 2000 && accepted < 10'000; ++q) {
      const Point z = oracle::random_point(rng, dim, box);
      if (s.distance(s.basepoint(), s.project(z)) >= r) continue;
      ++accepted;
      if (norm(z) > big + 1e-12) ++outside;
    }
  }
  return {violations == 0 && outside == 0,
          fmt("500 polylines: %d violations; %d ball samples: %d outside R(r)", violations, accepted, outside)};
}

Outcome tangent_cone() {
  const std::vector<std::int64_t> lambdas{1, 2, 4, 8, 16, 32};
  const NormSpec l1 = NormSpec::l1(2);
  const NormSpec mixed =
      NormSpec::make({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}, {1, 1, 1, 1, 1.5, 1.5});
  const RationalVector x{{1, 1}, 1};
  bool l1_exact = true;
  bool rate = true;
  double c = 0.0;
  const double target = oracle::enumerate_polyhedral(mixed, {1, 1}, 4, 2);
  for (std::int64_t lambda : lambdas) {
    l1_exact = l1_exact && stable_norm_estimate(l1, x, lambda) == 2.0;
    const double gap = std::abs(stable_norm_estimate(mixed, x, lambda) - target);
    rate = rate && gap <= 3.0 / static_cast<double>(lambda);
    c = std::max(c, gap * static_cast<double>(lambda));
  }
  return {l1_exact && rate && std::abs(target - 1.5) < 1e-12,
          fmt("l1 estimates exactly 2: %s; enumerated target %.6g; empirical rate constant %.3g", l1_exact ? "yes" : "no",
              target, c)};
}

std::string weak_csv(std::uint64_t seed) {
  const std::string scene = R"({"version": 1, "dimension": 2,
  "family": {"name": "example32", "ks": [2, 4, 8, 16]},
  "experiment": {
    "measure": {"method": "monte-carlo", "seed": )" + std::to_string(seed) +
                            R"(, "samples": 200000},
    "panel_id": "five-bumps",
    "panel": [
      {"bump": {"center": [0, 0], "radius": 1}},
      {"bump": {"center": [0.5, 0], "radius": 0.5}},
      {"bump": {"center": [1, 1], "radius": 0.75}},
      {"bump": {"center": [-0.7, 0.3], "radius": 0.6}},
      {"bump": {"center": [0.2, -0.9], "radius": 0.4}}
    ],
    "support": {"min": [-2, -2], "max": [2, 2]}}})";
  std::ostringstream out, log;
  if (cli::run("measure", cli::parse_scene(scene), {}, out, log) != 0) throw std::runtime_error(log.str());
  return out.str();
}

Outcome weak_convergence() {
  const SmockedSpace limit(SmockingPattern::validate(2, {}, cube(2, 8.0)));
  const std::vector<TestFunction> phis{Bump{Point{0.0, 0.0}, 1.0}, Bump{Point{0.5, 0.0}, 0.5},
                                       Bump{Point{1.0, 1.0}, 0.75}, Bump{Point{-0.7, 0.3}, 0.6},
                                       Bump{Point{0.2, -0.9}, 0.4}};
  const std::vector<int> ks{2, 4, 8, 16};
  const auto rep = weak_convergence_check([](int k) { return example32(k, 2); }, phis, ks, limit,
                                          MonteCarlo{20261014, 200'000}, cube(2, 2.0));
  int bad = 0;
  double worst = 0.0;
  for (const auto& row : rep.rows) {
    const double allowance = std::numbers::pi / (row.k * row.k) + 3.0 * row.gap_error;
    worst = std::max(worst, std::abs(row.gap) / allowance);
    if (std::abs(row.gap) > allowance) ++bad;
  }
  const bool same = weak_csv(20261014) == weak_csv(20261014);
  return {bad == 0 && same, fmt("%zu rows, %d over allowance (largest |gap|/allowance %.3g); reruns byte-identical: %s",
                                rep.rows.size(), bad, worst, same ? "yes" : "no")};
}

Outcome local_constants() {
  const std::vector<int> ks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto r36 = local_constants_report([](int k) { return remark36(k); }, 5.0, ks);
  const auto e31 = local_constants_report([](int k) { return example31(k).pattern; }, 1.0, ks);
  return {r36.stabilized && !e31.stabilized,
          fmt("escaping intervals: stabilized=%s (k_r=%d); shrinking gaps: stabilized=%s", r36.stabilized ? "true" : "false",
              r36.k_r.value_or(-1), e31.stabilized ? "true" : "false")};
}

}  // namespace
}  // namespace smock

int main() {
  using namespace smock;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_s;  // 0: no runtime limit
  };
  const std::vector<Criterion> criteria{
      {1, "alternating interval endpoints", example31_endpoints, 1.0},
      {2, "shrinking ball pointed GH curve", example32_curve, 60.0},
      {3, "escaping interval Euclidean ball", remark36_euclidean, 0.0},
      {4, "engine vs d_k enumeration", engine_vs_oracle, 0.0},
      {5, "metric axioms", metric_axioms, 0.0},
      {6, "GH solver", gh_solver, 0.0},
      {7, "crossing and preimage bounds", crossing_and_preimage, 0.0},
      {8, "tangent cone at infinity", tangent_cone, 60.0},
      {9, "weak convergence of measures", weak_convergence, 0.0},
      {10, "local constants diagnostics", local_constants, 0.0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0.0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += fmt("; runtime limit %.0f s exceeded", c.limit_s);
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
