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

#include "smock/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>

#include "smock/constructions.hpp"
#include "smock/error.hpp"
#include "smock/gh.hpp"
#include "smock/measure.hpp"

namespace smock::cli {
namespace {

[[noreturn]] void missing(const std::string& field, const std::string& why) {
  throw SceneError({{SceneErrorKind::kSchema, "/experiment/" + field, why}});
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string point_text(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? ";" : "") + format_double(p[i]);
  return s + ")";
}

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

std::optional<std::uint64_t> effective_seed(const Scene& s, const RunOptions& o) {
  return o.seed ? o.seed : s.experiment.measure.seed;
}

void common_meta(Report& rep, const Scene& s, const RunOptions& o) {
  rep.meta("command", rep.command());
  rep.meta("scene_hash", hex64(s.source_hash));
  const auto seed = effective_seed(s, o);
  rep.meta("seed", seed ? std::to_string(*seed) : "none");
  rep.meta("source", s.source_name());
  rep.meta("layout", "symmetric-equal-gaps");
  rep.meta("dk_reading", "consecutive-distinct");
  rep.meta("defect_target", "difference-norm");
  rep.meta("phi_panel", s.experiment.panel_id.empty() ? "none" : s.experiment.panel_id);
}

SmockedSpace space_at(const Scene& s, int k) { return SmockedSpace(s.pattern_at(k), s.basepoint); }

// E^N (or the experiment's limit pattern) on the window of the first k.
SmockedSpace limit_space(const Scene& s) {
  const Box window = s.pattern_at(s.ks.front()).window();
  return SmockedSpace(SmockingPattern::validate(s.dimension, s.experiment.limit, window), s.basepoint);
}

double exact_budget(const Scene& s, const RunOptions& o) {
  if (o.budget) return *o.budget;
  return s.experiment.budget.value_or(kDefaultExactBudget);
}

const NormSpec& norm_of(const Scene& s) {
  if (s.experiment.norm) return *s.experiment.norm;
  if (s.family) {
    if (const auto* lf = std::get_if<LatticeFamily>(&*s.family)) return lf->spec;
  }
  missing("norm", "tangent and defect need a norm spec (or a lattice family)");
}

void cmd_dist(const Scene& s, const RunOptions&, Report& rep) {
  if (s.experiment.pairs.empty()) missing("pairs", "dist needs at least one [v, w] pair");
  rep.columns({"k", "v", "w", "distance", "error", "euclidean"});
  for (int k : s.ks) {
    const SmockedSpace space = space_at(s, k);
    for (const auto& [v, w] : s.experiment.pairs) {
      const double d = space.distance(space.project(v), space.project(w));
      rep.row({std::int64_t{k}, point_text(v), point_text(w), d, 0.0, distance(v, w)});
    }
  }
}

void cmd_constants(const Scene& s, const RunOptions&, Report& rep) {
  rep.columns({"k", "depth_h", "depth_error", "depth_infinite", "l_min", "l_max", "delta", "stitches",
               "total_volume"});
  for (int k : s.ks) {
    const SmockingPattern pat = s.pattern_at(k);
    const SmockingConstants c = smocking_constants(pat, pat.window(), s.experiment.grid_step);
    rep.row({std::int64_t{k}, c.depth_h, c.depth_error, c.depth_infinite, c.l_min, c.l_max, c.delta,
             i64(c.stitches_in_window), pat.total_volume()});
  }
}

void cmd_hausdorff(const Scene& s, const RunOptions&, Report& rep) {
  if (s.experiment.target.empty()) missing("target", "hausdorff needs a target set");
  rep.columns({"k", "hausdorff", "error", "exact"});
  for (int k : s.ks) {
    const SmockingPattern pat = s.pattern_at(k);
    CompactSet u;
    for (const Stitch& st : pat.stitches()) u.push_back(st.shape);
    if (u.empty()) throw Error(ErrorCode::kEmptyOperand, "pattern at k = " + std::to_string(k) + " has no stitches");
    const HausdorffResult h = hausdorff(u, s.experiment.target, s.experiment.resolution);
    rep.row({std::int64_t{k}, h.value, h.error, h.exact});
  }
}

void cmd_net(const Scene& s, const RunOptions&, Report& rep) {
  std::vector<std::string> cols{"k", "index", "label"};
  for (std::size_t i = 0; i < s.dimension; ++i) cols.push_back("x" + std::to_string(i));
  cols.insert(cols.end(), {"distance_to_center", "error"});
  rep.columns(cols);
  double resolution = 0.0;
  for (int k : s.ks) {
    const SmockedSpace space = space_at(s, k);
    const BallNet net = ball_net(space, space.basepoint(), s.experiment.radius, s.experiment.eps);
    resolution = net.resolution;
    for (std::size_t i = 0; i < net.points.size(); ++i) {
      std::vector<Cell> row{std::int64_t{k}, i64(i), net.metric.labels()[i]};
      for (std::size_t c = 0; c < s.dimension; ++c) row.push_back(net.metric.coords()[i][c]);
      row.push_back(net.metric(0, i));
      row.push_back(0.0);
      rep.row(std::move(row));
    }
  }
  rep.meta("radius", format_double(s.experiment.radius));
  rep.meta("eps", format_double(s.experiment.eps));
  rep.meta("resolution", format_double(resolution));
}

void cmd_gh(const Scene& s, const RunOptions& o, Report& rep) {
  if (s.experiment.spaces.size() != 2) missing("spaces", "gh needs two metric spaces");
  const FiniteMetricSpace& x = s.experiment.spaces[0];
  const FiniteMetricSpace& y = s.experiment.spaces[1];
  rep.columns({"x_size", "y_size", "gh_upper", "gh_lower", "error", "exact"});
  const double budget = exact_budget(s, o);
  if (map_pair_count(x.size(), y.size()) <= budget) {
    const double v = gh_exact_small(x, y, budget);
    rep.row({i64(x.size()), i64(y.size()), v, v, 0.0, true});
  } else {
    const double up = gh_upper(x, y);
    const double lo = std::min(up, gh_lower(x, y));
    rep.row({i64(x.size()), i64(y.size()), up, lo, up - lo, false});
  }
}

void curve_rows(Report& rep, const ConvergenceCurve& curve, bool with_bound) {
  std::vector<std::string> cols{"k", "radius", "net_eps", "gh_upper", "gh_lower", "error", "exact", "x_size", "y_size"};
  if (with_bound) cols.insert(cols.end(), {"bound", "within_bound"});
  rep.columns(cols);
  for (const ConvergenceRow& r : curve) {
    std::vector<Cell> row{std::int64_t{r.k}, r.radius,     r.net_eps,      r.gh_upper,    r.gh_lower,
                          r.gh_upper - r.gh_lower, r.exact, i64(r.x_size), i64(r.y_size)};
    if (with_bound) {
      const double bound = 4.0 / r.k + r.net_eps;
      row.push_back(bound);
      row.push_back(r.gh_upper <= bound);
    }
    rep.row(std::move(row));
  }
}

ConvergenceCurve scene_curve(const Scene& s, const RunOptions& o) {
  CurveOptions opts;
  opts.exact_budget = exact_budget(s, o);
  const SmockedSpace limit = limit_space(s);
  return pgh_curve([&](int k) { return s.pattern_at(k); }, limit, s.experiment.radius, s.experiment.eps, s.ks, opts);
}

void cmd_converge(const Scene& s, const RunOptions& o, Report& rep) {
  curve_rows(rep, scene_curve(s, o), false);
}

void cmd_local_bounds(const Scene& s, const RunOptions&, Report& rep) {
  const LocalConstantsReport lc =
      local_constants_report([&](int k) { return s.pattern_at(k); }, s.experiment.radius, s.ks);
  rep.columns({"k", "r", "l_r", "delta_r", "stitch_count", "ball_radius"});
  for (const LocalConstantsRow& r : lc.rows) {
    rep.row({std::int64_t{r.k}, s.experiment.radius, r.l_r, r.delta_r, i64(r.stitch_count), r.ball_radius});
  }
  rep.meta("k_r", lc.k_r ? std::to_string(*lc.k_r) : "none");
  rep.meta("stabilized", lc.stabilized ? "true" : "false");
}

void cmd_tangent(const Scene& s, const RunOptions&, Report& rep) {
  const NormSpec& spec = norm_of(s);
  const RationalVector& x = s.experiment.x;
  const double target = polyhedral_norm(spec, x);
  rep.columns({"lambda", "estimate", "polyhedral_norm", "gap", "lambda_gap", "error"});
  double rate = 0.0;
  for (std::int64_t lambda : s.experiment.lambdas) {
    const double est = stable_norm_estimate(spec, x, lambda);
    const double gap = est - target;
    rate = std::max(rate, static_cast<double>(lambda) * std::abs(gap));
    rep.row({lambda, est, target, gap, static_cast<double>(lambda) * gap, 0.0});
  }
  rep.meta("empirical_rate_constant", format_double(rate));
}

void cmd_defect(const Scene& s, const RunOptions&, Report& rep) {
  const NormSpec& spec = norm_of(s);
  if (!s.experiment.sample_box) missing("sample_box", "defect needs an integer sample box");
  const SearchBox& b = *s.experiment.sample_box;
  std::vector<LatticePoint> sample;
  LatticePoint p = b.lo;
  while (true) {
    sample.push_back(p);
    std::size_t i = 0;
    while (i < p.size() && p[i] == b.hi[i]) p[i] = b.lo[i], ++i;
    if (i == p.size()) break;
    ++p[i];
  }
  rep.columns({"sample_points", "defect", "error"});
  rep.row({i64(sample.size()), norm_defect(spec, sample), 0.0});
}

MeasureMethod method_of(const Scene& s, const RunOptions& o) {
  const MeasureSettings& m = s.experiment.measure;
  if (m.method == "monte-carlo") {
    const auto seed = effective_seed(s, o);
    if (!seed) throw SceneError({{SceneErrorKind::kMissingSeed, "/experiment/measure/seed", "Monte Carlo needs a seed"}});
    return MonteCarlo{*seed, m.samples};
  }
  if (m.method == "grid") return GridMethod{m.step};
  return Exact1D{};
}

void cmd_measure(const Scene& s, const RunOptions& o, Report& rep) {
  const MeasureMethod method = method_of(s, o);
  const Experiment& e = s.experiment;
  if (e.measure.mode == "ball") {
    if (e.ball_radii.empty()) missing("ball_radii", "ball mode needs radii");
    std::vector<Point> centers = e.ball_centers;
    if (centers.empty()) centers.push_back(s.basepoint);
    rep.columns({"k", "center", "r", "volume", "error"});
    for (int k : s.ks) {
      const SmockedSpace space = space_at(s, k);
      const PushforwardMeasure mu(space, method);
      for (const Point& c : centers) {
        for (double r : e.ball_radii) {
          const Estimate v = ball_volume(mu, space.project(c), r);
          rep.row({std::int64_t{k}, point_text(c), r, v.value, v.error});
        }
      }
    }
    return;
  }
  if (e.panel.empty()) missing("panel", "weak mode needs a test-function panel");
  if (!e.support) missing("support", "weak mode needs a support box");
  const SmockedSpace limit = limit_space(s);
  const WeakConvergenceReport wc =
      weak_convergence_check([&](int k) { return s.pattern_at(k); }, e.panel, s.ks, limit, method, *e.support);
  rep.columns({"k", "phi", "mu_k", "mu_k_error", "mu_limit", "mu_limit_error", "gap", "gap_error", "stitch_volume",
               "increased"});
  for (const WeakConvergenceRow& r : wc.rows) {
    rep.row({std::int64_t{r.k}, i64(r.phi), r.mu_k.value, r.mu_k.error, r.mu_limit.value, r.mu_limit.error, r.gap,
             r.gap_error, r.stitch_volume, r.increased});
  }
  rep.meta("increases", std::to_string(wc.increases));
}

using Builder = std::function<void(const Scene&, const RunOptions&, Report&)>;

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> kBuilders = {
      {"dist", cmd_dist},       {"constants", cmd_constants}, {"hausdorff", cmd_hausdorff},
      {"net", cmd_net},         {"gh", cmd_gh},               {"converge", cmd_converge},
      {"local-bounds", cmd_local_bounds}, {"tangent", cmd_tangent}, {"defect", cmd_defect},
      {"measure", cmd_measure}};
  return kBuilders;
}

const std::map<std::string, std::string>& demo_scenes() {
  static const std::map<std::string, std::string> kScenes = {
      {"example31",
       R"({"version": 1, "dimension": 1,
  "family": {"name": "example31", "ks": {"from": 1, "to": 8}},
  "experiment": {"pairs": [[[-1], [1]]], "target": [{"box": {"min": [-1], "max": [1]}}]}})"},
      {"example32",
       R"({"version": 1, "dimension": 2,
  "family": {"name": "example32", "ks": {"from": 2, "to": 32}},
  "experiment": {"radius": 2, "eps": 0.05}})"},
      {"remark36",
       R"({"version": 1, "dimension": 1,
  "family": {"name": "remark36", "ks": {"from": 1, "to": 8}},
  "experiment": {"radius": 5, "eps": 0.25}})"},
      {"lattice-l1",
       R"({"version": 1, "dimension": 2,
  "family": {"name": "lattice", "ks": [1]},
  "experiment": {"x": [1, 1], "lambdas": [1, 2, 4, 8, 16, 32]}})"},
  };
  return kScenes;
}

void demo_example31(const Scene& s, const RunOptions&, Report& rep) {
  rep.columns({"k", "l_k", "count", "gap", "expected", "distance", "error", "hausdorff", "hausdorff_error"});
  for (int k : s.ks) {
    const Example31 e = example31(k);
    const SmockedSpace space(e.pattern);
    const double d = space.distance(SpacePoint::free(Point{-1.0}), SpacePoint::free(Point{1.0}));
    CompactSet u;
    for (const Stitch& st : e.pattern.stitches()) u.push_back(st.shape);
    const HausdorffResult h = hausdorff(u, s.experiment.target, s.experiment.resolution);
    rep.row({std::int64_t{k}, e.total_length, std::int64_t{e.count}, e.gap, e.expected_endpoint_distance, d, 0.0,
             h.value, h.error});
  }
}

void demo_remark36(const Scene& s, const RunOptions&, Report& rep) {
  rep.columns({"k", "l_max", "net_size", "max_deviation", "euclidean"});
  for (int k : s.ks) {
    const SmockedSpace space(s.pattern_at(k));
    const BallNet net = ball_net(space, space.basepoint(), s.experiment.radius, s.experiment.eps);
    double dev = 0.0;
    const auto& c = net.metric.coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) dev = std::max(dev, std::abs(net.metric(i, j) - distance(c[i], c[j])));
    }
    rep.row({std::int64_t{k}, space.pattern().l_max(), i64(c.size()), dev, dev <= 1e-12});
  }
}

int guarded(const std::function<Report()>& make, const RunOptions& opts, std::ostream& out, std::ostream& log) {
  try {
    const Report rep = make();
    rep.write_csv(out);
    if (opts.plot_dir) rep.write_plots(*opts.plot_dir);
    log << rep.command() << ": " << rep.rows().size() << " rows\n";
    return 0;
  } catch (const SceneError& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kBudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> kCommands = {"dist",         "constants", "hausdorff", "net",
                                                     "gh",           "converge",  "local-bounds", "tangent",
                                                     "defect",       "measure",   "demo"};
  return kCommands;
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> kNames = {"example31", "example32", "remark36", "lattice-l1"};
  return kNames;
}

std::string demo_scene(const std::string& name) {
  auto it = demo_scenes().find(name);
  if (it == demo_scenes().end()) throw Error(ErrorCode::kInvalidArgument, "unknown demo '" + name + "'");
  return it->second;
}

Report build_report(const std::string& command, const Scene& scene, const RunOptions& opts) {
  auto it = builders().find(command);
  if (it == builders().end()) throw Error(ErrorCode::kInvalidArgument, "unknown command '" + command + "'");
  Report rep(command);
  common_meta(rep, scene, opts);
  it->second(scene, opts, rep);
  return rep;
}

Report build_demo(const std::string& name, const RunOptions& opts) {
  const Scene scene = parse_scene(demo_scene(name));
  Report rep("demo-" + name);
  common_meta(rep, scene, opts);
  if (name == "example31") {
    demo_example31(scene, opts, rep);
  } else if (name == "example32") {
    curve_rows(rep, scene_curve(scene, opts), true);
  } else if (name == "remark36") {
    demo_remark36(scene, opts, rep);
  } else {
    cmd_tangent(scene, opts, rep);
  }
  return rep;
}

int run(const std::string& command, const Scene& scene, const RunOptions& opts, std::ostream& out, std::ostream& log) {
  return guarded([&] { return build_report(command, scene, opts); }, opts, out, log);
}

int run_demo(const std::string& name, const RunOptions& opts, std::ostream& out, std::ostream& log) {
  return guarded([&] { return build_demo(name, opts); }, opts, out, log);
}

}  // namespace smock::cli
