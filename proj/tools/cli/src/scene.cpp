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

#include "smock/cli/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "smock/error.hpp"

namespace smock::cli {
namespace {

using nlohmann::json;

class Reader {
 public:
  std::vector<SceneIssue> issues;

  void fail(SceneErrorKind kind, const std::string& path, std::string message) {
    issues.push_back({kind, path, std::move(message)});
  }
  void schema(const std::string& path, std::string message) { fail(SceneErrorKind::kSchema, path, std::move(message)); }

  std::optional<double> number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      schema(path, "expected a number");
      return std::nullopt;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      schema(path, "number is not finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> positive(const json& j, const std::string& path) {
    auto v = number(j, path);
    if (v && !(*v > 0.0)) {
      schema(path, "expected a positive number");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::int64_t> integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      schema(path, "expected an integer");
      return std::nullopt;
    }
    return j.get<std::int64_t>();
  }

  std::optional<std::uint64_t> unsigned_integer(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
      schema(path, "expected a nonnegative integer");
      return std::nullopt;
    }
    return j.get<std::uint64_t>();
  }

  std::optional<Point> point(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_array()) {
      schema(path, "expected an array of numbers");
      return std::nullopt;
    }
    if (j.size() != dim) {
      fail(SceneErrorKind::kDimensionMismatch, path,
           "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
      return std::nullopt;
    }
    std::vector<double> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = number(j[i], path + "/" + std::to_string(i));
      if (!v) return std::nullopt;
      c.push_back(*v);
    }
    return Point(std::move(c));
  }

  std::optional<LatticePoint> lattice_point(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_array() || j.size() != dim) {
      fail(SceneErrorKind::kDimensionMismatch, path, "expected " + std::to_string(dim) + " integers");
      return std::nullopt;
    }
    LatticePoint p;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = integer(j[i], path + "/" + std::to_string(i));
      if (!v) return std::nullopt;
      p.push_back(*v);
    }
    return p;
  }

  std::optional<Box> box(const json& j, const std::string& path, std::size_t dim, SceneErrorKind kind) {
    if (!j.is_object() || !j.contains("min") || !j.contains("max")) {
      fail(kind, path, "expected {\"min\": [...], \"max\": [...]}");
      return std::nullopt;
    }
    auto lo = point(j["min"], path + "/min", dim);
    auto hi = point(j["max"], path + "/max", dim);
    if (!lo || !hi) return std::nullopt;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!((*lo)[i] < (*hi)[i]) && kind == SceneErrorKind::kInvalidWindow) {
        fail(kind, path, "window must satisfy min < max on every axis");
        return std::nullopt;
      }
      if (!((*lo)[i] <= (*hi)[i])) {
        fail(kind, path, "box must satisfy min <= max on every axis");
        return std::nullopt;
      }
    }
    return Box{*lo, *hi};
  }

  std::optional<Shape> shape(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_object()) {
      schema(path, "expected a shape object");
      return std::nullopt;
    }
    int kinds = 0;
    std::optional<Shape> out;
    if (j.contains("ball")) {
      ++kinds;
      const json& b = j["ball"];
      const std::string p = path + "/ball";
      if (!b.is_object() || !b.contains("center") || !b.contains("radius")) {
        schema(p, "expected {\"center\": [...], \"radius\": r}");
      } else {
        auto c = point(b["center"], p + "/center", dim);
        auto r = positive(b["radius"], p + "/radius");
        if (c && r) out = Ball{*c, *r};
      }
    }
    if (j.contains("box")) {
      ++kinds;
      if (auto b = box(j["box"], path + "/box", dim, SceneErrorKind::kSchema)) out = *b;
    }
    if (j.contains("segment")) {
      ++kinds;
      const json& s = j["segment"];
      const std::string p = path + "/segment";
      if (!s.is_object() || !s.contains("a") || !s.contains("b")) {
        schema(p, "expected {\"a\": [...], \"b\": [...]}");
      } else {
        auto a = point(s["a"], p + "/a", dim);
        auto b = point(s["b"], p + "/b", dim);
        if (a && b) out = Segment{*a, *b};
      }
    }
    if (j.contains("point")) {
      ++kinds;
      if (auto p = point(j["point"], path + "/point", dim)) out = Cloud{{*p}};
    }
    if (kinds != 1) {
      schema(path, "a shape needs exactly one of ball, box, segment, point");
      return std::nullopt;
    }
    return out;
  }

  std::vector<Stitch> stitches(const json& j, const std::string& path, std::size_t dim) {
    std::vector<Stitch> out;
    if (!j.is_array()) {
      schema(path, "expected an array of shapes");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = path + "/" + std::to_string(i);
      auto s = shape(j[i], p, dim);
      int id = static_cast<int>(i);
      if (j[i].is_object() && j[i].contains("id")) {
        if (auto v = integer(j[i]["id"], p + "/id")) id = static_cast<int>(*v);
      }
      if (s) out.push_back({*s, id});
    }
    return out;
  }

  std::optional<NormSpec> norm(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_object() || !j.contains("generators") || !j.contains("weights") || !j["generators"].is_array() ||
        !j["weights"].is_array()) {
      schema(path, "expected {\"generators\": [[...]], \"weights\": [...]}");
      return std::nullopt;
    }
    std::vector<LatticePoint> gens;
    std::vector<double> weights;
    bool ok = true;
    for (std::size_t i = 0; i < j["generators"].size(); ++i) {
      auto g = lattice_point(j["generators"][i], path + "/generators/" + std::to_string(i), dim);
      ok = ok && g.has_value();
      if (g) gens.push_back(*g);
    }
    for (std::size_t i = 0; i < j["weights"].size(); ++i) {
      auto w = positive(j["weights"][i], path + "/weights/" + std::to_string(i));
      ok = ok && w.has_value();
      if (w) weights.push_back(*w);
    }
    if (!ok) return std::nullopt;
    try {
      return NormSpec::make(std::move(gens), std::move(weights));
    } catch (const Error& e) {
      schema(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<TestFunction> test_function(const json& j, const std::string& path, std::size_t dim) {
    if (j.is_object() && j.contains("bump")) {
      const json& b = j["bump"];
      if (!b.is_object() || !b.contains("center") || !b.contains("radius")) {
        schema(path + "/bump", "expected {\"center\": [...], \"radius\": r}");
        return std::nullopt;
      }
      auto c = point(b["center"], path + "/bump/center", dim);
      auto r = positive(b["radius"], path + "/bump/radius");
      if (c && r) return Bump{*c, *r};
      return std::nullopt;
    }
    if (j.is_object() && j.contains("tent")) {
      const json& t = j["tent"];
      if (!t.is_object() || !t.contains("center") || !t.contains("slope")) {
        schema(path + "/tent", "expected {\"center\": [...], \"slope\": s}");
        return std::nullopt;
      }
      auto c = point(t["center"], path + "/tent/center", dim);
      auto s = positive(t["slope"], path + "/tent/slope");
      if (c && s) return Tent{*c, *s};
      return std::nullopt;
    }
    if (j.is_object() && j.contains("constant")) {
      if (auto v = number(j["constant"], path + "/constant")) return Constant{*v};
      return std::nullopt;
    }
    schema(path, "a test function needs one of bump, tent, constant");
    return std::nullopt;
  }

  std::optional<FiniteMetricSpace> metric_space(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array()) {
      schema(path, "expected {\"matrix\": [[...]]}");
      return std::nullopt;
    }
    const json& m = j["matrix"];
    const std::size_t n = m.size();
    std::vector<double> dist;
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i].is_array() || m[i].size() != n) {
        schema(path + "/matrix/" + std::to_string(i), "matrix must be square");
        return std::nullopt;
      }
      for (std::size_t k = 0; k < n; ++k) {
        auto v = number(m[i][k], path + "/matrix/" + std::to_string(i) + "/" + std::to_string(k));
        if (!v) return std::nullopt;
        dist.push_back(*v);
      }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      if (!j["labels"].is_array() || j["labels"].size() != n) {
        schema(path + "/labels", "expected one label per row");
        return std::nullopt;
      }
      for (const auto& l : j["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    } else {
      for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    }
    std::size_t base = 0;
    if (j.contains("base")) {
      if (auto b = unsigned_integer(j["base"], path + "/base")) base = static_cast<std::size_t>(*b);
    }
    try {
      return FiniteMetricSpace(std::move(labels), std::move(dist), base);
    } catch (const Error& e) {
      schema(path, e.what());
      return std::nullopt;
    }
  }
};

std::vector<int> parse_ks(Reader& rd, const json& j, const std::string& path) {
  std::vector<int> ks;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = rd.integer(j[i], path + "/" + std::to_string(i));
      if (v && *v < 1) rd.schema(path + "/" + std::to_string(i), "k must be >= 1");
      if (v && *v >= 1) ks.push_back(static_cast<int>(*v));
    }
  } else if (j.is_object() && j.contains("from") && j.contains("to")) {
    auto a = rd.integer(j["from"], path + "/from");
    auto b = rd.integer(j["to"], path + "/to");
    if (a && b) {
      if (*a < 1 || *b < *a) {
        rd.schema(path, "expected 1 <= from <= to");
      } else {
        for (auto k = *a; k <= *b; ++k) ks.push_back(static_cast<int>(k));
      }
    }
  } else {
    rd.schema(path, "expected an array of k or {\"from\": a, \"to\": b}");
  }
  if (ks.empty()) rd.schema(path, "no parameters k");
  return ks;
}

void parse_experiment(Reader& rd, const json& e, Scene& s) {
  const std::size_t dim = s.dimension;
  Experiment& x = s.experiment;
  const std::string root = "/experiment";
  if (!e.is_object()) {
    rd.schema(root, "expected an object");
    return;
  }
  static const std::vector<std::string> kKnown = {
      "pairs",  "radius", "eps",     "grid_step", "resolution",   "target",  "limit",        "spaces",
      "norm",   "x",      "denominator", "lambdas", "sample_box", "measure", "panel",        "panel_id",
      "support", "ball_centers", "ball_radii", "budget"};
  for (const auto& [key, value] : e.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) rd.schema(root + "/" + key, "unknown field");
  }
  auto get = [&](const char* key) -> const json* { return e.contains(key) ? &e[key] : nullptr; };
  const std::string p = root + "/";

  if (auto j = get("pairs")) {
    if (!j->is_array()) rd.schema(p + "pairs", "expected an array of [v, w] pairs");
    for (std::size_t i = 0; j->is_array() && i < j->size(); ++i) {
      const std::string q = p + "pairs/" + std::to_string(i);
      if (!(*j)[i].is_array() || (*j)[i].size() != 2) {
        rd.schema(q, "expected [v, w]");
        continue;
      }
      auto v = rd.point((*j)[i][0], q + "/0", dim);
      auto w = rd.point((*j)[i][1], q + "/1", dim);
      if (v && w) x.pairs.emplace_back(*v, *w);
    }
  }
  if (auto j = get("radius")) x.radius = rd.positive(*j, p + "radius").value_or(x.radius);
  if (auto j = get("eps")) x.eps = rd.positive(*j, p + "eps").value_or(x.eps);
  if (auto j = get("grid_step")) x.grid_step = rd.positive(*j, p + "grid_step").value_or(x.grid_step);
  if (auto j = get("resolution")) x.resolution = rd.positive(*j, p + "resolution").value_or(x.resolution);
  if (auto j = get("target")) {
    for (const Stitch& st : rd.stitches(*j, p + "target", dim)) x.target.push_back(st.shape);
  }
  if (auto j = get("limit")) x.limit = rd.stitches(*j, p + "limit", dim);
  if (auto j = get("spaces")) {
    if (!j->is_array() || j->size() != 2) {
      rd.schema(p + "spaces", "expected two metric spaces");
    } else {
      for (std::size_t i = 0; i < 2; ++i) {
        if (auto m = rd.metric_space((*j)[i], p + "spaces/" + std::to_string(i))) x.spaces.push_back(std::move(*m));
      }
    }
  }
  if (auto j = get("norm")) x.norm = rd.norm(*j, p + "norm", dim);
  if (auto j = get("x")) {
    if (auto v = rd.lattice_point(*j, p + "x", dim)) x.x.num = *v;
  } else {
    x.x.num = LatticePoint(dim, 1);
  }
  if (auto j = get("denominator")) {
    auto d = rd.integer(*j, p + "denominator");
    if (d && *d < 1) rd.schema(p + "denominator", "denominator must be >= 1");
    if (d && *d >= 1) x.x.den = *d;
  }
  if (auto j = get("lambdas")) {
    if (!j->is_array()) rd.schema(p + "lambdas", "expected an array of positive integers");
    for (std::size_t i = 0; j->is_array() && i < j->size(); ++i) {
      auto v = rd.integer((*j)[i], p + "lambdas/" + std::to_string(i));
      if (v && *v < 1) rd.schema(p + "lambdas/" + std::to_string(i), "lambda must be >= 1");
      if (v && *v >= 1) x.lambdas.push_back(*v);
    }
  } else {
    x.lambdas = {1, 2, 4, 8, 16, 32};
  }
  if (auto j = get("sample_box")) {
    const std::string q = p + "sample_box";
    if (!j->is_object() || !j->contains("min") || !j->contains("max")) {
      rd.schema(q, "expected {\"min\": [...], \"max\": [...]}");
    } else {
      auto lo = rd.lattice_point((*j)["min"], q + "/min", dim);
      auto hi = rd.lattice_point((*j)["max"], q + "/max", dim);
      if (lo && hi) x.sample_box = SearchBox{*lo, *hi};
    }
  }
  if (auto j = get("measure")) {
    const std::string q = p + "measure";
    if (!j->is_object()) {
      rd.schema(q, "expected an object");
    } else {
      MeasureSettings& m = x.measure;
      if (j->contains("method")) {
        m.method = (*j)["method"].is_string() ? (*j)["method"].get<std::string>() : "";
        if (m.method != "exact" && m.method != "monte-carlo" && m.method != "grid") {
          rd.schema(q + "/method", "method must be exact, monte-carlo or grid");
        }
      }
      if (j->contains("seed")) m.seed = rd.unsigned_integer((*j)["seed"], q + "/seed");
      if (j->contains("samples")) {
        auto n = rd.unsigned_integer((*j)["samples"], q + "/samples");
        if (n && *n == 0) rd.schema(q + "/samples", "samples must be >= 1");
        if (n && *n > 0) m.samples = *n;
      }
      if (j->contains("step")) m.step = rd.positive((*j)["step"], q + "/step").value_or(m.step);
      if (j->contains("mode")) {
        m.mode = (*j)["mode"].is_string() ? (*j)["mode"].get<std::string>() : "";
        if (m.mode != "weak" && m.mode != "ball") rd.schema(q + "/mode", "mode must be weak or ball");
      }
      if (m.method == "monte-carlo" && !m.seed) {
        rd.fail(SceneErrorKind::kMissingSeed, q + "/seed", "Monte Carlo requested without a seed");
      }
    }
  }
  if (auto j = get("panel")) {
    if (!j->is_array()) rd.schema(p + "panel", "expected an array of test functions");
    for (std::size_t i = 0; j->is_array() && i < j->size(); ++i) {
      if (auto f = rd.test_function((*j)[i], p + "panel/" + std::to_string(i), dim)) x.panel.push_back(*f);
    }
    x.panel_id = "custom";
  }
  if (auto j = get("panel_id")) {
    if (j->is_string()) {
      x.panel_id = j->get<std::string>();
    } else {
      rd.schema(p + "panel_id", "expected a string");
    }
  }
  if (auto j = get("support")) x.support = rd.box(*j, p + "support", dim, SceneErrorKind::kSchema);
  if (auto j = get("ball_centers")) {
    if (!j->is_array()) rd.schema(p + "ball_centers", "expected an array of points");
    for (std::size_t i = 0; j->is_array() && i < j->size(); ++i) {
      if (auto c = rd.point((*j)[i], p + "ball_centers/" + std::to_string(i), dim)) x.ball_centers.push_back(*c);
    }
  }
  if (auto j = get("ball_radii")) {
    if (!j->is_array()) rd.schema(p + "ball_radii", "expected an array of radii");
    for (std::size_t i = 0; j->is_array() && i < j->size(); ++i) {
      if (auto r = rd.positive((*j)[i], p + "ball_radii/" + std::to_string(i))) x.ball_radii.push_back(*r);
    }
  }
  if (auto j = get("budget")) x.budget = rd.positive(*j, p + "budget");
}

}  // namespace

SceneError::SceneError(std::vector<SceneIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid scene:";
        for (const SceneIssue& i : issues) msg += "\n  " + (i.path.empty() ? std::string("/") : i.path) + ": " + i.message;
        return msg;
      }()),
      issues_(std::move(issues)) {}

bool SceneError::has(SceneErrorKind kind) const {
  return std::any_of(issues_.begin(), issues_.end(), [&](const SceneIssue& i) { return i.kind == kind; });
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SmockingPattern Scene::pattern_at(int k) const {
  SmockingPattern base = pattern ? *pattern : instantiate(*family, k);
  if (!window || pattern) return base;
  return SmockingPattern::validate(base.dimension(), base.stitches(), *window);
}

std::string Scene::source_name() const { return pattern ? "pattern" : family_name(*family); }

Scene parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneError({{SceneErrorKind::kSyntax, "", e.what()}});
  }
  Reader rd;
  Scene s;
  s.source_hash = fnv1a64(text);
  if (!doc.is_object()) throw SceneError({{SceneErrorKind::kSchema, "", "scene must be a JSON object"}});

  static const std::vector<std::string> kKnown = {"version", "dimension", "pattern", "family",
                                                  "window",  "basepoint", "experiment"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) rd.schema("/" + key, "unknown field");
  }
  if (!doc.contains("version")) {
    rd.schema("/version", "missing version");
  } else if (auto v = rd.integer(doc["version"], "/version"); v && *v != 1) {
    rd.schema("/version", "unsupported version " + std::to_string(*v));
  }
  if (!doc.contains("dimension")) throw SceneError({{SceneErrorKind::kSchema, "/dimension", "missing dimension"}});
  {
    auto d = rd.integer(doc["dimension"], "/dimension");
    if (!d || *d < 1) {
      rd.schema("/dimension", "dimension must be a positive integer");
      throw SceneError(rd.issues);
    }
    s.dimension = static_cast<std::size_t>(*d);
  }

  if (doc.contains("window")) s.window = rd.box(doc["window"], "/window", s.dimension, SceneErrorKind::kInvalidWindow);

  const bool has_pattern = doc.contains("pattern");
  const bool has_family = doc.contains("family");
  if (has_pattern == has_family) rd.schema("", "exactly one of pattern or family is required");

  std::vector<Stitch> explicit_stitches;
  if (has_pattern) {
    explicit_stitches = rd.stitches(doc["pattern"], "/pattern", s.dimension);
    if (!doc.contains("window")) rd.fail(SceneErrorKind::kInvalidWindow, "/window", "an explicit pattern needs a window");
    s.ks = {1};
  }
  if (has_family) {
    const json& f = doc["family"];
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string()) {
      rd.schema("/family", "expected {\"name\": ..., \"ks\": ...}");
    } else {
      const std::string name = f["name"].get<std::string>();
      auto need_line = [&] {
        if (s.dimension != 1) {
          rd.fail(SceneErrorKind::kDimensionMismatch, "/family/name", name + " lives in dimension 1");
        }
      };
      if (name == "example31") {
        need_line();
        s.family = Example31Family{};
      } else if (name == "example32") {
        s.family = Example32Family{s.dimension};
      } else if (name == "remark36") {
        need_line();
        s.family = Remark36Family{};
      } else if (name == "lattice") {
        LatticeFamily lf{NormSpec::l1(s.dimension), 0.25};
        if (f.contains("norm")) {
          if (auto n = rd.norm(f["norm"], "/family/norm", s.dimension)) lf.spec = *n;
        }
        if (f.contains("node_radius")) lf.node_radius = rd.positive(f["node_radius"], "/family/node_radius").value_or(0.25);
        s.family = lf;
      } else {
        rd.fail(SceneErrorKind::kUnknownFamily, "/family/name", "unknown family '" + name + "'");
      }
      if (f.contains("ks")) {
        s.ks = parse_ks(rd, f["ks"], "/family/ks");
      } else {
        rd.schema("/family/ks", "missing ks");
      }
    }
  }

  if (doc.contains("basepoint")) {
    if (auto b = rd.point(doc["basepoint"], "/basepoint", s.dimension)) s.basepoint = *b;
  } else {
    s.basepoint = Point::zero(s.dimension);
  }
  if (doc.contains("experiment")) parse_experiment(rd, doc["experiment"], s);
  if (!rd.issues.empty()) throw SceneError(rd.issues);

  try {
    if (has_pattern) s.pattern = SmockingPattern::validate(s.dimension, explicit_stitches, *s.window);
    for (int k : s.ks) (void)s.pattern_at(k);
  } catch (const Error& e) {
    throw SceneError({{SceneErrorKind::kInvalidPattern, has_pattern ? "/pattern" : "/family", e.what()}});
  }
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError({{SceneErrorKind::kSyntax, "", "cannot read scene file '" + path + "'"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

}  // namespace smock::cli
