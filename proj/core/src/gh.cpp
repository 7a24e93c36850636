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

#include "smock/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "smock/error.hpp"

namespace smock {
namespace {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

// Candidate map pair f: X -> Y, g: Y -> X.
struct MapPair {
  std::vector<std::size_t> f;
  std::vector<std::size_t> g;
};

PairList pairs_of(const MapPair& m) {
  PairList out;
  out.reserve(m.f.size() + m.g.size());
  for (std::size_t i = 0; i < m.f.size(); ++i) out.emplace_back(i, m.f[i]);
  for (std::size_t j = 0; j < m.g.size(); ++j) out.emplace_back(m.g[j], j);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Worst {
  double value = 0.0;
  std::size_t a = 0;
  std::size_t b = 0;
};

Worst worst_pair(const PairList& pairs, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  Worst w;
  const double* dx = x.matrix().data();
  const double* dy = y.matrix().data();
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const double* rx = dx + pairs[a].first * nx;
    const double* ry = dy + pairs[a].second * ny;
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const double d = std::abs(rx[pairs[b].first] - ry[pairs[b].second]);
      if (d > w.value) w = {d, a, b};
    }
  }
  return w;
}

std::optional<MapPair> label_match(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  std::unordered_map<std::string, std::size_t> in_x, in_y;
  for (std::size_t i = 0; i < x.size(); ++i) in_x.emplace(x.labels()[i], i);
  for (std::size_t j = 0; j < y.size(); ++j) in_y.emplace(y.labels()[j], j);
  MapPair m;
  for (const std::string& l : x.labels()) {
    auto it = in_y.find(l);
    if (it == in_y.end()) return std::nullopt;
    m.f.push_back(it->second);
  }
  for (const std::string& l : y.labels()) {
    auto it = in_x.find(l);
    if (it == in_x.end()) return std::nullopt;
    m.g.push_back(it->second);
  }
  return m;
}

template <class Cost>
std::vector<std::size_t> argmin_map(std::size_t from, std::size_t to, Cost cost) {
  std::vector<std::size_t> out(from);
  for (std::size_t i = 0; i < from; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to; ++j) {
      const double c = cost(i, j);
      if (c < best) {
        best = c;
        out[i] = j;
      }
    }
  }
  return out;
}

// Nearest point of `to` for every point of `from`, by a sweep over `to`
// sorted on the first coordinate. Ties go to the lowest index.
std::vector<std::size_t> nearest_coords(const std::vector<Point>& from, const std::vector<Point>& to) {
  std::vector<std::size_t> order(to.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return to[a][0] < to[b][0]; });
  std::vector<double> key(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) key[j] = to[order[j]][0];
  std::vector<std::size_t> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Point& p = from[i];
    const std::size_t start = static_cast<std::size_t>(std::lower_bound(key.begin(), key.end(), p[0]) - key.begin());
    double best = kInfinity;
    std::size_t arg = 0;
    auto visit = [&](std::size_t pos) {
      const double d = distance(p, to[order[pos]]);
      if (d < best || (d == best && order[pos] < arg)) {
        best = d;
        arg = order[pos];
      }
    };
    for (std::size_t pos = start; pos < key.size() && key[pos] - p[0] <= best; ++pos) visit(pos);
    for (std::size_t pos = start; pos-- > 0 && p[0] - key[pos] <= best;) visit(pos);
    out[i] = arg;
  }
  return out;
}

std::optional<MapPair> coordinate_match(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (!x.has_coords() || !y.has_coords() || x.coords().front().dim() != y.coords().front().dim()) return std::nullopt;
  return MapPair{nearest_coords(x.coords(), y.coords()), nearest_coords(y.coords(), x.coords())};
}

std::vector<double> eccentricities(const FiniteMetricSpace& s) {
  std::vector<double> e(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) e[i] = std::max(e[i], s(i, j));
  }
  return e;
}

// Nearest profile (distance to base, eccentricity).
MapPair profile_match(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const std::vector<double> ex = eccentricities(x);
  const std::vector<double> ey = eccentricities(y);
  const std::size_t bx = x.base_index();
  const std::size_t by = y.base_index();
  auto cost = [&](std::size_t i, std::size_t j) {
    return std::abs(x(bx, i) - y(by, j)) + std::abs(ex[i] - ey[j]);
  };
  MapPair m;
  m.f = argmin_map(x.size(), y.size(), cost);
  m.g = argmin_map(y.size(), x.size(), [&](std::size_t j, std::size_t i) { return cost(i, j); });
  return m;
}

}  // namespace

void check_correspondence(const Correspondence& c, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  std::vector<char> hit_x(x.size(), 0), hit_y(y.size(), 0);
  for (const auto& [i, j] : c.pairs) {
    if (i >= x.size() || j >= y.size()) throw Error(ErrorCode::kInvalidCorrespondence, "pair index out of range");
    hit_x[i] = 1;
    hit_y[j] = 1;
  }
  if (std::find(hit_x.begin(), hit_x.end(), 0) != hit_x.end()) {
    throw Error(ErrorCode::kInvalidCorrespondence, "some point of X has no partner");
  }
  if (std::find(hit_y.begin(), hit_y.end(), 0) != hit_y.end()) {
    throw Error(ErrorCode::kInvalidCorrespondence, "some point of Y has no partner");
  }
}

double distortion(const Correspondence& c, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  check_correspondence(c, x, y);
  PairList pairs = c.pairs;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return worst_pair(pairs, x, y).value;
}

double map_pair_count(std::size_t nx, std::size_t ny) {
  return std::pow(static_cast<double>(ny), static_cast<double>(nx)) *
         std::pow(static_cast<double>(nx), static_cast<double>(ny));
}

double gh_exact_small(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double budget) {
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  if (map_pair_count(nx, ny) > budget) {
    throw Error(ErrorCode::kBudgetExceeded, "exact GH needs " + std::to_string(map_pair_count(nx, ny)) +
                                                " map pairs (budget " + std::to_string(budget) + ")");
  }
  std::vector<std::size_t> f(nx), g(ny);
  double best = std::numeric_limits<double>::infinity();

  // Assign f(0..nx-1) then g(0..ny-1), carrying the running maximum over
  // all pairs fixed so far; a branch stops once it cannot beat `best`.
  auto assign_g = [&](auto&& self, std::size_t j, double cur) -> void {
    if (cur >= best) return;
    if (j == ny) {
      best = cur;
      return;
    }
    for (std::size_t i = 0; i < nx; ++i) {
      double c = cur;
      for (std::size_t a = 0; a < nx && c < best; ++a) c = std::max(c, std::abs(x(i, a) - y(j, f[a])));
      for (std::size_t b = 0; b < j && c < best; ++b) c = std::max(c, std::abs(x(i, g[b]) - y(j, b)));
      g[j] = i;
      self(self, j + 1, c);
    }
  };
  auto assign_f = [&](auto&& self, std::size_t i, double cur) -> void {
    if (cur >= best) return;
    if (i == nx) {
      assign_g(assign_g, 0, cur);
      return;
    }
    for (std::size_t j = 0; j < ny; ++j) {
      double c = cur;
      for (std::size_t a = 0; a < i && c < best; ++a) c = std::max(c, std::abs(x(i, a) - y(j, f[a])));
      f[i] = j;
      self(self, i + 1, c);
    }
  };
  assign_f(assign_f, 0, 0.0);
  return 0.5 * best;
}

GhUpperResult gh_upper_witness(const FiniteMetricSpace& x, const FiniteMetricSpace& y, GhUpperOptions opts) {
  std::vector<MapPair> candidates;
  if (auto m = label_match(x, y)) candidates.push_back(std::move(*m));
  if (auto m = coordinate_match(x, y)) {
    candidates.push_back(std::move(*m));
  } else {
    candidates.push_back(profile_match(x, y));
  }

  MapPair best_map;
  Worst best{std::numeric_limits<double>::infinity(), 0, 0};
  for (MapPair& m : candidates) {
    const Worst w = worst_pair(pairs_of(m), x, y);
    if (w.value < best.value) {
      best = w;
      best_map = std::move(m);
    }
    if (best.value == 0.0) break;
  }

  // Local swaps: re-target the map entries behind the worst pair-pair.
  double work = 0.0;
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  while (best.value > 0.0) {
    const PairList pairs = pairs_of(best_map);
    const double trial_cost = static_cast<double>(pairs.size()) * static_cast<double>(pairs.size()) / 2.0;
    // A round re-targets up to four entries over every possible target.
    if (work + 2.0 * static_cast<double>(nx + ny) * trial_cost > opts.refine_work) break;
    const auto [pa, pb] = std::pair{pairs[best.a], pairs[best.b]};
    bool improved = false;
    MapPair trial_best;
    Worst trial_worst = best;
    auto try_entry = [&](bool is_f, std::size_t at) {
      const std::size_t range = is_f ? ny : nx;
      for (std::size_t t = 0; t < range; ++t) {
        MapPair m = best_map;
        auto& slot = is_f ? m.f[at] : m.g[at];
        if (slot == t) continue;
        slot = t;
        work += trial_cost;
        const Worst w = worst_pair(pairs_of(m), x, y);
        if (w.value < trial_worst.value) {
          trial_worst = w;
          trial_best = std::move(m);
          improved = true;
        }
      }
    };
    for (const auto& p : {pa, pb}) {
      if (best_map.f[p.first] == p.second) try_entry(true, p.first);
      if (best_map.g[p.second] == p.first) try_entry(false, p.second);
    }
    if (!improved) break;
    best = trial_worst;
    best_map = std::move(trial_best);
  }

  GhUpperResult out;
  out.value = 0.5 * best.value;
  out.correspondence.pairs = pairs_of(best_map);
  return out;
}

double gh_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y, GhUpperOptions opts) {
  return gh_upper_witness(x, y, opts).value;
}

double gh_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return 0.5 * std::abs(x.diameter() - y.diameter());
}

ConvergenceCurve convergence_curve(std::span<const int> ks, const std::function<FiniteMetricSpace(int)>& space_of_k,
                                   const FiniteMetricSpace& limit, double radius, double net_eps, CurveOptions opts) {
  ConvergenceCurve curve;
  for (int k : ks) {
    const FiniteMetricSpace xk = space_of_k(k);
    ConvergenceRow row;
    row.k = k;
    row.radius = radius;
    row.net_eps = net_eps;
    row.x_size = xk.size();
    row.y_size = limit.size();
    if (map_pair_count(xk.size(), limit.size()) <= opts.exact_budget) {
      row.gh_upper = row.gh_lower = gh_exact_small(xk, limit, opts.exact_budget);
      row.exact = true;
    } else {
      row.gh_upper = gh_upper(xk, limit, opts.upper);
      row.gh_lower = std::min(gh_lower(xk, limit), row.gh_upper);
    }
    curve.push_back(row);
  }
  return curve;
}

ConvergenceCurve pgh_curve(const PatternFamily& family, const SmockedSpace& limit, double radius, double eps,
                           std::span<const int> ks, CurveOptions opts) {
  const FiniteMetricSpace limit_net = ball_net(limit, limit.basepoint(), radius, eps).metric;
  return convergence_curve(
      ks,
      [&](int k) {
        const SmockedSpace xk(family(k));
        return ball_net(xk, xk.basepoint(), radius, eps).metric;
      },
      limit_net, radius, eps, opts);
}

LocalConstantsReport local_constants_report(const PatternFamily& family, double r, std::span<const int> ks) {
  if (!(r > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  LocalConstantsReport rep;
  for (int k : ks) {
    const SmockingPattern pat = family(k);
    const Point origin = Point::zero(pat.dimension());
    LocalConstantsRow row;
    row.k = k;
    std::vector<std::size_t> meet;
    while (true) {
      meet.clear();
      double l = 0.0;
      for (std::size_t i = 0; i < pat.size(); ++i) {
        if (dist_point_set(origin, pat.stitch(i).shape) <= r + row.l_r) {
          meet.push_back(i);
          l = std::max(l, diam(pat.stitch(i).shape));
        }
      }
      if (l <= row.l_r) break;
      row.l_r = l;
    }
    for (std::size_t a = 0; a < meet.size(); ++a) {
      for (std::size_t b = a + 1; b < meet.size(); ++b) {
        row.delta_r = std::min(row.delta_r, pat.separation(meet[a], meet[b]));
      }
    }
    row.stitch_count = meet.size();
    row.ball_radius = r + row.l_r;
    rep.rows.push_back(row);
  }

  const auto& rows = rep.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool holds = std::all_of(rows.begin() + static_cast<std::ptrdiff_t>(i), rows.end(), [&](const LocalConstantsRow& q) {
      const bool l_ok = q.l_r <= rows[i].l_r * (1.0 + 1e-9) + 1e-12;
      const bool d_ok = std::isinf(rows[i].delta_r) ? std::isinf(q.delta_r) : q.delta_r >= rows[i].delta_r * (1.0 - 1e-9);
      return l_ok && d_ok;
    });
    if (holds) {
      rep.k_r = rows[i].k;
      rep.stabilized = i <= (rows.size() - 1) / 2;
      break;
    }
  }
  return rep;
}

}  // namespace smock
