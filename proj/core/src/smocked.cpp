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

#include "smock/smocked.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "smock/error.hpp"

namespace smock {
namespace {

constexpr double kWindowTol = 1e-9;
constexpr std::size_t kMaxNetCandidates = 8'000'000;

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> entry_distances(const SmockingPattern& pattern, const Point& p) {
  std::vector<double> a(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) a[i] = dist_point_set(p, pattern.stitch(i).shape);
  return a;
}

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (std::int64_t k : key) {
      h ^= static_cast<std::size_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// SmockingPattern

SmockingPattern SmockingPattern::validate(std::size_t dimension, std::vector<Stitch> stitches, Box window,
                                          double separation_tol) {
  if (dimension == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be at least 1");
  if (window.min.dim() != dimension || window.max.dim() != dimension) {
    throw Error(ErrorCode::kDimensionMismatch, "window dimension differs from pattern dimension");
  }
  check_shape(window);
  std::sort(stitches.begin(), stitches.end(), [](const Stitch& a, const Stitch& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < stitches.size(); ++i) {
    const Stitch& s = stitches[i];
    if (i > 0 && stitches[i - 1].id == s.id) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate stitch id " + std::to_string(s.id));
    }
    check_shape(s.shape);
    if (smock::dimension(s.shape) != dimension) {
      throw Error(ErrorCode::kDimensionMismatch, "stitch " + std::to_string(s.id) + " has wrong dimension");
    }
    if (!is_connected(s.shape)) {
      throw Error(ErrorCode::kDisconnectedStitch, "stitch " + std::to_string(s.id) + " is a multi-point cloud");
    }
    if (dist_set_set(s.shape, window) > 0.0) {
      throw Error(ErrorCode::kStitchOutsideWindow, "stitch " + std::to_string(s.id) + " misses the window");
    }
  }

  SmockingPattern p;
  p.dim_ = dimension;
  p.window_ = std::move(window);
  const std::size_t n = stitches.size();
  p.sep_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dist_set_set(stitches[i].shape, stitches[j].shape);
      if (d == 0.0) {
        throw Error(ErrorCode::kOverlappingStitches, "stitches " + std::to_string(stitches[i].id) + " and " +
                                                         std::to_string(stitches[j].id) + " intersect");
      }
      if (d < separation_tol) {
        throw Error(ErrorCode::kZeroSeparation, "stitches " + std::to_string(stitches[i].id) + " and " +
                                                    std::to_string(stitches[j].id) + " are " +
                                                    format_number(d) + " apart");
      }
      p.sep_[i * n + j] = p.sep_[j * n + i] = d;
      p.delta_ = std::min(p.delta_, d);
    }
  }
  if (n > 0) {
    p.l_min_ = kInfinity;
    for (const Stitch& s : stitches) {
      const double d = diam(s.shape);
      p.l_min_ = std::min(p.l_min_, d);
      p.l_max_ = std::max(p.l_max_, d);
    }
  }
  p.stitches_ = std::move(stitches);
  return p;
}

double SmockingPattern::total_volume() const {
  double v = 0.0;
  for (const Stitch& s : stitches_) v += volume(s.shape);
  return v;
}

std::optional<std::size_t> SmockingPattern::containing(const Point& p) const {
  for (std::size_t i = 0; i < stitches_.size(); ++i) {
    if (contains(stitches_[i].shape, p)) return i;
  }
  return std::nullopt;
}

SmockingConstants smocking_constants(const SmockingPattern& pattern, const Box& window, double grid_step) {
  if (pattern.empty()) throw Error(ErrorCode::kEmptyPattern, "pattern has no stitches");
  if (!(grid_step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  if (window.dim() != pattern.dimension()) throw Error(ErrorCode::kDimensionMismatch, "window dimension");
  check_shape(window);

  SmockingConstants c;
  c.l_min = pattern.l_min();
  c.l_max = pattern.l_max();
  c.delta = pattern.delta();
  c.window = window;
  c.grid_step = grid_step;
  const std::size_t n = window.dim();
  c.depth_error = grid_step * std::sqrt(static_cast<double>(n));
  for (const Stitch& s : pattern.stitches()) {
    if (dist_set_set(s.shape, window) == 0.0) ++c.stitches_in_window;
  }

  std::vector<std::size_t> counts(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    counts[i] = static_cast<std::size_t>(std::floor((window.max[i] - window.min[i]) / grid_step + 1e-9)) + 1;
    total *= counts[i];
    if (total > kMaxNetCandidates) throw Error(ErrorCode::kBudgetExceeded, "depth grid too fine");
  }
  std::vector<std::size_t> idx(n, 0);
  double depth = 0.0;
  Point x = window.min;
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::min(window.max[i], window.min[i] + grid_step * static_cast<double>(idx[i]));
    }
    double near = kInfinity;
    for (const Stitch& s : pattern.stitches()) near = std::min(near, dist_point_set(x, s.shape));
    depth = std::max(depth, near);
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  const double diagonal = distance(window.min, window.max);
  if (depth > diagonal) {
    c.depth_infinite = true;
    c.depth_h = kInfinity;
  } else {
    c.depth_h = depth;
  }
  return c;
}

// ---------------------------------------------------------------------------
// SmockedSpace

SmockedSpace::SmockedSpace(SmockingPattern pattern)
    : SmockedSpace(pattern, Point::zero(pattern.dimension())) {}

SmockedSpace::SmockedSpace(SmockingPattern pattern, const Point& basepoint_lift)
    : pattern_(std::move(pattern)), basepoint_(SpacePoint::free(basepoint_lift)) {
  if (basepoint_lift.dim() != pattern_.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "basepoint dimension differs from pattern dimension");
  }
  if (!pattern_.window().contains(basepoint_lift, kWindowTol)) {
    throw Error(ErrorCode::kLiftOutsideWindow, "basepoint lies outside the pattern window");
  }
  basepoint_ = project(basepoint_lift);

  // Floyd-Warshall over the stitch separation graph.
  const std::size_t n = pattern_.size();
  closure_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) closure_[i * n + j] = pattern_.separation(i, j);
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      const double im = closure_[i * n + m];
      for (std::size_t j = 0; j < n; ++j) {
        const double via = im + closure_[m * n + j];
        if (via < closure_[i * n + j]) closure_[i * n + j] = via;
      }
    }
  }
}

SpacePoint SmockedSpace::project(const Point& z) const {
  if (z.dim() != dimension()) throw Error(ErrorCode::kDimensionMismatch, "point dimension");
  if (auto s = pattern_.containing(z)) return SpacePoint::collapsed(*s);
  return SpacePoint::free(z);
}

Point SmockedSpace::lift(const SpacePoint& x) const {
  if (x.is_collapsed()) return representative(pattern_.stitch(x.stitch()).shape);
  return x.point();
}

Shape SmockedSpace::lift_set(const SpacePoint& x) const {
  if (x.is_collapsed()) return pattern_.stitch(x.stitch()).shape;
  return Cloud{{x.point()}};
}

void SmockedSpace::check_in_window(const SpacePoint& x) const {
  if (x.is_collapsed()) {
    if (x.stitch() >= pattern_.size()) throw Error(ErrorCode::kInvalidArgument, "stitch index out of range");
    return;
  }
  if (x.point().dim() != dimension()) throw Error(ErrorCode::kDimensionMismatch, "point dimension");
  if (!pattern_.window().contains(x.point(), kWindowTol)) {
    throw Error(ErrorCode::kLiftOutsideWindow, "lift lies outside the pattern window");
  }
}

double SmockedSpace::distance(const SpacePoint& u, const SpacePoint& v) const {
  check_in_window(u);
  check_in_window(v);
  if (u == v) return 0.0;
  const Shape su = lift_set(u);
  const Shape sv = lift_set(v);
  const double direct = dist_set_set(su, sv);
  const std::size_t n = pattern_.size();

  // Nodes: 0 = u, 1 = v, then the stitches that can beat the direct hop.
  std::vector<std::size_t> nodes;
  std::vector<double> to_u;
  std::vector<double> to_v;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u.is_collapsed() && u.stitch() == i ? 0.0 : dist_set_set(su, pattern_.stitch(i).shape);
    if (a > direct) continue;
    const double b = v.is_collapsed() && v.stitch() == i ? 0.0 : dist_set_set(sv, pattern_.stitch(i).shape);
    if (b > direct) continue;
    nodes.push_back(i);
    to_u.push_back(a);
    to_v.push_back(b);
  }
  const std::size_t m = nodes.size() + 2;
  auto weight = [&](std::size_t x, std::size_t y) -> double {
    if (x > y) std::swap(x, y);
    if (x == 0 && y == 1) return direct;
    if (x == 0) return to_u[y - 2];
    if (x == 1) return to_v[y - 2];
    return pattern_.separation(nodes[x - 2], nodes[y - 2]);
  };

  // Dense Dijkstra; the first minimal node in index order is settled, so
  // ties resolve toward the lowest stitch id.
  std::vector<double> dist(m, kInfinity);
  std::vector<char> done(m, 0);
  dist[0] = 0.0;
  for (std::size_t iter = 0; iter < m; ++iter) {
    std::size_t best = m;
    for (std::size_t x = 0; x < m; ++x) {
      if (!done[x] && (best == m || dist[x] < dist[best])) best = x;
    }
    if (best == m || dist[best] == kInfinity) break;
    if (best == 1) break;
    done[best] = 1;
    for (std::size_t y = 0; y < m; ++y) {
      if (done[y]) continue;
      const double cand = dist[best] + weight(best, y);
      if (cand < dist[y]) dist[y] = cand;
    }
  }
  return dist[1];
}

double SmockedSpace::pseudometric(const Point& v, const Point& w) const {
  return distance(project(v), project(w));
}

LiftProfile SmockedSpace::profile(const SpacePoint& x) const {
  const std::size_t n = pattern_.size();
  LiftProfile p;
  p.point = x;
  p.lift = lift(x);
  if (x.is_collapsed()) {
    p.entry.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) p.entry[i] = pattern_.separation(x.stitch(), i);
  } else {
    p.entry = entry_distances(pattern_, x.point());
  }
  p.via.assign(n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) {
    double best = kInfinity;
    for (std::size_t j = 0; j < n; ++j) best = std::min(best, closure_[i * n + j] + p.entry[j]);
    p.via[i] = best;
  }
  return p;
}

double SmockedSpace::distance(const LiftProfile& a, const LiftProfile& b) const {
  if (a.point == b.point) return 0.0;
  double best = a.point.is_collapsed() || b.point.is_collapsed() ? kInfinity : smock::distance(a.lift, b.lift);
  for (std::size_t i = 0; i < a.entry.size(); ++i) best = std::min(best, a.entry[i] + b.via[i]);
  return best;
}

// ---------------------------------------------------------------------------
// Oracles

double d_k_exact(const SmockedSpace& space, const Point& v, const Point& w, std::size_t k, std::uint64_t budget) {
  if (k == 0) return distance(v, w);
  const SmockingPattern& pat = space.pattern();
  const std::size_t n = pat.size();
  if (n == 0 || (n == 1 && k > 1)) return kInfinity;
  double count = static_cast<double>(n) * std::pow(static_cast<double>(n - 1), static_cast<double>(k - 1));
  if (count > static_cast<double>(budget)) {
    throw Error(ErrorCode::kBudgetExceeded, "d_k enumeration of " + format_number(count) + " sequences");
  }
  const std::vector<double> av = entry_distances(pat, v);
  const std::vector<double> aw = entry_distances(pat, w);

  // Odometer over sequences; digit i > 0 ranges over the n-1 indices that
  // differ from digit i-1.
  std::vector<std::size_t> digit(k, 0);
  auto index_at = [&](const std::vector<std::size_t>& seq, std::size_t i, std::size_t prev) {
    return i == 0 ? seq[0] : (seq[i] < prev ? seq[i] : seq[i] + 1);
  };
  double best = kInfinity;
  std::vector<std::size_t> idx(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) idx[i] = index_at(digit, i, i == 0 ? 0 : idx[i - 1]);
    double len = av[idx[0]] + aw[idx[k - 1]];
    for (std::size_t i = 0; i + 1 < k; ++i) len += pat.separation(idx[i], idx[i + 1]);
    best = std::min(best, len);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      const std::size_t radix = pos == 0 ? n : n - 1;
      if (++digit[pos] < radix) break;
      digit[pos] = 0;
      if (pos == 0) return best;
    }
  }
}

double min_d_k_exact(const SmockedSpace& space, const Point& v, const Point& w, std::size_t k_max,
                     std::uint64_t budget) {
  const SmockingPattern& pat = space.pattern();
  const std::size_t n = pat.size();
  const std::vector<double> av = entry_distances(pat, v);
  const std::vector<double> aw = entry_distances(pat, w);
  double best = distance(v, w);
  std::uint64_t visited = 0;

  auto dfs = [&](auto&& self, std::size_t last, std::size_t depth, double partial) -> void {
    for (std::size_t s = 0; s < n; ++s) {
      if (depth > 0 && s == last) continue;
      const double cost = partial + (depth == 0 ? av[s] : pat.separation(last, s));
      if (cost >= best) continue;
      if (++visited > budget) throw Error(ErrorCode::kBudgetExceeded, "d_k enumeration budget exhausted");
      best = std::min(best, cost + aw[s]);
      if (depth + 1 < k_max) self(self, s, depth + 1, cost);
    }
  };
  if (k_max > 0) dfs(dfs, 0, 0, 0.0);
  return best;
}

std::uint64_t crossing_bound(double l0, double delta0) {
  if (!(l0 > 0.0) || !(delta0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "crossing bound needs L0, delta0 > 0");
  if (std::isinf(delta0)) return 1;
  const double q = std::floor(l0 / delta0);
  if (q >= 1e18) throw Error(ErrorCode::kBudgetExceeded, "crossing bound overflows");
  return 1 + static_cast<std::uint64_t>(q);
}

double preimage_radius(double r, double l, double delta0) {
  if (!(r > 0.0) || !(delta0 > 0.0) || !(l >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "preimage radius needs r, delta0 > 0 and L >= 0");
  }
  return r + static_cast<double>(crossing_bound(r + l, delta0)) * l;
}

PreimageBound local_preimage_bound(const SmockingPattern& pattern, const Shape& center, double r) {
  PreimageBound b;
  b.radius = r;
  const std::size_t n = pattern.size();
  std::vector<double> reach(n);
  for (std::size_t i = 0; i < n; ++i) reach[i] = dist_set_set(center, pattern.stitch(i).shape);
  while (true) {
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < n; ++i) {
      if (reach[i] <= b.radius) inside.push_back(i);
    }
    if (inside == b.stitches) break;
    b.l = 0.0;
    b.delta = kInfinity;
    for (std::size_t a = 0; a < inside.size(); ++a) {
      b.l = std::max(b.l, diam(pattern.stitch(inside[a]).shape));
      for (std::size_t c = a + 1; c < inside.size(); ++c) {
        b.delta = std::min(b.delta, pattern.separation(inside[a], inside[c]));
      }
    }
    b.stitches = std::move(inside);
    b.radius = preimage_radius(r, b.l, b.delta);
  }
  return b;
}

std::vector<std::size_t> stitches_met(const SmockingPattern& pattern, std::span<const Point> vertices, double tol) {
  std::vector<std::size_t> met;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Shape& s = pattern.stitch(i).shape;
    bool hit = vertices.size() == 1 && dist_point_set(vertices[0], s) <= tol;
    for (std::size_t j = 0; !hit && j + 1 < vertices.size(); ++j) {
      hit = dist_set_set(Segment{vertices[j], vertices[j + 1]}, s) <= tol;
    }
    if (hit) met.push_back(i);
  }
  return met;
}

// ---------------------------------------------------------------------------
// Nets

std::string label_of(const SmockedSpace& space, const SpacePoint& x) {
  if (x.is_collapsed()) return "I" + std::to_string(space.pattern().stitch(x.stitch()).id);
  std::string out = "(";
  const Point& p = x.point();
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i > 0) out += ';';
    out += format_number(p[i]);
  }
  return out + ")";
}

BallNet ball_net(const SmockedSpace& space, const SpacePoint& center, double radius, double eps, double grid_step) {
  if (!(radius > 0.0) || !(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "net radius and eps must be positive");
  if (grid_step == 0.0) grid_step = eps;
  if (!(grid_step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  const SmockingPattern& pat = space.pattern();
  const std::size_t n = space.dimension();
  const double tol = 1e-12 * std::max(1.0, radius);

  const Shape center_set = space.lift_set(center);
  const PreimageBound bound = local_preimage_bound(pat, center_set, radius);
  const Box bbox = bounds(center_set).expanded(bound.radius);
  if (!pat.window().contains(bbox, kWindowTol)) {
    throw Error(ErrorCode::kLiftOutsideWindow, "ball preimage box exceeds the pattern window");
  }
  const LiftProfile center_profile = space.profile(center);

  struct Candidate {
    LiftProfile profile;
    double d;
    std::size_t order;
  };
  std::vector<Candidate> cands;
  cands.push_back({center_profile, 0.0, 0});

  for (std::size_t i : bound.stitches) {
    const SpacePoint s = SpacePoint::collapsed(i);
    if (s == center) continue;
    LiftProfile prof = space.profile(s);
    const double d = space.distance(center_profile, prof);
    if (d <= radius + tol) cands.push_back({std::move(prof), d, cands.size()});
  }

  // Grid anchored at the center lift.
  const Point anchor = center_profile.lift;
  std::vector<std::int64_t> lo(n), hi(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = static_cast<std::int64_t>(std::ceil((bbox.min[i] - anchor[i]) / grid_step - 1e-9));
    hi[i] = static_cast<std::int64_t>(std::floor((bbox.max[i] - anchor[i]) / grid_step + 1e-9));
    total *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
    if (total > kMaxNetCandidates) throw Error(ErrorCode::kBudgetExceeded, "net candidate grid too large");
  }
  std::vector<std::int64_t> idx = lo;
  for (std::size_t flat = 0; flat < total; ++flat) {
    Point g = anchor;
    bool is_anchor = true;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = anchor[i] + grid_step * static_cast<double>(idx[i]);
      is_anchor = is_anchor && idx[i] == 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] <= hi[i]) break;
      idx[i] = lo[i];
    }
    if (is_anchor && !center.is_collapsed()) continue;
    if (pat.containing(g)) continue;
    LiftProfile prof = space.profile(SpacePoint::free(std::move(g)));
    const double d = space.distance(center_profile, prof);
    if (d <= radius + tol) cands.push_back({std::move(prof), d, cands.size()});
  }
  std::stable_sort(cands.begin() + 1, cands.end(), [](const Candidate& a, const Candidate& b) { return a.d < b.d; });

  // Greedy separation at eps/2. Free-free pairs closer than sep in the lift
  // are found through a hash grid; shorter detours need both points within
  // sep of some stitch, and those are compared exhaustively.
  const double sep = 0.5 * eps;
  auto key_of = [&](const Point& p) {
    std::vector<std::int64_t> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = static_cast<std::int64_t>(std::floor(p[i] / sep));
    return k;
  };
  auto near_stitch = [&](const LiftProfile& p) {
    return std::any_of(p.entry.begin(), p.entry.end(), [&](double a) { return a < sep; });
  };
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, CellHash> cells;
  std::vector<std::size_t> near_list;
  std::vector<std::size_t> chosen;
  std::vector<std::int64_t> offset(n);
  const std::size_t neighbourhood = static_cast<std::size_t>(std::pow(3.0, static_cast<double>(n)));

  for (std::size_t c = 0; c < cands.size(); ++c) {
    const LiftProfile& p = cands[c].profile;
    bool ok = true;
    if (!p.point.is_collapsed()) {
      const std::vector<std::int64_t> key = key_of(p.lift);
      for (std::size_t off = 0; ok && off < neighbourhood; ++off) {
        std::size_t rem = off;
        std::vector<std::int64_t> k = key;
        for (std::size_t i = 0; i < n; ++i) {
          k[i] += static_cast<std::int64_t>(rem % 3) - 1;
          rem /= 3;
        }
        auto it = cells.find(k);
        if (it == cells.end()) continue;
        for (std::size_t q : it->second) {
          if (smock::distance(p.lift, cands[q].profile.lift) < sep - tol) {
            ok = false;
            break;
          }
        }
      }
    }
    const bool near = p.point.is_collapsed() || near_stitch(p);
    if (ok && near) {
      for (std::size_t q : near_list) {
        if (space.distance(p, cands[q].profile) < sep - tol) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    chosen.push_back(c);
    if (!p.point.is_collapsed()) cells[key_of(p.lift)].push_back(c);
    if (near) near_list.push_back(c);
  }

  const std::size_t m = chosen.size();
  BallNet net;
  net.eps = eps;
  net.grid_step = grid_step;
  net.resolution = grid_step * std::sqrt(static_cast<double>(n)) / 2.0;
  std::vector<std::string> labels;
  std::vector<Point> coords;
  std::vector<double> matrix(m * m, 0.0);
  labels.reserve(m);
  coords.reserve(m);
  // Flat copies of the profiles for the O(m^2) fill; same formula as
  // SmockedSpace::distance(LiftProfile, LiftProfile).
  const std::size_t ns = pat.size();
  std::vector<double> lift(m * n), entry(m * ns), via(m * ns);
  std::vector<char> collapsed(m);
  for (std::size_t a = 0; a < m; ++a) {
    const LiftProfile& pa = cands[chosen[a]].profile;
    net.points.push_back(pa.point);
    labels.push_back(label_of(space, pa.point));
    coords.push_back(pa.lift);
    std::copy(pa.lift.coords().begin(), pa.lift.coords().end(), lift.begin() + static_cast<std::ptrdiff_t>(a * n));
    std::copy(pa.entry.begin(), pa.entry.end(), entry.begin() + static_cast<std::ptrdiff_t>(a * ns));
    std::copy(pa.via.begin(), pa.via.end(), via.begin() + static_cast<std::ptrdiff_t>(a * ns));
    collapsed[a] = pa.point.is_collapsed();
  }
  for (std::size_t a = 0; a < m; ++a) {
    const double* la = &lift[a * n];
    const double* ea = entry.data() + a * ns;
    for (std::size_t b = a + 1; b < m; ++b) {
      double d = kInfinity;
      if (!collapsed[a] && !collapsed[b]) {
        const double* lb = &lift[b * n];
        double s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) s2 += (la[i] - lb[i]) * (la[i] - lb[i]);
        d = std::sqrt(s2);
      }
      const double* vb = via.data() + b * ns;
      for (std::size_t i = 0; i < ns; ++i) d = std::min(d, ea[i] + vb[i]);
      matrix[a * m + b] = matrix[b * m + a] = d;
    }
  }
  net.metric = FiniteMetricSpace(std::move(labels), std::move(matrix), 0, std::move(coords));
  return net;
}

}  // namespace smock
