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

#include "smock/euclid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "smock/error.hpp"

namespace smock {
namespace {

constexpr std::size_t kMaxSamples = 4'000'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "operands have dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

Point clamp_to_box(const Point& p, const Box& b) {
  Point q = p;
  for (std::size_t i = 0; i < p.dim(); ++i) q[i] = std::clamp(p[i], b.min[i], b.max[i]);
  return q;
}

double dist_point_box(const Point& p, const Box& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double g = std::max({0.0, b.min[i] - p[i], p[i] - b.max[i]});
    s += g * g;
  }
  return std::sqrt(s);
}

double dist_point_segment(const Point& p, const Segment& s) {
  if (p.dim() == 1) {
    const double lo = std::min(s.a[0], s.b[0]);
    const double hi = std::max(s.a[0], s.b[0]);
    return std::max({0.0, lo - p[0], p[0] - hi});
  }
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + d * t);
}

double dist_box_box(const Box& a, const Box& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double g = std::max({0.0, b.min[i] - a.max[i], a.min[i] - b.max[i]});
    s += g * g;
  }
  return std::sqrt(s);
}

// Closest points of two segments (Ericson, Real-Time Collision Detection
// 5.1.9); the endpoint distances are folded in for degenerate inputs.
double dist_segment_segment(const Segment& s1, const Segment& s2) {
  const Point d1 = s1.b - s1.a;
  const Point d2 = s2.b - s2.a;
  const Point r = s1.a - s2.a;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0.0;
  double t = 0.0;
  if (a == 0.0 && e == 0.0) return norm(r);
  if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const double interior = distance(s1.a + d1 * s, s2.a + d2 * t);
  return std::min({interior, dist_point_segment(s1.a, s2), dist_point_segment(s1.b, s2),
                   dist_point_segment(s2.a, s1), dist_point_segment(s2.b, s1)});
}

// Liang-Barsky clip of the segment against the box.
bool segment_meets_box(const Segment& s, const Box& b) {
  double t0 = 0.0;
  double t1 = 1.0;
  for (std::size_t i = 0; i < s.a.dim(); ++i) {
    const double d = s.b[i] - s.a[i];
    if (d == 0.0) {
      if (s.a[i] < b.min[i] || s.a[i] > b.max[i]) return false;
      continue;
    }
    double ta = (b.min[i] - s.a[i]) / d;
    double tb = (b.max[i] - s.a[i]) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

double dist_box_segment(const Box& box, const Segment& s) {
  if (segment_meets_box(s, box)) return 0.0;
  const Point d = s.b - s.a;
  auto f = [&](double t) { return dist_point_box(s.a + d * t, box); };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  double best = std::min({f(0.0), f(1.0), f1, f2});
  for (int it = 0; it < 120 && hi - lo > 1e-18; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

// Distance from a convex shape to a point-like or convex shape, when the
// first operand is a ball: shrink by the radius.
double dist_ball_shape(const Ball& ball, const Shape& other) {
  return std::max(0.0, dist_point_set(ball.center, other) - ball.radius);
}

struct Interval {
  double lo;
  double hi;
};

std::vector<Interval> to_intervals(const CompactSet& set) {
  std::vector<Interval> out;
  for (const Shape& s : set) {
    std::visit(Overloaded{
                   [&](const Ball& b) { out.push_back({b.center[0] - b.radius, b.center[0] + b.radius}); },
                   [&](const Box& b) { out.push_back({b.min[0], b.max[0]}); },
                   [&](const Segment& g) {
                     out.push_back({std::min(g.a[0], g.b[0]), std::max(g.a[0], g.b[0])});
                   },
                   [&](const Cloud& c) {
                     for (const Point& p : c.points) out.push_back({p[0], p[0]});
                   },
               },
               s);
  }
  return out;
}

std::vector<Interval> merged(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const Interval& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

double dist_to_union(double x, const std::vector<Interval>& u) {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& iv : u) {
    if (x >= iv.lo && x <= iv.hi) return 0.0;
    best = std::min(best, x < iv.lo ? iv.lo - x : x - iv.hi);
  }
  return best;
}

double directed_1d(const CompactSet& a, const CompactSet& b) {
  const std::vector<Interval> ua = merged(to_intervals(a));
  const std::vector<Interval> ub = merged(to_intervals(b));
  double worst = 0.0;
  for (const Interval& iv : ua) {
    worst = std::max({worst, dist_to_union(iv.lo, ub), dist_to_union(iv.hi, ub)});
    for (std::size_t i = 0; i + 1 < ub.size(); ++i) {
      const double mid = 0.5 * (ub[i].hi + ub[i + 1].lo);
      if (mid >= iv.lo && mid <= iv.hi) worst = std::max(worst, dist_to_union(mid, ub));
    }
  }
  return worst;
}

std::size_t set_dimension(const CompactSet& s) {
  if (s.empty()) throw Error(ErrorCode::kEmptyOperand, "compact set is empty");
  const std::size_t d = dimension(s.front());
  for (const Shape& sh : s) require_same_dim(d, dimension(sh));
  return d;
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {}

Point& Point::operator+=(const Point& o) {
  assert(o.dim() == dim());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  assert(o.dim() == dim());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator*(Point a, double s) { return a *= s; }
Point operator*(double s, Point a) { return a *= s; }

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

double distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "points of different dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool Box::contains(const Point& p, double tol) const {
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] < min[i] - tol || p[i] > max[i] + tol) return false;
  }
  return true;
}

bool Box::contains(const Box& inner, double tol) const {
  return contains(inner.min, tol) && contains(inner.max, tol);
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= max[i] - min[i];
  return v;
}

Point Box::center() const { return (min + max) * 0.5; }

Box Box::expanded(double margin) const {
  Box b = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    b.min[i] -= margin;
    b.max[i] += margin;
  }
  return b;
}

std::size_t dimension(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.center.dim(); },
                        [](const Box& b) { return b.min.dim(); },
                        [](const Segment& g) { return g.a.dim(); },
                        [](const Cloud& c) { return c.points.empty() ? 0 : c.points.front().dim(); },
                    },
                    s);
}

void check_shape(const Shape& s) {
  auto finite = [](const Point& p) {
    return std::all_of(p.coords().begin(), p.coords().end(), [](double c) { return std::isfinite(c); });
  };
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kInvalidArgument, why); };
  std::visit(Overloaded{
                 [&](const Ball& b) {
                   if (b.center.dim() == 0 || !finite(b.center)) fail("ball center is not a finite point");
                   if (!(b.radius > 0.0) || !std::isfinite(b.radius)) fail("ball radius must be positive");
                 },
                 [&](const Box& b) {
                   if (b.min.dim() == 0 || b.min.dim() != b.max.dim()) fail("box corners differ in dimension");
                   if (!finite(b.min) || !finite(b.max)) fail("box corners are not finite");
                   for (std::size_t i = 0; i < b.min.dim(); ++i) {
                     if (b.min[i] > b.max[i]) fail("box min exceeds max");
                   }
                 },
                 [&](const Segment& g) {
                   if (g.a.dim() == 0 || g.a.dim() != g.b.dim()) fail("segment endpoints differ in dimension");
                   if (!finite(g.a) || !finite(g.b)) fail("segment endpoints are not finite");
                 },
                 [&](const Cloud& c) {
                   if (c.points.empty()) fail("cloud is empty");
                   for (const Point& p : c.points) {
                     if (p.dim() != c.points.front().dim() || p.dim() == 0 || !finite(p)) {
                       fail("cloud points are not finite points of one dimension");
                     }
                   }
                 },
             },
             s);
}

bool is_connected(const Shape& s) {
  if (const auto* c = std::get_if<Cloud>(&s)) {
    return std::all_of(c->points.begin(), c->points.end(),
                       [&](const Point& p) { return p == c->points.front(); });
  }
  return true;
}

double diam(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return 2.0 * b.radius; },
                        [](const Box& b) { return distance(b.min, b.max); },
                        [](const Segment& g) { return distance(g.a, g.b); },
                        [](const Cloud& c) {
                          double d = 0.0;
                          for (std::size_t i = 0; i < c.points.size(); ++i) {
                            for (std::size_t j = i + 1; j < c.points.size(); ++j) {
                              d = std::max(d, distance(c.points[i], c.points[j]));
                            }
                          }
                          return d;
                        },
                    },
                    s);
}

double dist_point_set(const Point& p, const Shape& s) {
  require_same_dim(p.dim(), dimension(s));
  return std::visit(Overloaded{
                        [&](const Ball& b) { return std::max(0.0, distance(p, b.center) - b.radius); },
                        [&](const Box& b) { return dist_point_box(p, b); },
                        [&](const Segment& g) { return dist_point_segment(p, g); },
                        [&](const Cloud& c) {
                          double d = std::numeric_limits<double>::infinity();
                          for (const Point& q : c.points) d = std::min(d, distance(p, q));
                          return d;
                        },
                    },
                    s);
}

double max_dist_point_set(const Point& p, const Shape& s) {
  require_same_dim(p.dim(), dimension(s));
  return std::visit(Overloaded{
                        [&](const Ball& b) { return distance(p, b.center) + b.radius; },
                        [&](const Box& b) {
                          double acc = 0.0;
                          for (std::size_t i = 0; i < p.dim(); ++i) {
                            const double g = std::max(std::abs(p[i] - b.min[i]), std::abs(p[i] - b.max[i]));
                            acc += g * g;
                          }
                          return std::sqrt(acc);
                        },
                        [&](const Segment& g) { return std::max(distance(p, g.a), distance(p, g.b)); },
                        [&](const Cloud& c) {
                          double d = 0.0;
                          for (const Point& q : c.points) d = std::max(d, distance(p, q));
                          return d;
                        },
                    },
                    s);
}

double dist_set_set(const Shape& s1, const Shape& s2) {
  require_same_dim(dimension(s1), dimension(s2));
  if (const auto* c = std::get_if<Cloud>(&s1)) {
    double d = std::numeric_limits<double>::infinity();
    for (const Point& q : c->points) d = std::min(d, dist_point_set(q, s2));
    return d;
  }
  if (std::holds_alternative<Cloud>(s2)) return dist_set_set(s2, s1);
  // Connected shapes on the line are intervals.
  if (dimension(s1) == 1) return dist_box_box(bounds(s1), bounds(s2));
  if (const auto* b = std::get_if<Ball>(&s1)) return dist_ball_shape(*b, s2);
  if (const auto* b = std::get_if<Ball>(&s2)) return dist_ball_shape(*b, s1);
  if (const auto* b1 = std::get_if<Box>(&s1)) {
    if (const auto* b2 = std::get_if<Box>(&s2)) return dist_box_box(*b1, *b2);
    return dist_box_segment(*b1, std::get<Segment>(s2));
  }
  const auto& g1 = std::get<Segment>(s1);
  if (const auto* b2 = std::get_if<Box>(&s2)) return dist_box_segment(*b2, g1);
  return dist_segment_segment(g1, std::get<Segment>(s2));
}

bool contains(const Shape& s, const Point& p) { return dist_point_set(p, s) == 0.0; }

Point representative(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.center; },
                        [](const Box& b) { return b.center(); },
                        [](const Segment& g) { return (g.a + g.b) * 0.5; },
                        [](const Cloud& c) { return c.points.front(); },
                    },
                    s);
}

Box bounds(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return Box{b.center, b.center}.expanded(b.radius); },
                        [](const Box& b) { return b; },
                        [](const Segment& g) {
                          Box out{g.a, g.a};
                          for (std::size_t i = 0; i < g.a.dim(); ++i) {
                            out.min[i] = std::min(g.a[i], g.b[i]);
                            out.max[i] = std::max(g.a[i], g.b[i]);
                          }
                          return out;
                        },
                        [](const Cloud& c) {
                          Box out{c.points.front(), c.points.front()};
                          for (const Point& p : c.points) {
                            for (std::size_t i = 0; i < p.dim(); ++i) {
                              out.min[i] = std::min(out.min[i], p[i]);
                              out.max[i] = std::max(out.max[i], p[i]);
                            }
                          }
                          return out;
                        },
                    },
                    s);
}

double volume(const Shape& s) {
  const auto n = static_cast<double>(dimension(s));
  return std::visit(Overloaded{
                        [&](const Ball& b) {
                          const double unit = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
                          return unit * std::pow(b.radius, n);
                        },
                        [](const Box& b) { return b.volume(); },
                        [&](const Segment& g) { return n == 1.0 ? distance(g.a, g.b) : 0.0; },
                        [](const Cloud&) { return 0.0; },
                    },
                    s);
}

std::vector<Point> sample_shape(const Shape& s, double covering) {
  if (!(covering > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sampling covering radius must be positive");
  if (const auto* c = std::get_if<Cloud>(&s)) return c->points;
  if (const auto* g = std::get_if<Segment>(&s)) {
    const auto steps = static_cast<std::size_t>(std::ceil(distance(g->a, g->b) / (2.0 * covering)));
    if (steps > kMaxSamples) throw Error(ErrorCode::kBudgetExceeded, "segment sampling too fine");
    std::vector<Point> out;
    for (std::size_t i = 0; i <= steps; ++i) {
      const double t = steps == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps);
      out.push_back(g->a + (g->b - g->a) * t);
    }
    return out;
  }
  const Box box = bounds(s);
  const std::size_t n = box.dim();
  const double h = 2.0 * covering / std::sqrt(static_cast<double>(n));
  std::vector<std::size_t> counts(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    counts[i] = static_cast<std::size_t>(std::ceil((box.max[i] - box.min[i]) / h)) + 1;
    total *= counts[i];
    if (total > kMaxSamples) throw Error(ErrorCode::kBudgetExceeded, "shape sampling too fine");
  }
  std::vector<Point> out;
  out.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Point p = box.min;
    for (std::size_t i = 0; i < n; ++i) {
      const double extent = box.max[i] - box.min[i];
      p[i] = counts[i] == 1 ? box.min[i] + 0.5 * extent
                            : box.min[i] + extent * static_cast<double>(idx[i]) / static_cast<double>(counts[i] - 1);
    }
    if (const auto* b = std::get_if<Ball>(&s)) {
      const double r = distance(p, b->center);
      if (r > b->radius) p = b->center + (p - b->center) * (b->radius / r);
    } else {
      p = clamp_to_box(p, std::get<Box>(s));
    }
    out.push_back(std::move(p));
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

HausdorffResult directed_hausdorff(const CompactSet& a, const CompactSet& b, double resolution) {
  if (!(resolution > 0.0)) throw Error(ErrorCode::kInvalidArgument, "resolution must be positive");
  const std::size_t d = set_dimension(a);
  require_same_dim(d, set_dimension(b));
  if (d == 1) return {directed_1d(a, b), 0.0, true};
  double worst = 0.0;
  for (const Shape& s : a) {
    for (const Point& p : sample_shape(s, resolution)) {
      double near = std::numeric_limits<double>::infinity();
      for (const Shape& t : b) near = std::min(near, dist_point_set(p, t));
      worst = std::max(worst, near);
    }
  }
  return {worst, resolution, false};
}

HausdorffResult hausdorff(const CompactSet& a, const CompactSet& b, double resolution) {
  const HausdorffResult ab = directed_hausdorff(a, b, resolution);
  const HausdorffResult ba = directed_hausdorff(b, a, resolution);
  return {std::max(ab.value, ba.value), std::max(ab.error, ba.error), ab.exact && ba.exact};
}

}  // namespace smock
