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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smock::oracle {
namespace {

std::vector<Point> box_grid(const Point& lo, const Point& hi, double spacing) {
  const std::size_t n = lo.dim();
  std::vector<std::size_t> count(n), idx(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    count[i] = static_cast<std::size_t>(std::ceil((hi[i] - lo[i]) / spacing)) + 1;
  }
  std::vector<Point> out;
  while (true) {
    Point p = lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = count[i] == 1 ? 0.0 : static_cast<double>(idx[i]) / static_cast<double>(count[i] - 1);
      p[i] = lo[i] + t * (hi[i] - lo[i]);
    }
    out.push_back(p);
    std::size_t i = 0;
    while (i < n && ++idx[i] == count[i]) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

std::vector<Point> dense_sample(const Shape& s, double h) {
  if (const auto* b = std::get_if<Box>(&s)) {
    return box_grid(b->min, b->max, h / std::sqrt(static_cast<double>(b->dim())));
  }
  if (const auto* c = std::get_if<Cloud>(&s)) return c->points;
  if (const auto* g = std::get_if<Segment>(&s)) {
    const double len = distance(g->a, g->b);
    const std::size_t m = static_cast<std::size_t>(std::ceil(len / h)) + 1;
    std::vector<Point> out;
    for (std::size_t i = 0; i <= m; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(m);
      out.push_back(g->a + t * (g->b - g->a));
    }
    return out;
  }
  const Ball& b = std::get<Ball>(s);
  if (b.center.dim() == 1) {
    return box_grid(Point{b.center[0] - b.radius}, Point{b.center[0] + b.radius}, h);
  }
  if (b.center.dim() != 2) throw std::invalid_argument("dense_sample: balls in dimension <= 2 only");
  // Concentric rings; neighbouring rings and ring points are within h/2.
  std::vector<Point> out{b.center};
  const std::size_t rings = static_cast<std::size_t>(std::ceil(b.radius / (0.5 * h)));
  for (std::size_t j = 1; j <= rings; ++j) {
    const double rho = b.radius * static_cast<double>(j) / static_cast<double>(rings);
    const std::size_t m = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * rho / (0.5 * h))) + 1;
    for (std::size_t i = 0; i < m; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
      out.push_back(Point{b.center[0] + rho * std::cos(t), b.center[1] + rho * std::sin(t)});
    }
  }
  return out;
}

double sampled_distance(const SmockingPattern& pattern, const Point& v, const Point& w, double h) {
  std::vector<Point> nodes{v, w};
  std::vector<int> owner(2, -1);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Shape& s = pattern.stitch(i).shape;
    if (contains(s, v)) owner[0] = static_cast<int>(i);
    if (contains(s, w)) owner[1] = static_cast<int>(i);
    for (Point& p : dense_sample(s, h)) {
      nodes.push_back(std::move(p));
      owner.push_back(static_cast<int>(i));
    }
  }
  const std::size_t n = nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  dist[0] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (u == n || dist[i] < dist[u])) u = i;
    }
    if (u == 1) break;
    done[u] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const double step = (owner[u] >= 0 && owner[u] == owner[i]) ? 0.0 : distance(nodes[u], nodes[i]);
      dist[i] = std::min(dist[i], dist[u] + step);
    }
  }
  return dist[1];
}

double line_distance(const SmockingPattern& pattern, double x, double y) {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  std::vector<std::pair<double, double>> iv;
  for (const Stitch& s : pattern.stitches()) {
    const Box b = bounds(s.shape);
    const double a = std::max(lo, b.min[0]);
    const double c = std::min(hi, b.max[0]);
    if (a < c) iv.emplace_back(a, c);
  }
  double collapsed = 0.0;
  for (const auto& [a, c] : iv) collapsed += c - a;  // stitches are disjoint
  return (hi - lo) - collapsed;
}

double gh_all_relations(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t cells = nx * ny;
  if (cells > 20) throw std::invalid_argument("gh_all_relations: too many pairs");
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
    rel.clear();
    std::vector<char> hx(nx, 0), hy(ny, 0);
    for (std::size_t c = 0; c < cells; ++c) {
      if (mask >> c & 1) {
        rel.emplace_back(c / ny, c % ny);
        hx[c / ny] = 1;
        hy[c % ny] = 1;
      }
    }
    if (std::count(hx.begin(), hx.end(), 0) || std::count(hy.begin(), hy.end(), 0)) continue;
    double dis = 0.0;
    for (const auto& [a, b] : rel) {
      for (const auto& [c, d] : rel) dis = std::max(dis, std::abs(x(a, c) - y(b, d)));
    }
    best = std::min(best, dis);
  }
  return 0.5 * best;
}

WindowWordMetric::WindowWordMetric(const NormSpec& spec, int half_width) : half_width_(half_width) {
  const int side = 2 * half_width + 1;
  const std::size_t n = static_cast<std::size_t>(side * side);
  auto idx = [&](std::int64_t a, std::int64_t b) {
    return static_cast<std::size_t>((a + half_width) * side + (b + half_width));
  };
  std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (int a = -half_width; a <= half_width; ++a) {
    for (int b = -half_width; b <= half_width; ++b) {
      for (std::size_t g = 0; g < spec.size(); ++g) {
        const auto& v = spec.generators()[g];
        const std::int64_t a2 = a + v[0];
        const std::int64_t b2 = b + v[1];
        if (std::abs(a2) > half_width || std::abs(b2) > half_width) continue;
        auto& e = d[idx(a, b) * n + idx(a2, b2)];
        e = std::min(e, spec.weights()[g]);
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (std::isinf(dik)) continue;
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], dik + d[k * n + j]);
    }
  }
  from_origin_.assign(d.begin() + static_cast<std::ptrdiff_t>(idx(0, 0) * n),
                      d.begin() + static_cast<std::ptrdiff_t>(idx(0, 0) * n + n));
}

double WindowWordMetric::operator()(const LatticePoint& p) const {
  const int side = 2 * half_width_ + 1;
  return from_origin_.at(static_cast<std::size_t>((p[0] + half_width_) * side + (p[1] + half_width_)));
}

double enumerate_polyhedral(const NormSpec& spec, const LatticePoint& x, int bound, int q) {
  const auto& half = spec.half();
  const std::size_t h = half.size();
  const int range = bound * q;
  std::vector<int> c(h, -range);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    bool ok = true;
    for (std::size_t r = 0; r < spec.dimension() && ok; ++r) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < h; ++i) s += c[i] * spec.generators()[half[i]][r];
      ok = s == q * x[r];
    }
    if (ok) {
      double cost = 0.0;
      for (std::size_t i = 0; i < h; ++i) cost += std::abs(c[i]) * spec.weights()[half[i]];
      best = std::min(best, cost / q);
    }
    std::size_t i = 0;
    while (i < h && c[i] == range) c[i++] = -range;
    if (i == h) break;
    ++c[i];
  }
  return best;
}

double simpson_pushforward(const SmockingPattern& pattern, const TestFunction& phi, double a, double b,
                           std::size_t cells) {
  std::vector<double> cuts{a, b};
  for (const Stitch& s : pattern.stitches()) {
    const Box bx = bounds(s.shape);
    for (double c : {bx.min[0], bx.max[0]}) {
      if (a < c && c < b) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double lo = cuts[p];
    const double hi = cuts[p + 1];
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    const Stitch* inside = nullptr;
    for (const Stitch& s : pattern.stitches()) {
      const Box bx = bounds(s.shape);
      if (bx.min[0] <= mid && mid <= bx.max[0]) inside = &s;
    }
    if (inside) {
      const Box bx = bounds(inside->shape);
      total += evaluate(phi, Point{0.5 * (bx.min[0] + bx.max[0])}) * (hi - lo);
      continue;
    }
    const std::size_t n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(cells) * (hi - lo) / (b - a))));
    const double h = (hi - lo) / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x0 = lo + h * static_cast<double>(i);
      sum += evaluate(phi, Point{x0}) + 4.0 * evaluate(phi, Point{x0 + 0.5 * h}) + evaluate(phi, Point{x0 + h});
    }
    total += sum * h / 6.0;
  }
  return total;
}

Point random_point(std::mt19937_64& rng, std::size_t dim, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<double> c(dim);
  for (double& x : c) x = u(rng);
  return Point(std::move(c));
}

SmockingPattern random_pattern(std::mt19937_64& rng, std::size_t dim, std::size_t max_stitches, double min_sep,
                               double window) {
  std::uniform_int_distribution<std::size_t> count(1, max_stitches);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> size(0.05, 0.6);
  const std::size_t target = count(rng);
  std::vector<Stitch> stitches;
  for (int attempt = 0; attempt < 200 && stitches.size() < target; ++attempt) {
    const Point c = random_point(rng, dim, 2.0);
    Shape s;
    switch (kind(rng)) {
      case 0:
        s = Ball{c, size(rng)};
        break;
      case 1: {
        Point lo = c, hi = c;
        for (std::size_t i = 0; i < dim; ++i) {
          const double half = 0.5 * size(rng);
          lo[i] -= half;
          hi[i] += half;
        }
        s = Box{lo, hi};
        break;
      }
      case 2:
        s = Segment{c, c + random_point(rng, dim, 0.6)};
        break;
      default:
        s = Cloud{{c}};
    }
    if (const auto* g = std::get_if<Segment>(&s); g && g->a == g->b) continue;
    bool ok = true;
    for (const Stitch& t : stitches) ok = ok && dist_set_set(s, t.shape) >= min_sep;
    if (ok) stitches.push_back({s, static_cast<int>(stitches.size())});
  }
  const Box w{Point(std::vector<double>(dim, -window)), Point(std::vector<double>(dim, window))};
  return SmockingPattern::validate(dim, std::move(stitches), w);
}

FiniteMetricSpace random_metric_space(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(Point{u(rng), u(rng), u(rng)});
  std::vector<double> d(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = distance(pts[i], pts[j]);
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

}  // namespace smock::oracle
