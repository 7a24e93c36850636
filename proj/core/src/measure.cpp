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

#include "smock/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "smock/error.hpp"

namespace smock {
namespace {

constexpr double kWindowTol = 1e-12;
constexpr std::uint64_t kBatch = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Calls f(z) for every sample; batch b draws from mt19937_64(splitmix(seed + b)).
template <class F>
void sweep_samples(const MonteCarlo& mc, const Box& box, F&& f) {
  const std::size_t n = box.dim();
  Point z = box.min;
  for (std::uint64_t done = 0, b = 0; done < mc.samples; ++b) {
    std::mt19937_64 gen(splitmix64(mc.seed + b));
    const std::uint64_t count = std::min(kBatch, mc.samples - done);
    for (std::uint64_t s = 0; s < count; ++s) {
      for (std::size_t i = 0; i < n; ++i) z[i] = box.min[i] + (box.max[i] - box.min[i]) * unit(gen());
      f(z);
    }
    done += count;
  }
}

struct Moments {
  double sum = 0.0;
  double sumsq = 0.0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
  }
  // Mean times `scale` and its standard error.
  Estimate estimate(std::uint64_t n, double scale) const {
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sumsq - sum * mean) / (nn - 1.0)) : 0.0;
    return {scale * mean, scale * std::sqrt(var / nn)};
  }
};

// Visits grid cells of side <= step over `box`: f(center, cell_volume).
template <class F>
void sweep_cells(const Box& box, double step, F&& f) {
  const std::size_t n = box.dim();
  std::vector<std::size_t> count(n), idx(n, 0);
  std::vector<double> side(n);
  double cell_volume = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double len = box.max[i] - box.min[i];
    count[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step - 1e-9)));
    side[i] = len / static_cast<double>(count[i]);
    cell_volume *= side[i];
  }
  Point c = box.min;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) c[i] = box.min[i] + (static_cast<double>(idx[i]) + 0.5) * side[i];
    f(c, cell_volume);
    std::size_t i = 0;
    while (i < n && ++idx[i] == count[i]) idx[i++] = 0;
    if (i == n) break;
  }
}

double half_diagonal(const Box& box, double step) {
  double s = 0.0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double len = box.max[i] - box.min[i];
    const double side = len / std::max(1.0, std::ceil(len / step - 1e-9));
    s += side * side;
  }
  return 0.5 * std::sqrt(s);
}

// Distance from p to the complement of s; 0 outside s or for null shapes.
double depth(const Shape& s, const Point& p) {
  if (const auto* b = std::get_if<Ball>(&s)) return std::max(0.0, b->radius - distance(p, b->center));
  const Box box = bounds(s);
  if (volume(s) == 0.0 || !box.contains(p)) return 0.0;
  double d = kInfinity;
  for (std::size_t i = 0; i < p.dim(); ++i) d = std::min({d, p[i] - box.min[i], box.max[i] - p[i]});
  return d;
}

bool near_boundary(const SmockingPattern& pattern, const Point& c, double radius) {
  for (const Stitch& s : pattern.stitches()) {
    if (volume(s.shape) == 0.0) continue;
    if (dist_point_set(c, s.shape) <= radius && depth(s.shape, c) <= radius) return true;
  }
  return false;
}

// Stitches of positive volume lying inside `box`: integrated as atoms.
std::vector<char> atom_mask(const SmockingPattern& pattern, const Box& box) {
  std::vector<char> mask(pattern.size(), 0);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Shape& s = pattern.stitch(i).shape;
    mask[i] = volume(s) > 0.0 && box.contains(bounds(s), kWindowTol);
  }
  return mask;
}

double atom_mass(const SmockedSpace& space, const TestFunction& phi, const std::vector<char>& mask) {
  double total = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) total += evaluate(phi, representative(space.pattern().stitch(i).shape)) * volume(space.pattern().stitch(i).shape);
  }
  return total;
}

// Integrand away from atoms: phi at the lift, 0 inside an atom stitch.
double integrand(const SmockedSpace& space, const TestFunction& phi, const std::vector<char>& mask, const Point& z) {
  const auto s = space.pattern().containing(z);
  if (!s) return evaluate(phi, z);
  if (mask[*s]) return 0.0;
  return evaluate(phi, representative(space.pattern().stitch(*s).shape));
}

struct Interval {
  double a;
  double b;
  std::size_t stitch;
};

std::vector<Interval> intervals_1d(const SmockingPattern& pattern) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Box b = bounds(pattern.stitch(i).shape);
    out.push_back({b.min[0], b.max[0], i});
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  return out;
}

// Furthest point reached from `pos` moving right with free length `rem`.
double reach_right(const std::vector<Interval>& iv, double pos, double rem) {
  for (const Interval& s : iv) {
    if (s.b < pos) continue;
    if (s.a > pos) {
      if (s.a - pos >= rem) return pos + rem;
      rem -= s.a - pos;
    }
    pos = std::max(pos, s.b);
  }
  return pos + rem;
}

std::vector<Interval> mirrored(std::vector<Interval> iv) {
  for (Interval& s : iv) s = {-s.b, -s.a, s.stitch};
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  return iv;
}

std::vector<double> breakpoints(const TestFunction& phi) {
  if (const auto* b = std::get_if<Bump>(&phi)) return {b->center[0] - b->radius, b->center[0], b->center[0] + b->radius};
  if (const auto* t = std::get_if<Tent>(&phi)) {
    return {t->center[0] - 1.0 / t->slope, t->center[0], t->center[0] + 1.0 / t->slope};
  }
  return {};
}

// 5-point Gauss-Legendre on [a, b]; exact for the polynomial pieces of the panel.
double gauss5(const TestFunction& phi, double a, double b) {
  static constexpr std::array<double, 5> kNodes = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                                   0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                     0.2369268850561891, 0.2369268850561891};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += kWeights[i] * evaluate(phi, Point{mid + half * kNodes[i]});
  return half * s;
}

Estimate integrate_exact_1d(const SmockedSpace& space, const TestFunction& phi, const Box& support) {
  const double lo = support.min[0];
  const double hi = support.max[0];
  const std::vector<Interval> iv = intervals_1d(space.pattern());
  std::vector<double> cuts{lo, hi};
  for (const Interval& s : iv) cuts.insert(cuts.end(), {s.a, s.b});
  for (double c : breakpoints(phi)) cuts.push_back(c);
  std::erase_if(cuts, [&](double c) { return c < lo || c > hi; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double mid = 0.5 * (a + b);
    auto hit = std::find_if(iv.begin(), iv.end(), [&](const Interval& s) { return s.a <= mid && mid <= s.b; });
    if (hit == iv.end()) {
      total += gauss5(phi, a, b);
    } else {
      total += evaluate(phi, representative(space.pattern().stitch(hit->stitch).shape)) * (b - a);
    }
  }
  return {total, 0.0};
}

Box check_support(const SmockedSpace& space, const Box& support) {
  if (support.dim() != space.dimension()) throw Error(ErrorCode::kDimensionMismatch, "support box dimension");
  check_shape(support);
  if (!space.pattern().window().contains(support, kWindowTol)) {
    throw Error(ErrorCode::kSupportOutsideWindow, "support box escapes the pattern window");
  }
  return support;
}

}  // namespace

PushforwardMeasure::PushforwardMeasure(const SmockedSpace& space, MeasureMethod method)
    : space_(&space), method_(std::move(method)) {
  if (std::holds_alternative<Exact1D>(method_) && space.dimension() != 1) {
    throw Error(ErrorCode::kMethodMismatch, "Exact1D needs dimension 1");
  }
  if (const auto* mc = std::get_if<MonteCarlo>(&method_); mc && mc->samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "Monte Carlo needs at least one sample");
  }
  if (const auto* g = std::get_if<GridMethod>(&method_); g && !(g->step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  }
}

double evaluate(const TestFunction& phi, const Point& x) {
  struct Visitor {
    const Point& x;
    double operator()(const Bump& b) const {
      const double t = distance(x, b.center) / b.radius;
      return t < 1.0 ? (1.0 - t * t) * (1.0 - t * t) : 0.0;
    }
    double operator()(const Tent& t) const { return std::max(0.0, 1.0 - t.slope * distance(x, t.center)); }
    double operator()(const Constant& c) const { return c.value; }
  };
  return std::visit(Visitor{x}, phi);
}

double evaluate(const TestFunction& phi, const SmockedSpace& space, const SpacePoint& x) {
  return evaluate(phi, space.lift(x));
}

double lipschitz_constant(const TestFunction& phi) {
  if (const auto* b = std::get_if<Bump>(&phi)) return 8.0 / (3.0 * std::sqrt(3.0) * b->radius);
  if (const auto* t = std::get_if<Tent>(&phi)) return t->slope;
  return 0.0;
}

double sup_norm(const TestFunction& phi) {
  if (const auto* c = std::get_if<Constant>(&phi)) return std::abs(c->value);
  return 1.0;
}

Estimate ball_volume(const PushforwardMeasure& m, const SpacePoint& center, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "ball radius must be positive");
  const SmockedSpace& space = m.space();
  const Box& window = space.pattern().window();
  const Shape center_set = space.lift_set(center);
  if (!center.is_collapsed() && !window.contains(space.lift(center), kWindowTol)) {
    throw Error(ErrorCode::kLiftOutsideWindow, "ball center lies outside the pattern window");
  }

  if (std::holds_alternative<Exact1D>(m.method())) {
    const Box start = bounds(center_set);
    const std::vector<Interval> iv = intervals_1d(space.pattern());
    const double right = reach_right(iv, start.max[0], r);
    const double left = -reach_right(mirrored(iv), -start.min[0], r);
    if (left < window.min[0] - kWindowTol || right > window.max[0] + kWindowTol) {
      throw Error(ErrorCode::kLiftOutsideWindow, "ball preimage exceeds the pattern window");
    }
    return {right - left, 0.0};
  }

  const double reach = local_preimage_bound(space.pattern(), center_set, r).radius;
  const Box box = bounds(center_set).expanded(reach);
  if (!window.contains(box, kWindowTol)) {
    throw Error(ErrorCode::kLiftOutsideWindow, "ball preimage box exceeds the pattern window");
  }
  const LiftProfile c = space.profile(center);
  auto dist_to_center = [&](const Point& z) { return space.distance(space.profile(space.project(z)), c); };

  if (const auto* mc = std::get_if<MonteCarlo>(&m.method())) {
    Moments mom;
    sweep_samples(*mc, box, [&](const Point& z) { mom.add(dist_to_center(z) < r ? 1.0 : 0.0); });
    return mom.estimate(mc->samples, box.volume());
  }
  const double step = std::get<GridMethod>(m.method()).step;
  const double hd = half_diagonal(box, step);
  Estimate out;
  sweep_cells(box, step, [&](const Point& z, double vol) {
    const double d = dist_to_center(z);
    if (d < r) out.value += vol;
    if (std::abs(d - r) <= hd) out.error += vol;
  });
  return out;
}

Estimate integrate(const PushforwardMeasure& m, const TestFunction& phi, const Box& support) {
  const SmockedSpace& space = m.space();
  check_support(space, support);
  if (std::holds_alternative<Exact1D>(m.method())) return integrate_exact_1d(space, phi, support);

  const std::vector<char> mask = atom_mask(space.pattern(), support);
  const double atoms = atom_mass(space, phi, mask);
  if (const auto* mc = std::get_if<MonteCarlo>(&m.method())) {
    Moments mom;
    sweep_samples(*mc, support, [&](const Point& z) { mom.add(integrand(space, phi, mask, z)); });
    Estimate e = mom.estimate(mc->samples, support.volume());
    e.value += atoms;
    return e;
  }
  const double step = std::get<GridMethod>(m.method()).step;
  const double hd = half_diagonal(support, step);
  const double lip = lipschitz_constant(phi);
  const double sup = sup_norm(phi);
  Estimate out{atoms, 0.0};
  sweep_cells(support, step, [&](const Point& z, double vol) {
    out.value += integrand(space, phi, mask, z) * vol;
    if (near_boundary(space.pattern(), z, hd)) {
      out.error += 2.0 * sup * vol;
    } else if (!space.pattern().containing(z)) {
      out.error += lip * hd * vol;
    }
  });
  return out;
}

WeakConvergenceReport weak_convergence_check(const PatternFamily& family, std::span<const TestFunction> phis,
                                             std::span<const int> ks, const SmockedSpace& limit,
                                             const MeasureMethod& method, const Box& support) {
  if (phis.empty()) throw Error(ErrorCode::kEmptyOperand, "test function panel is empty");
  check_support(limit, support);
  const PushforwardMeasure mu_limit(limit, method);
  const auto* mc = std::get_if<MonteCarlo>(&method);
  const double sigmas = mc ? 3.0 : 1.0;
  const std::vector<char> limit_mask = atom_mask(limit.pattern(), support);

  WeakConvergenceReport rep;
  std::vector<const WeakConvergenceRow*> previous(phis.size(), nullptr);
  rep.rows.reserve(ks.size() * phis.size());
  for (int k : ks) {
    const SmockedSpace xk(family(k));
    check_support(xk, support);
    const PushforwardMeasure mu_k(xk, method);
    const std::vector<char> mask = atom_mask(xk.pattern(), support);
    for (std::size_t p = 0; p < phis.size(); ++p) {
      WeakConvergenceRow row;
      row.k = k;
      row.phi = p;
      row.stitch_volume = xk.pattern().total_volume();
      if (mc) {
        // Common samples for both measures.
        Moments a, b, diff;
        sweep_samples(*mc, support, [&](const Point& z) {
          const double va = integrand(xk, phis[p], mask, z);
          const double vb = integrand(limit, phis[p], limit_mask, z);
          a.add(va);
          b.add(vb);
          diff.add(va - vb);
        });
        const double vol = support.volume();
        const double atoms_k = atom_mass(xk, phis[p], mask);
        const double atoms_l = atom_mass(limit, phis[p], limit_mask);
        row.mu_k = a.estimate(mc->samples, vol);
        row.mu_k.value += atoms_k;
        row.mu_limit = b.estimate(mc->samples, vol);
        row.mu_limit.value += atoms_l;
        const Estimate g = diff.estimate(mc->samples, vol);
        row.gap = g.value + atoms_k - atoms_l;
        row.gap_error = g.error;
      } else {
        row.mu_k = integrate(mu_k, phis[p], support);
        row.mu_limit = integrate(mu_limit, phis[p], support);
        row.gap = row.mu_k.value - row.mu_limit.value;
        row.gap_error = row.mu_k.error + row.mu_limit.error;
      }
      rep.rows.push_back(row);
    }
    for (std::size_t p = 0; p < phis.size(); ++p) {
      WeakConvergenceRow& row = rep.rows[rep.rows.size() - phis.size() + p];
      if (previous[p] && std::abs(row.gap) > std::abs(previous[p]->gap) + sigmas * (row.gap_error + previous[p]->gap_error)) {
        row.increased = true;
        ++rep.increases;
      }
      previous[p] = &row;
    }
  }
  return rep;
}

}  // namespace smock
