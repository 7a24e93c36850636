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

#include "smock/constructions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>

#include "smock/error.hpp"

namespace smock {
namespace {

void require_k(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "family parameter k must be >= 1, got " + std::to_string(k));
}

Box cube(std::size_t n, double half_width) {
  return Box{Point(std::vector<double>(n, -half_width)), Point(std::vector<double>(n, half_width))};
}

LatticePoint negated(LatticePoint v) {
  for (auto& c : v) c = -c;
  return v;
}

std::int64_t inf_norm(const LatticePoint& v) {
  std::int64_t m = 0;
  for (auto c : v) m = std::max(m, c < 0 ? -c : c);
  return m;
}

// Distance from 0 to p on the lattice restricted to `box`; +inf when p is
// unreachable inside it.
double dijkstra_in_box(const NormSpec& spec, const LatticePoint& p, const SearchBox& box) {
  const std::size_t n = spec.dimension();
  std::vector<std::int64_t> extent(n);
  std::vector<std::size_t> stride(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    extent[i] = box.hi[i] - box.lo[i] + 1;
    stride[i] = total;
    total *= static_cast<std::size_t>(extent[i]);
  }
  auto index_of = [&](const LatticePoint& q) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx += static_cast<std::size_t>(q[i] - box.lo[i]) * stride[i];
    return idx;
  };
  const std::size_t source = index_of(LatticePoint(n, 0));
  const std::size_t target = index_of(p);
  if (source == target) return 0.0;

  std::vector<double> dist(total, kInfinity);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  LatticePoint q(n);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == target) return d;
    std::size_t rest = u;
    for (std::size_t i = n; i-- > 0;) {
      q[i] = box.lo[i] + static_cast<std::int64_t>(rest / stride[i]);
      rest %= stride[i];
    }
    for (std::size_t g = 0; g < spec.size(); ++g) {
      const LatticePoint& v = spec.generators()[g];
      std::size_t w = 0;
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        const std::int64_t c = q[i] + v[i];
        inside = c >= box.lo[i] && c <= box.hi[i];
        w += static_cast<std::size_t>(c - box.lo[i]) * stride[i];
      }
      if (!inside) continue;
      const double nd = d + spec.weights()[g];
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return kInfinity;
}

// Least cost of leaving `box` from 0.
double exit_cost(const NormSpec& spec, const SearchBox& box) {
  std::int64_t inner = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < spec.dimension(); ++i) inner = std::min({inner, box.hi[i], -box.lo[i]});
  std::int64_t vmax = 0;
  for (const auto& v : spec.generators()) vmax = std::max(vmax, inf_norm(v));
  const double lmin = *std::min_element(spec.weights().begin(), spec.weights().end());
  const std::int64_t steps = (inner + 1 + vmax - 1) / vmax;
  return static_cast<double>(steps) * lmin;
}

constexpr double kMaxLatticeNodes = 5e7;

}  // namespace

Example31 example31(int k) {
  require_k(k);
  Example31 out;
  out.count = k;
  out.total_length = (k % 2 == 0) ? 1.0 / 3.0 : 2.0 / 3.0;
  out.gap = (2.0 - out.total_length) / k;
  out.expected_endpoint_distance = 2.0 - out.total_length;
  const double len = out.total_length / k;
  std::vector<Stitch> stitches;
  for (int i = 0; i < k; ++i) {
    const double a = -1.0 + out.gap / 2.0 + i * (len + out.gap);
    stitches.push_back({Box{Point{a}, Point{a + len}}, i});
  }
  out.pattern = SmockingPattern::validate(1, std::move(stitches), cube(1, 2.0));
  return out;
}

SmockingPattern example32(int k, std::size_t n, double window_half_width) {
  require_k(k);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  std::vector<Stitch> stitches{{Ball{Point::zero(n), 1.0 / k}, 0}};
  return SmockingPattern::validate(n, std::move(stitches), cube(n, window_half_width));
}

SmockingPattern remark36(int k, std::optional<double> window_half_width) {
  require_k(k);
  const double a = static_cast<double>(k) * k;
  const double w = window_half_width.value_or(std::max(a + k + 1.0, 64.0));
  std::vector<Stitch> stitches{{Box{Point{a}, Point{a + k}}, 0}};
  return SmockingPattern::validate(1, std::move(stitches), cube(1, w));
}

NormSpec NormSpec::make(std::vector<LatticePoint> generators, std::vector<double> weights) {
  if (generators.empty()) throw Error(ErrorCode::kInvalidArgument, "norm spec has no generators");
  if (generators.size() != weights.size()) throw Error(ErrorCode::kInvalidArgument, "one weight per generator");
  NormSpec s;
  s.dim_ = generators.front().size();
  if (s.dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "generators must have dimension >= 1");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != s.dim_) throw Error(ErrorCode::kDimensionMismatch, "generator dimensions differ");
    if (inf_norm(generators[i]) == 0) throw Error(ErrorCode::kInvalidArgument, "zero generator");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::kInvalidArgument, "generator weights must be positive and finite");
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const LatticePoint neg = negated(generators[i]);
    auto it = std::find(generators.begin(), generators.end(), neg);
    if (it == generators.end()) throw Error(ErrorCode::kInvalidArgument, "generator set is not closed under negation");
    const std::size_t j = static_cast<std::size_t>(it - generators.begin());
    if (weights[j] != weights[i]) throw Error(ErrorCode::kInvalidArgument, "v and -v carry different weights");
    if (std::find(generators.begin(), generators.begin() + static_cast<std::ptrdiff_t>(i), generators[i]) !=
        generators.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate generator");
    }
    if (j > i) s.half_.push_back(i);
  }
  Eigen::MatrixXd a(s.dim_, s.half_.size());
  for (std::size_t c = 0; c < s.half_.size(); ++c) {
    for (std::size_t r = 0; r < s.dim_; ++r) a(r, c) = static_cast<double>(generators[s.half_[c]][r]);
  }
  if (static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(a).rank()) < s.dim_) {
    throw Error(ErrorCode::kNoRepresentation, "generators do not span R^" + std::to_string(s.dim_));
  }
  s.generators_ = std::move(generators);
  s.weights_ = std::move(weights);
  return s;
}

NormSpec NormSpec::l1(std::size_t n) {
  std::vector<LatticePoint> gens;
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint e(n, 0);
    e[i] = 1;
    gens.push_back(e);
    gens.push_back(negated(e));
  }
  return make(std::move(gens), std::vector<double>(2 * n, 1.0));
}

double polyhedral_norm(const NormSpec& spec, const RationalVector& x) {
  const std::size_t n = spec.dimension();
  if (x.num.size() != n) throw Error(ErrorCode::kDimensionMismatch, "point dimension differs from the norm spec");
  if (x.den <= 0) throw Error(ErrorCode::kInvalidArgument, "rational denominator must be positive");
  if (inf_norm(x.num) == 0) return 0.0;

  // Basic solutions: x = sum over a basis B of a_i v_i, with a_i from
  // Cramer's rule on integer determinants (rounded, hence exact).
  const auto& half = spec.half();
  const std::size_t h = half.size();
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  double best = kInfinity;
  Eigen::MatrixXd basis(n, n);
  auto det_of = [&](const Eigen::MatrixXd& m) { return static_cast<double>(std::llround(m.determinant())); };
  while (true) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = 0; r < n; ++r) basis(r, c) = static_cast<double>(spec.generators()[half[pick[c]]][r]);
    }
    const double det = det_of(basis);
    if (det != 0.0) {
      double cost = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        Eigen::MatrixXd m = basis;
        for (std::size_t r = 0; r < n; ++r) m(r, c) = static_cast<double>(x.num[r]);
        cost += std::abs(det_of(m)) * spec.weights()[half[pick[c]]];
      }
      best = std::min(best, cost / std::abs(det));
    }
    std::size_t i = n;
    while (i-- > 0 && pick[i] == h - n + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::kNoRepresentation, "no basis of generators represents the point");
  return best / static_cast<double>(x.den);
}

double polyhedral_norm(const NormSpec& spec, const LatticePoint& x) { return polyhedral_norm(spec, RationalVector{x, 1}); }

double lattice_word_metric(const NormSpec& spec, const LatticePoint& p, const std::optional<SearchBox>& box) {
  const std::size_t n = spec.dimension();
  if (p.size() != n) throw Error(ErrorCode::kDimensionMismatch, "point dimension differs from the norm spec");
  if (inf_norm(p) == 0) return 0.0;
  if (box) {
    if (box->lo.size() != n || box->hi.size() != n) throw Error(ErrorCode::kDimensionMismatch, "search box dimension");
    for (std::size_t i = 0; i < n; ++i) {
      if (box->lo[i] > 0 || box->hi[i] < 0 || p[i] < box->lo[i] || p[i] > box->hi[i]) {
        throw Error(ErrorCode::kSearchBoxTooSmall, "search box must contain 0 and p");
      }
    }
    const double d = dijkstra_in_box(spec, p, *box);
    if (d > exit_cost(spec, *box)) {
      throw Error(ErrorCode::kSearchBoxTooSmall, "a geodesic may leave the search box");
    }
    return d;
  }
  std::int64_t m = std::max<std::int64_t>(inf_norm(p), 1);
  while (true) {
    if (std::pow(2.0 * static_cast<double>(m) + 1.0, static_cast<double>(n)) > kMaxLatticeNodes) {
      throw Error(ErrorCode::kBudgetExceeded, "lattice search box outgrew " + std::to_string(static_cast<std::uint64_t>(kMaxLatticeNodes)) + " nodes");
    }
    const SearchBox b{LatticePoint(n, -m), LatticePoint(n, m)};
    const double d = dijkstra_in_box(spec, p, b);
    if (d <= exit_cost(spec, b)) return d;
    m *= 2;
  }
}

double stable_norm_estimate(const NormSpec& spec, const RationalVector& x, std::int64_t lambda) {
  if (lambda < 1) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 1");
  if (x.den <= 0) throw Error(ErrorCode::kInvalidArgument, "rational denominator must be positive");
  LatticePoint p(x.num.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if ((lambda * x.num[i]) % x.den != 0) {
      throw Error(ErrorCode::kInvalidArgument, "lambda * x is not a lattice point");
    }
    p[i] = lambda * x.num[i] / x.den;
  }
  return lattice_word_metric(spec, p) / static_cast<double>(lambda);
}

double norm_defect(const NormSpec& spec, std::span<const LatticePoint> sample) {
  if (sample.empty()) throw Error(ErrorCode::kEmptyOperand, "norm_defect needs a nonempty sample");
  std::map<LatticePoint, double> memo;
  double worst = 0.0;
  for (const auto& p : sample) {
    for (const auto& q : sample) {
      if (p.size() != spec.dimension() || q.size() != spec.dimension()) {
        throw Error(ErrorCode::kDimensionMismatch, "sample point dimension differs from the norm spec");
      }
      LatticePoint diff(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - q[i];
      auto it = memo.find(diff);
      if (it == memo.end()) {
        const double gap = std::abs(lattice_word_metric(spec, diff) - polyhedral_norm(spec, diff));
        it = memo.emplace(diff, gap).first;
      }
      worst = std::max(worst, it->second);
    }
  }
  return worst;
}

SmockingPattern lattice_nodes(const NormSpec& spec, double node_radius, int k) {
  require_k(k);
  if (!(node_radius > 0.0) || !(node_radius < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "node radius must lie in (0, 1/2)");
  }
  const std::size_t n = spec.dimension();
  std::vector<Stitch> stitches;
  std::vector<std::int64_t> idx(n, -k);
  int id = 0;
  while (true) {
    std::vector<double> c(idx.begin(), idx.end());
    stitches.push_back({Ball{Point(std::move(c)), node_radius}, id++});
    std::size_t i = 0;
    while (i < n && idx[i] == k) idx[i++] = -k;
    if (i == n) break;
    ++idx[i];
  }
  return SmockingPattern::validate(n, std::move(stitches), cube(n, k + 1.0));
}

SmockingPattern instantiate(const FamilySpec& family, int k) {
  require_k(k);
  struct Visitor {
    int k;
    SmockingPattern operator()(const Example31Family&) const { return example31(k).pattern; }
    SmockingPattern operator()(const Example32Family& f) const { return example32(k, f.dimension); }
    SmockingPattern operator()(const Remark36Family&) const { return remark36(k); }
    SmockingPattern operator()(const LatticeFamily& f) const { return lattice_nodes(f.spec, f.node_radius, k); }
    SmockingPattern operator()(const CustomFamily& f) const { return f.pattern; }
  };
  return std::visit(Visitor{k}, family);
}

std::string family_name(const FamilySpec& family) {
  static constexpr const char* kNames[] = {"example31", "example32", "remark36", "lattice", "custom"};
  return kNames[family.index()];
}

PatternFamily as_pattern_family(FamilySpec family) {
  return [f = std::move(family)](int k) { return instantiate(f, k); };
}

}  // namespace smock
