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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smock/constructions.hpp"
#include "smock/error.hpp"
#include "smock/smocked.hpp"

namespace smock {
namespace {

Box square(double w) { return Box{Point{-w, -w}, Point{w, w}}; }
Box line(double w) { return Box{Point{-w}, Point{w}}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Validate, TwoBallsSeparation) {
  const auto p = SmockingPattern::validate(
      2, {{Ball{Point{0.0, 0.0}, 1.0}, 0}, {Ball{Point{5.0, 0.0}, 1.0}, 1}}, square(10.0));
  EXPECT_DOUBLE_EQ(p.delta(), 3.0);
  EXPECT_EQ(p.l_min(), 2.0);
  EXPECT_EQ(p.l_max(), 2.0);
}

TEST(Validate, Rejections) {
  EXPECT_EQ(code_of([] {
              SmockingPattern::validate(
                  2, {{Box{Point{0.0, 0.0}, Point{1.0, 1.0}}, 0}, {Box{Point{0.5, 0.5}, Point{2.0, 2.0}}, 1}},
                  square(5.0));
            }),
            ErrorCode::kOverlappingStitches);
  EXPECT_EQ(code_of([] {
              SmockingPattern::validate(1, {{Box{Point{0.0}, Point{1.0}}, 0}, {Box{Point{1.0 + 1e-14}, Point{2.0}}, 1}},
                                        line(5.0));
            }),
            ErrorCode::kZeroSeparation);
  EXPECT_EQ(code_of([] { SmockingPattern::validate(1, {{Cloud{{Point{0.0}, Point{1.0}}}, 0}}, line(5.0)); }),
            ErrorCode::kDisconnectedStitch);
  EXPECT_EQ(code_of([] { SmockingPattern::validate(1, {{Box{Point{7.0}, Point{8.0}}, 0}}, line(5.0)); }),
            ErrorCode::kStitchOutsideWindow);
  EXPECT_EQ(code_of([] { SmockingPattern::validate(2, {{Box{Point{0.0}, Point{1.0}}, 0}}, square(5.0)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Validate, Example31GapIsDelta) {
  const Example31 e = example31(4);
  EXPECT_NEAR(e.pattern.delta(), e.gap, 1e-15);
  // Four intervals of total length 1/3 with equal gaps and half gaps at the ends.
  EXPECT_NEAR(e.gap, (2.0 - 1.0 / 3.0) / 4.0, 1e-15);
}

TEST(Constants, SingleBallInSquare) {
  const auto p = SmockingPattern::validate(2, {{Ball{Point{0.0, 0.0}, 1.0}, 0}}, square(10.0));
  const SmockingConstants c = smocking_constants(p, square(10.0), 0.5);
  EXPECT_EQ(c.l_min, 2.0);
  EXPECT_EQ(c.l_max, 2.0);
  EXPECT_FALSE(c.depth_infinite);
  EXPECT_NEAR(c.depth_h, 10.0 * std::sqrt(2.0) - 1.0, 1e-12);  // the corner is on the grid
  EXPECT_NEAR(c.depth_error, 0.5 * std::sqrt(2.0), 1e-15);
}

TEST(Constants, UnitSpacedPoints) {
  std::vector<Stitch> s;
  for (int i = -5; i <= 5; ++i) s.push_back({Cloud{{Point{static_cast<double>(i)}}}, i + 5});
  const auto p = SmockingPattern::validate(1, s, line(5.0));
  const SmockingConstants c = smocking_constants(p, line(5.0), 0.05);
  EXPECT_DOUBLE_EQ(c.delta, 1.0);
  EXPECT_NEAR(c.depth_h, 0.5, 0.05 + 1e-12);
  EXPECT_EQ(c.l_max, 0.0);
}

TEST(Constants, Remark36StitchOutsideSmallWindow) {
  const SmockingPattern p = remark36(10);
  const SmockingConstants c = smocking_constants(p, line(5.0), 0.1);
  EXPECT_TRUE(c.depth_infinite);
  EXPECT_TRUE(std::isinf(c.depth_h));
  EXPECT_EQ(c.stitches_in_window, 0u);
}

TEST(Constants, EmptyPatternThrows) {
  const auto p = SmockingPattern::validate(1, {}, line(1.0));
  EXPECT_EQ(code_of([&] { smocking_constants(p, line(1.0), 0.1); }), ErrorCode::kEmptyPattern);
}

TEST(Distance, SpecExamples) {
  const SmockedSpace empty(SmockingPattern::validate(2, {}, square(10.0)));
  EXPECT_DOUBLE_EQ(empty.pseudometric(Point{0.0, 0.0}, Point{3.0, 4.0}), 5.0);

  const SmockedSpace seg(SmockingPattern::validate(2, {{Segment{Point{0.0, 0.0}, Point{1.0, 0.0}}, 0}}, square(10.0)));
  EXPECT_DOUBLE_EQ(seg.pseudometric(Point{-1.0, 0.0}, Point{2.0, 0.0}), 2.0);
  EXPECT_EQ(seg.pseudometric(Point{0.2, 0.0}, Point{0.9, 0.0}), 0.0);
  EXPECT_EQ(seg.pseudometric(Point{0.3, 0.4}, Point{0.3, 0.4}), 0.0);
  EXPECT_EQ(d_k_exact(seg, Point{-1.0, 0.0}, Point{2.0, 0.0}, 0), 3.0);
  EXPECT_DOUBLE_EQ(d_k_exact(seg, Point{-1.0, 0.0}, Point{2.0, 0.0}, 1), 2.0);
}

TEST(Distance, ProjectAndLift) {
  const SmockedSpace s(SmockingPattern::validate(1, {{Box{Point{0.0}, Point{1.0}}, 7}}, line(3.0)));
  EXPECT_TRUE(s.project(Point{0.5}).is_collapsed());
  EXPECT_FALSE(s.project(Point{1.5}).is_collapsed());
  EXPECT_EQ(s.lift(SpacePoint::collapsed(0)), Point{0.5});
  EXPECT_EQ(s.distance(SpacePoint::collapsed(0), SpacePoint::free(Point{2.0})), 1.0);
  EXPECT_EQ(label_of(s, SpacePoint::collapsed(0)), label_of(s, s.project(Point{0.25})));
}

TEST(Distance, LiftOutsideWindowThrows) {
  const SmockedSpace s(SmockingPattern::validate(1, {{Box{Point{0.0}, Point{1.0}}, 0}}, line(3.0)));
  EXPECT_EQ(code_of([&] { s.pseudometric(Point{0.0}, Point{4.0}); }), ErrorCode::kLiftOutsideWindow);
}

TEST(Distance, OneDimensionalFormula) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Stitch> s;
    double x = -3.0;
    std::uniform_real_distribution<double> len(0.05, 0.5);
    for (int i = 0; i < 6; ++i) {
      x += len(rng);
      const double a = x;
      x += len(rng);
      s.push_back({Box{Point{a}, Point{x}}, i});
    }
    const SmockedSpace space(SmockingPattern::validate(1, s, line(4.0)));
    for (int q = 0; q < 10; ++q) {
      const double v = oracle::random_point(rng, 1, 3.5)[0];
      const double w = oracle::random_point(rng, 1, 3.5)[0];
      EXPECT_NEAR(space.pseudometric(Point{v}, Point{w}), oracle::line_distance(space.pattern(), v, w), 1e-12);
    }
  }
}

TEST(Distance, MatchesDkEnumeration) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const SmockedSpace space(oracle::random_pattern(rng, 2, 5, 0.05));
    const double delta = space.pattern().delta();
    for (int q = 0; q < 5; ++q) {
      const Point v = oracle::random_point(rng, 2, 2.5);
      const Point w = oracle::random_point(rng, 2, 2.5);
      const double d = space.pseudometric(v, w);
      const std::size_t m = std::min<std::uint64_t>(crossing_bound(distance(v, w), delta), space.pattern().size());
      EXPECT_NEAR(d, min_d_k_exact(space, v, w, m), 1e-9);
      double direct = kInfinity;
      for (std::size_t k = 0; k <= std::min<std::size_t>(3, space.pattern().size()); ++k) {
        direct = std::min(direct, d_k_exact(space, v, w, k));
      }
      EXPECT_LE(d, direct + 1e-9);
    }
  }
}

TEST(Distance, DenseSamplingUpperBound) {
  std::mt19937_64 rng(23);
  const double h = 0.05;
  for (int trial = 0; trial < 10; ++trial) {
    const SmockedSpace space(oracle::random_pattern(rng, 2, 3, 0.1));
    const Point v = oracle::random_point(rng, 2, 2.5);
    const Point w = oracle::random_point(rng, 2, 2.5);
    const double d = space.pseudometric(v, w);
    const double sampled = oracle::sampled_distance(space.pattern(), v, w, h);
    EXPECT_LE(d, sampled + 1e-12);
    EXPECT_GE(d, sampled - 2.0 * h * static_cast<double>(space.pattern().size()) - 1e-12);
  }
}

TEST(Distance, MetricAxiomsAndCollapse) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const SmockedSpace space(oracle::random_pattern(rng, 2, 6, 0.05));
    std::vector<SpacePoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(space.project(oracle::random_point(rng, 2, 2.5)));
    for (std::size_t i = 0; i < space.pattern().size(); ++i) pts.push_back(SpacePoint::collapsed(i));
    for (const auto& a : pts) {
      EXPECT_EQ(space.distance(a, a), 0.0);
      for (const auto& b : pts) {
        const double ab = space.distance(a, b);
        EXPECT_GE(ab, 0.0);
        EXPECT_NEAR(ab, space.distance(b, a), 1e-12);
        EXPECT_LE(ab, distance(space.lift(a), space.lift(b)) + 1e-12);
        for (const auto& c : pts) EXPECT_LE(space.distance(a, c), ab + space.distance(b, c) + 1e-9);
      }
    }
  }
}

TEST(Distance, RefinementNeverIncreases) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const SmockingPattern big = oracle::random_pattern(rng, 2, 6, 0.05);
    std::vector<Stitch> half(big.stitches().begin(), big.stitches().begin() + (big.size() + 1) / 2);
    const SmockedSpace a(SmockingPattern::validate(2, half, big.window()));
    const SmockedSpace b(big);
    for (int q = 0; q < 10; ++q) {
      const Point v = oracle::random_point(rng, 2, 2.5);
      const Point w = oracle::random_point(rng, 2, 2.5);
      EXPECT_LE(b.pseudometric(v, w), a.pseudometric(v, w) + 1e-12);
    }
  }
}

TEST(Distance, ProfilesAgree) {
  std::mt19937_64 rng(37);
  const SmockedSpace space(oracle::random_pattern(rng, 2, 6, 0.05));
  for (int q = 0; q < 50; ++q) {
    const SpacePoint u = space.project(oracle::random_point(rng, 2, 2.5));
    const SpacePoint v = space.project(oracle::random_point(rng, 2, 2.5));
    EXPECT_NEAR(space.distance(space.profile(u), space.profile(v)), space.distance(u, v), 1e-12);
  }
}

TEST(DkExact, BudgetExceeded) {
  std::mt19937_64 rng(41);
  const SmockedSpace space(oracle::random_pattern(rng, 2, 6, 0.05));
  EXPECT_EQ(code_of([&] { d_k_exact(space, Point{0.0, 0.0}, Point{1.0, 1.0}, 6, 10); }), ErrorCode::kBudgetExceeded);
}

TEST(Bounds, CrossingBound) {
  EXPECT_EQ(crossing_bound(2.0, 0.5), 5u);
  EXPECT_EQ(crossing_bound(0.3, 0.5), 1u);
  EXPECT_EQ(crossing_bound(2.0 * 1.0 + 2.0, 1.0), 5u);
  EXPECT_EQ(crossing_bound(3.0, kInfinity), 1u);
  EXPECT_THROW(crossing_bound(1.0, 0.0), Error);
  EXPECT_THROW(crossing_bound(-1.0, 1.0), Error);
}

TEST(Bounds, PreimageRadius) {
  EXPECT_EQ(preimage_radius(2.0, 0.0, 0.5), 2.0);
  EXPECT_EQ(preimage_radius(1.0, 1.0, 1.0), 4.0);
  EXPECT_THROW(preimage_radius(0.0, 1.0, 1.0), Error);
  EXPECT_THROW(preimage_radius(1.0, 1.0, 0.0), Error);
}

TEST(Bounds, PolylinesMeetFewStitches) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> step(-0.4, 0.4);
  for (int trial = 0; trial < 100; ++trial) {
    const SmockingPattern p = oracle::random_pattern(rng, 2, 6, 0.1);
    std::vector<Point> poly{oracle::random_point(rng, 2, 2.0)};
    double length = 0.0;
    for (int i = 0; i < 8; ++i) {
      poly.push_back(poly.back() + Point{step(rng), step(rng)});
      length += distance(poly[poly.size() - 2], poly.back());
    }
    EXPECT_LE(stitches_met(p, poly).size(), crossing_bound(length, p.delta()));
  }
}

TEST(Bounds, BallLiftsStayInsidePreimageRadius) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const SmockedSpace space(oracle::random_pattern(rng, 2, 6, 0.1, 6.0));
    const double r = 1.0;
    const double big = preimage_radius(r, space.pattern().l_max(), space.pattern().delta());
    for (int q = 0; q < 200; ++q) {
      const Point z = oracle::random_point(rng, 2, 5.5);
      if (space.pseudometric(Point{0.0, 0.0}, z) < r) {
        EXPECT_LE(norm(z), big + 1e-12);
      }
    }
  }
}

TEST(Net, SegmentWithoutStitches) {
  const SmockedSpace s(SmockingPattern::validate(1, {}, line(3.0)));
  const BallNet net = ball_net(s, SpacePoint::free(Point{0.0}), 1.0, 0.5);
  ASSERT_EQ(net.metric.size(), 5u);
  std::vector<double> xs;
  for (const SpacePoint& p : net.points) xs.push_back(p.point()[0]);
  std::sort(xs.begin(), xs.end());
  const std::vector<double> want{-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(xs[i], want[i], 1e-12);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(net.metric(i, j), std::abs(net.points[i].point()[0] - net.points[j].point()[0]), 1e-12);
    }
  }
  EXPECT_EQ(net.points[net.metric.base_index()], SpacePoint::free(Point{0.0}));
}

TEST(Net, SeparationCoverageAndStitches) {
  std::mt19937_64 rng(53);
  const SmockedSpace space(oracle::random_pattern(rng, 2, 5, 0.5, 10.0));
  const SpacePoint c = space.basepoint();
  const double radius = 1.0;
  const double eps = 0.2;
  const BallNet net = ball_net(space, c, radius, eps);
  const auto& m = net.metric;
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m(i, i), 0.0);
    for (std::size_t j = 0; j < m.size(); ++j) {
      EXPECT_EQ(m(i, j), m(j, i));
      if (i != j) {
        EXPECT_GE(m(i, j), eps / 2.0 - 1e-12);
      }
    }
  }
  for (std::size_t s = 0; s < space.pattern().size(); ++s) {
    if (space.distance(c, SpacePoint::collapsed(s)) > radius) continue;
    bool present = false;
    for (const SpacePoint& p : net.points) present = present || p == SpacePoint::collapsed(s);
    EXPECT_TRUE(present) << "stitch " << s;
  }
  for (int q = 0; q < 300; ++q) {
    const SpacePoint z = space.project(oracle::random_point(rng, 2, 2.0));
    if (space.distance(c, z) > radius) continue;
    double best = kInfinity;
    for (const SpacePoint& p : net.points) best = std::min(best, space.distance(p, z));
    EXPECT_LE(best, eps + net.resolution + 1e-12);
  }
}

TEST(Net, Example32CloseToEuclidean) {
  const int k = 16;
  const SmockedSpace space(example32(k, 2));
  const BallNet net = ball_net(space, space.basepoint(), 1.0, 0.25);
  for (std::size_t i = 0; i < net.metric.size(); ++i) {
    for (std::size_t j = 0; j < net.metric.size(); ++j) {
      const double e = distance(space.lift(net.points[i]), space.lift(net.points[j]));
      EXPECT_LE(std::abs(net.metric(i, j) - e), 4.0 / k + 1e-12);
    }
  }
}

}  // namespace
}  // namespace smock
