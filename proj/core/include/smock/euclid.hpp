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

#pragma once

// Exact Euclidean geometry of stitch shapes: diameters, point-to-set and
// set-to-set distances, and Hausdorff distance between finite unions.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace smock {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  static Point zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(Point a, double s);
Point operator*(double s, Point a);

double dot(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);

struct Ball {
  Point center;
  double radius = 0.0;
};

// Closed axis-aligned box [min, max].
struct Box {
  Point min;
  Point max;

  std::size_t dim() const noexcept { return min.dim(); }
  bool contains(const Point& p, double tol = 0.0) const;
  bool contains(const Box& inner, double tol = 0.0) const;
  double volume() const;
  Point center() const;
  Box expanded(double margin) const;
};

struct Segment {
  Point a;
  Point b;
};

// Finite point set. Only single-point clouds are connected.
struct Cloud {
  std::vector<Point> points;
};

using Shape = std::variant<Ball, Box, Segment, Cloud>;

struct Stitch {
  Shape shape;
  int id = 0;
};

// A finite union of shapes; the operand type of hausdorff().
using CompactSet = std::vector<Shape>;

std::size_t dimension(const Shape& s);

// Throws kInvalidArgument for non-finite coordinates, radius <= 0,
// min > max, empty clouds, or mixed dimensions inside one shape.
void check_shape(const Shape& s);

bool is_connected(const Shape& s);

double diam(const Shape& s);

// Exact min over z in s of |p - z|. Throws kDimensionMismatch.
double dist_point_set(const Point& p, const Shape& s);

// Exact max over z in s of |p - z|.
double max_dist_point_set(const Point& p, const Shape& s);

// Exact min over z in s1, z' in s2 of |z - z'|. Closed forms cover every
// pair of convex shapes except box-segment, which minimizes the convex
// function t -> dist(a + t(b - a), box) by golden-section search to
// machine precision.
double dist_set_set(const Shape& s1, const Shape& s2);

bool contains(const Shape& s, const Point& p);

// A canonical point of the shape: ball/box center, segment midpoint, first
// cloud point. Used as the lift of a collapsed stitch.
Point representative(const Shape& s);

Box bounds(const Shape& s);

// N-dimensional Lebesgue volume (zero for segments and clouds when N > 1).
double volume(const Shape& s);

// Points of s such that every point of s lies within `covering` of one of
// them. Grid samples are projected onto the shape, which is convex.
std::vector<Point> sample_shape(const Shape& s, double covering);

struct HausdorffResult {
  double value = 0.0;
  double error = 0.0;  // |value - true distance| <= error
  bool exact = false;
};

// Exact for 1-D operands (interval arithmetic); otherwise samples both sets
// with covering radius `resolution` and returns an error bar of that size.
HausdorffResult hausdorff(const CompactSet& a, const CompactSet& b, double resolution);

// Directed: sup over a in A of dist(a, B).
HausdorffResult directed_hausdorff(const CompactSet& a, const CompactSet& b, double resolution);

}  // namespace smock
