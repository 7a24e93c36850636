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

#include <cstddef>
#include <string>
#include <vector>

#include "smock/euclid.hpp"

namespace smock {

// Labelled points with a dense symmetric distance matrix. Spaces built from
// smocked nets also carry the Euclidean lift of every point in coords().
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  // `dist` is row-major size()*size(). Throws kInvalidArgument unless the
  // matrix is square, symmetric (1e-9), nonnegative, with zero diagonal.
  // The triangle inequality is checked as well for spaces of at most
  // kAutoTriangleCheck points.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist, std::size_t base_index = 0,
                    std::vector<Point> coords = {});

  static constexpr std::size_t kAutoTriangleCheck = 64;

  std::size_t size() const noexcept { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
  std::size_t base_index() const noexcept { return base_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Point>& coords() const noexcept { return coords_; }
  bool has_coords() const noexcept { return !coords_.empty(); }
  const std::vector<double>& matrix() const noexcept { return dist_; }

  double diameter() const;
  FiniteMetricSpace scaled(double factor) const;

  // Largest violation d(i,k) - d(i,j) - d(j,k) over all triples (O(n^3)).
  double triangle_defect() const;
  void check_triangle_inequality(double tol = 1e-9) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::size_t base_ = 0;
  std::vector<Point> coords_;
};

}  // namespace smock
