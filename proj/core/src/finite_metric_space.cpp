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

#include "smock/finite_metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "smock/error.hpp"

namespace smock {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist,
                                     std::size_t base_index, std::vector<Point> coords)
    : labels_(std::move(labels)), dist_(std::move(dist)), base_(base_index), coords_(std::move(coords)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw Error(ErrorCode::kEmptyOperand, "finite metric space has no points");
  if (dist_.size() != n * n) throw Error(ErrorCode::kInvalidArgument, "distance matrix is not n x n");
  if (base_ >= n) throw Error(ErrorCode::kInvalidArgument, "base index out of range");
  if (!coords_.empty() && coords_.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "coordinate list does not match point count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)(i, i) != 0.0) throw Error(ErrorCode::kInvalidArgument, "nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = (*this)(i, j);
      const double b = (*this)(j, i);
      if (!(a >= 0.0) || !std::isfinite(a)) throw Error(ErrorCode::kInvalidArgument, "negative or non-finite distance");
      if (std::abs(a - b) > 1e-9) throw Error(ErrorCode::kInvalidArgument, "distance matrix is not symmetric");
    }
  }
  if (n <= kAutoTriangleCheck) check_triangle_inequality();
}

double FiniteMetricSpace::diameter() const { return *std::max_element(dist_.begin(), dist_.end()); }

FiniteMetricSpace FiniteMetricSpace::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::kInvalidArgument, "scale factor must be positive");
  FiniteMetricSpace out = *this;
  for (double& d : out.dist_) d *= factor;
  return out;
}

double FiniteMetricSpace::triangle_defect() const {
  const std::size_t n = size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        worst = std::max(worst, (*this)(i, k) - (*this)(i, j) - (*this)(j, k));
      }
    }
  }
  return worst;
}

void FiniteMetricSpace::check_triangle_inequality(double tol) const {
  if (triangle_defect() > tol) throw Error(ErrorCode::kInvalidArgument, "triangle inequality violated");
}

}  // namespace smock
