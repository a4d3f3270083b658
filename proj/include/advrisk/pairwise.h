// Copyright 2026 The Authors.
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

// Radius queries and minimum pairwise distance over point clouds.

#ifndef ADVRISK_PAIRWISE_H_
#define ADVRISK_PAIRWISE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "advrisk/geometry.h"

namespace advrisk {

// Fixed point set answering "which points lie within r of q" for batches of
// queries. High-dimensional Euclidean sets use single-precision GEMM as a
// filter followed by an exact double-precision check; everything else uses a
// prefilter on the first coordinate (|a_1 - b_1| <= ||a - b|| in both norms).
class RadiusIndex {
 public:
  RadiusIndex(std::span<const Point> points, NormKind norm);

  // For each query, ascending indices of points p with distance(q, p) <= radius.
  std::vector<std::vector<std::size_t>> query(std::span<const Point> queries,
                                              double radius) const;
  std::size_t size() const { return n_; }
  NormKind norm() const { return norm_; }
  bool uses_gemm() const { return gemm_; }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  NormKind norm_;
  bool gemm_ = false;
  std::vector<double> coords_;        // row-major n x d
  std::vector<float> coords_f_;       // gemm mode only
  std::vector<double> sq_norms_;      // gemm mode only
  std::vector<std::size_t> order_;    // indices sorted by first coordinate
  std::vector<double> sorted_x1_;
};

// Smallest distance between two distinct entries (by index). Requires at
// least two points.
double min_pairwise_distance(std::span<const Point> points, NormKind norm);

// True when GEMM filtering is used for this dimension and norm.
bool gemm_preferred(std::size_t dim, NormKind norm);

}  // namespace advrisk

#endif  // ADVRISK_PAIRWISE_H_
