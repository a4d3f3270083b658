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

// Points, norms, balls and covers.

#ifndef ADVRISK_GEOMETRY_H_
#define ADVRISK_GEOMETRY_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advrisk {

enum class NormKind { kEuclidean, kMaximum };

std::string_view to_string(NormKind norm);
NormKind parse_norm(std::string_view text);

// A finite point in R^d. Construction rejects NaN and infinities.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  // Bitwise equality of every coordinate.
  bool bitwise_equal(const Point& other) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

struct Ball {
  Point center;
  double radius = 0.0;
  NormKind norm = NormKind::kEuclidean;
};

// Axis-aligned box [lo_i, hi_i] in every coordinate.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  double volume() const;
  bool contains(std::span<const double> p) const;
};

double distance(const Point& a, const Point& b, NormKind norm);
double distance(std::span<const double> a, std::span<const double> b,
                NormKind norm);

// Closed-ball membership.
bool contains(const Ball& ball, const Point& p);

// ceil(x), except values within 1e-9 (relative) of an integer round to that
// integer. Keeps closed-form counts such as ceil(1 / (2 * 0.1)) stable under
// floating-point noise.
double stable_ceil(double x);
double stable_floor(double x);

// Size of the regular grid cover of [0,1]^d by balls of radius `rho`:
// ceil(1 / (2 rho))^d for the max norm. For the Euclidean norm the per-axis
// count uses cells of side 2 rho / sqrt(d) so that each cell lies in a ball.
// Throws std::overflow_error when the count does not fit in 64 bits.
uint64_t hypercube_covering_number(int d, double rho,
                                   NormKind norm = NormKind::kMaximum);

// Per-axis cell count for covering an interval of length `extent` by cells
// that fit inside balls of radius `radius`.
uint64_t cells_per_axis(double extent, double radius, int d, NormKind norm);

// Greedy farthest-point cover: the returned balls are centered at input
// points and cover all of them. Its size upper-bounds the covering number of
// the point set.
std::vector<Ball> greedy_point_cover(std::span<const Point> points,
                                     double radius, NormKind norm);

}  // namespace advrisk

#endif  // ADVRISK_GEOMETRY_H_
