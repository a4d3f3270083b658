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

#include "advrisk/geometry.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace advrisk {

std::string_view to_string(NormKind norm) {
  return norm == NormKind::kEuclidean ? "euclidean" : "maximum";
}

NormKind parse_norm(std::string_view text) {
  if (text == "euclidean" || text == "l2") return NormKind::kEuclidean;
  if (text == "maximum" || text == "max" || text == "linf") {
    return NormKind::kMaximum;
  }
  throw std::invalid_argument("unknown norm '" + std::string(text) + "'");
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("point coordinates must be finite");
    }
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

bool Point::bitwise_equal(const Point& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (std::bit_cast<uint64_t>(coords_[i]) !=
        std::bit_cast<uint64_t>(other.coords_[i])) {
      return false;
    }
  }
  return true;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

bool Box::contains(std::span<const double> p) const {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

double distance(std::span<const double> a, std::span<const double> b,
                NormKind norm) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: dimension mismatch");
  }
  if (norm == NormKind::kMaximum) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

double distance(const Point& a, const Point& b, NormKind norm) {
  return distance(a.coords(), b.coords(), norm);
}

bool contains(const Ball& ball, const Point& p) {
  return distance(ball.center, p, ball.norm) <= ball.radius;
}

double stable_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
  return std::ceil(x);
}

double stable_floor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
  return std::floor(x);
}

uint64_t cells_per_axis(double extent, double radius, int d, NormKind norm) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("cover radius must be positive");
  }
  if (extent <= 0.0) return extent == 0.0 ? 1 : 0;
  const double side = norm == NormKind::kMaximum
                          ? 2.0 * radius
                          : 2.0 * radius / std::sqrt(static_cast<double>(d));
  const double k = stable_ceil(extent / side);
  if (k >= 0x1.0p63) {
    throw std::overflow_error("covering number exceeds 64-bit range");
  }
  return std::max<uint64_t>(1, static_cast<uint64_t>(k));
}

uint64_t hypercube_covering_number(int d, double rho, NormKind norm) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const uint64_t k = cells_per_axis(1.0, rho, d, norm);
  uint64_t n = 1;
  for (int i = 0; i < d; ++i) {
    if (n > std::numeric_limits<uint64_t>::max() / k) {
      throw std::overflow_error(
          "covering number " + std::to_string(k) + "^" + std::to_string(d) +
          " exceeds 64-bit range");
    }
    n *= k;
  }
  return n;
}

std::vector<Ball> greedy_point_cover(std::span<const Point> points,
                                     double radius, NormKind norm) {
  if (points.empty()) {
    throw std::invalid_argument("greedy_point_cover: empty point list");
  }
  const std::size_t d = points.front().dim();
  for (const Point& p : points) {
    if (p.dim() != d) {
      throw std::invalid_argument("greedy_point_cover: dimension mismatch");
    }
  }
  // dist_to_cover[i] = distance from point i to the nearest chosen center.
  std::vector<double> dist_to_cover(points.size(),
                                    std::numeric_limits<double>::infinity());
  std::vector<Ball> balls;
  std::size_t next = 0;
  while (true) {
    const Point& c = points[next];
    balls.push_back(Ball{c, radius, norm});
    double farthest = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      dist_to_cover[i] = std::min(dist_to_cover[i], distance(points[i], c, norm));
      if (dist_to_cover[i] > farthest) {
        farthest = dist_to_cover[i];
        next = i;
      }
    }
    if (farthest <= radius) break;
  }
  return balls;
}

}  // namespace advrisk
