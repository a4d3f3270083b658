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

// Exact measure of interval unions under piecewise-constant densities on R.

#ifndef ADVRISK_INTERVALS_H_
#define ADVRISK_INTERVALS_H_

#include <span>
#include <vector>

namespace advrisk {

// Closed interval [lo, hi]; empty when hi < lo.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return hi < lo; }
  double length() const { return empty() ? 0.0 : hi - lo; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

Segment intersect(const Segment& a, const Segment& b);

// Sorted union of disjoint closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Sweep-line union of arbitrary (possibly overlapping) segments.
  static IntervalSet from_segments(std::span<const Segment> segments);

  std::span<const Segment> segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  double length() const;
  bool contains(double x) const;

  void insert(const Segment& s);
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet intersect(const Segment& s) const;

 private:
  std::vector<Segment> segments_;
};

struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  double density = 0.0;  // mass per unit length
};

// A probability density (or any nonnegative measure) on R that is constant
// on finitely many disjoint pieces and zero elsewhere.
class PiecewiseDensity {
 public:
  explicit PiecewiseDensity(std::vector<DensityPiece> pieces);

  std::span<const DensityPiece> pieces() const { return pieces_; }
  double total_mass() const { return cumulative_.back(); }

  // Mass of (-inf, x].
  double cdf(double x) const;
  double mass(const Segment& s) const;
  double mass(const IntervalSet& set) const;

  // Support as a union of the pieces with positive density.
  IntervalSet support() const;

  // Smallest x with cdf(x) >= u * total_mass; used for inverse-CDF sampling.
  double quantile(double u) const;

 private:
  std::vector<DensityPiece> pieces_;
  std::vector<double> cumulative_;  // cumulative_[i] = mass before piece i
};

}  // namespace advrisk

#endif  // ADVRISK_INTERVALS_H_
