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

#include "advrisk/intervals.h"

#include <algorithm>
#include <stdexcept>

namespace advrisk {

Segment intersect(const Segment& a, const Segment& b) {
  return Segment{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

IntervalSet IntervalSet::from_segments(std::span<const Segment> segments) {
  std::vector<Segment> sorted;
  sorted.reserve(segments.size());
  for (const Segment& s : segments) {
    if (!s.empty()) sorted.push_back(s);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalSet out;
  for (const Segment& s : sorted) {
    if (!out.segments_.empty() && s.lo <= out.segments_.back().hi) {
      out.segments_.back().hi = std::max(out.segments_.back().hi, s.hi);
    } else {
      out.segments_.push_back(s);
    }
  }
  return out;
}

double IntervalSet::length() const {
  double total = 0.0;
  for (const Segment& s : segments_) total += s.length();
  return total;
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), x,
      [](double v, const Segment& s) { return v < s.lo; });
  if (it == segments_.begin()) return false;
  --it;
  return x <= it->hi;
}

void IntervalSet::insert(const Segment& s) {
  if (s.empty()) return;
  // First segment whose hi >= s.lo, i.e. the first that may touch s.
  auto first = std::lower_bound(
      segments_.begin(), segments_.end(), s.lo,
      [](const Segment& seg, double v) { return seg.hi < v; });
  Segment merged = s;
  auto last = first;
  while (last != segments_.end() && last->lo <= merged.hi) {
    merged.lo = std::min(merged.lo, last->lo);
    merged.hi = std::max(merged.hi, last->hi);
    ++last;
  }
  first = segments_.erase(first, last);
  segments_.insert(first, merged);
}

IntervalSet IntervalSet::intersect(const Segment& s) const {
  IntervalSet out;
  if (s.empty()) return out;
  auto it = std::lower_bound(
      segments_.begin(), segments_.end(), s.lo,
      [](const Segment& seg, double v) { return seg.hi < v; });
  for (; it != segments_.end() && it->lo <= s.hi; ++it) {
    const Segment piece = advrisk::intersect(*it, s);
    if (!piece.empty()) out.segments_.push_back(piece);
  }
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < segments_.size() && j < other.segments_.size()) {
    const Segment piece = advrisk::intersect(segments_[i], other.segments_[j]);
    if (!piece.empty()) out.segments_.push_back(piece);
    if (segments_[i].hi < other.segments_[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

PiecewiseDensity::PiecewiseDensity(std::vector<DensityPiece> pieces)
    : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
  cumulative_.reserve(pieces_.size() + 1);
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const DensityPiece& p = pieces_[i];
    if (p.hi < p.lo || p.density < 0.0) {
      throw std::invalid_argument("PiecewiseDensity: invalid piece");
    }
    if (i > 0 && p.lo < pieces_[i - 1].hi) {
      throw std::invalid_argument("PiecewiseDensity: overlapping pieces");
    }
    cumulative_.push_back(cumulative_.back() + p.density * (p.hi - p.lo));
  }
}

double PiecewiseDensity::cdf(double x) const {
  // Index of the last piece with lo <= x.
  auto it = std::upper_bound(
      pieces_.begin(), pieces_.end(), x,
      [](double v, const DensityPiece& p) { return v < p.lo; });
  if (it == pieces_.begin()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(it - pieces_.begin()) - 1;
  const DensityPiece& p = pieces_[i];
  if (x >= p.hi) return cumulative_[i + 1];
  return cumulative_[i] + p.density * (x - p.lo);
}

double PiecewiseDensity::mass(const Segment& s) const {
  if (s.empty()) return 0.0;
  return std::max(0.0, cdf(s.hi) - cdf(s.lo));
}

double PiecewiseDensity::mass(const IntervalSet& set) const {
  double total = 0.0;
  for (const Segment& s : set.segments()) total += mass(s);
  return total;
}

IntervalSet PiecewiseDensity::support() const {
  std::vector<Segment> segs;
  for (const DensityPiece& p : pieces_) {
    if (p.density > 0.0 && p.hi > p.lo) segs.push_back({p.lo, p.hi});
  }
  return IntervalSet::from_segments(segs);
}

double PiecewiseDensity::quantile(double u) const {
  const double target = std::clamp(u, 0.0, 1.0) * total_mass();
  // First piece whose cumulative end reaches the target.
  auto it = std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), target);
  if (it == cumulative_.end()) return pieces_.back().hi;
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  // Skip zero-density pieces.
  while (i + 1 < pieces_.size() && pieces_[i].density == 0.0) ++i;
  const DensityPiece& p = pieces_[i];
  if (p.density == 0.0) return p.lo;
  return std::min(p.hi, p.lo + (target - cumulative_[i]) / p.density);
}

}  // namespace advrisk
