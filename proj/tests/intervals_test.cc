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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "advrisk/intervals.h"
#include "advrisk/rng.h"

namespace advrisk {
namespace {

std::vector<Segment> random_segments(CounterRng& rng, int n) {
  std::vector<Segment> s;
  for (int i = 0; i < n; ++i) {
    const double a = rng.uniform(0.0, 10.0);
    s.push_back(Segment{a, a + rng.uniform(0.0, 1.5)});
  }
  return s;
}

bool naive_contains(const std::vector<Segment>& s, double x) {
  return std::any_of(s.begin(), s.end(), [&](const Segment& g) { return g.lo <= x && x <= g.hi; });
}

TEST(IntervalSet, UnionMatchesPointwiseOracle) {
  CounterRng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto segs = random_segments(rng, 1 + static_cast<int>(rng.below(12)));
    const IntervalSet u = IntervalSet::from_segments(segs);
    for (std::size_t i = 1; i < u.segments().size(); ++i) {
      EXPECT_LT(u.segments()[i - 1].hi, u.segments()[i].lo);
    }
    for (int k = 0; k < 200; ++k) {
      const double x = rng.uniform(-1.0, 12.0);
      EXPECT_EQ(u.contains(x), naive_contains(segs, x));
    }
    // Length by fine Riemann sum.
    const int grid = 200000;
    int hits = 0;
    for (int k = 0; k < grid; ++k) hits += naive_contains(segs, -1.0 + 13.0 * (k + 0.5) / grid);
    EXPECT_NEAR(u.length(), 13.0 * hits / grid, 2e-4);
  }
}

TEST(IntervalSet, OverlappingUnionIsSmallerThanSum) {
  const std::vector<Segment> s{{0.2, 0.4}, {0.3, 0.5}};
  const IntervalSet u = IntervalSet::from_segments(s);
  EXPECT_NEAR(u.length(), 0.3, 1e-15);
  EXPECT_LT(u.length(), 0.4);
}

TEST(IntervalSet, IntersectMatchesOracle) {
  CounterRng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_segments(rng, 5);
    const auto b = random_segments(rng, 5);
    const IntervalSet x = IntervalSet::from_segments(a).intersect(IntervalSet::from_segments(b));
    for (int k = 0; k < 300; ++k) {
      const double t = rng.uniform(-1.0, 12.0);
      EXPECT_EQ(x.contains(t), naive_contains(a, t) && naive_contains(b, t));
    }
  }
}

TEST(IntervalSet, InsertKeepsInvariant) {
  IntervalSet s;
  s.insert({0.0, 1.0});
  s.insert({2.0, 3.0});
  s.insert({0.5, 2.5});
  ASSERT_EQ(s.segments().size(), 1u);
  EXPECT_EQ(s.segments()[0], (Segment{0.0, 3.0}));
  s.insert({5.0, 4.0});  // empty
  EXPECT_EQ(s.segments().size(), 1u);
}

TEST(PiecewiseDensity, MassCdfQuantile) {
  const PiecewiseDensity d({{0.0, 1.0, 0.25}, {2.0, 3.0, 0.75}});
  EXPECT_DOUBLE_EQ(d.total_mass(), 1.0);
  EXPECT_DOUBLE_EQ(d.cdf(0.5), 0.125);
  EXPECT_DOUBLE_EQ(d.cdf(1.5), 0.25);
  EXPECT_DOUBLE_EQ(d.mass(Segment{0.5, 2.5}), 0.125 + 0.375);
  EXPECT_DOUBLE_EQ(d.quantile(0.25), 1.0);
  EXPECT_NEAR(d.quantile(0.625), 2.5, 1e-12);
  EXPECT_EQ(d.support().segments().size(), 2u);
}

TEST(PiecewiseDensity, MassOfSetMatchesRiemannSum) {
  CounterRng rng(4);
  std::vector<DensityPiece> pieces;
  double x = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double w = rng.uniform(0.1, 1.0);
    pieces.push_back({x, x + w, rng.uniform(0.0, 2.0)});
    x += w + rng.uniform(0.0, 0.5);
  }
  const PiecewiseDensity d(pieces);
  for (int trial = 0; trial < 50; ++trial) {
    const auto segs = random_segments(rng, 4);
    const IntervalSet s = IntervalSet::from_segments(segs);
    double riemann = 0.0;
    const int grid = 100000;
    const double lo = -1.0, hi = 12.0, h = (hi - lo) / grid;
    for (int k = 0; k < grid; ++k) {
      const double t = lo + (k + 0.5) * h;
      if (!s.contains(t)) continue;
      for (const auto& p : pieces) {
        if (p.lo <= t && t < p.hi) riemann += p.density * h;
      }
    }
    EXPECT_NEAR(d.mass(s), riemann, 1e-3);
  }
}

}  // namespace
}  // namespace advrisk
