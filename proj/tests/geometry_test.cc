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
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "advrisk/geometry.h"
#include "advrisk/rng.h"

namespace advrisk {
namespace {

TEST(Distance, Examples) {
  EXPECT_EQ(distance(Point{0, 0}, Point{0, 0}, NormKind::kEuclidean), 0.0);
  EXPECT_DOUBLE_EQ(distance(Point{0, 0}, Point{3, 4}, NormKind::kEuclidean), 5.0);
  EXPECT_DOUBLE_EQ(distance(Point{0, 0}, Point{3, 4}, NormKind::kMaximum), 4.0);
}

TEST(Distance, RejectsDimensionMismatch) {
  EXPECT_THROW(distance(Point{0, 0}, Point{1}, NormKind::kEuclidean), std::invalid_argument);
}

TEST(Point, RejectsNonFinite) {
  EXPECT_THROW(Point({std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  EXPECT_THROW(Point({1.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST(Ball, ClosedMembership) {
  EXPECT_TRUE(contains(Ball{Point{0, 0}, 1.0, NormKind::kMaximum}, Point{1, 1}));
  EXPECT_FALSE(contains(Ball{Point{0, 0}, 1.0, NormKind::kEuclidean}, Point{1, 1}));
  EXPECT_TRUE(contains(Ball{Point{0}, 0.0, NormKind::kEuclidean}, Point{0}));
}

TEST(Norms, MaximumNeverExceedsEuclidean) {
  CounterRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> a(5), b(5);
    for (int k = 0; k < 5; ++k) {
      a[k] = rng.normal();
      b[k] = rng.normal();
    }
    const double e = distance(a, b, NormKind::kEuclidean);
    const double m = distance(a, b, NormKind::kMaximum);
    EXPECT_LE(m, e + 1e-15);
    EXPECT_LE(e, std::sqrt(5.0) * m + 1e-12);
  }
}

TEST(NormParsing, RoundTrips) {
  for (NormKind n : {NormKind::kEuclidean, NormKind::kMaximum}) {
    EXPECT_EQ(parse_norm(to_string(n)), n);
  }
  EXPECT_THROW(parse_norm("manhattan"), std::invalid_argument);
}

TEST(StableCeil, AbsorbsRoundingNoise) {
  EXPECT_EQ(stable_ceil(1.0 / (2 * 0.1)), 5.0);
  EXPECT_EQ(stable_ceil(5.0000000001), 5.0);
  EXPECT_EQ(stable_ceil(5.001), 6.0);
  EXPECT_EQ(stable_floor(4.9999999999), 5.0);
  EXPECT_EQ(stable_floor(4.5), 4.0);
}

TEST(CoveringNumber, Examples) {
  EXPECT_EQ(hypercube_covering_number(1, 0.25), 2u);
  EXPECT_EQ(hypercube_covering_number(2, 0.25), 4u);
  EXPECT_EQ(hypercube_covering_number(1, 0.1), 5u);
  EXPECT_EQ(hypercube_covering_number(1, 0.05), 10u);
  EXPECT_THROW(hypercube_covering_number(784, 0.1), std::overflow_error);
}

TEST(CoveringNumber, OverflowMatchesLogarithmOracle) {
  for (int d = 1; d <= 100; ++d) {
    const double log2_count = d * std::log2(5.0);
    if (log2_count < 63.5) {
      EXPECT_NO_THROW(hypercube_covering_number(d, 0.1)) << d;
    } else if (log2_count > 64.5) {
      EXPECT_THROW(hypercube_covering_number(d, 0.1), std::overflow_error) << d;
    }
  }
}

// Grid cells of the returned count really cover the cube: every random point
// lies within rho of some cell center.
TEST(CoveringNumber, GridCoversCube) {
  for (NormKind norm : {NormKind::kMaximum, NormKind::kEuclidean}) {
    for (int d : {1, 2, 3}) {
      const double rho = 0.15;
      const uint64_t total = hypercube_covering_number(d, rho, norm);
      const auto k = static_cast<uint64_t>(std::llround(std::pow(static_cast<double>(total), 1.0 / d)));
      ASSERT_EQ(static_cast<uint64_t>(std::llround(std::pow(static_cast<double>(k), d))), total);
      CounterRng rng(d + 10);
      for (int i = 0; i < 2000; ++i) {
        std::vector<double> p(d), c(d);
        for (int j = 0; j < d; ++j) {
          p[j] = rng.uniform();
          const double cell = std::min(std::floor(p[j] * k), k - 1.0);
          c[j] = (cell + 0.5) / k;
        }
        EXPECT_LE(distance(p, c, norm), rho + 1e-12);
      }
    }
  }
}

TEST(GreedyPointCover, Examples) {
  const std::vector<Point> pts{Point{0}, Point{0.1}, Point{0.9}};
  EXPECT_EQ(greedy_point_cover(pts, 0.15, NormKind::kEuclidean).size(), 2u);
  const std::vector<Point> one{Point{0.3, 0.3}};
  EXPECT_EQ(greedy_point_cover(one, 1e-6, NormKind::kEuclidean).size(), 1u);
  const std::vector<Point> tight{Point{0, 0}, Point{0.1, 0}, Point{0, 0.1}};
  EXPECT_EQ(greedy_point_cover(tight, 0.2, NormKind::kEuclidean).size(), 1u);
}

// Brute force over all center subsets of the input points.
std::size_t min_point_cover(const std::vector<Point>& pts, double r, NormKind norm) {
  const std::size_t n = pts.size();
  std::size_t best = n;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool covered = false;
      for (std::size_t j = 0; j < n && !covered; ++j) {
        covered = ((mask >> j) & 1u) && distance(pts[i], pts[j], norm) <= r;
      }
      ok = covered;
    }
    if (ok) best = size;
  }
  return best;
}

TEST(GreedyPointCover, CoversAndUpperBoundsOptimum) {
  CounterRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(Point{rng.uniform(), rng.uniform()});
    const double r = rng.uniform(0.05, 0.5);
    const auto cover = greedy_point_cover(pts, r, NormKind::kEuclidean);
    for (const Point& p : pts) {
      EXPECT_TRUE(std::any_of(cover.begin(), cover.end(),
                              [&](const Ball& b) { return contains(b, p); }));
    }
    EXPECT_GE(cover.size(), min_point_cover(pts, r, NormKind::kEuclidean));
  }
}

TEST(CounterRng, DeterministicAndIndexAddressable) {
  CounterRng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_NE(fnv1a("thm2"), fnv1a("sphere"));
}

TEST(CounterRng, UniformMomentsAndRange) {
  CounterRng rng(99);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sq / n, 1.0 / 3, 0.005);
  std::set<uint64_t> seen;
  for (int i = 0; i < 7000; ++i) seen.insert(rng.below(7));
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(*seen.rbegin(), 6u);
}

TEST(CounterRng, NormalMoments) {
  CounterRng rng(5);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 4 * std::sqrt(2.0 / n));
}

}  // namespace
}  // namespace advrisk
