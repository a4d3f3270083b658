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

#include <cmath>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "advrisk/rng.h"
#include "advrisk/stats.h"

namespace advrisk {
namespace {

TEST(IncompleteBeta, MatchesBoost) {
  CounterRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double a = std::exp(rng.uniform(-2.0, 7.0));
    const double b = std::exp(rng.uniform(-2.0, 4.0));
    const double x = rng.uniform();
    const double want = boost::math::ibeta(a, b, x);
    const double got = incomplete_beta(x, a, b);
    EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, want) + 1e-300)
        << "a=" << a << " b=" << b << " x=" << x;
  }
}

TEST(IncompleteBeta, TinyTailsKeepRelativeAccuracy) {
  // Sphere caps at d = 1000 live deep in the tail.
  for (double x : {0.3, 0.6, 0.91}) {
    const double want = boost::math::ibeta(499.5, 0.5, x);
    EXPECT_NEAR(incomplete_beta(x, 499.5, 0.5) / want, 1.0, 1e-8);
  }
}

TEST(IncompleteBeta, EdgesAndSymmetry) {
  EXPECT_EQ(incomplete_beta(0.0, 2.0, 3.0), 0.0);
  EXPECT_EQ(incomplete_beta(1.0, 2.0, 3.0), 1.0);
  EXPECT_NEAR(incomplete_beta(0.3, 2.0, 5.0) + incomplete_beta(0.7, 5.0, 2.0), 1.0, 1e-13);
  EXPECT_NEAR(incomplete_beta(0.37, 1.0, 1.0), 0.37, 1e-14);
}

TEST(InverseIncompleteBeta, InvertsForward) {
  for (double p : {1e-6, 0.025, 0.5, 0.975}) {
    const double x = inverse_incomplete_beta(p, 3.5, 7.0);
    EXPECT_NEAR(incomplete_beta(x, 3.5, 7.0), p, 1e-10);
  }
}

TEST(ClopperPearson, MatchesBoostBetaQuantiles) {
  for (auto [k, n] : {std::pair<uint64_t, uint64_t>{0, 10}, {3, 10}, {10, 10}, {500, 1000}, {1, 100000}}) {
    const Interval95 ci = clopper_pearson(k, n);
    const double lo = k == 0 ? 0.0
                             : boost::math::quantile(
                                   boost::math::beta_distribution<>(double(k), double(n - k + 1)), 0.025);
    const double hi = k == n ? 1.0
                             : boost::math::quantile(
                                   boost::math::beta_distribution<>(double(k + 1), double(n - k)), 0.975);
    EXPECT_NEAR(ci.low, lo, 1e-9) << k << "/" << n;
    EXPECT_NEAR(ci.high, hi, 1e-9) << k << "/" << n;
  }
}

TEST(ClopperPearson, ZeroOfHundredThousand) {
  const Interval95 ci = clopper_pearson(0, 100000);
  EXPECT_EQ(ci.low, 0.0);
  EXPECT_NEAR(ci.high, 1.0 - std::pow(0.025, 1e-5), 1e-9);
}

TEST(Estimate, Constructors) {
  const Estimate e = Estimate::exact(0.25, EstimateMethod::kExact1D);
  EXPECT_TRUE(e.is_exact());
  EXPECT_EQ(e.ci_low, 0.25);
  EXPECT_EQ(e.ci_high, 0.25);
  const Estimate m = Estimate::from_counts(30, 100, EstimateMethod::kMonteCarlo);
  EXPECT_FALSE(m.is_exact());
  EXPECT_DOUBLE_EQ(m.value, 0.3);
  EXPECT_LT(m.ci_low, 0.3);
  EXPECT_GT(m.ci_high, 0.3);
}

TEST(Summaries, MeanAndSlope) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const MeanSummary s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-14);
  EXPECT_NEAR(s.ci_high - s.mean, 1.96 * s.std_error, 1e-14);
  const std::vector<double> x{100, 400, 1600};
  const std::vector<double> y{0.04, 0.01, 0.0025};
  EXPECT_NEAR(log_log_slope(x, y), -1.0, 1e-12);
}

}  // namespace
}  // namespace advrisk
