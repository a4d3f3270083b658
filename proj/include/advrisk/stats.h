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

#ifndef ADVRISK_STATS_H_
#define ADVRISK_STATS_H_

#include <cstdint>
#include <span>
#include <string_view>

namespace advrisk {

// Regularized incomplete beta I_x(a, b), evaluated by the modified Lentz
// continued fraction (relative tolerance 1e-10 or better).
double incomplete_beta(double x, double a, double b);

// Inverse of x -> I_x(a, b) on [0, 1], by bisection.
double inverse_incomplete_beta(double p, double a, double b);

struct Interval95 {
  double low = 0.0;
  double high = 0.0;
};

// Two-sided Clopper-Pearson interval for k successes out of n trials.
Interval95 clopper_pearson(uint64_t k, uint64_t n, double confidence = 0.95);

enum class EstimateMethod { kMonteCarlo, kExact1D, kProxyMonteCarlo, kProxyExact1D };

std::string_view to_string(EstimateMethod method);

// A probability with its 95% interval. Exact methods carry a degenerate
// interval; Monte Carlo methods carry a Clopper-Pearson interval.
struct Estimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  uint64_t n = 0;
  EstimateMethod method = EstimateMethod::kExact1D;

  static Estimate exact(double value, EstimateMethod method);
  static Estimate from_counts(uint64_t hits, uint64_t n, EstimateMethod method);
  bool is_exact() const {
    return method == EstimateMethod::kExact1D ||
           method == EstimateMethod::kProxyExact1D;
  }
};

using RiskEstimate = Estimate;

// Mean with a normal-approximation 95% interval (1.96 standard errors).
struct MeanSummary {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  uint64_t n = 0;
};

MeanSummary summarize(std::span<const double> values);

// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace advrisk

#endif  // ADVRISK_STATS_H_
