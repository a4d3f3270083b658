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

#include "advrisk/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace advrisk {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-15;
constexpr int kMaxIterations = 100000;

// Continued fraction for I_x(a, b), valid (fast) for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete_beta: a and b must be positive");
  }
  if (x < 0.0 || x > 1.0 || std::isnan(x)) {
    throw std::invalid_argument("incomplete_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double inverse_incomplete_beta(double p, double a, double b) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (incomplete_beta(mid, a, b) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Interval95 clopper_pearson(uint64_t k, uint64_t n, double confidence) {
  if (n == 0) return {0.0, 1.0};
  if (k > n) throw std::invalid_argument("clopper_pearson: k > n");
  const double alpha = 1.0 - confidence;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  Interval95 ci;
  ci.low = k == 0 ? 0.0 : inverse_incomplete_beta(alpha / 2, kd, nd - kd + 1);
  ci.high = k == n ? 1.0 : inverse_incomplete_beta(1 - alpha / 2, kd + 1, nd - kd);
  return ci;
}

std::string_view to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::kMonteCarlo:
      return "MC";
    case EstimateMethod::kExact1D:
      return "EXACT_1D";
    case EstimateMethod::kProxyMonteCarlo:
      return "PROXY_MC";
    case EstimateMethod::kProxyExact1D:
      return "PROXY_EXACT_1D";
  }
  return "?";
}

Estimate Estimate::exact(double value, EstimateMethod method) {
  return Estimate{value, value, value, 0, method};
}

Estimate Estimate::from_counts(uint64_t hits, uint64_t n, EstimateMethod method) {
  const Interval95 ci = clopper_pearson(hits, n);
  const double value = n == 0 ? 0.0 : static_cast<double>(hits) / n;
  // Guard the ordering invariant against bisection round-off.
  return Estimate{value, std::min(ci.low, value), std::max(ci.high, value), n,
                  method};
}

MeanSummary summarize(std::span<const double> values) {
  MeanSummary s;
  s.n = values.size();
  if (values.empty()) return s;
  // Welford.
  double mean = 0.0;
  double m2 = 0.0;
  uint64_t i = 0;
  for (double v : values) {
    ++i;
    const double delta = v - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (v - mean);
  }
  s.mean = mean;
  if (values.size() > 1) {
    const double var = m2 / static_cast<double>(values.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  s.ci_low = mean - 1.96 * s.std_error;
  s.ci_high = mean + 1.96 * s.std_error;
  return s;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log_log_slope: need >= 2 paired values");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::domain_error("log_log_slope: values must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace advrisk
