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

// Adversarial risk: Monte Carlo witness search, exact computation on the
// line, the separable proxy, and risk under a restricted measure.

#ifndef ADVRISK_RISK_H_
#define ADVRISK_RISK_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "advrisk/classifiers.h"
#include "advrisk/distributions.h"
#include "advrisk/geometry.h"
#include "advrisk/noise.h"
#include "advrisk/stats.h"

namespace advrisk {

struct AttackBudget {
  double rho = 0.1;
  NormKind norm = NormKind::kEuclidean;
  int n_directions = 16;  // random probes per test point
};

void validate(const AttackBudget& budget);

// Looks for z in the closed ball B_rho(x) with f(z) != label. Tries x itself,
// the classifier's analytic witnesses (threshold crossings along e_1,
// nearest points of memorized intervals and T-shaped regions, ball endpoints
// along e_1), the given training points, then `n_directions` random points of
// the ball drawn from `rng`.
bool find_adversarial_witness(const Classifier& c, Label label, const Point& x,
                              const AttackBudget& budget, CounterRng& rng,
                              std::span<const std::size_t> nearby_training = {});

// Monte Carlo estimate of P_x[exists z in B_rho(x): f(z) != f*(x)]. Test point
// i is drawn from derive_seed(seed, i), so results do not depend on batching.
// The value is a lower estimate: a point counts only when a witness is found.
RiskEstimate adversarial_risk_mc(const Classifier& c, const DistributionSpec& spec,
                                 const GroundTruth& gt, const AttackBudget& budget,
                                 uint64_t n_test, uint64_t seed);

// Exact risk for distributions supported on a line. The vulnerable set is a
// finite union of intervals whose endpoints come from the support pieces, the
// threshold, and the classifier's exceptional points; each elementary cell is
// classified by the witness search at its midpoint and its mass is added.
RiskEstimate adversarial_risk_exact_1d(const Classifier& c, const DistributionSpec& spec,
                                       const GroundTruth& gt, const AttackBudget& budget);

// mu{x : exists k, ||x - s_k|| <= rho and f*(x) != y_k}. Exact on the line,
// Monte Carlo elsewhere.
RiskEstimate proxy_adversarial_risk(std::span<const MislabeledPoint> mislabeled,
                                    const DistributionSpec& spec, const GroundTruth& gt,
                                    const AttackBudget& budget, const McOptions& mc = {});

// The vulnerable set of the proxy on the line, as intervals of x_1.
IntervalSet proxy_region_1d(std::span<const MislabeledPoint> mislabeled,
                            const DistributionSpec& spec, const GroundTruth& gt,
                            double rho, NormKind norm = NormKind::kEuclidean);

// Adversarial risk under mu restricted to `region` (rejection sampling).
// Throws std::domain_error when the region has no mass.
RiskEstimate restricted_risk(const Classifier& c, const DistributionSpec& spec,
                             const GroundTruth& gt, const MeasureQuery& region,
                             const AttackBudget& budget, uint64_t n_test, uint64_t seed);

struct Histogram {
  std::vector<double> edges;   // bins + 1 edges
  std::vector<uint64_t> counts;
  uint64_t total() const;
};

struct ClassDistances {
  Histogram intra;
  Histogram inter;
  std::optional<double> min_intra;
  std::optional<double> min_inter;
};

// Exact pairwise distance histograms split by same / different label. Both
// histograms share bin edges on [0, max distance].
ClassDistances class_distance_histograms(std::span<const Point> points,
                                         std::span<const Label> labels, NormKind norm,
                                         int bins);

// CSV rows: bin_left, bin_right, count, split.
void write_histogram_csv(const ClassDistances& h, std::ostream& out);

}  // namespace advrisk

#endif  // ADVRISK_RISK_H_
