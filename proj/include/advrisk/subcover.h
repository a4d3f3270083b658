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

// Greedy subcover, the covering-number sample bound and its experiment, the
// subset optimization heuristic, chi-square tails and the sphere bound.

#ifndef ADVRISK_SUBCOVER_H_
#define ADVRISK_SUBCOVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advrisk/distributions.h"
#include "advrisk/geometry.h"
#include "advrisk/risk.h"
#include "advrisk/stats.h"

namespace advrisk {

// Balls of a common radius and norm with their nu-masses. `union_oracle`,
// when set, returns the nu-mass of the union of a subset of the balls.
struct WeightedBallSet {
  std::vector<Ball> balls;
  std::vector<double> masses;
  double union_mass = 0.0;
  std::function<double(std::span<const std::size_t>)> union_oracle;

  std::size_t size() const { return masses.size(); }
};

// Checks |masses| == |balls| (when balls are given), nonnegative masses,
// mass_i <= union_mass <= sum of masses (relative tolerance `tol`).
void validate(const WeightedBallSet& w, double tol = 1e-12);

// Measures each ball and the union under `spec` and attaches an exact or
// Monte Carlo union oracle.
WeightedBallSet weigh_balls(const DistributionSpec& spec, std::vector<Ball> balls,
                            const McOptions& mc = {});

struct SubcoverResult {
  std::vector<std::size_t> selected;  // in descending-mass order
  double selected_union_mass = 0.0;
  double min_selected_mass = 0.0;
  double alpha = 0.0;
  bool union_from_oracle = false;
};

// Sorts the balls by mass (descending, ties by index) and keeps the longest
// prefix whose masses are all >= (alpha / N) * union_mass. Without an oracle
// the selected union mass is the certified lower bound
// union_mass - (sum of discarded masses).
SubcoverResult greedy_subcover(const WeightedBallSet& w, double alpha);

struct BoundReport {
  uint64_t m_required = 0;
  uint64_t N = 0;
  double mu_C = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double guaranteed_risk = 0.0;
};

// m = ceil((8 N / (mu_C eta)) ln(2 N / delta)), guaranteed risk mu_C / 4.
BoundReport thm2_sample_bound(uint64_t N, double mu_C, double eta, double delta);

// Number of grid cells of radius `cover_radius` (in `norm`) that cover the
// region: intervals for INTERVAL_UNION, per-ball bounding-box grids for
// BALL_UNION. Throws std::overflow_error when the count does not fit.
uint64_t grid_cover_size(const MeasureQuery& region, double cover_radius, NormKind norm);

struct Thm2Config {
  DistributionSpec spec = Hypercube{1};
  GroundTruth gt = ThresholdX1{0.5};
  MeasureQuery C = IntervalUnion{{Segment{0.0, 1.0}}};
  double rho = 0.1;
  double eta = 0.2;
  double delta = 0.05;
  int trials = 200;
  uint64_t seed = 0;
  NormKind norm = NormKind::kMaximum;
  // Radius of the cover of C; rho / 2 when unset.
  std::optional<double> cover_radius;
  McOptions mc = {};  // used off the line
};

struct Thm2Trial {
  uint64_t m = 0;
  uint64_t flipped = 0;
  RiskEstimate proxy_risk;
  bool success = false;
};

struct Thm2Result {
  BoundReport bound;
  double cover_radius = 0.0;
  Estimate mu_C;
  double success_rate = 0.0;
  std::vector<Thm2Trial> per_trial;
};

// Per trial: draw m = thm2_sample_bound(N, mu(C), eta, delta) uniformly noisy
// samples and test whether the proxy risk at budget rho reaches mu(C) / 4.
// `workers` > 1 runs trials on a thread pool; the result does not depend on it.
Thm2Result run_thm2_experiment(const Thm2Config& cfg, int workers = 1);

struct CellClass {
  double mass = 0.0;       // mass of one cell in the class
  double count = 0.0;      // cells in the grid with this mass
  double taken = 0.0;      // cells selected
  std::string description;
};

struct OptimizeCResult {
  double N = 0.0;          // selected cells; exact when < 2^53
  double mass = 0.0;       // mu(C)
  double objective = 0.0;  // N ln N / mu(C)
  double cell_side = 0.0;
  // Selected cells as max-norm balls, when the grid was enumerated.
  std::optional<std::vector<Ball>> cells;
  std::vector<CellClass> classes;  // grouped grids only
};

// Greedy heuristic for min over C of N ln N / mu(C) subject to
// mu(C) >= 4 r_target: rank grid cells (side `cell_side`, default rho) by
// mass and add them until the target mass is reached. Max-norm cells of side
// rho lie in balls of radius rho / 2.
OptimizeCResult optimize_C_greedy(const DistributionSpec& spec, double rho,
                                  double r_target,
                                  std::optional<double> cell_side = std::nullopt);

struct LaurentMassart {
  double lower_threshold = 0.0;  // (d - 1) - 2 sqrt((d - 1) s)
  double upper_threshold = 0.0;  // 1 + 2 sqrt(s) + 2 s
  double lower = 0.0;            // bound on P[chi2_{d-1} <= lower_threshold]
  double upper = 0.0;            // bound on P[chi2_1 >= upper_threshold]
};

LaurentMassart laurent_massart_tails(int d, double s);

struct SphereBound {
  double value = 0.0;  // m P[x_1 >= 1 - rho^2/2] + P[x_1 >= 1/2 - rho]
  double crude = 0.0;  // (m + 1) exp(-d / 40)
};

// Requires 0 < rho < 1/4.
SphereBound sphere_risk_bound(int d, double m, double rho);

// floor(1.01^d), checked against 64-bit range.
uint64_t sphere_sample_count(int d);

struct SphereConfig {
  int d = 1000;
  double rho = 0.2;
  double eta = 0.5;
  uint64_t n_test = 100000;
  uint64_t seed = 0;
  int n_directions = 4;
  std::optional<uint64_t> m;  // floor(1.01^d) when unset
  bool min_distance = true;
};

struct SphereResult {
  uint64_t m = 0;
  uint64_t flipped = 0;
  RiskEstimate mc_risk;
  SphereBound analytic_bound;
  std::optional<double> min_pairwise_distance;
};

// Rejects m * d above 5e7 (desk scale).
SphereResult run_sphere_experiment(const SphereConfig& cfg);

// Minimum pairwise distance of the training sample the sphere experiment
// draws for (d, m, seed).
double sphere_sample_min_distance(int d, uint64_t m, double eta, uint64_t seed);

}  // namespace advrisk

#endif  // ADVRISK_SUBCOVER_H_
