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

// The uniform-noise adversary against the poisoner.

#ifndef ADVRISK_GAMES_H_
#define ADVRISK_GAMES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "advrisk/distributions.h"
#include "advrisk/geometry.h"
#include "advrisk/risk.h"
#include "advrisk/stats.h"

namespace advrisk {

struct GameConfig {
  DistributionSpec spec = Hypercube{1};
  GroundTruth gt = ThresholdX1{0.5};
  double rho = 0.05;
  double eta = 0.1;
  uint64_t m = 100;
  double delta = 0.1;
  NormKind norm = NormKind::kMaximum;
  // Spacing of the poisoner's candidate centers; rho / 10 when unset.
  std::optional<double> candidate_step;
  // Coverage samples for the Monte Carlo best response off the line.
  uint64_t mc_samples = 20000;
  uint64_t mc_seed = 0;

  // floor(eta * m); the poisoner's budget.
  uint64_t N() const;
};

void validate(const GameConfig& cfg);

struct PoisonerResponse {
  std::vector<Point> points;
  double r_poison = 0.0;
  bool exact = false;  // exact union mass on the line; Monte Carlo otherwise
};

// Greedy maximum coverage over a candidate grid on supp(mu): N times, add the
// candidate whose rho-ball adds the most uncovered mass of
// {x : f*(x) != 1 - f*(s)}, ties to the lowest candidate index. Gains are
// compared after rounding to 1e-12 so that floating-point noise in otherwise
// equal gains cannot reorder candidates.
PoisonerResponse poisoner_best_response(const GameConfig& cfg);

// T = ceil((2 N / (eta r_poison)) (ln N + ln(1 / delta))), at least 1.
uint64_t uniform_sample_size(uint64_t N, double eta, double r_poison, double delta);

struct GameResult {
  double r_poison = 0.0;
  RiskEstimate r_unif;      // proxy at 2 rho over the uniformly flipped points
  RiskEstimate r_unif_rho;  // same dataset at rho
  uint64_t T = 0;
  uint64_t N = 0;
  uint64_t flipped = 0;
  bool inequality_holds = false;  // r_unif >= r_poison / 2
};

struct GameSummary {
  PoisonerResponse poisoner;
  uint64_t T = 0;
  uint64_t N = 0;
  std::vector<GameResult> results;
  double success_rate = 0.0;
};

GameSummary play_game(const GameConfig& cfg, int trials, uint64_t seed, int workers = 1);

}  // namespace advrisk

#endif  // ADVRISK_GAMES_H_
