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

// Long-tail noise and T-shaped inductive bias experiments, computed exactly
// on the line.

#ifndef ADVRISK_LONGTAIL_TSHAPE_H_
#define ADVRISK_LONGTAIL_TSHAPE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "advrisk/stats.h"

namespace advrisk {

struct LongTailConfig {
  int A = 4;
  int B = 400;
  double eta = 0.2;
  double rho = 0.1;
  double delta = 0.1;
  int trials = 100;
  uint64_t seed = 0;
  double epsilon = 1e-9;  // half-width of the memorized intervals
  // Replaces the sample-size formula; required when eta = 0.
  std::optional<uint64_t> m_override;
};

void validate(const LongTailConfig& cfg);

// ceil((16 A / (rho eta)) ln(A / (rho delta))).
uint64_t longtail_sample_size(int A, double rho, double eta, double delta);

struct LongTailTrial {
  double d1_proxy = 0.0;    // universal lower bound under uniform noise
  double d2_risk = 0.0;     // interval memorizer under tail-biased noise
  double d2_eps_part = 0.0; // share of d2_risk due to the epsilon intervals
  uint64_t d1_flips = 0;
  uint64_t d2_flips = 0;
  uint64_t d2_head_flips = 0;  // must be 0
  bool interpolates = true;
};

struct LongTailReport {
  int A = 0;
  int B = 0;
  double eta = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  uint64_t m_used = 0;
  MeanSummary risk_D1;
  MeanSummary risk_D2;
  double d1_threshold = 0.125;  // 1/8
  double d2_bound = 0.0;        // 3 m rho / (8 B)
  double d1_success_rate = 0.0;  // P[d1_proxy >= 1/8]
  double d2_success_rate = 0.0;  // P[d2_risk <= d2_bound]
  std::vector<LongTailTrial> per_trial;
};

// Both noise models use the trial's seed, so they see the same covariates.
LongTailReport run_longtail(const LongTailConfig& cfg, int workers = 1);

struct LongTailScaling {
  std::vector<double> B;
  std::vector<double> mean_d2;
  double slope = 0.0;  // least squares on log-log
  std::vector<LongTailReport> reports;
};

LongTailScaling run_longtail_scaling(const LongTailConfig& base, std::span<const int> Bs,
                                     int workers = 1);

struct TShapeConfig {
  double W = 10.0;
  double rho = 0.1;
  double gamma = 1.0;
  double eta = 0.2;
  uint64_t m = 5;
  int trials = 10000;
  uint64_t seed = 0;
};

void validate(const TShapeConfig& cfg);

struct TShapeReport {
  double W = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
  uint64_t m = 0;
  int trials = 0;
  MeanSummary risk_F;
  MeanSummary risk_H;            // T at every mislabeled point
  MeanSummary risk_H_label0;     // T only at mislabeled points with true label 0
  MeanSummary risk_H_verbatim;   // zero background, T at every point labeled 1
  double F_bound = 0.0;          // 2 rho m eta / W
  double H_bound = 0.0;          // min(2 gamma m eta / W, 1/2)
  uint64_t interpolation_failures = 0;
  double ratio_F_over_H = 0.0;   // mean risk_F / mean risk_H
};

TShapeReport run_tshape(const TShapeConfig& cfg, int workers = 1);

}  // namespace advrisk

#endif  // ADVRISK_LONGTAIL_TSHAPE_H_
