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

#include "advrisk/longtail_tshape.h"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "advrisk/classifiers.h"
#include "advrisk/distributions.h"
#include "advrisk/noise.h"
#include "advrisk/parallel.h"
#include "advrisk/risk.h"

namespace advrisk {

void validate(const LongTailConfig& cfg) {
  validate(DistributionSpec{LongTail{cfg.A, cfg.B}});
  if (!(cfg.rho > 0.0 && cfg.rho < 0.5)) throw std::invalid_argument("rho must lie in (0, 1/2)");
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  if (!(cfg.eta >= 0.0 && cfg.eta <= 0.5)) {
    throw std::invalid_argument("eta must lie in [0, 1/2] (tail flips use probability 2 eta)");
  }
  if (cfg.eta == 0.0 && !cfg.m_override) {
    throw std::invalid_argument("eta = 0 makes the sample-size formula infinite; set m");
  }
  if (cfg.m_override && *cfg.m_override < 1) throw std::invalid_argument("m must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
}

uint64_t longtail_sample_size(int A, double rho, double eta, double delta) {
  const double m = stable_ceil(16.0 * A / (rho * eta) * std::log(A / (rho * delta)));
  if (!(m >= 1.0 && m < 9.2e18)) throw std::overflow_error("sample size out of range");
  return static_cast<uint64_t>(m);
}

LongTailReport run_longtail(const LongTailConfig& cfg, int workers) {
  validate(cfg);
  const LongTail lt{cfg.A, cfg.B};
  const DistributionSpec spec = lt;
  const GroundTruth gt = ConstantZero{};
  LongTailReport out;
  out.A = cfg.A;
  out.B = cfg.B;
  out.eta = cfg.eta;
  out.rho = cfg.rho;
  out.delta = cfg.delta;
  out.m_used = cfg.m_override ? *cfg.m_override
                              : longtail_sample_size(cfg.A, cfg.rho, cfg.eta, cfg.delta);
  out.d2_bound = 3.0 * static_cast<double>(out.m_used) * cfg.rho / (8.0 * cfg.B);
  out.per_trial.resize(static_cast<std::size_t>(cfg.trials));
  const AttackBudget budget{cfg.rho, NormKind::kEuclidean, 1};
  parallel_for(out.per_trial.size(), workers, [&](std::size_t t) {
    const uint64_t trial_seed = derive_seed(cfg.seed, t);
    LongTailTrial& r = out.per_trial[t];
    {
      const NoisyDataset d1 = make_dataset(spec, gt, out.m_used, UniformNoise{cfg.eta}, trial_seed);
      const auto flips = mislabeled_points(d1);
      r.d1_flips = flips.size();
      r.d1_proxy = proxy_adversarial_risk(flips, spec, gt, budget).value;
    }
    auto d2 = std::make_shared<const NoisyDataset>(make_dataset(
        spec, gt, out.m_used, TailBiasedNoise{cfg.eta, lt.tail_start()}, trial_seed));
    const auto flips = mislabeled_points(*d2);
    r.d2_flips = flips.size();
    for (const MislabeledPoint& s : flips) r.d2_head_flips += s.x[0] < lt.tail_start() ? 1 : 0;
    const Classifier f = Classifier::interval_memorizer(d2, gt, cfg.epsilon);
    r.interpolates = verify_interpolation(f, *d2);
    r.d2_risk = adversarial_risk_exact_1d(f, spec, gt, budget).value;
    r.d2_eps_part = r.d2_risk - proxy_adversarial_risk(flips, spec, gt, budget).value;
  });
  std::vector<double> d1, d2;
  std::size_t ok1 = 0, ok2 = 0;
  for (const LongTailTrial& r : out.per_trial) {
    d1.push_back(r.d1_proxy);
    d2.push_back(r.d2_risk);
    ok1 += r.d1_proxy >= out.d1_threshold ? 1 : 0;
    ok2 += r.d2_risk <= out.d2_bound ? 1 : 0;
  }
  out.risk_D1 = summarize(d1);
  out.risk_D2 = summarize(d2);
  out.d1_success_rate = static_cast<double>(ok1) / cfg.trials;
  out.d2_success_rate = static_cast<double>(ok2) / cfg.trials;
  return out;
}

LongTailScaling run_longtail_scaling(const LongTailConfig& base, std::span<const int> Bs,
                                     int workers) {
  if (Bs.size() < 2) throw std::invalid_argument("scaling needs at least two values of B");
  LongTailScaling out;
  for (int B : Bs) {
    LongTailConfig cfg = base;
    cfg.B = B;
    out.reports.push_back(run_longtail(cfg, workers));
    out.B.push_back(B);
    out.mean_d2.push_back(out.reports.back().risk_D2.mean);
  }
  out.slope = log_log_slope(out.B, out.mean_d2);
  return out;
}

void validate(const TShapeConfig& cfg) {
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(cfg.gamma > cfg.rho)) throw std::invalid_argument("gamma must exceed rho");
  if (!(cfg.W >= 100.0 * cfg.rho)) throw std::invalid_argument("W must be at least 100 rho");
  if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  if (cfg.m < 1) throw std::invalid_argument("m must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

TShapeReport run_tshape(const TShapeConfig& cfg, int workers) {
  validate(cfg);
  const DistributionSpec spec = GappedSegment{cfg.W, cfg.rho};
  const GroundTruth gt = ThresholdX1{cfg.W / 2.0};
  const AttackBudget budget{cfg.rho, NormKind::kEuclidean, 1};
  const auto n = static_cast<std::size_t>(cfg.trials);
  std::vector<double> rf(n), rh(n), rh0(n), rhv(n);
  std::vector<char> bad(n, 0);
  parallel_for(n, workers, [&](std::size_t t) {
    auto ds = std::make_shared<const NoisyDataset>(
        make_dataset(spec, gt, cfg.m, UniformNoise{cfg.eta}, derive_seed(cfg.seed, t)));
    const Classifier f = Classifier::threshold_f(ds, cfg.W / 2.0, true);
    const Classifier h = Classifier::t_shaped_flips(*ds, cfg.gamma, cfg.rho);
    std::vector<TException> zeros;
    for (const LabeledItem& it : ds->items) {
      if (it.flipped && it.y_true == 0) zeros.push_back({it.x[0], it.y});
    }
    const Classifier h0 = Classifier::t_shaped(zeros, cfg.gamma, cfg.rho, gt);
    const Classifier hv = Classifier::t_shaped_zero_for(*ds, cfg.gamma, cfg.rho);
    bad[t] = !(verify_interpolation(f, *ds) && verify_interpolation(h, *ds) &&
               verify_interpolation(hv, *ds));
    rf[t] = adversarial_risk_exact_1d(f, spec, gt, budget).value;
    rh[t] = adversarial_risk_exact_1d(h, spec, gt, budget).value;
    rh0[t] = adversarial_risk_exact_1d(h0, spec, gt, budget).value;
    rhv[t] = adversarial_risk_exact_1d(hv, spec, gt, budget).value;
  });
  TShapeReport out;
  out.W = cfg.W;
  out.rho = cfg.rho;
  out.gamma = cfg.gamma;
  out.eta = cfg.eta;
  out.m = cfg.m;
  out.trials = cfg.trials;
  out.risk_F = summarize(rf);
  out.risk_H = summarize(rh);
  out.risk_H_label0 = summarize(rh0);
  out.risk_H_verbatim = summarize(rhv);
  const double m_eta = static_cast<double>(cfg.m) * cfg.eta;
  out.F_bound = 2.0 * cfg.rho * m_eta / cfg.W;
  out.H_bound = std::min(2.0 * cfg.gamma * m_eta / cfg.W, 0.5);
  for (char b : bad) out.interpolation_failures += b ? 1 : 0;
  out.ratio_F_over_H = out.risk_H.mean > 0.0 ? out.risk_F.mean / out.risk_H.mean : 0.0;
  return out;
}

}  // namespace advrisk
