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

#include "advrisk/games.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "advrisk/noise.h"
#include "advrisk/pairwise.h"
#include "advrisk/parallel.h"

namespace advrisk {
namespace {

int64_t quantize(double gain) { return std::llround(gain * 1e12); }

// Lazy greedy: gains only shrink as coverage grows, so a candidate whose
// refreshed gain still beats the next stale key is the true argmax.
template <class Gain, class Commit>
std::vector<std::size_t> lazy_greedy(std::size_t candidates, uint64_t picks, Gain gain,
                                     Commit commit) {
  using Key = std::tuple<int64_t, int64_t>;  // (quantized gain, -index)
  std::priority_queue<Key> heap;
  for (std::size_t i = 0; i < candidates; ++i) {
    heap.emplace(quantize(gain(i)), -static_cast<int64_t>(i));
  }
  std::vector<std::size_t> chosen;
  while (chosen.size() < picks && !heap.empty()) {
    auto [stale, neg] = heap.top();
    heap.pop();
    const auto i = static_cast<std::size_t>(-neg);
    const Key fresh{quantize(gain(i)), neg};
    if (!heap.empty() && fresh < heap.top()) {
      heap.push(fresh);
      continue;
    }
    chosen.push_back(i);
    commit(i);
  }
  return chosen;
}

std::vector<Point> candidate_grid(const GameConfig& cfg, double step) {
  const Box box = bounding_box(cfg.spec);
  const std::size_t d = box.dim();
  std::vector<std::size_t> counts(d);
  double total = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    counts[k] = static_cast<std::size_t>(stable_floor((box.hi[k] - box.lo[k]) / step)) + 1;
    total *= static_cast<double>(counts[k]);
  }
  if (total > 2e5) throw std::invalid_argument("poisoner candidate grid too large; raise the step");
  std::vector<Point> out;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t c = 0; c < static_cast<std::size_t>(total); ++c) {
    std::size_t rem = c;
    std::vector<double> x(d);
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % counts[k];
      rem /= counts[k];
      x[k] = std::min(box.hi[k], box.lo[k] + static_cast<double>(idx[k]) * step);
    }
    Point p(std::move(x));
    if (in_support(cfg.spec, p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

uint64_t GameConfig::N() const {
  return static_cast<uint64_t>(std::max(0.0, stable_floor(eta * static_cast<double>(m))));
}

void validate(const GameConfig& cfg) {
  validate(cfg.spec);
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (cfg.N() < 1) throw std::invalid_argument("N = floor(eta * m) must be >= 1");
  if (cfg.candidate_step && !(*cfg.candidate_step > 0.0)) {
    throw std::invalid_argument("candidate step must be positive");
  }
}

PoisonerResponse poisoner_best_response(const GameConfig& cfg) {
  validate(cfg);
  const double step = cfg.candidate_step.value_or(cfg.rho / 10.0);
  const std::vector<Point> cands = candidate_grid(cfg, step);
  if (cands.empty()) throw std::invalid_argument("poisoner candidate grid is empty");
  const uint64_t N = cfg.N();
  PoisonerResponse out;

  if (auto density = line_density(cfg.spec)) {
    // Region each candidate can flip: its ball where f* agrees with f*(s).
    std::vector<IntervalSet> reach;
    reach.reserve(cands.size());
    for (const Point& s : cands) {
      const Segment ball = line_section(Ball{s, cfg.rho, cfg.norm});
      reach.push_back(label_region(cfg.gt, ground_truth_label(cfg.gt, s), ball));
    }
    IntervalSet covered;
    auto gain = [&](std::size_t i) {
      return density->mass(reach[i]) - density->mass(reach[i].intersect(covered));
    };
    auto commit = [&](std::size_t i) {
      for (const Segment& seg : reach[i].segments()) covered.insert(seg);
    };
    for (std::size_t i : lazy_greedy(cands.size(), N, gain, commit)) out.points.push_back(cands[i]);
    out.r_poison = std::min(1.0, density->mass(covered));
    out.exact = true;
    return out;
  }

  // Off the line: coverage of a fixed Monte Carlo sample.
  std::vector<Point> xs;
  xs.reserve(cfg.mc_samples);
  for (uint64_t i = 0; i < cfg.mc_samples; ++i) {
    CounterRng rng(derive_seed(cfg.mc_seed, i));
    xs.push_back(sample_one(cfg.spec, rng));
  }
  const RadiusIndex index(xs, cfg.norm);
  const auto near = index.query(cands, cfg.rho);
  std::vector<std::vector<std::size_t>> reach(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Label ls = ground_truth_label(cfg.gt, cands[i]);
    for (std::size_t k : near[i]) {
      if (ground_truth_label(cfg.gt, xs[k]) == ls) reach[i].push_back(k);
    }
  }
  std::vector<char> hit(xs.size(), 0);
  uint64_t covered = 0;
  const double inv = 1.0 / static_cast<double>(xs.size());
  auto gain = [&](std::size_t i) {
    uint64_t g = 0;
    for (std::size_t k : reach[i]) g += hit[k] ? 0 : 1;
    return static_cast<double>(g) * inv;
  };
  auto commit = [&](std::size_t i) {
    for (std::size_t k : reach[i]) {
      if (!hit[k]) {
        hit[k] = 1;
        ++covered;
      }
    }
  };
  for (std::size_t i : lazy_greedy(cands.size(), N, gain, commit)) out.points.push_back(cands[i]);
  out.r_poison = static_cast<double>(covered) * inv;
  out.exact = false;
  return out;
}

uint64_t uniform_sample_size(uint64_t N, double eta, double r_poison, double delta) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(r_poison > 0.0)) throw std::invalid_argument("r_poison must be positive");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  const double n = static_cast<double>(N);
  const double T = stable_ceil(2.0 * n / (eta * r_poison) * (std::log(n) + std::log(1.0 / delta)));
  if (!(T < 9.2e18)) throw std::overflow_error("T exceeds the 64-bit range");
  return static_cast<uint64_t>(std::max(1.0, T));
}

GameSummary play_game(const GameConfig& cfg, int trials, uint64_t seed, int workers) {
  validate(cfg);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  GameSummary out;
  out.poisoner = poisoner_best_response(cfg);
  out.N = cfg.N();
  out.T = uniform_sample_size(out.N, cfg.eta, out.poisoner.r_poison, cfg.delta);
  if (out.T > 50'000'000) throw std::overflow_error("T exceeds desk scale");
  out.results.resize(static_cast<std::size_t>(trials));
  const AttackBudget wide{2.0 * cfg.rho, cfg.norm, 1};
  const AttackBudget narrow{cfg.rho, cfg.norm, 1};
  parallel_for(out.results.size(), workers, [&](std::size_t t) {
    const uint64_t trial_seed = derive_seed(seed, t);
    const NoisyDataset ds =
        make_dataset(cfg.spec, cfg.gt, out.T, UniformNoise{cfg.eta}, trial_seed);
    const auto flips = mislabeled_points(ds);
    const McOptions mc{cfg.mc_samples, derive_seed(trial_seed, 2)};
    GameResult& r = out.results[t];
    r.r_poison = out.poisoner.r_poison;
    r.T = out.T;
    r.N = out.N;
    r.flipped = flips.size();
    r.r_unif = proxy_adversarial_risk(flips, cfg.spec, cfg.gt, wide, mc);
    r.r_unif_rho = proxy_adversarial_risk(flips, cfg.spec, cfg.gt, narrow, mc);
    r.inequality_holds = r.r_unif.value >= 0.5 * r.r_poison;
  });
  std::size_t wins = 0;
  for (const GameResult& r : out.results) wins += r.inequality_holds ? 1 : 0;
  out.success_rate = static_cast<double>(wins) / trials;
  return out;
}

}  // namespace advrisk
