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

#include "advrisk/subcover.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "advrisk/classifiers.h"
#include "advrisk/noise.h"
#include "advrisk/pairwise.h"
#include "advrisk/parallel.h"

namespace advrisk {
namespace {

uint64_t checked_mul(uint64_t a, uint64_t b) {
  uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("cover size exceeds the 64-bit range");
  }
  return out;
}

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("cover size exceeds the 64-bit range");
  }
  return out;
}

double objective_of(double n, double mass) {
  return n <= 1.0 ? 0.0 : n * std::log(n) / mass;
}

// Mass of the cells in one axis-aligned grid over [0,1]^d for the hypercube
// and the two-cube mixture; cells are products of per-axis pieces.
struct AxisPiece {
  double length = 0.0;   // |I ∩ [0,1]|
  double overlap = 0.0;  // |I ∩ [0, rho_mix]| / rho_mix
};

}  // namespace

void validate(const WeightedBallSet& w, double tol) {
  if (!w.balls.empty() && w.balls.size() != w.masses.size()) {
    throw std::invalid_argument("weighted ball set: |masses| != |balls|");
  }
  if (w.balls.size() > 1) {
    for (const Ball& b : w.balls) {
      if (b.radius != w.balls[0].radius || b.norm != w.balls[0].norm) {
        throw std::invalid_argument("weighted ball set: balls must share radius and norm");
      }
    }
  }
  double sum = 0.0;
  for (double m : w.masses) {
    if (!(m >= 0.0)) throw std::invalid_argument("weighted ball set: negative mass");
    if (m > w.union_mass * (1.0 + tol)) {
      throw std::invalid_argument("weighted ball set: a ball outweighs the union");
    }
    sum += m;
  }
  if (w.union_mass > sum * (1.0 + tol)) {
    throw std::invalid_argument("weighted ball set: union exceeds the sum of masses");
  }
}

WeightedBallSet weigh_balls(const DistributionSpec& spec, std::vector<Ball> balls,
                            const McOptions& mc) {
  WeightedBallSet w;
  for (const Ball& b : balls) w.masses.push_back(measure(spec, BallUnion{{b}}, mc).value);
  w.union_mass = measure(spec, BallUnion{balls}, mc).value;
  auto shared = std::make_shared<const std::vector<Ball>>(balls);
  w.balls = std::move(balls);
  w.union_oracle = [spec, shared, mc](std::span<const std::size_t> subset) {
    BallUnion u;
    for (std::size_t i : subset) u.balls.push_back((*shared)[i]);
    return measure(spec, u, mc).value;
  };
  return w;
}

SubcoverResult greedy_subcover(const WeightedBallSet& w, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (w.masses.empty()) throw std::invalid_argument("greedy subcover needs at least one ball");
  // A null union makes both conditions hold for every ball: all are kept.
  if (!(w.union_mass >= 0.0)) throw std::invalid_argument("greedy subcover: negative union mass");
  const std::size_t n = w.masses.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w.masses[a] > w.masses[b]; });
  const double threshold = alpha / static_cast<double>(n) * w.union_mass;
  std::size_t k = 0;
  while (k < n && w.masses[order[k]] >= threshold) ++k;
  SubcoverResult r;
  r.alpha = alpha;
  r.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  r.min_selected_mass = k > 0 ? w.masses[order[k - 1]] : 0.0;
  if (w.union_oracle) {
    r.selected_union_mass = w.union_oracle(r.selected);
    r.union_from_oracle = true;
  } else {
    double dropped = 0.0;
    for (std::size_t i = k; i < n; ++i) dropped += w.masses[order[i]];
    r.selected_union_mass = std::max(0.0, w.union_mass - dropped);
  }
  return r;
}

BoundReport thm2_sample_bound(uint64_t N, double mu_C, double eta, double delta) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  for (double v : {mu_C, eta, delta}) {
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("mu_C, eta, delta must lie in (0, 1]");
  }
  const double n = static_cast<double>(N);
  const double m = stable_ceil(8.0 * n / (mu_C * eta) * std::log(2.0 * n / delta));
  if (!(m < 9.2e18)) throw std::overflow_error("required sample size exceeds the 64-bit range");
  BoundReport r;
  r.m_required = static_cast<uint64_t>(std::max(1.0, m));
  r.N = N;
  r.mu_C = mu_C;
  r.eta = eta;
  r.delta = delta;
  r.guaranteed_risk = mu_C / 4.0;
  return r;
}

uint64_t grid_cover_size(const MeasureQuery& region, double cover_radius, NormKind norm) {
  if (!(cover_radius > 0.0)) throw std::invalid_argument("cover radius must be positive");
  if (const auto* iv = std::get_if<IntervalUnion>(&region)) {
    uint64_t total = 0;
    const IntervalSet merged = IntervalSet::from_segments(iv->intervals);
    for (const Segment& s : merged.segments()) {
      total = checked_add(total, cells_per_axis(s.length(), cover_radius, 1, norm));
    }
    return total;
  }
  if (const auto* bu = std::get_if<BallUnion>(&region)) {
    uint64_t total = 0;
    for (const Ball& b : bu->balls) {
      const int d = static_cast<int>(b.center.dim());
      const uint64_t per_axis = cells_per_axis(2.0 * b.radius, cover_radius, d, norm);
      uint64_t cells = 1;
      for (int k = 0; k < d; ++k) cells = checked_mul(cells, per_axis);
      total = checked_add(total, cells);
    }
    return total;
  }
  throw std::invalid_argument("grid covers are defined for interval and ball unions");
}

Thm2Result run_thm2_experiment(const Thm2Config& cfg, int workers) {
  validate(cfg.spec);
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  Thm2Result out;
  out.cover_radius = cfg.cover_radius.value_or(cfg.rho / 2.0);
  uint64_t N = 0;
  try {
    N = grid_cover_size(cfg.C, out.cover_radius, cfg.norm);
  } catch (const std::overflow_error&) {
    throw std::overflow_error(
        "covering number of C overflows 64 bits; choose a smaller region C or a larger rho");
  }
  out.mu_C = measure(cfg.spec, cfg.C, cfg.mc);
  if (!(out.mu_C.value > 0.0)) throw std::invalid_argument("mu(C) must be positive");
  out.bound = thm2_sample_bound(N, out.mu_C.value, cfg.eta, cfg.delta);
  if (out.bound.m_required > 50'000'000) {
    throw std::overflow_error("required sample size " + std::to_string(out.bound.m_required) +
                              " exceeds desk scale; choose a smaller C or a larger rho");
  }
  out.per_trial.resize(static_cast<std::size_t>(cfg.trials));
  const AttackBudget budget{cfg.rho, cfg.norm, 1};
  parallel_for(out.per_trial.size(), workers, [&](std::size_t t) {
    const uint64_t trial_seed = derive_seed(cfg.seed, t);
    const NoisyDataset ds = make_dataset(cfg.spec, cfg.gt, out.bound.m_required,
                                         UniformNoise{cfg.eta}, trial_seed);
    const auto flips = mislabeled_points(ds);
    Thm2Trial& r = out.per_trial[t];
    r.m = ds.size();
    r.flipped = flips.size();
    r.proxy_risk = proxy_adversarial_risk(flips, cfg.spec, cfg.gt, budget,
                                          McOptions{cfg.mc.samples, derive_seed(trial_seed, 2)});
    r.success = r.proxy_risk.value >= out.bound.guaranteed_risk;
  });
  std::size_t wins = 0;
  for (const Thm2Trial& r : out.per_trial) wins += r.success ? 1 : 0;
  out.success_rate = static_cast<double>(wins) / static_cast<double>(cfg.trials);
  return out;
}

OptimizeCResult optimize_C_greedy(const DistributionSpec& spec, double rho, double r_target,
                                  std::optional<double> cell_side) {
  validate(spec);
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(r_target > 0.0)) {
    throw std::invalid_argument(
        "r_target must be positive: the objective N ln N / mu(C) is undefined as mu(C) -> 0");
  }
  const double side = cell_side.value_or(rho);
  if (!(side > 0.0) || side > rho * (1.0 + 1e-12)) {
    throw std::invalid_argument("cell side must lie in (0, rho] so cells fit in rho/2 balls");
  }
  const double target = 4.0 * r_target;
  const double tol = 1e-12;
  if (target > 1.0 + tol) {
    throw std::domain_error("infeasible: 4 r_target exceeds the total mass 1");
  }
  OptimizeCResult out;
  out.cell_side = side;

  if (auto density = line_density(spec)) {
    const IntervalSet support = density->support();
    const double lo = support.segments().front().lo;
    const double hi = support.segments().back().hi;
    const auto k = static_cast<std::size_t>(std::max(1.0, stable_ceil((hi - lo) / side)));
    std::vector<std::pair<double, std::size_t>> cells;
    for (std::size_t j = 0; j < k; ++j) {
      const double a = lo + static_cast<double>(j) * side;
      const double b = std::min(hi, a + side);
      cells.emplace_back(density->mass(Segment{a, b}), j);
    }
    std::stable_sort(cells.begin(), cells.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<Ball> chosen;
    const int dim = ambient_dim(spec);
    for (const auto& [mass, j] : cells) {
      if (out.mass >= target * (1.0 - tol)) break;
      if (mass <= 0.0) break;
      out.mass += mass;
      std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
      c[0] = lo + (static_cast<double>(j) + 0.5) * side;
      chosen.push_back(Ball{Point(std::move(c)), side / 2.0, NormKind::kMaximum});
    }
    if (out.mass < target * (1.0 - tol)) throw std::domain_error("infeasible: not enough mass");
    out.N = static_cast<double>(chosen.size());
    out.objective = objective_of(out.N, out.mass);
    out.cells = std::move(chosen);
    return out;
  }

  int d = 0;
  double r_mix = 0.0;
  double rho_mix = 1.0;
  if (const auto* h = std::get_if<Hypercube>(&spec)) {
    d = h->d;
  } else if (const auto* t = std::get_if<TwoCubeMixture>(&spec)) {
    d = t->d;
    r_mix = t->r;
    rho_mix = t->rho;
  } else {
    throw std::invalid_argument("optimize_C needs a line-supported, hypercube or two-cube spec");
  }
  const auto k = static_cast<std::size_t>(std::max(1.0, stable_ceil(1.0 / side)));
  std::vector<AxisPiece> axis(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double a = static_cast<double>(j) * side;
    const double b = std::min(1.0, a + side);
    axis[j].length = b - a;
    axis[j].overlap = std::max(0.0, std::min(b, rho_mix) - a) / rho_mix;
  }
  const double log_cells = d * std::log(static_cast<double>(k));
  if (log_cells <= std::log(1e6)) {
    // Enumerate every cell; ties keep the lexicographic cell order.
    const std::size_t total = static_cast<std::size_t>(std::llround(std::exp(log_cells)));
    std::vector<std::pair<double, std::size_t>> cells;
    cells.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t c = 0; c < total; ++c) {
      std::size_t rem = c;
      double vol = 1.0;
      double small = 1.0;
      for (int a = d - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = rem % k;
        rem /= k;
        vol *= axis[idx[static_cast<std::size_t>(a)]].length;
        small *= axis[idx[static_cast<std::size_t>(a)]].overlap;
      }
      cells.emplace_back((1.0 - r_mix) * vol + r_mix * small, c);
    }
    std::stable_sort(cells.begin(), cells.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<Ball> chosen;
    for (const auto& [mass, c] : cells) {
      if (out.mass >= target * (1.0 - tol) || mass <= 0.0) break;
      out.mass += mass;
      std::vector<double> center(static_cast<std::size_t>(d));
      std::size_t rem = c;
      for (int a = d - 1; a >= 0; --a) {
        center[static_cast<std::size_t>(a)] = (static_cast<double>(rem % k) + 0.5) * side;
        rem /= k;
      }
      chosen.push_back(Ball{Point(std::move(center)), side / 2.0, NormKind::kMaximum});
    }
    if (out.mass < target * (1.0 - tol)) throw std::domain_error("infeasible: not enough mass");
    out.N = static_cast<double>(chosen.size());
    out.objective = objective_of(out.N, out.mass);
    out.cells = std::move(chosen);
    return out;
  }

  // Grouped grid: cells with the same multiset of per-axis piece types have
  // the same mass, so classes are compositions of d over the piece types.
  std::map<std::pair<double, double>, long double> types;
  for (const AxisPiece& p : axis) types[{p.length, p.overlap}] += 1.0L;
  std::vector<std::pair<AxisPiece, long double>> kinds;
  for (const auto& [key, count] : types) kinds.push_back({AxisPiece{key.first, key.second}, count});
  const std::size_t T = kinds.size();
  // Number of compositions of d into T parts: C(d + T - 1, T - 1).
  long double compositions = 1.0L;
  for (std::size_t i = 1; i < T; ++i) compositions = compositions * (d + i) / i;
  if (compositions > 2e6L) {
    throw std::invalid_argument("grid too irregular for grouped enumeration; use a cell side "
                                "dividing both 1 and the small-cube side");
  }
  struct Group {
    long double mass;
    long double count;
    std::vector<int> parts;
  };
  std::vector<Group> groups;
  std::vector<int> parts(T, 0);
  std::vector<long double> lgamma_cache(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) lgamma_cache[static_cast<std::size_t>(i)] = std::lgamma((long double)i + 1);
  auto emit = [&] {
    long double log_count = lgamma_cache[static_cast<std::size_t>(d)];
    long double vol = 1.0L;
    long double small = 1.0L;
    for (std::size_t t = 0; t < T; ++t) {
      log_count -= lgamma_cache[static_cast<std::size_t>(parts[t])];
      log_count += parts[t] * std::log(kinds[t].second);
      vol *= std::pow((long double)kinds[t].first.length, parts[t]);
      small *= std::pow((long double)kinds[t].first.overlap, parts[t]);
    }
    const long double mass = (1.0L - r_mix) * vol + r_mix * small;
    if (mass > 0.0L) groups.push_back({mass, std::round(std::exp(log_count)), parts});
  };
  std::function<void(std::size_t, int)> rec = [&](std::size_t t, int left) {
    if (t + 1 == T) {
      parts[t] = left;
      emit();
      return;
    }
    for (int v = left; v >= 0; --v) {
      parts[t] = v;
      rec(t + 1, left - v);
    }
  };
  rec(0, d);
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) { return a.mass > b.mass; });
  long double acc = 0.0L;
  long double n_cells = 0.0L;
  for (const Group& g : groups) {
    CellClass cls;
    cls.mass = static_cast<double>(g.mass);
    cls.count = static_cast<double>(g.count);
    std::ostringstream desc;
    for (std::size_t t = 0; t < T; ++t) {
      if (t) desc << ' ';
      desc << "len=" << kinds[t].first.length << "/small=" << kinds[t].first.overlap << ":"
           << g.parts[t];
    }
    cls.description = desc.str();
    if (acc < target * (1.0 - tol)) {
      const long double need = target - acc;
      long double take = g.count;
      if (g.mass * g.count > need) take = std::min(g.count, std::ceil(need / g.mass - 1e-9L));
      take = std::max(take, 1.0L);
      acc += take * g.mass;
      n_cells += take;
      cls.taken = static_cast<double>(take);
    }
    out.classes.push_back(std::move(cls));
  }
  if (acc < target * (1.0 - tol)) throw std::domain_error("infeasible: not enough mass");
  out.mass = static_cast<double>(acc);
  out.N = static_cast<double>(n_cells);
  out.objective = objective_of(out.N, out.mass);
  return out;
}

LaurentMassart laurent_massart_tails(int d, double s) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  const double k = d - 1.0;
  LaurentMassart r;
  r.lower_threshold = k - 2.0 * std::sqrt(k * s);
  r.upper_threshold = 1.0 + 2.0 * std::sqrt(s) + 2.0 * s;
  r.lower = std::exp(-s);
  r.upper = std::exp(-s);
  return r;
}

SphereBound sphere_risk_bound(int d, double m, double rho) {
  if (!(rho > 0.0 && rho < 0.25)) throw std::invalid_argument("sphere bound requires 0 < rho < 1/4");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(m >= 0.0)) throw std::invalid_argument("m must be nonnegative");
  SphereBound b;
  b.value = m * sphere_cap_probability(d, 1.0 - rho * rho / 2.0) +
            sphere_cap_probability(d, 0.5 - rho);
  b.crude = (m + 1.0) * std::exp(-d / 40.0);
  return b;
}

uint64_t sphere_sample_count(int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  const double v = stable_floor(std::pow(1.01, d));
  if (!(v < 9.2e18)) throw std::overflow_error("1.01^d exceeds the 64-bit range");
  return static_cast<uint64_t>(std::max(1.0, v));
}

namespace {

NoisyDataset sphere_dataset(int d, uint64_t m, double eta, uint64_t seed) {
  return make_dataset(Sphere{d}, ThresholdX1{0.5}, m, UniformNoise{eta}, derive_seed(seed, 0));
}

void check_desk_scale(int d, uint64_t m) {
  if (static_cast<double>(m) * d > 5e7) {
    throw std::invalid_argument("sphere experiment: m * d = " +
                                std::to_string(static_cast<double>(m) * d) +
                                " exceeds desk scale (5e7)");
  }
}

}  // namespace

double sphere_sample_min_distance(int d, uint64_t m, double eta, uint64_t seed) {
  check_desk_scale(d, m);
  const NoisyDataset ds = sphere_dataset(d, m, eta, seed);
  std::vector<Point> pts;
  pts.reserve(ds.size());
  for (const LabeledItem& it : ds.items) pts.push_back(it.x);
  return min_pairwise_distance(pts, NormKind::kEuclidean);
}

SphereResult run_sphere_experiment(const SphereConfig& cfg) {
  if (cfg.d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(cfg.rho > 0.0 && cfg.rho < 0.25)) {
    throw std::invalid_argument("sphere experiment requires 0 < rho < 1/4");
  }
  if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  SphereResult out;
  out.m = cfg.m ? *cfg.m : sphere_sample_count(cfg.d);
  check_desk_scale(cfg.d, out.m);
  auto ds = std::make_shared<const NoisyDataset>(sphere_dataset(cfg.d, out.m, cfg.eta, cfg.seed));
  out.flipped = ds->flipped_count();
  const Classifier f = Classifier::memorizer(ds, ThresholdX1{0.5});
  out.mc_risk = adversarial_risk_mc(f, Sphere{cfg.d}, ThresholdX1{0.5},
                                    AttackBudget{cfg.rho, NormKind::kEuclidean, cfg.n_directions},
                                    cfg.n_test, derive_seed(cfg.seed, 1));
  out.analytic_bound = sphere_risk_bound(cfg.d, static_cast<double>(out.m), cfg.rho);
  if (cfg.min_distance && out.m >= 2) {
    std::vector<Point> pts;
    pts.reserve(ds->size());
    for (const LabeledItem& it : ds->items) pts.push_back(it.x);
    out.min_pairwise_distance = min_pairwise_distance(pts, NormKind::kEuclidean);
  }
  return out;
}

}  // namespace advrisk
