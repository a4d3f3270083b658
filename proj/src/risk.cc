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

#include "advrisk/risk.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "advrisk/pairwise.h"

namespace advrisk {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kBlock = 1024;

std::optional<double> threshold_of(const GroundTruth& gt) {
  if (const auto* t = std::get_if<ThresholdX1>(&gt)) return t->t;
  return std::nullopt;
}

// Threshold of the classifier's default labeling on the first coordinate.
std::optional<double> base_threshold(const Classifier& c) {
  return std::visit(Overloaded{
                        [](const Memorizer& m) { return threshold_of(m.gt); },
                        [](const NearestNeighbor&) -> std::optional<double> {
                          return std::nullopt;
                        },
                        [](const IntervalMemorizer& m) { return threshold_of(m.gt); },
                        [](const ThresholdF& f) -> std::optional<double> { return f.t; },
                        [](const TShaped& t) { return threshold_of(t.background); },
                        [](const TruthLike& t) { return threshold_of(t.gt); },
                    },
                    c.variant());
}

Point with_coord(const Point& x, std::size_t k, double v) {
  std::vector<double> c(x.coords().begin(), x.coords().end());
  c[k] = v;
  return Point(std::move(c));
}

Point with_first_two(const Point& x, double v0, double v1) {
  std::vector<double> c(x.coords().begin(), x.coords().end());
  c[0] = v0;
  c[1] = v1;
  return Point(std::move(c));
}

class WitnessSearch {
 public:
  WitnessSearch(const Classifier& c, Label label, const Point& x, const AttackBudget& b)
      : c_(c), label_(label), x_(x), b_(b) {}

  bool try_point(const Point& z) const {
    return distance(x_, z, b_.norm) <= b_.rho && c_.classify(z) != label_;
  }
  // Moves v toward x_1 by a few ulps when rounding puts it just outside the
  // ball, so that boundary witnesses such as x_1 + rho stay admissible.
  bool try_x1(double v) const {
    Point z = with_coord(x_, 0, v);
    for (int k = 0; k < 8 && distance(x_, z, b_.norm) > b_.rho; ++k) {
      v = std::nextafter(v, x_[0]);
      z = with_coord(x_, 0, v);
    }
    return try_point(z);
  }

  bool analytic() const {
    if (c_.classify(x_) != label_) return true;
    const double x1 = x_[0];
    const double rho = b_.rho;
    if (try_x1(x1 - rho) || try_x1(x1 + rho)) return true;
    if (auto t = base_threshold(c_)) {
      if (std::abs(*t - x1) <= rho) {
        if (try_x1(*t) || try_x1(std::nextafter(*t, std::numeric_limits<double>::infinity()))) {
          return true;
        }
      }
    }
    if (const auto* m = std::get_if<IntervalMemorizer>(&c_.variant())) {
      auto it = std::lower_bound(m->flipped_x.begin(), m->flipped_x.end(),
                                 x1 - rho - m->epsilon);
      for (; it != m->flipped_x.end() && *it <= x1 + rho + m->epsilon; ++it) {
        if (try_x1(std::clamp(x1, *it - m->epsilon, *it + m->epsilon))) return true;
      }
    }
    if (const auto* t = std::get_if<TShaped>(&c_.variant())) {
      if (tshape(*t)) return true;
    }
    return false;
  }

 private:
  bool tshape(const TShaped& t) const {
    const double x1 = x_[0];
    const double x2 = x_[1];
    const double rho = b_.rho;
    const double reach = t.gamma + rho;
    auto it = std::lower_bound(t.exceptions.begin(), t.exceptions.end(), x1 - reach,
                               [](const TException& e, double v) { return e.z < v; });
    for (; it != t.exceptions.end() && it->z <= x1 + reach; ++it) {
      // Stem {x_1 = z, x_2 < rho_T}.
      const double stem_x2 = x2 < t.rho ? x2 : std::nextafter(t.rho, -1.0);
      if (try_point(with_first_two(x_, it->z, stem_x2))) return true;
      // Head {|x_1 - z| <= gamma, 0 < x_2 < rho_T}: nearest x_1, then any
      // admissible x_2 within the remaining budget.
      const double h1 = inside_head(std::clamp(x1, it->z - t.gamma, it->z + t.gamma), it->z,
                                    t.gamma);
      const double dx = std::abs(h1 - x1);
      const double rem = b_.norm == NormKind::kMaximum
                             ? rho
                             : std::sqrt(std::max(0.0, rho * rho - dx * dx));
      const double lo = std::max(0.0, x2 - rem);
      const double hi = std::min(t.rho, x2 + rem);
      if (dx <= rho && lo < hi) {
        const double h2 = (0.0 < x2 && x2 < t.rho) ? x2 : 0.5 * (lo + hi);
        if (h2 > 0.0 && h2 < t.rho && try_point(with_first_two(x_, h1, h2))) return true;
      }
    }
    return false;
  }

  // Moves h toward z until it passes the classifier's own head test; the
  // clamped endpoint z +- gamma can round to just outside it.
  static double inside_head(double h, double z, double gamma) {
    for (int k = 0; k < 8 && (z < h - gamma || z > h + gamma || std::abs(h - z) > gamma); ++k) {
      h = std::nextafter(h, z);
    }
    return h;
  }

  const Classifier& c_;
  Label label_;
  const Point& x_;
  const AttackBudget& b_;
};

Point random_ball_point(const Point& x, const AttackBudget& b, CounterRng& rng) {
  const std::size_t d = x.dim();
  std::vector<double> z(x.coords().begin(), x.coords().end());
  if (b.norm == NormKind::kMaximum) {
    for (std::size_t k = 0; k < d; ++k) z[k] += rng.uniform(-b.rho, b.rho);
    return Point(std::move(z));
  }
  std::vector<double> g(d);
  double n2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    g[k] = rng.normal();
    n2 += g[k] * g[k];
  }
  const double r = b.rho * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  const double scale = n2 > 0.0 ? r / std::sqrt(n2) : 0.0;
  for (std::size_t k = 0; k < d; ++k) z[k] += scale * g[k];
  return Point(std::move(z));
}

// Training points where the classifier departs from its default rule. Other
// training points label like the rule around them, so the threshold witness
// already covers them (up to measure zero).
std::vector<std::size_t> informative_items(const Classifier& c) {
  std::vector<std::size_t> out;
  const NoisyDataset* ds = c.dataset();
  if (ds == nullptr) return out;
  const bool nn = std::holds_alternative<NearestNeighbor>(c.variant());
  const auto* f = std::get_if<ThresholdF>(&c.variant());
  for (std::size_t i = 0; i < ds->items.size(); ++i) {
    const LabeledItem& it = ds->items[i];
    Label rule = it.y_true;
    if (f != nullptr) rule = it.x[0] > f->t ? 1 : 0;
    if (nn || it.y != rule) out.push_back(i);
  }
  return out;
}

// Radius index over the informative training points, reporting dataset
// indices.
class TrainingIndex {
 public:
  TrainingIndex(const Classifier& c, NormKind norm) : items_(informative_items(c)) {
    if (items_.empty()) return;
    std::vector<Point> pts;
    pts.reserve(items_.size());
    for (std::size_t i : items_) pts.push_back(c.dataset()->items[i].x);
    index_.emplace(pts, norm);
  }
  bool empty() const { return !index_; }
  std::span<const std::size_t> items() const { return items_; }
  std::vector<std::vector<std::size_t>> query(std::span<const Point> xs, double r) const {
    if (!index_) return std::vector<std::vector<std::size_t>>(xs.size());
    auto near = index_->query(xs, r);
    for (auto& list : near) {
      for (std::size_t& k : list) k = items_[k];
    }
    return near;
  }

 private:
  std::vector<std::size_t> items_;
  std::optional<RadiusIndex> index_;
};

Point line_point(double x1, int dim) {
  std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
  c[0] = x1;
  return Point(std::move(c));
}

// Evaluates test points in blocks; `next` fills a block and returns its size.
template <class Next>
uint64_t count_vulnerable(const Classifier& c, const GroundTruth& gt,
                          const AttackBudget& budget, Next next) {
  const TrainingIndex index(c, budget.norm);
  uint64_t hits = 0;
  std::vector<Point> xs;
  std::vector<CounterRng> rngs;
  while (next(xs, rngs)) {
    const auto near = index.query(xs, budget.rho);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (find_adversarial_witness(c, ground_truth_label(gt, xs[j]), xs[j], budget,
                                   rngs[j], near[j])) {
        ++hits;
      }
    }
  }
  return hits;
}

}  // namespace

void validate(const AttackBudget& budget) {
  if (!(budget.rho > 0.0) || !std::isfinite(budget.rho)) {
    throw std::invalid_argument("attack budget rho must be a positive finite number");
  }
  if (budget.n_directions < 1) {
    throw std::invalid_argument("attack budget n_directions must be >= 1");
  }
}

bool find_adversarial_witness(const Classifier& c, Label label, const Point& x,
                              const AttackBudget& budget, CounterRng& rng,
                              std::span<const std::size_t> nearby_training) {
  WitnessSearch search(c, label, x, budget);
  if (search.analytic()) return true;
  if (const NoisyDataset* ds = c.dataset()) {
    for (std::size_t i : nearby_training) {
      if (search.try_point(ds->items[i].x)) return true;
    }
  }
  for (int k = 0; k < budget.n_directions; ++k) {
    if (search.try_point(random_ball_point(x, budget, rng))) return true;
  }
  return false;
}

RiskEstimate adversarial_risk_mc(const Classifier& c, const DistributionSpec& spec,
                                 const GroundTruth& gt, const AttackBudget& budget,
                                 uint64_t n_test, uint64_t seed) {
  validate(spec);
  validate(budget);
  if (n_test == 0) throw std::invalid_argument("n_test must be >= 1");
  uint64_t produced = 0;
  auto next = [&](std::vector<Point>& xs, std::vector<CounterRng>& rngs) {
    xs.clear();
    rngs.clear();
    while (produced < n_test && xs.size() < kBlock) {
      rngs.emplace_back(derive_seed(seed, produced++));
      xs.push_back(sample_one(spec, rngs.back()));
    }
    return !xs.empty();
  };
  const uint64_t hits = count_vulnerable(c, gt, budget, next);
  return Estimate::from_counts(hits, n_test, EstimateMethod::kMonteCarlo);
}

RiskEstimate adversarial_risk_exact_1d(const Classifier& c, const DistributionSpec& spec,
                                       const GroundTruth& gt, const AttackBudget& budget) {
  validate(spec);
  if (!(budget.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  const auto density = line_density(spec);
  if (!density) throw std::invalid_argument("exact risk needs a line-supported distribution");
  const double rho = budget.rho;
  std::vector<double> cuts;
  for (const DensityPiece& p : density->pieces()) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  auto around = [&](double v, double r) {
    cuts.push_back(v - r);
    cuts.push_back(v);
    cuts.push_back(v + r);
  };
  if (auto t = threshold_of(gt)) around(*t, rho);
  if (auto t = base_threshold(c)) around(*t, rho);
  const TrainingIndex index(c, budget.norm);
  {
    std::vector<double> xs;
    for (std::size_t i : index.items()) xs.push_back(c.dataset()->items[i].x[0]);
    std::sort(xs.begin(), xs.end());
    for (double v : xs) around(v, rho);
    if (std::holds_alternative<NearestNeighbor>(c.variant())) {
      for (std::size_t i = 1; i < xs.size(); ++i) around(0.5 * (xs[i - 1] + xs[i]), rho);
    }
  }
  if (const auto* m = std::get_if<IntervalMemorizer>(&c.variant())) {
    for (double s : m->flipped_x) {
      around(s, m->epsilon);
      around(s, rho + m->epsilon);
    }
  }
  if (const auto* t = std::get_if<TShaped>(&c.variant())) {
    for (const TException& e : t->exceptions) {
      around(e.z, rho);
      around(e.z, t->gamma);
      around(e.z, t->gamma + rho);
    }
  }
  const IntervalSet support = density->support();
  const double lo = support.segments().front().lo;
  const double hi = support.segments().back().hi;
  std::erase_if(cuts, [&](double v) { return v < lo || v > hi; });
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int dim = ambient_dim(spec);
  std::vector<Point> mids;
  std::vector<double> masses;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double w = density->mass(Segment{cuts[i - 1], cuts[i]});
    if (w <= 0.0) continue;
    mids.push_back(line_point(0.5 * (cuts[i - 1] + cuts[i]), dim));
    masses.push_back(w);
  }
  AttackBudget exact_budget = budget;
  exact_budget.n_directions = 0;
  const auto near = index.query(mids, rho);
  CounterRng unused(0);
  double risk = 0.0;
  for (std::size_t j = 0; j < mids.size(); ++j) {
    if (find_adversarial_witness(c, ground_truth_label(gt, mids[j]), mids[j], exact_budget,
                                 unused, near[j])) {
      risk += masses[j];
    }
  }
  return Estimate::exact(std::min(1.0, risk), EstimateMethod::kExact1D);
}

IntervalSet proxy_region_1d(std::span<const MislabeledPoint> mislabeled,
                            const DistributionSpec& spec, const GroundTruth& gt,
                            double rho, NormKind norm) {
  const auto density = line_density(spec);
  if (!density) throw std::invalid_argument("spec is not line-supported");
  std::vector<Segment> parts;
  for (const MislabeledPoint& s : mislabeled) {
    const Segment ball = line_section(Ball{s.x, rho, norm});
    if (ball.empty()) continue;
    const IntervalSet disagree = label_region(gt, 1 - s.y, ball);
    for (const Segment& seg : disagree.segments()) parts.push_back(seg);
  }
  return IntervalSet::from_segments(parts).intersect(density->support());
}

RiskEstimate proxy_adversarial_risk(std::span<const MislabeledPoint> mislabeled,
                                    const DistributionSpec& spec, const GroundTruth& gt,
                                    const AttackBudget& budget, const McOptions& mc) {
  validate(spec);
  if (!(budget.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (auto density = line_density(spec)) {
    const IntervalSet region = proxy_region_1d(mislabeled, spec, gt, budget.rho, budget.norm);
    const double v = density->mass(region);
    return Estimate::exact(std::clamp(v, 0.0, 1.0), EstimateMethod::kProxyExact1D);
  }
  if (mc.samples == 0) throw std::invalid_argument("Monte Carlo sample count must be >= 1");
  if (mislabeled.empty()) {
    return Estimate::from_counts(0, mc.samples, EstimateMethod::kProxyMonteCarlo);
  }
  std::vector<Point> centers;
  for (const MislabeledPoint& s : mislabeled) centers.push_back(s.x);
  const RadiusIndex index(centers, budget.norm);
  uint64_t hits = 0;
  for (uint64_t start = 0; start < mc.samples; start += kBlock) {
    const uint64_t b = std::min<uint64_t>(kBlock, mc.samples - start);
    std::vector<Point> xs;
    for (uint64_t i = 0; i < b; ++i) {
      CounterRng rng(derive_seed(mc.seed, start + i));
      xs.push_back(sample_one(spec, rng));
    }
    const auto near = index.query(xs, budget.rho);
    for (uint64_t i = 0; i < b; ++i) {
      const Label y = ground_truth_label(gt, xs[i]);
      for (std::size_t k : near[i]) {
        if (mislabeled[k].y != y) {
          ++hits;
          break;
        }
      }
    }
  }
  return Estimate::from_counts(hits, mc.samples, EstimateMethod::kProxyMonteCarlo);
}

RiskEstimate restricted_risk(const Classifier& c, const DistributionSpec& spec,
                             const GroundTruth& gt, const MeasureQuery& region,
                             const AttackBudget& budget, uint64_t n_test, uint64_t seed) {
  validate(spec);
  validate(budget);
  if (n_test == 0) throw std::invalid_argument("n_test must be >= 1");
  const Estimate mu = measure(spec, region, McOptions{20000, derive_seed(seed, 0x5eed)});
  if (mu.value <= 0.0) {
    throw std::domain_error("restricted risk: the region has zero mass under mu");
  }
  const uint64_t max_attempts = std::max<uint64_t>(10'000'000, n_test * 10'000);
  uint64_t attempts = 0;
  uint64_t accepted = 0;
  auto next = [&](std::vector<Point>& xs, std::vector<CounterRng>& rngs) {
    xs.clear();
    rngs.clear();
    while (accepted < n_test && xs.size() < kBlock) {
      if (attempts >= max_attempts) {
        throw std::domain_error("restricted risk: rejection sampling found too few points");
      }
      CounterRng rng(derive_seed(seed, attempts++));
      Point x = sample_one(spec, rng);
      if (!region_contains(region, x)) continue;
      ++accepted;
      xs.push_back(std::move(x));
      rngs.push_back(rng);
    }
    return !xs.empty();
  };
  const uint64_t hits = count_vulnerable(c, gt, budget, next);
  return Estimate::from_counts(hits, n_test, EstimateMethod::kMonteCarlo);
}

uint64_t Histogram::total() const {
  uint64_t t = 0;
  for (uint64_t c : counts) t += c;
  return t;
}

ClassDistances class_distance_histograms(std::span<const Point> points,
                                         std::span<const Label> labels, NormKind norm,
                                         int bins) {
  if (points.size() != labels.size()) {
    throw std::invalid_argument("points and labels must have equal length");
  }
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  const std::size_t n = points.size();
  std::vector<double> dist;
  dist.reserve(n * (n - 1) / 2);
  double max_d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist.push_back(distance(points[i], points[j], norm));
      max_d = std::max(max_d, dist.back());
    }
  }
  const double top = max_d > 0.0 ? max_d : 1.0;
  ClassDistances out;
  for (Histogram* h : {&out.intra, &out.inter}) {
    h->edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b) h->edges[static_cast<std::size_t>(b)] = top * b / bins;
    h->counts.assign(static_cast<std::size_t>(bins), 0);
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double d = dist[k];
      const bool same = labels[i] == labels[j];
      Histogram& h = same ? out.intra : out.inter;
      std::optional<double>& best = same ? out.min_intra : out.min_inter;
      const auto bin = std::min<std::size_t>(static_cast<std::size_t>(bins) - 1,
                                             static_cast<std::size_t>(d / top * bins));
      ++h.counts[bin];
      if (!best || d < *best) best = d;
    }
  }
  return out;
}

void write_histogram_csv(const ClassDistances& h, std::ostream& out) {
  out << "bin_left,bin_right,count,split\n";
  const auto old = out.precision(17);
  for (const auto& [hist, name] : {std::pair{&h.intra, "intra"}, std::pair{&h.inter, "inter"}}) {
    for (std::size_t b = 0; b < hist->counts.size(); ++b) {
      out << hist->edges[b] << ',' << hist->edges[b + 1] << ',' << hist->counts[b] << ','
          << name << '\n';
    }
  }
  out.precision(old);
}

}  // namespace advrisk
