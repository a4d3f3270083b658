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

#include "advrisk/classifiers.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace advrisk {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

uint64_t hash_coords(std::span<const double> coords) {
  uint64_t h = 0x243f6a8885a308d3ULL;
  for (double c : coords) h = mix64(h ^ std::bit_cast<uint64_t>(c));
  return h;
}

Label classify_t_shaped(const TShaped& t, const Point& p) {
  if (p.dim() < 2) throw std::invalid_argument("T-shaped classifier needs x_2");
  const Label bg = ground_truth_label(t.background, p);
  const double x1 = p[0];
  const double x2 = p[1];
  if (!(x2 < t.rho)) return bg;
  const bool in_head_band = x2 > 0.0;
  auto it = std::lower_bound(
      t.exceptions.begin(), t.exceptions.end(), x1 - t.gamma,
      [](const TException& e, double v) { return e.z < v; });
  for (; it != t.exceptions.end() && it->z <= x1 + t.gamma; ++it) {
    if (it->label == bg) continue;
    if (x1 == it->z) return it->label;
    if (in_head_band && std::abs(x1 - it->z) <= t.gamma) return it->label;
  }
  return bg;
}

}  // namespace

ExactPointIndex::ExactPointIndex(std::span<const LabeledItem> items) : items_(items) {
  buckets_.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    buckets_.emplace(hash_coords(items[i].x.coords()), i);
  }
}

int64_t ExactPointIndex::find(const Point& p) const {
  auto [lo, hi] = buckets_.equal_range(hash_coords(p.coords()));
  int64_t best = -1;
  for (auto it = lo; it != hi; ++it) {
    if (items_[it->second].x.bitwise_equal(p)) {
      const auto idx = static_cast<int64_t>(it->second);
      if (best < 0 || idx < best) best = idx;
    }
  }
  return best;
}

Classifier Classifier::memorizer(std::shared_ptr<const NoisyDataset> data,
                                 const GroundTruth& gt) {
  auto index = std::make_shared<const ExactPointIndex>(data->items);
  return Classifier(Memorizer{std::move(data), gt, std::move(index)});
}

Classifier Classifier::nearest_neighbor(std::shared_ptr<const NoisyDataset> data,
                                        NormKind norm) {
  if (data->items.empty()) throw std::invalid_argument("1-NN needs training data");
  return Classifier(NearestNeighbor{std::move(data), norm});
}

Classifier Classifier::interval_memorizer(std::shared_ptr<const NoisyDataset> data,
                                          const GroundTruth& gt, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  IntervalMemorizer m;
  m.gt = gt;
  m.epsilon = epsilon;
  m.index = std::make_shared<const ExactPointIndex>(data->items);
  std::vector<std::pair<double, Label>> flips;
  for (const LabeledItem& it : data->items) {
    if (it.flipped) flips.emplace_back(it.x[0], it.y);
  }
  std::sort(flips.begin(), flips.end());
  for (const auto& [x, y] : flips) {
    m.flipped_x.push_back(x);
    m.flipped_label.push_back(y);
  }
  m.data = std::move(data);
  return Classifier(std::move(m));
}

Classifier Classifier::threshold_f(std::shared_ptr<const NoisyDataset> data, double t,
                                   bool memorize) {
  ThresholdF f;
  f.t = t;
  f.memorize = memorize;
  if (memorize) {
    for (const LabeledItem& it : data->items) {
      f.memory.emplace(std::bit_cast<uint64_t>(it.x[0]), it.y);
    }
  }
  f.data = std::move(data);
  return Classifier(std::move(f));
}

Classifier Classifier::t_shaped(std::vector<TException> exceptions, double gamma,
                                double rho, const GroundTruth& background) {
  if (!(rho > 0.0) || !(gamma > rho)) {
    throw std::invalid_argument("T-shaped classifier requires gamma > rho > 0");
  }
  std::stable_sort(exceptions.begin(), exceptions.end(),
                   [](const TException& a, const TException& b) { return a.z < b.z; });
  return Classifier(TShaped{std::move(exceptions), gamma, rho, background});
}

Classifier Classifier::t_shaped_zero(std::span<const double> z, double gamma, double rho) {
  std::vector<TException> ex;
  ex.reserve(z.size());
  for (double v : z) ex.push_back({v, 1});
  return t_shaped(std::move(ex), gamma, rho, ConstantZero{});
}

Classifier Classifier::t_shaped_zero_for(const NoisyDataset& ds, double gamma, double rho) {
  std::vector<double> z;
  for (const LabeledItem& it : ds.items) {
    if (it.y == 1) z.push_back(it.x[0]);
  }
  return t_shaped_zero(z, gamma, rho);
}

Classifier Classifier::t_shaped_flips(const NoisyDataset& ds, double gamma, double rho) {
  std::vector<TException> ex;
  for (const LabeledItem& it : ds.items) {
    if (it.flipped) ex.push_back({it.x[0], it.y});
  }
  return t_shaped(std::move(ex), gamma, rho, ds.gt);
}

Classifier Classifier::ground_truth(const GroundTruth& gt) {
  return Classifier(TruthLike{gt, false});
}

Classifier Classifier::complement(const GroundTruth& gt) {
  return Classifier(TruthLike{gt, true});
}

Label Classifier::classify(const Point& p) const {
  return std::visit(
      Overloaded{
          [&](const Memorizer& m) {
            const int64_t i = m.index->find(p);
            return i >= 0 ? m.data->items[static_cast<std::size_t>(i)].y
                          : ground_truth_label(m.gt, p);
          },
          [&](const NearestNeighbor& nn) {
            double best = std::numeric_limits<double>::infinity();
            Label label = 0;
            for (const LabeledItem& it : nn.data->items) {
              const double d = distance(it.x, p, nn.norm);
              if (d < best) {
                best = d;
                label = it.y;
              }
            }
            return label;
          },
          [&](const IntervalMemorizer& m) {
            const int64_t i = m.index->find(p);
            if (i >= 0) return m.data->items[static_cast<std::size_t>(i)].y;
            const double x1 = p[0];
            auto it = std::lower_bound(m.flipped_x.begin(), m.flipped_x.end(),
                                       x1 - m.epsilon);
            if (it != m.flipped_x.end() && *it <= x1 + m.epsilon) {
              return m.flipped_label[static_cast<std::size_t>(it - m.flipped_x.begin())];
            }
            return ground_truth_label(m.gt, p);
          },
          [&](const ThresholdF& f) {
            if (f.memorize) {
              auto it = f.memory.find(std::bit_cast<uint64_t>(p[0]));
              if (it != f.memory.end()) return it->second;
            }
            return p[0] > f.t ? 1 : 0;
          },
          [&](const TShaped& t) { return classify_t_shaped(t, p); },
          [&](const TruthLike& t) {
            const Label y = ground_truth_label(t.gt, p);
            return t.inverted ? 1 - y : y;
          },
      },
      impl_);
}

const NoisyDataset* Classifier::dataset() const {
  return std::visit(Overloaded{
                        [](const Memorizer& m) -> const NoisyDataset* { return m.data.get(); },
                        [](const NearestNeighbor& m) -> const NoisyDataset* {
                          return m.data.get();
                        },
                        [](const IntervalMemorizer& m) -> const NoisyDataset* {
                          return m.data.get();
                        },
                        [](const ThresholdF& m) -> const NoisyDataset* { return m.data.get(); },
                        [](const auto&) -> const NoisyDataset* { return nullptr; },
                    },
                    impl_);
}

std::string Classifier::name() const {
  return std::visit(Overloaded{
                        [](const Memorizer&) { return std::string("memorizer"); },
                        [](const NearestNeighbor&) { return std::string("1-nn"); },
                        [](const IntervalMemorizer&) { return std::string("interval-memorizer"); },
                        [](const ThresholdF&) { return std::string("threshold-f"); },
                        [](const TShaped&) { return std::string("t-shaped"); },
                        [](const TruthLike& t) {
                          return std::string(t.inverted ? "complement" : "ground-truth");
                        },
                    },
                    impl_);
}

bool verify_interpolation(const Classifier& c, const NoisyDataset& ds) {
  return std::all_of(ds.items.begin(), ds.items.end(),
                     [&](const LabeledItem& it) { return c.classify(it.x) == it.y; });
}

}  // namespace advrisk
