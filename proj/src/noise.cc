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

#include "advrisk/noise.h"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace advrisk {

std::string describe(const NoiseModel& noise) {
  std::ostringstream os;
  if (const auto* u = std::get_if<UniformNoise>(&noise)) {
    os << "uniform(eta=" << u->eta << ")";
  } else if (const auto* t = std::get_if<TailBiasedNoise>(&noise)) {
    os << "tail-biased(eta=" << t->eta << ", threshold=" << t->threshold << ")";
  } else {
    os << "poisoner(" << std::get<PoisonerNoise>(noise).points.size() << " points)";
  }
  return os.str();
}

std::size_t NoisyDataset::flipped_count() const {
  std::size_t n = 0;
  for (const LabeledItem& it : items) n += it.flipped ? 1 : 0;
  return n;
}

NoisyDataset make_dataset(const DistributionSpec& spec, const GroundTruth& gt,
                          uint64_t m, const NoiseModel& noise, uint64_t seed) {
  validate(spec);
  if (m == 0) throw std::invalid_argument("dataset size must be positive");
  NoisyDataset ds{{}, spec, gt, noise, seed};
  ds.items.reserve(m);
  CounterRng sampling(derive_seed(seed, 0));
  CounterRng flipping(derive_seed(seed, 1));

  if (const auto* p = std::get_if<PoisonerNoise>(&noise)) {
    if (p->points.size() > m) {
      throw std::invalid_argument("poisoner inserts more points than the dataset size");
    }
    for (const Point& x : p->points) {
      if (!in_support(spec, x)) {
        throw std::invalid_argument("poisoner point lies outside the support");
      }
      const Label truth = ground_truth_label(gt, x);
      ds.items.push_back({x, truth, 1 - truth, true, true});
    }
    for (uint64_t i = p->points.size(); i < m; ++i) {
      Point x = sample_one(spec, sampling);
      const Label truth = ground_truth_label(gt, x);
      ds.items.push_back({std::move(x), truth, truth, false, false});
    }
    return ds;
  }

  double eta = 0.0;
  double threshold = 0.0;
  bool tail_only = false;
  if (const auto* u = std::get_if<UniformNoise>(&noise)) {
    eta = u->eta;
  } else {
    const auto& t = std::get<TailBiasedNoise>(noise);
    eta = 2.0 * t.eta;
    threshold = t.threshold;
    tail_only = true;
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("flip probability must lie in [0, 1]");
  }
  for (uint64_t i = 0; i < m; ++i) {
    Point x = sample_one(spec, sampling);
    const Label truth = ground_truth_label(gt, x);
    // One flip draw per item keeps the flip stream aligned across models.
    const double u = flipping.uniform();
    const bool flip = (!tail_only || x[0] >= threshold) && u < eta;
    ds.items.push_back({std::move(x), truth, flip ? 1 - truth : truth, flip, false});
  }
  return ds;
}

std::vector<MislabeledPoint> mislabeled_points(const NoisyDataset& ds) {
  std::vector<MislabeledPoint> out;
  for (const LabeledItem& it : ds.items) {
    if (it.flipped) out.push_back({it.x, it.y});
  }
  return out;
}

void write_csv(const NoisyDataset& ds, std::ostream& out) {
  const std::size_t d = ds.items.empty() ? 0 : ds.items.front().x.dim();
  out << "index";
  for (std::size_t k = 0; k < d; ++k) out << ",x" << k;
  out << ",y_true,y,flipped\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    const LabeledItem& it = ds.items[i];
    out << i;
    for (double c : it.x.coords()) out << ',' << c;
    out << ',' << it.y_true << ',' << it.y << ',' << (it.flipped ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

std::vector<LabeledItem> read_items_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset CSV: missing header");
  std::size_t columns = 1;
  for (char c : line) columns += c == ',' ? 1 : 0;
  if (columns < 5) throw std::runtime_error("dataset CSV: too few columns");
  const std::size_t d = columns - 4;
  std::vector<LabeledItem> items;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != columns) throw std::runtime_error("dataset CSV: ragged row");
    std::vector<double> coords(d);
    for (std::size_t k = 0; k < d; ++k) coords[k] = std::stod(cells[1 + k]);
    LabeledItem it;
    it.x = Point(std::move(coords));
    it.y_true = std::stoi(cells[1 + d]);
    it.y = std::stoi(cells[2 + d]);
    it.flipped = std::stoi(cells[3 + d]) != 0;
    items.push_back(std::move(it));
  }
  return items;
}

}  // namespace advrisk
