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

// Label-noise regimes: i.i.d. uniform flips, tail-biased flips, and a
// poisoner that inserts chosen points with flipped labels.

#ifndef ADVRISK_NOISE_H_
#define ADVRISK_NOISE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "advrisk/distributions.h"

namespace advrisk {

// Each label flipped independently with probability eta.
struct UniformNoise {
  double eta = 0.1;
};

// Labels of samples with x_1 >= threshold flipped with probability 2 eta;
// all other labels kept.
struct TailBiasedNoise {
  double eta = 0.1;
  double threshold = 0.0;
};

// The given support points are inserted with flipped labels; the remaining
// m - |points| samples are drawn clean.
struct PoisonerNoise {
  std::vector<Point> points;
};

using NoiseModel = std::variant<UniformNoise, TailBiasedNoise, PoisonerNoise>;

std::string describe(const NoiseModel& noise);

struct LabeledItem {
  Point x;
  Label y_true = 0;
  Label y = 0;
  bool flipped = false;
  bool inserted = false;  // placed by a poisoner
};

struct NoisyDataset {
  std::vector<LabeledItem> items;
  DistributionSpec spec;
  GroundTruth gt;
  NoiseModel noise;
  uint64_t seed = 0;

  std::size_t size() const { return items.size(); }
  std::size_t flipped_count() const;
};

// Covariates come from stream derive_seed(seed, 0) and flip decisions from
// derive_seed(seed, 1), so two noise models with the same seed share
// covariates.
NoisyDataset make_dataset(const DistributionSpec& spec, const GroundTruth& gt,
                          uint64_t m, const NoiseModel& noise, uint64_t seed);

struct MislabeledPoint {
  Point x;
  Label y = 0;
};

std::vector<MislabeledPoint> mislabeled_points(const NoisyDataset& ds);

// CSV with columns index, x0..x{d-1}, y_true, y, flipped.
void write_csv(const NoisyDataset& ds, std::ostream& out);
std::vector<LabeledItem> read_items_csv(std::istream& in);

}  // namespace advrisk

#endif  // ADVRISK_NOISE_H_
