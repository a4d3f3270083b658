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

// Interpolating classifier constructions.

#ifndef ADVRISK_CLASSIFIERS_H_
#define ADVRISK_CLASSIFIERS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "advrisk/distributions.h"
#include "advrisk/noise.h"

namespace advrisk {

// Bitwise lookup of training points.
class ExactPointIndex {
 public:
  ExactPointIndex() = default;
  explicit ExactPointIndex(std::span<const LabeledItem> items);

  // Index of the first training point bitwise equal to p, or -1.
  int64_t find(const Point& p) const;

 private:
  std::span<const LabeledItem> items_;
  std::unordered_multimap<uint64_t, std::size_t> buckets_;
};

// Training labels on the exact training points, f* elsewhere.
struct Memorizer {
  std::shared_ptr<const NoisyDataset> data;
  GroundTruth gt;
  std::shared_ptr<const ExactPointIndex> index;
};

// Label of the nearest training point; ties go to the lowest index.
struct NearestNeighbor {
  std::shared_ptr<const NoisyDataset> data;
  NormKind norm = NormKind::kEuclidean;
};

// One-dimensional: f* except on [s - eps, s + eps] around each mislabeled
// point s, where it takes the flipped label.
struct IntervalMemorizer {
  std::shared_ptr<const NoisyDataset> data;
  GroundTruth gt;
  double epsilon = 1e-9;
  std::shared_ptr<const ExactPointIndex> index;
  std::vector<double> flipped_x;      // sorted first coordinates
  std::vector<Label> flipped_label;   // aligned with flipped_x
};

// Threshold on the first coordinate, optionally memorizing the training
// labels at the exact training first coordinates. Ignores x_2.
struct ThresholdF {
  std::shared_ptr<const NoisyDataset> data;
  double t = 0.5;
  bool memorize = true;
  std::unordered_map<uint64_t, Label> memory;  // bit pattern of x_1 -> label
};

// A point of a T-shaped region: stem {x_1 = z, x_2 < rho} and head
// {|x_1 - z| <= gamma, 0 < x_2 < rho}.
struct TException {
  double z = 0.0;
  Label label = 1;
};

// Union of T-shaped regions over a background classifier. A point covered by
// the stem or head of an exception whose label differs from the background
// takes the non-background label. With a zero background and all labels 1
// this is the class h_{Z,gamma}.
struct TShaped {
  std::vector<TException> exceptions;  // sorted by z
  double gamma = 1.0;
  double rho = 0.1;
  GroundTruth background = ConstantZero{};
};

// f* itself, or its complement (every prediction wrong).
struct TruthLike {
  GroundTruth gt;
  bool inverted = false;
};

using ClassifierVariant = std::variant<Memorizer, NearestNeighbor, IntervalMemorizer,
                                       ThresholdF, TShaped, TruthLike>;

class Classifier {
 public:
  static Classifier memorizer(std::shared_ptr<const NoisyDataset> data,
                              const GroundTruth& gt);
  static Classifier nearest_neighbor(std::shared_ptr<const NoisyDataset> data,
                                     NormKind norm);
  static Classifier interval_memorizer(std::shared_ptr<const NoisyDataset> data,
                                       const GroundTruth& gt, double epsilon = 1e-9);
  static Classifier threshold_f(std::shared_ptr<const NoisyDataset> data, double t,
                                bool memorize = true);
  // Requires gamma > rho > 0.
  static Classifier t_shaped(std::vector<TException> exceptions, double gamma,
                             double rho, const GroundTruth& background);
  // h_{Z,gamma}: zero background, label 1 on every T.
  static Classifier t_shaped_zero(std::span<const double> z, double gamma, double rho);
  // Minimal interpolating h_{Z,gamma}: Z = first coordinates of all training
  // points labeled 1.
  static Classifier t_shaped_zero_for(const NoisyDataset& ds, double gamma, double rho);
  // f* with a T at every mislabeled training point.
  static Classifier t_shaped_flips(const NoisyDataset& ds, double gamma, double rho);
  static Classifier ground_truth(const GroundTruth& gt);
  static Classifier complement(const GroundTruth& gt);

  Label classify(const Point& p) const;
  const ClassifierVariant& variant() const { return impl_; }
  // Training set the classifier was built from, if any.
  const NoisyDataset* dataset() const;
  std::string name() const;

 private:
  explicit Classifier(ClassifierVariant impl) : impl_(std::move(impl)) {}
  ClassifierVariant impl_;
};

bool verify_interpolation(const Classifier& c, const NoisyDataset& ds);

}  // namespace advrisk

#endif  // ADVRISK_CLASSIFIERS_H_
