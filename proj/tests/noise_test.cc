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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "advrisk/noise.h"

namespace advrisk {
namespace {

TEST(UniformNoise, ZeroRateFlipsNothing) {
  const NoisyDataset ds = make_dataset(Hypercube{1}, ThresholdX1{0.5}, 100, UniformNoise{0.0}, 1);
  EXPECT_EQ(ds.flipped_count(), 0u);
  EXPECT_TRUE(mislabeled_points(ds).empty());
}

TEST(UniformNoise, FlipRateWithinBinomialBand) {
  const NoisyDataset ds = make_dataset(Hypercube{1}, ThresholdX1{0.5}, 100000, UniformNoise{0.2}, 2);
  EXPECT_NEAR(ds.flipped_count() / 1e5, 0.2, 0.004);
  for (const LabeledItem& it : ds.items) {
    EXPECT_EQ(it.y_true, ground_truth_label(ThresholdX1{0.5}, it.x));
    EXPECT_EQ(it.flipped, it.y != it.y_true);
    EXPECT_FALSE(it.inserted);
  }
}

TEST(TailBiasedNoise, OnlyTailFlips) {
  const LongTail lt{4, 400};
  const NoisyDataset ds = make_dataset(lt, ConstantZero{}, 100000, TailBiasedNoise{0.1, 4.0}, 3);
  double tail = 0, tail_flips = 0;
  for (const LabeledItem& it : ds.items) {
    if (it.x[0] < 4.0) {
      EXPECT_FALSE(it.flipped);
    } else {
      ++tail;
      tail_flips += it.flipped;
    }
  }
  ASSERT_GT(tail, 0);
  EXPECT_NEAR(tail_flips / tail, 0.2, 3 * std::sqrt(0.2 * 0.8 / tail));
}

TEST(PoisonerNoise, InsertsExactlyTheGivenPoints) {
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(Point{0.1 + 0.2 * i});
  const NoisyDataset ds = make_dataset(Hypercube{1}, ThresholdX1{0.5}, 50, PoisonerNoise{pts}, 4);
  EXPECT_EQ(ds.size(), 50u);
  const auto bad = mislabeled_points(ds);
  ASSERT_EQ(bad.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(bad[i].x, pts[i]);
    EXPECT_EQ(bad[i].y, 1 - ground_truth_label(ThresholdX1{0.5}, pts[i]));
  }
}

TEST(MislabeledPoints, CountMatchesDefinition) {
  const NoisyDataset ds = make_dataset(Hypercube{2}, ThresholdX1{0.3}, 500, UniformNoise{0.3}, 5);
  std::size_t n = 0;
  for (const LabeledItem& it : ds.items) n += it.y != it.y_true;
  EXPECT_EQ(mislabeled_points(ds).size(), n);
  EXPECT_EQ(ds.flipped_count(), n);
}

TEST(NoiseModels, ShareCovariatesUnderOneSeed) {
  const LongTail lt{4, 40};
  const NoisyDataset a = make_dataset(lt, ConstantZero{}, 300, UniformNoise{0.2}, 6);
  const NoisyDataset b = make_dataset(lt, ConstantZero{}, 300, TailBiasedNoise{0.2, 5.0}, 6);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.items[i].x, b.items[i].x);
}

TEST(DatasetCsv, RoundTrips) {
  const NoisyDataset ds = make_dataset(Hypercube{3}, ThresholdX1{0.5}, 40, UniformNoise{0.3}, 7);
  std::stringstream ss;
  write_csv(ds, ss);
  const auto items = read_items_csv(ss);
  ASSERT_EQ(items.size(), ds.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_TRUE(items[i].x.bitwise_equal(ds.items[i].x));
    EXPECT_EQ(items[i].y, ds.items[i].y);
    EXPECT_EQ(items[i].y_true, ds.items[i].y_true);
    EXPECT_EQ(items[i].flipped, ds.items[i].flipped);
  }
}

}  // namespace
}  // namespace advrisk
