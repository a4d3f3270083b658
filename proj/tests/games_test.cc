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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "advrisk/games.h"

namespace advrisk {
namespace {

GameConfig unit_game(double rho, uint64_t N) {
  GameConfig cfg;
  cfg.rho = rho;
  cfg.eta = 1.0;
  cfg.m = N;
  return cfg;
}

TEST(Poisoner, TwoDisjointBalls) {
  const PoisonerResponse r = poisoner_best_response(unit_game(0.1, 2));
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.r_poison, 0.4, 1e-12);
  EXPECT_GE(std::abs(r.points[0][0] - r.points[1][0]), 0.2 - 1e-12);
}

TEST(Poisoner, EnoughBallsCoverEverything) {
  // Without a threshold every ball attacks its whole section.
  for (uint64_t N : {5u, 6u, 9u}) {
    GameConfig cfg = unit_game(0.1, N);
    cfg.gt = ConstantZero{};
    EXPECT_NEAR(poisoner_best_response(cfg).r_poison, 1.0, 1e-12) << N;
  }
  // With the threshold at 1/2 a ball straddling it only attacks one side, so
  // each half of length 1/2 needs ceil(0.5 / 0.2) = 3 balls.
  EXPECT_NEAR(poisoner_best_response(unit_game(0.1, 5)).r_poison, 0.9, 1e-12);
  EXPECT_NEAR(poisoner_best_response(unit_game(0.1, 6)).r_poison, 1.0, 1e-12);
  GameConfig cfg;  // rho 0.05, m 100, eta 0.1: N = 10 covers [0, 1]
  EXPECT_EQ(cfg.N(), 10u);
  EXPECT_EQ(poisoner_best_response(cfg).r_poison, 1.0);
}

TEST(Poisoner, LongTailPicksHeadInterval) {
  GameConfig cfg;
  cfg.spec = LongTail{4, 400};
  cfg.gt = ConstantZero{};
  cfg.rho = 0.1;
  cfg.eta = 1.0;
  cfg.m = 1;
  const PoisonerResponse r = poisoner_best_response(cfg);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_GE(r.points[0][0], 1.0);
  EXPECT_LE(r.points[0][0], 4.5);
  EXPECT_NEAR(r.r_poison, 0.2 / 4, 1e-12);
}

TEST(Poisoner, GainsRespectLabelDisagreement) {
  // A point at 0.45 with threshold 0.5 only attacks the 0-side after the
  // flip, so the ball straddling 0.5 is worth less than one inside a class.
  GameConfig cfg = unit_game(0.1, 1);
  const PoisonerResponse r = poisoner_best_response(cfg);
  EXPECT_NEAR(r.r_poison, 0.2, 1e-12);
  const double c = r.points[0][0];
  EXPECT_TRUE(c <= 0.4 + 1e-12 || c >= 0.6 - 1e-12) << c;
}

TEST(UniformSampleSize, Examples) {
  EXPECT_EQ(uniform_sample_size(10, 0.1, 0.5, 0.1), 1843u);
  EXPECT_EQ(uniform_sample_size(10, 0.1, 0.5, 0.1),
            static_cast<uint64_t>(std::ceil(400 * 2 * std::log(10.0))));
  EXPECT_EQ(uniform_sample_size(1, 1.0, 1.0, 1 / std::exp(1.0)), 2u);
  EXPECT_EQ(uniform_sample_size(1, 0.5, 0.25, 1 / std::exp(1.0)), 16u);
  EXPECT_EQ(uniform_sample_size(1, 0.5, 0.25, 1.0), 1u);
}

TEST(Game, SucceedsAndIsWorkerIndependent) {
  GameConfig cfg;
  const GameSummary a = play_game(cfg, 20, 3, 1);
  EXPECT_EQ(a.N, 10u);
  EXPECT_EQ(a.T, uniform_sample_size(10, 0.1, 1.0, 0.1));
  EXPECT_GE(a.success_rate, 0.85);
  const GameSummary b = play_game(cfg, 20, 3, 4);
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].r_unif.value, b.results[i].r_unif.value);
    EXPECT_LE(a.results[i].r_unif_rho.value, a.results[i].r_unif.value);
  }
}

TEST(Game, AllFlippedAdversary) {
  GameConfig cfg;
  cfg.eta = 1.0;
  cfg.m = 10;
  const GameSummary g = play_game(cfg, 10, 4);
  EXPECT_EQ(g.poisoner.r_poison, 1.0);
  EXPECT_EQ(g.success_rate, 1.0);
  for (const GameResult& r : g.results) {
    EXPECT_EQ(r.flipped, g.T);
    EXPECT_GE(r.r_unif.value, 0.5);
  }
}

TEST(Game, RejectsEmptyBudget) {
  GameConfig cfg;
  cfg.m = 5;  // floor(0.1 * 5) = 0
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace advrisk
