// Copyright 2026 The Structcert Authors
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


#include "structcert/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "structcert/error.h"
#include "test_oracles.h"

namespace structcert {
namespace {

TEST(ExactDistributionTest, ZeroNoiseIsPointMass) {
  const GraphBits x(4, {1, 1, 0, 0, 1, 0});
  const auto d = oracle::ExactSmoothedDistribution(
      x, testing::ParityLabel, IsotropicPartition(4), NoiseSpec({0.0}));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.begin()->first, testing::ParityLabel(x));
  EXPECT_DOUBLE_EQ(d.begin()->second, 1.0);
}

TEST(ExactDistributionTest, ConstantClassifier) {
  const auto d = oracle::ExactSmoothedDistribution(
      GraphBits(5), [](const GraphBits&) { return 3; }, IsotropicPartition(5),
      NoiseSpec({0.4}));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d.at(3), 1.0, 1e-12);
}

TEST(ExactDistributionTest, ParityChannelClosedForm) {
  const GraphBits x(4, {1, 0, 1, 1, 0, 0});
  const double p = 0.3;
  const auto d = oracle::ExactSmoothedDistribution(
      x, testing::ParityLabel, IsotropicPartition(4), NoiseSpec({p}));
  // Parity survives an even number of flips among the 6 noisy bits.
  const double keep = (1.0 + std::pow(1.0 - 2.0 * p, 6)) / 2.0;
  const Label own = testing::ParityLabel(x);
  EXPECT_NEAR(d.at(own), keep, 1e-12);
  EXPECT_NEAR(d.at(1 - own), 1.0 - keep, 1e-12);
}

TEST(ExactDistributionTest, SumsToOne) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const GraphBits x = testing::RandomGraph(5, 0.5, rng);
    const auto d = oracle::ExactSmoothedDistribution(
        x, [](const GraphBits& g) { return static_cast<Label>(g.EdgeCount() % 3); },
        MotifPartition(3, 2), NoiseSpec({0.15, 0.35}));
    double total = 0.0;
    for (const auto& [label, p] : d) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ExactDistributionTest, TooManyBitsIsResourceLimit) {
  try {
    oracle::ExactSmoothedDistribution(GraphBits(8), testing::ParityLabel,
                                      IsotropicPartition(8), NoiseSpec({0.1}));
    FAIL() << "expected a resource-limit error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
}

TEST(ExhaustiveLpTest, SingleCell) {
  RegionCell cell;
  cell.q = {0};
  cell.log_ratio = std::log(2.0);
  cell.mass = 0.5;
  cell.shifted_mass = 1.0;
  const std::vector<RegionCell> cells = {cell};
  const auto b = oracle::ExhaustiveLp(0.5, cells);
  EXPECT_NEAR(b.lower, 1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-12);
}

TEST(ExhaustiveLpTest, SingleFlipExample) {
  const auto cells = EnumerateCells({1}, NoiseSpec({0.2}));
  EXPECT_NEAR(oracle::ExhaustiveLp(0.9, cells).lower, 0.6, 1e-12);
  EXPECT_NEAR(oracle::ExhaustiveLp(0.1, cells).upper, 0.4, 1e-12);
}

TEST(ExhaustiveLpTest, MatchesGreedyOnFourCells) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const NoiseSpec noise({0.01 + 0.48 * unit(rng), 0.01 + 0.48 * unit(rng)});
    const auto cells = EnumerateCells({1, 1}, noise);
    const double p = unit(rng);
    const auto exact = oracle::ExhaustiveLp(p, cells);
    EXPECT_NEAR(GreedyLpLower(p, cells), exact.lower, 1e-9);
    EXPECT_NEAR(GreedyLpUpper(p, cells), exact.upper, 1e-9);
  }
}

TEST(ExhaustiveLpTest, InfeasibleAndOversized) {
  const auto cells = EnumerateCells({1}, NoiseSpec({0.2}));
  EXPECT_THROW(oracle::ExhaustiveLp(1.2, cells), Error);
  const auto many = EnumerateCells({12}, NoiseSpec({0.2}));
  EXPECT_THROW(oracle::ExhaustiveLp(0.5, many), Error);
}

TEST(WorstCaseTest, ZeroRadiusIsPlainGap) {
  const auto bounds = BoundsFromProbabilities(0.8, 0.15);
  const auto result = oracle::ExhaustiveWorstCase(
      GraphBits(4), bounds, {0}, IsotropicPartition(4), NoiseSpec({0.2}),
      testing::ParityLabel);
  EXPECT_EQ(result.ball_size, 1u);
  EXPECT_NEAR(result.min_margin, 0.65, 1e-12);
  EXPECT_EQ(result.argmin, GraphBits(4));
}

TEST(WorstCaseTest, MarginsAreConstantOnSpheres) {
  const auto partition = MotifPartition(3, 2);
  const auto result = oracle::ExhaustiveWorstCase(
      GraphBits(5, {1, 1, 0, 1, 0, 0, 1, 0, 1, 1}),
      BoundsFromProbabilities(0.9, 0.1), {3, 1}, partition,
      NoiseSpec({0.1, 0.3}), [](const GraphBits&) { return 0; });
  EXPECT_EQ(result.ball_size, 8u * 2u);
  EXPECT_EQ(result.sphere_margins.size(), 8u);
  EXPECT_LE(result.max_sphere_spread, 1e-12);
}

TEST(WorstCaseTest, EngineIsNeverOptimistic) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto partition = MotifPartition(3, 2);
  int certified = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const NoiseSpec noise({0.02 + 0.3 * unit(rng), 0.02 + 0.3 * unit(rng)});
    const double p_a = 0.6 + 0.4 * unit(rng);
    const auto bounds = BoundsFromProbabilities(p_a, 1.0 - p_a);
    const RadiusVector r{static_cast<int>(rng() % 4), static_cast<int>(rng() % 2)};
    const GraphBits x = testing::RandomGraph(5, 0.5, rng);
    const auto worst = oracle::ExhaustiveWorstCase(
        x, bounds, r, partition, noise, [](const GraphBits&) { return 0; });
    if (Certify(bounds, r, noise, partition)) {
      ++certified;
      EXPECT_GT(worst.min_margin, 0.0);
    }
  }
  EXPECT_GT(certified, 0);
}

TEST(WorstCaseTest, BallTooLargeIsResourceLimit) {
  // 21 noisy pairs exceed the pattern cap before the ball is built.
  EXPECT_THROW(oracle::ExhaustiveWorstCase(
                   GraphBits(7), BoundsFromProbabilities(0.9, 0.1), {2},
                   IsotropicPartition(7), NoiseSpec({0.1}), testing::ParityLabel),
               Error);
}

}  // namespace
}  // namespace structcert
