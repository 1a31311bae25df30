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


// Randomized properties of the certificate machinery.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "structcert/certify.h"
#include "structcert/oracle.h"
#include "structcert/partition.h"
#include "test_oracles.h"

namespace structcert {
namespace {

class PropertyTest : public ::testing::TestWithParam<int> {
 protected:
  std::mt19937_64 rng_{static_cast<std::uint64_t>(GetParam())};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};

  NoiseSpec RandomNoise(int regions) {
    std::vector<double> probs;
    for (int i = 0; i < regions; ++i) probs.push_back(0.01 + 0.48 * unit_(rng_));
    return NoiseSpec(probs);
  }
  RadiusVector RandomRadius(int regions, int max_entry) {
    std::vector<int> r;
    for (int i = 0; i < regions; ++i) {
      r.push_back(static_cast<int>(rng_() % static_cast<unsigned>(max_entry + 1)));
    }
    return RadiusVector(r);
  }
};

TEST_P(PropertyTest, MassesSumToOne) {
  for (int trial = 0; trial < 50; ++trial) {
    const int c = 1 + static_cast<int>(rng_() % 4);
    const auto noise = RandomNoise(c);
    const auto r = RandomRadius(c, 6);
    long double total = 0.0L;
    long double shifted = 0.0L;
    for (const auto& cell : EnumerateCells(r, noise)) {
      total += RegionMass(cell.q, r, noise);
      shifted += cell.shifted_mass;
    }
    EXPECT_NEAR(static_cast<double>(total), 1.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(shifted), 1.0, 1e-12);
  }
}

TEST_P(PropertyTest, GreedyMatchesExhaustive) {
  for (int trial = 0; trial < 100; ++trial) {
    const int c = 1 + static_cast<int>(rng_() % 2);
    const auto noise = RandomNoise(c);
    RadiusVector r = c == 1 ? RadiusVector{static_cast<int>(rng_() % 12)}
                            : RadiusVector{static_cast<int>(rng_() % 4),
                                           static_cast<int>(rng_() % 3)};
    const auto cells = EnumerateCells(r, noise);
    ASSERT_LE(cells.size(), 12u);
    const double p = unit_(rng_);
    const auto exact = oracle::ExhaustiveLp(p, cells);
    EXPECT_NEAR(GreedyLpLower(p, cells), exact.lower, 1e-9);
    EXPECT_NEAR(GreedyLpUpper(p, cells), exact.upper, 1e-9);
  }
}

TEST_P(PropertyTest, MarginIsMonotoneInBounds) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto noise = RandomNoise(2);
    const auto r = RandomRadius(2, 8);
    const double p_a = 0.5 + 0.5 * unit_(rng_);
    const double p_b = (1.0 - p_a) * unit_(rng_);
    const double base = Margin(BoundsFromProbabilities(p_a, p_b), r, noise);
    const double better_a = std::min(1.0, p_a + 0.05 * unit_(rng_));
    const double better_b = p_b * unit_(rng_);
    EXPECT_GE(Margin(BoundsFromProbabilities(better_a, p_b), r, noise),
              base - 1e-12);
    EXPECT_GE(Margin(BoundsFromProbabilities(p_a, better_b), r, noise),
              base - 1e-12);
  }
}

TEST_P(PropertyTest, ZeroRadiusMarginIsGap) {
  for (int trial = 0; trial < 50; ++trial) {
    const int c = 1 + static_cast<int>(rng_() % 3);
    const auto noise = RandomNoise(c);
    const double p_a = 0.5 + 0.5 * unit_(rng_);
    const double p_b = (1.0 - p_a) * unit_(rng_);
    EXPECT_NEAR(Margin(BoundsFromProbabilities(p_a, p_b),
                       RadiusVector(std::vector<int>(static_cast<std::size_t>(c), 0)),
                       noise),
                p_a - p_b, 1e-14);
  }
}

TEST_P(PropertyTest, EngineIsSoundAgainstExhaustiveSearch) {
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> region_of(10);
    for (auto& id : region_of) id = static_cast<int>(rng_() % 3) - 1;
    region_of[0] = 0;
    region_of[1] = 1;
    const NodePairPartition partition(5, region_of, 2);
    const auto noise = RandomNoise(2);
    const auto sizes = partition.region_sizes();
    const RadiusVector r{static_cast<int>(rng_() % (sizes[0] + 1)),
                         static_cast<int>(rng_() % (sizes[1] + 1))};
    const double p_a = 0.7 + 0.3 * unit_(rng_);
    const auto bounds = BoundsFromProbabilities(p_a, 1.0 - p_a);
    const GraphBits x = testing::RandomGraph(5, 0.5, rng_);
    const auto worst = oracle::ExhaustiveWorstCase(
        x, bounds, r, partition, noise, testing::ParityLabel);
    EXPECT_LE(worst.max_sphere_spread, 1e-12);
    if (Certify(bounds, r, noise, partition)) {
      EXPECT_GT(worst.min_margin, 0.0);
    }
    EXPECT_NEAR(Margin(bounds, r, noise),
                worst.sphere_margins.at(r.values()).first, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PropertyTest, ::testing::Range(1, 11));

}  // namespace
}  // namespace structcert
