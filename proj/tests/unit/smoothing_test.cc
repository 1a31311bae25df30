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


#include "structcert/smoothing.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "structcert/error.h"
#include "structcert/oracle.h"
#include "structcert/partition.h"
#include "test_oracles.h"

namespace structcert {
namespace {

bool WithinThreeSigma(double count, double trials, double p) {
  const double sigma = std::sqrt(trials * p * (1.0 - p));
  return std::abs(count - trials * p) <= 3.0 * sigma;
}

TEST(NoiseSpecTest, ValidatesProbabilities) {
  EXPECT_NO_THROW(NoiseSpec({0.0, 0.49}));
  EXPECT_THROW(NoiseSpec({0.5}), Error);
  EXPECT_THROW(NoiseSpec({-0.1}), Error);
  EXPECT_THROW(NoiseSpec({}), Error);
  EXPECT_THROW(NoiseSpec({std::nan("")}), Error);
  EXPECT_NO_THROW(NoiseSpec({0.5}, /*allow_half=*/true));
  EXPECT_THROW(NoiseSpec({0.6}, /*allow_half=*/true), Error);
}

TEST(SampleNoiseTest, ZeroNoiseIsIdentity) {
  std::mt19937_64 rng(1);
  const GraphBits x = testing::RandomGraph(6, 0.5, rng);
  const auto partition = MotifPartition(3, 3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SampleNoise(x, partition, NoiseSpec({0.0, 0.0}), rng), x);
  }
}

TEST(SampleNoiseTest, NoiseFreePairsNeverFlip) {
  std::mt19937_64 rng(2);
  const GraphBits x = testing::RandomGraph(7, 0.5, rng);
  const auto partition = MotifPartition(4, 3);
  for (int i = 0; i < 500; ++i) {
    const GraphBits z = SampleNoise(x, partition, NoiseSpec({0.3, 0.4}), rng);
    EXPECT_EQ(RegionDistances(x, z, partition).back(), 0);
  }
}

TEST(SampleNoiseTest, HalfNoiseIsUniform) {
  std::mt19937_64 rng(3);
  const GraphBits x(5);
  const auto partition = IsotropicPartition(5);
  const NoiseSpec noise({0.5}, true);
  const int draws = 100'000;
  double flips = 0;
  for (int i = 0; i < draws; ++i) {
    flips += static_cast<double>(SampleNoise(x, partition, noise, rng).EdgeCount());
  }
  EXPECT_TRUE(WithinThreeSigma(flips, draws * 10.0, 0.5)) << flips;
}

TEST(SampleNoiseTest, PerRegionFlipRates) {
  std::mt19937_64 rng(4);
  const auto partition = MotifPartition(4, 4);
  const GraphBits x = testing::RandomGraph(8, 0.5, rng);
  const NoiseSpec noise({0.1, 0.4});
  NoiseSampler sampler(partition, noise);
  const int draws = 100'000;
  std::vector<double> flips(3, 0.0);
  for (int i = 0; i < draws; ++i) {
    const auto d = RegionDistances(x, sampler.Sample(x, rng), partition);
    for (std::size_t r = 0; r < d.size(); ++r) flips[r] += d[r];
  }
  EXPECT_TRUE(WithinThreeSigma(flips[0], draws * 6.0, 0.1)) << flips[0];
  EXPECT_TRUE(WithinThreeSigma(flips[1], draws * 6.0, 0.4)) << flips[1];
  EXPECT_EQ(flips[2], 0.0);
}

TEST(SampleNoiseTest, RejectsMismatchedShapes) {
  std::mt19937_64 rng(5);
  EXPECT_THROW(SampleNoise(GraphBits(4), IsotropicPartition(5),
                           NoiseSpec({0.1}), rng),
               Error);
  EXPECT_THROW(SampleNoise(GraphBits(5), MotifPartition(3, 2),
                           NoiseSpec({0.1}), rng),
               Error);
}

TEST(LabelDistributionTest, TopTwoWithTies) {
  const auto d = LabelDistribution::FromCounts({{3, 5}, {1, 5}, {2, 1}});
  EXPECT_EQ(d.total, 11);
  EXPECT_EQ(d.top, 1);
  EXPECT_EQ(d.runner_up, 3);
  EXPECT_EQ(d.count(2), 1);
  EXPECT_EQ(d.count(9), 0);
}

TEST(EstimateTest, ConstantClassifier) {
  const auto d = EstimateLabelDistribution(
      GraphBits(5), [](const GraphBits&) { return 4; }, IsotropicPartition(5),
      NoiseSpec({0.3}), 1000, 9);
  EXPECT_EQ(d.counts, (std::map<Label, std::int64_t>{{4, 1000}}));
  EXPECT_EQ(d.top, 4);
  EXPECT_EQ(d.runner_up, kNoLabel);
  EXPECT_EQ(d.count(d.runner_up), 0);
}

TEST(EstimateTest, SingleSample) {
  const auto d = EstimateLabelDistribution(
      GraphBits(4), testing::ParityLabel, IsotropicPartition(4),
      NoiseSpec({0.3}), 1, 1);
  EXPECT_EQ(d.total, 1);
  EXPECT_EQ(d.counts.size(), 1u);
}

TEST(EstimateTest, ParityMatchesExactDistribution) {
  const GraphBits x(4, {1, 0, 1, 1, 0, 0});
  const auto partition = IsotropicPartition(4);
  const NoiseSpec noise({0.3});
  const auto exact =
      oracle::ExactSmoothedDistribution(x, testing::ParityLabel, partition, noise);
  const std::int64_t n = 200'000;
  const auto d = EstimateLabelDistribution(x, testing::ParityLabel, partition,
                                           noise, n, 17);
  for (const auto& [label, p] : exact) {
    EXPECT_TRUE(WithinThreeSigma(static_cast<double>(d.count(label)),
                                 static_cast<double>(n), p))
        << label;
  }
}

TEST(EstimateTest, IndependentOfThreadCount) {
  std::mt19937_64 rng(6);
  const GraphBits x = testing::RandomGraph(8, 0.5, rng);
  const auto partition = MotifPartition(4, 4);
  const NoiseSpec noise({0.2, 0.4});
  SamplingOptions one;
  SamplingOptions four;
  four.num_threads = 4;
  const auto a = EstimateLabelDistribution(x, testing::ParityLabel, partition,
                                           noise, 30'000, 77, one);
  const auto b = EstimateLabelDistribution(x, testing::ParityLabel, partition,
                                           noise, 30'000, 77, four);
  EXPECT_EQ(a.counts, b.counts);
}

TEST(EstimateTest, SmallerRunsArePrefixes) {
  std::mt19937_64 rng(7);
  const GraphBits x = testing::RandomGraph(6, 0.5, rng);
  const auto partition = IsotropicPartition(6);
  const NoiseSpec noise({0.25});
  const auto small = EstimateLabelDistribution(x, testing::ParityLabel,
                                               partition, noise, 5'000, 3);
  const auto large = EstimateLabelDistribution(x, testing::ParityLabel,
                                               partition, noise, 50'000, 3);
  for (const auto& [label, count] : small.counts) {
    EXPECT_LE(count, large.count(label));
  }
  EXPECT_NE(EstimateLabelDistribution(x, testing::ParityLabel, partition,
                                      noise, 5'000, 4)
                .counts,
            small.counts);
}

TEST(EstimateTest, RejectsBadArguments) {
  EXPECT_THROW(EstimateLabelDistribution(GraphBits(4), testing::ParityLabel,
                                         IsotropicPartition(4),
                                         NoiseSpec({0.1}), 0, 1),
               Error);
}

TEST(EstimateTest, ClassifierExceptionsPropagate) {
  SamplingOptions options;
  options.num_threads = 3;
  EXPECT_THROW(EstimateLabelDistribution(
                   GraphBits(4),
                   [](const GraphBits&) -> Label {
                     throw std::runtime_error("boom");
                   },
                   IsotropicPartition(4), NoiseSpec({0.1}), 10'000, 1, options),
               std::runtime_error);
}

TEST(VotesRecordTest, JsonRoundTrip) {
  VotesRecord record;
  record.graph_id = "test_00001";
  record.key = "abc";
  record.seed = 18'000'000'000'000'000'000ULL;
  record.num_samples = 100;
  record.counts = {{0, 97}, {1, 3}};
  const VotesRecord back = VotesFromJson(VotesToJson(record));
  EXPECT_EQ(back.graph_id, record.graph_id);
  EXPECT_EQ(back.key, record.key);
  EXPECT_EQ(back.seed, record.seed);
  EXPECT_EQ(back.num_samples, record.num_samples);
  EXPECT_EQ(back.counts, record.counts);
  EXPECT_THROW(VotesFromJson("{not json"), Error);
}

}  // namespace
}  // namespace structcert
