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

#ifndef STRUCTCERT_SMOOTHING_H_
#define STRUCTCERT_SMOOTHING_H_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "structcert/graph.h"
#include "structcert/partition.h"

namespace structcert {

using Label = int;
inline constexpr Label kNoLabel = -1;

// Per-region Bernoulli flip probabilities. Values must lie in [0, 0.5);
// `allow_half` admits exactly 0.5 for degenerate test scenarios.
class NoiseSpec {
 public:
  explicit NoiseSpec(std::vector<double> probs, bool allow_half = false);

  int num_regions() const { return static_cast<int>(probs_.size()); }
  double prob(int region) const {
    return probs_[static_cast<std::size_t>(region)];
  }
  const std::vector<double>& probs() const { return probs_; }

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;

 private:
  std::vector<double> probs_;
};

// Vote counts of the base classifier under noise. `top` / `runner_up` are
// the two most frequent labels, ties going to the smaller label id;
// runner_up is kNoLabel (count 0) when only one label was observed.
struct LabelDistribution {
  std::map<Label, std::int64_t> counts;
  std::int64_t total = 0;
  Label top = kNoLabel;
  Label runner_up = kNoLabel;

  std::int64_t count(Label label) const;

  static LabelDistribution FromCounts(std::map<Label, std::int64_t> counts);
};

// Base classifier seen as a black box. Must be safe to call concurrently.
using LabelOracle = std::function<Label(const GraphBits&)>;

// Precomputed flip thresholds for one (partition, noise) pair. Each noisy
// pair k of region i is flipped independently with probability p_i;
// noise-free pairs are left untouched.
class NoiseSampler {
 public:
  // Throws kInvalidInput if the region counts disagree.
  NoiseSampler(const NodePairPartition& partition, const NoiseSpec& noise);

  // `x` must have the partition's node count.
  GraphBits Sample(const GraphBits& x, std::mt19937_64& rng) const;
  // Allocation-free variant; `out` is resized to x.num_pairs().
  void SampleInto(const GraphBits& x, std::mt19937_64& rng,
                  std::vector<std::uint8_t>& out) const;

  int num_nodes() const { return num_nodes_; }

 private:
  int num_nodes_;
  std::vector<std::size_t> noisy_pairs_;
  std::vector<std::uint64_t> thresholds_;
};

GraphBits SampleNoise(const GraphBits& x, const NodePairPartition& partition,
                      const NoiseSpec& noise, std::mt19937_64& rng);

struct SamplingOptions {
  int num_threads = 1;
  // Samples per independently seeded chunk. Results depend on this value but
  // not on num_threads.
  std::int64_t chunk_size = 4096;
};

// Generator for chunk `chunk` of a stream rooted at `seed`.
std::mt19937_64 ChunkGenerator(std::uint64_t seed, std::uint64_t chunk);

// Runs `num_samples` noisy copies of x through `classify`. Deterministic in
// (seed, chunk_size); a prefix of a longer run with the same seed sees the
// same noisy graphs.
LabelDistribution EstimateLabelDistribution(
    const GraphBits& x, const LabelOracle& classify,
    const NodePairPartition& partition, const NoiseSpec& noise,
    std::int64_t num_samples, std::uint64_t seed,
    const SamplingOptions& options = {});

// Cached votes for one graph so certification can be rerun without
// resampling. `key` identifies (model, noise, partition, seed, N).
struct VotesRecord {
  std::string graph_id;
  std::string key;
  std::uint64_t seed = 0;
  std::int64_t num_samples = 0;
  std::map<Label, std::int64_t> counts;
};

std::string VotesToJson(const VotesRecord& record);
VotesRecord VotesFromJson(const std::string& text);

}  // namespace structcert

#endif  // STRUCTCERT_SMOOTHING_H_
