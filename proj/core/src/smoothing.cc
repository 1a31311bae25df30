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

#include <cmath>
#include <string>

#include "internal.h"
#include "json.hpp"
#include "structcert/error.h"

namespace structcert {

NoiseSpec::NoiseSpec(std::vector<double> probs, bool allow_half)
    : probs_(std::move(probs)) {
  if (probs_.empty()) ThrowInvalid("noise needs at least one region");
  for (double p : probs_) {
    const bool ok = allow_half ? (p >= 0.0 && p <= 0.5) : (p >= 0.0 && p < 0.5);
    if (!ok || std::isnan(p)) {
      ThrowInvalid("flip probability " + std::to_string(p) +
                   " outside [0, 0.5)");
    }
  }
}

std::int64_t LabelDistribution::count(Label label) const {
  const auto it = counts.find(label);
  return it == counts.end() ? 0 : it->second;
}

LabelDistribution LabelDistribution::FromCounts(
    std::map<Label, std::int64_t> counts) {
  LabelDistribution dist;
  for (auto it = counts.begin(); it != counts.end();) {
    if (it->second < 0) ThrowInvalid("negative vote count");
    if (it->second == 0) {
      it = counts.erase(it);
    } else {
      dist.total += it->second;
      ++it;
    }
  }
  dist.counts = std::move(counts);
  // std::map iterates in ascending label order, so strict comparisons keep
  // the smallest label on ties.
  std::int64_t best = 0;
  std::int64_t second = 0;
  for (const auto& [label, n] : dist.counts) {
    if (n > best) {
      second = best;
      dist.runner_up = dist.top;
      best = n;
      dist.top = label;
    } else if (n > second) {
      second = n;
      dist.runner_up = label;
    }
  }
  return dist;
}

NoiseSampler::NoiseSampler(const NodePairPartition& partition,
                           const NoiseSpec& noise)
    : num_nodes_(partition.num_nodes()) {
  if (partition.num_regions() != noise.num_regions()) {
    ThrowInvalid("partition has " + std::to_string(partition.num_regions()) +
                 " regions but noise has " +
                 std::to_string(noise.num_regions()));
  }
  for (std::size_t k = 0; k < partition.num_pairs(); ++k) {
    const int region = partition.region(k);
    if (region == kNoiseFree) continue;
    const double p = noise.prob(region);
    if (p <= 0.0) continue;
    noisy_pairs_.push_back(k);
    // A raw 64-bit draw below p * 2^64 happens with probability p.
    thresholds_.push_back(static_cast<std::uint64_t>(std::ldexp(p, 64)));
  }
}

void NoiseSampler::SampleInto(const GraphBits& x, std::mt19937_64& rng,
                              std::vector<std::uint8_t>& out) const {
  if (x.num_nodes() != num_nodes_) {
    ThrowInvalid("graph has " + std::to_string(x.num_nodes()) +
                 " nodes, partition expects " + std::to_string(num_nodes_));
  }
  const auto bits = x.bits();
  out.assign(bits.begin(), bits.end());
  for (std::size_t j = 0; j < noisy_pairs_.size(); ++j) {
    out[noisy_pairs_[j]] ^= static_cast<std::uint8_t>(rng() < thresholds_[j]);
  }
}

GraphBits NoiseSampler::Sample(const GraphBits& x, std::mt19937_64& rng) const {
  std::vector<std::uint8_t> out;
  SampleInto(x, rng, out);
  return GraphBits(num_nodes_, std::move(out));
}

GraphBits SampleNoise(const GraphBits& x, const NodePairPartition& partition,
                      const NoiseSpec& noise, std::mt19937_64& rng) {
  return NoiseSampler(partition, noise).Sample(x, rng);
}

std::mt19937_64 ChunkGenerator(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

LabelDistribution EstimateLabelDistribution(
    const GraphBits& x, const LabelOracle& classify,
    const NodePairPartition& partition, const NoiseSpec& noise,
    std::int64_t num_samples, std::uint64_t seed,
    const SamplingOptions& options) {
  if (num_samples < 1) ThrowInvalid("need at least one sample");
  if (options.chunk_size < 1) ThrowInvalid("chunk size must be positive");
  const NoiseSampler sampler(partition, noise);
  if (x.num_nodes() != sampler.num_nodes()) {
    ThrowInvalid("graph and partition node counts differ");
  }
  const std::int64_t chunk = options.chunk_size;
  const auto num_chunks =
      static_cast<std::size_t>((num_samples + chunk - 1) / chunk);
  std::vector<std::map<Label, std::int64_t>> partial(num_chunks);
  internal::ParallelFor(num_chunks, options.num_threads, [&](std::size_t c) {
    auto rng = ChunkGenerator(seed, c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * chunk;
    const std::int64_t end = std::min(num_samples, begin + chunk);
    std::vector<std::uint8_t> buffer;
    auto& counts = partial[c];
    for (std::int64_t s = begin; s < end; ++s) {
      sampler.SampleInto(x, rng, buffer);
      GraphBits noisy(x.num_nodes(), buffer);
      ++counts[classify(noisy)];
    }
  });
  std::map<Label, std::int64_t> total;
  for (const auto& counts : partial) {
    for (const auto& [label, n] : counts) total[label] += n;
  }
  return LabelDistribution::FromCounts(std::move(total));
}

std::string VotesToJson(const VotesRecord& record) {
  nlohmann::ordered_json j;
  j["graph_id"] = record.graph_id;
  j["key"] = record.key;
  j["seed"] = record.seed;
  j["N"] = record.num_samples;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [label, n] : record.counts) {
    counts[std::to_string(label)] = n;
  }
  j["counts"] = counts;
  return j.dump(2) + "\n";
}

VotesRecord VotesFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    VotesRecord record;
    record.graph_id = j.at("graph_id").get<std::string>();
    record.key = j.at("key").get<std::string>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.num_samples = j.at("N").get<std::int64_t>();
    for (const auto& [label, n] : j.at("counts").items()) {
      record.counts[std::stoi(label)] = n.get<std::int64_t>();
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    ThrowInvalid(std::string("malformed votes record: ") + e.what());
  }
}

}  // namespace structcert
