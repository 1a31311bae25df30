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

#ifndef STRUCTCERT_SYNTHGEN_H_
#define STRUCTCERT_SYNTHGEN_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "structcert/classifier.h"
#include "structcert/graph.h"

namespace structcert {

// Motif benchmark: a cycle (label 0) or clique (label 1) on nodes
// 0..n_motif-1 joined by one bridge edge to a connected Erdos-Renyi graph on
// the remaining n_random nodes.
struct SynthConfig {
  int n_motif = 10;
  int n_random = 10;
  double er_p = 0.5;
  int train_size = 1000;
  int val_size = 1000;
  int test_size = 100;
  std::uint64_t seed = 0;

  // Throws kInvalidInput on n_motif < 3, n_random < 1, er_p outside (0,1),
  // or split sizes that are not positive and even.
  void Validate() const;
};

inline constexpr Label kCycleLabel = 0;
inline constexpr Label kCliqueLabel = 1;

bool IsConnected(const GraphBits& graph);

// G(n, p) resampled until connected. Throws kGeneration after
// `max_attempts` rejections.
GraphBits ConnectedErdosRenyi(int n, double p, std::mt19937_64& rng,
                              int max_attempts = 10'000);

GraphBits GenerateGraph(Label label, const SynthConfig& config,
                        std::mt19937_64& rng);

struct DatasetEntry {
  std::string id;
  std::string split;
  LabeledGraph example;
};

struct Dataset {
  SynthConfig config;
  std::vector<DatasetEntry> train;
  std::vector<DatasetEntry> val;
  std::vector<DatasetEntry> test;

  const std::vector<DatasetEntry>& split(const std::string& name) const;
  static std::vector<LabeledGraph> Examples(
      const std::vector<DatasetEntry>& entries);
};

// Balanced splits; each split draws from its own generator derived from
// (seed, split index), so splits are independent of one another.
Dataset GenerateDataset(const SynthConfig& config);

std::string ConfigHash(const SynthConfig& config);
std::uint64_t SplitSeed(std::uint64_t seed, int split_index);

// Layout: graphs/<id>.txt edge lists, labels.csv (id,label,split), meta.json.
void WriteDataset(const std::filesystem::path& dir, const Dataset& dataset);
Dataset ReadDataset(const std::filesystem::path& dir);

}  // namespace structcert

#endif  // STRUCTCERT_SYNTHGEN_H_
