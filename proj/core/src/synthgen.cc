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

#include "structcert/synthgen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "internal.h"
#include "json.hpp"
#include "structcert/error.h"

namespace structcert {
namespace {

constexpr const char* kSplitNames[] = {"train", "val", "test"};

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(a)] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

bool Bernoulli(double p, std::mt19937_64& rng) {
  return rng() < static_cast<std::uint64_t>(std::ldexp(p, 64));
}

nlohmann::ordered_json ConfigJson(const SynthConfig& c) {
  nlohmann::ordered_json j;
  j["n_motif"] = c.n_motif;
  j["n_random"] = c.n_random;
  j["er_p"] = c.er_p;
  j["train_size"] = c.train_size;
  j["val_size"] = c.val_size;
  j["test_size"] = c.test_size;
  j["seed"] = c.seed;
  return j;
}

std::vector<DatasetEntry> GenerateSplit(const SynthConfig& config, int index,
                                        int size) {
  std::mt19937_64 rng(SplitSeed(config.seed, index));
  std::vector<Label> labels(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    labels[static_cast<std::size_t>(i)] = i < size / 2 ? kCycleLabel : kCliqueLabel;
  }
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<DatasetEntry> entries;
  entries.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "%s_%05zu", kSplitNames[index], i);
    entries.push_back({id, kSplitNames[index],
                       {GenerateGraph(labels[i], config, rng), labels[i]}});
  }
  return entries;
}

}  // namespace

void SynthConfig::Validate() const {
  if (n_motif < 3) ThrowInvalid("n_motif must be at least 3");
  if (n_random < 1) ThrowInvalid("n_random must be at least 1");
  if (!(er_p > 0.0 && er_p < 1.0)) ThrowInvalid("er_p must lie in (0, 1)");
  for (int size : {train_size, val_size, test_size}) {
    if (size < 2 || size % 2 != 0) {
      ThrowInvalid("split sizes must be positive and even for class balance");
    }
  }
}

bool IsConnected(const GraphBits& graph) {
  const int n = graph.num_nodes();
  DisjointSets sets(n);
  int components = n;
  std::size_t k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      if (graph.bit(k) && sets.Union(u, v)) --components;
    }
  }
  return components == 1;
}

GraphBits ConnectedErdosRenyi(int n, double p, std::mt19937_64& rng,
                              int max_attempts) {
  if (n < 1) ThrowInvalid("Erdos-Renyi graph needs at least one node");
  if (!(p >= 0.0 && p <= 1.0)) ThrowInvalid("edge probability outside [0,1]");
  std::vector<std::uint8_t> bits(NumPairs(n));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& b : bits) b = (p >= 1.0 || Bernoulli(p, rng)) ? 1 : 0;
    GraphBits g(n, bits);
    if (IsConnected(g)) return g;
  }
  throw Error(ErrorKind::kGeneration,
              "no connected G(" + std::to_string(n) + ", " +
                  std::to_string(p) + ") after " +
                  std::to_string(max_attempts) + " attempts");
}

GraphBits GenerateGraph(Label label, const SynthConfig& config,
                        std::mt19937_64& rng) {
  config.Validate();
  if (label != kCycleLabel && label != kCliqueLabel) {
    ThrowInvalid("synthetic labels are 0 (cycle) and 1 (clique)");
  }
  const int m = config.n_motif;
  const int n = m + config.n_random;
  std::vector<Edge> edges;
  if (label == kCycleLabel) {
    for (int i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m});
  } else {
    for (int u = 0; u < m; ++u) {
      for (int v = u + 1; v < m; ++v) edges.push_back({u, v});
    }
  }
  const GraphBits random_part =
      ConnectedErdosRenyi(config.n_random, config.er_p, rng);
  for (const Edge& e : DecodeGraph(random_part)) {
    edges.push_back({e.u + m, e.v + m});
  }
  std::uniform_int_distribution<int> motif_node(0, m - 1);
  std::uniform_int_distribution<int> random_node(m, n - 1);
  const int a = motif_node(rng);
  const int b = random_node(rng);
  edges.push_back({a, b});
  return EncodeGraph(edges, n);
}

const std::vector<DatasetEntry>& Dataset::split(const std::string& name) const {
  if (name == "train") return train;
  if (name == "val") return val;
  if (name == "test") return test;
  ThrowInvalid("unknown split `" + name + "`");
}

std::vector<LabeledGraph> Dataset::Examples(
    const std::vector<DatasetEntry>& entries) {
  std::vector<LabeledGraph> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.example);
  return out;
}

std::uint64_t SplitSeed(std::uint64_t seed, int split_index) {
  return internal::Mix64(seed ^ internal::Mix64(static_cast<std::uint64_t>(split_index) + 1));
}

Dataset GenerateDataset(const SynthConfig& config) {
  config.Validate();
  Dataset d;
  d.config = config;
  d.train = GenerateSplit(config, 0, config.train_size);
  d.val = GenerateSplit(config, 1, config.val_size);
  d.test = GenerateSplit(config, 2, config.test_size);
  return d;
}

std::string ConfigHash(const SynthConfig& config) {
  return internal::Hex64(internal::Fnv1a(ConfigJson(config).dump()));
}

void WriteDataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "graphs", ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot create " + (dir / "graphs").string() +
                                    ": " + ec.message());
  }
  std::ofstream labels(dir / "labels.csv");
  if (!labels) {
    throw Error(ErrorKind::kIo, "cannot write " + (dir / "labels.csv").string());
  }
  labels << "graph_id,label,split\n";
  for (const auto* split : {&dataset.train, &dataset.val, &dataset.test}) {
    for (const auto& e : *split) {
      WriteEdgeListFile(dir / "graphs" / (e.id + ".txt"), e.example.graph);
      labels << e.id << ',' << e.example.label << ',' << e.split << '\n';
    }
  }
  nlohmann::ordered_json meta;
  meta["config"] = ConfigJson(dataset.config);
  meta["config_hash"] = ConfigHash(dataset.config);
  meta["seed"] = dataset.config.seed;
  nlohmann::ordered_json splits = nlohmann::ordered_json::array();
  for (int i = 0; i < 3; ++i) {
    splits.push_back({{"name", kSplitNames[i]},
                      {"seed", SplitSeed(dataset.config.seed, i)},
                      {"size", dataset.split(kSplitNames[i]).size()}});
  }
  meta["splits"] = splits;
  std::ofstream out(dir / "meta.json");
  if (!out) {
    throw Error(ErrorKind::kIo, "cannot write " + (dir / "meta.json").string());
  }
  out << meta.dump(2) << '\n';
}

Dataset ReadDataset(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "meta.json");
  if (!meta_in) {
    throw Error(ErrorKind::kIo, "cannot open " + (dir / "meta.json").string());
  }
  Dataset d;
  try {
    const auto meta = nlohmann::json::parse(meta_in);
    const auto& c = meta.at("config");
    d.config.n_motif = c.at("n_motif").get<int>();
    d.config.n_random = c.at("n_random").get<int>();
    d.config.er_p = c.at("er_p").get<double>();
    d.config.train_size = c.at("train_size").get<int>();
    d.config.val_size = c.at("val_size").get<int>();
    d.config.test_size = c.at("test_size").get<int>();
    d.config.seed = c.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    ThrowInvalid(std::string("malformed meta.json: ") + e.what());
  }
  std::ifstream labels(dir / "labels.csv");
  if (!labels) {
    throw Error(ErrorKind::kIo, "cannot open " + (dir / "labels.csv").string());
  }
  std::string line;
  std::getline(labels, line);
  while (std::getline(labels, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string id, label, split;
    if (!std::getline(row, id, ',') || !std::getline(row, label, ',') ||
        !std::getline(row, split, ',')) {
      ThrowInvalid("malformed labels.csv row: " + line);
    }
    DatasetEntry e{id, split,
                   {ReadEdgeListFile(dir / "graphs" / (id + ".txt")),
                    std::stoi(label)}};
    if (split == "train") {
      d.train.push_back(std::move(e));
    } else if (split == "val") {
      d.val.push_back(std::move(e));
    } else if (split == "test") {
      d.test.push_back(std::move(e));
    } else {
      ThrowInvalid("unknown split `" + split + "` in labels.csv");
    }
  }
  return d;
}

}  // namespace structcert
