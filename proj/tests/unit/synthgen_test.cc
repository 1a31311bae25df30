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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "structcert/error.h"
#include "test_oracles.h"

namespace structcert {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("structcert_" + name);
  fs::remove_all(dir);
  return dir;
}

int MotifEdges(const GraphBits& g, int n_motif) {
  int edges = 0;
  for (int u = 0; u < n_motif; ++u) {
    for (int v = u + 1; v < n_motif; ++v) edges += g.HasEdge(u, v);
  }
  return edges;
}

int CrossEdges(const GraphBits& g, int n_motif) {
  int edges = 0;
  for (int u = 0; u < n_motif; ++u) {
    for (int v = n_motif; v < g.num_nodes(); ++v) edges += g.HasEdge(u, v);
  }
  return edges;
}

TEST(ConnectedErTest, TrivialSizes) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(ConnectedErdosRenyi(1, 0.5, rng).num_pairs(), 0u);
  EXPECT_EQ(ConnectedErdosRenyi(2, 1.0, rng), GraphBits(2, {1}));
}

TEST(ConnectedErTest, ImpossibleIsGenerationError) {
  std::mt19937_64 rng(1);
  try {
    ConnectedErdosRenyi(5, 0.0, rng, 50);
    FAIL() << "expected a generation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGeneration);
  }
}

TEST(ConnectedErTest, DensityMatchesRejectionOracle) {
  std::mt19937_64 rng(2);
  double density = 0.0;
  const int draws = 1000;
  for (int i = 0; i < draws; ++i) {
    const GraphBits g = ConnectedErdosRenyi(10, 0.5, rng);
    ASSERT_TRUE(IsConnected(g));
    density += static_cast<double>(g.EdgeCount()) / 45.0;
  }
  density /= draws;

  // Plain rejection sampling with an unrelated generator.
  std::mt19937_64 other(99);
  std::vector<double> oracle;
  while (oracle.size() < 10'000) {
    const GraphBits g = testing::RandomGraph(10, 0.5, other);
    if (IsConnected(g)) oracle.push_back(static_cast<double>(g.EdgeCount()) / 45.0);
  }
  double mean = 0.0;
  for (double d : oracle) mean += d;
  mean /= static_cast<double>(oracle.size());
  double var = 0.0;
  for (double d : oracle) var += (d - mean) * (d - mean);
  var /= static_cast<double>(oracle.size() - 1);
  const double sigma =
      std::sqrt(var / draws + var / static_cast<double>(oracle.size()));
  EXPECT_LE(std::abs(density - mean), 3.0 * sigma)
      << density << " vs " << mean;
}

TEST(IsConnectedTest, Examples) {
  EXPECT_TRUE(IsConnected(GraphBits(1)));
  EXPECT_FALSE(IsConnected(GraphBits(2)));
  EXPECT_TRUE(IsConnected(GraphBits(3, {1, 0, 1})));
  EXPECT_FALSE(IsConnected(GraphBits(4, {1, 0, 0, 0, 0, 1})));
}

TEST(GenerateGraphTest, CycleMotif) {
  SynthConfig cfg;
  std::mt19937_64 rng(3);
  const GraphBits g = GenerateGraph(kCycleLabel, cfg, rng);
  EXPECT_EQ(MotifEdges(g, 10), 10);
  for (int u = 0; u < 10; ++u) {
    int inside = 0;
    for (int v = 0; v < 10; ++v) inside += g.HasEdge(u, v);
    EXPECT_EQ(inside, 2);
  }
  EXPECT_TRUE(IsConnected(g));
}

TEST(GenerateGraphTest, CliqueMotif) {
  SynthConfig cfg;
  std::mt19937_64 rng(4);
  const GraphBits g = GenerateGraph(kCliqueLabel, cfg, rng);
  EXPECT_EQ(MotifEdges(g, 10), 45);
  for (int u = 0; u < 10; ++u) {
    int inside = 0;
    for (int v = 0; v < 10; ++v) inside += g.HasEdge(u, v);
    EXPECT_EQ(inside, 9);
  }
}

TEST(GenerateGraphTest, ExactlyOneBridge) {
  SynthConfig cfg;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const GraphBits g = GenerateGraph(i % 2, cfg, rng);
    ASSERT_EQ(CrossEdges(g, 10), 1);
  }
}

TEST(GenerateGraphTest, RejectsUnknownLabel) {
  std::mt19937_64 rng(6);
  EXPECT_THROW(GenerateGraph(2, SynthConfig{}, rng), Error);
}

TEST(SynthConfigTest, Validation) {
  SynthConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.train_size = 3;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = SynthConfig{};
  cfg.n_motif = 2;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = SynthConfig{};
  cfg.er_p = 1.0;
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(GenerateDatasetTest, DefaultSizesAreBalanced) {
  const Dataset ds = GenerateDataset(SynthConfig{});
  EXPECT_EQ(ds.train.size(), 1000u);
  EXPECT_EQ(ds.val.size(), 1000u);
  EXPECT_EQ(ds.test.size(), 100u);
  for (const auto* split : {&ds.train, &ds.val, &ds.test}) {
    std::size_t positive = 0;
    for (const auto& e : *split) positive += e.example.label == kCliqueLabel;
    EXPECT_EQ(positive * 2, split->size());
  }
}

TEST(GenerateDatasetTest, MinimalSplits) {
  SynthConfig cfg;
  cfg.train_size = cfg.val_size = cfg.test_size = 2;
  const Dataset ds = GenerateDataset(cfg);
  EXPECT_EQ(ds.train.size() + ds.val.size() + ds.test.size(), 6u);
  EXPECT_EQ(ds.test[0].id.rfind("test_", 0), 0u);
}

TEST(GenerateDatasetTest, SplitsUseIndependentStreams) {
  SynthConfig small;
  small.train_size = 10;
  SynthConfig large = small;
  large.train_size = 20;
  // Changing the training size leaves the test split untouched.
  const auto a = GenerateDataset(small);
  const auto b = GenerateDataset(large);
  ASSERT_EQ(a.test.size(), b.test.size());
  for (std::size_t i = 0; i < a.test.size(); ++i) {
    EXPECT_EQ(a.test[i].example.graph, b.test[i].example.graph);
  }
}

TEST(DatasetIoTest, SameSeedGivesIdenticalFiles) {
  SynthConfig cfg;
  cfg.train_size = 6;
  cfg.val_size = 4;
  cfg.test_size = 4;
  cfg.seed = 42;
  const fs::path a = TempDir("ds_a");
  const fs::path b = TempDir("ds_b");
  WriteDataset(a, GenerateDataset(cfg));
  WriteDataset(b, GenerateDataset(cfg));
  EXPECT_EQ(Slurp(a / "labels.csv"), Slurp(b / "labels.csv"));
  EXPECT_EQ(Slurp(a / "meta.json"), Slurp(b / "meta.json"));
  for (const auto& entry : fs::directory_iterator(a / "graphs")) {
    EXPECT_EQ(Slurp(entry.path()),
              Slurp(b / "graphs" / entry.path().filename()));
  }
  const Dataset back = ReadDataset(a);
  const Dataset original = GenerateDataset(cfg);
  ASSERT_EQ(back.train.size(), original.train.size());
  for (std::size_t i = 0; i < back.train.size(); ++i) {
    EXPECT_EQ(back.train[i].id, original.train[i].id);
    EXPECT_EQ(back.train[i].example.graph, original.train[i].example.graph);
    EXPECT_EQ(back.train[i].example.label, original.train[i].example.label);
  }
  EXPECT_EQ(ConfigHash(back.config), ConfigHash(cfg));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(DatasetIoTest, MissingDirectoryIsIoError) {
  try {
    ReadDataset("/nonexistent/dataset");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

}  // namespace
}  // namespace structcert
