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

#ifndef STRUCTCERT_EXPERIMENT_H_
#define STRUCTCERT_EXPERIMENT_H_

// End-to-end pipeline behind the command-line tool: dataset generation,
// training, batch certification with vote caching, aggregate grids and the
// score metric.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "structcert/certify.h"
#include "structcert/classifier.h"
#include "structcert/partition.h"
#include "structcert/smoothing.h"
#include "structcert/stats.h"
#include "structcert/synthgen.h"

namespace structcert {

enum class NoiseMode { kIsotropic, kAnisotropic, kSparsityAware };

std::string ModeName(NoiseMode mode);
// Throws kInvalidInput on unknown names.
NoiseMode ParseMode(const std::string& name);

// Directory name of one noise setting, e.g. "anisotropic_0.02_0.45".
std::string NoiseTag(NoiseMode mode, std::span<const double> probs);

struct ExperimentConfig {
  std::filesystem::path dataset = "data";
  std::filesystem::path model = "model.json";
  std::filesystem::path out = "out";
  // Optional partition file for anisotropic mode; defaults to the motif
  // split recorded in the dataset metadata.
  std::filesystem::path partition;
  // Defaults to <out>/votes.
  std::filesystem::path votes_cache;
  NoiseMode mode = NoiseMode::kAnisotropic;
  std::vector<double> noise = {0.02, 0.45};
  std::int64_t samples = 100'000;
  // Confidence level of the Clopper-Pearson bounds.
  double alpha = 0.99;
  // Empty means every region's full size.
  std::vector<int> r_max;
  std::uint64_t seed = 0;
  int threads = 1;
  bool prune = false;
  std::string split = "test";
  // Certify only the first `limit` graphs of the split (0 = all).
  int limit = 0;
  SynthConfig synth;
  TrainOptions train;
  std::vector<double> sweep_motif;
  std::vector<double> sweep_random;

  // Throws kInvalidInput.
  void Validate() const;
  std::string ToJson() const;
  std::string Hash() const;
};

struct CertifySettings {
  NoiseMode mode = NoiseMode::kAnisotropic;
  std::vector<double> noise;
  // Required for anisotropic mode; ignored otherwise.
  std::optional<NodePairPartition> partition;
  std::int64_t samples = 100'000;
  double confidence = 0.99;
  std::vector<int> r_max;
  std::uint64_t seed = 0;
  int threads = 1;
  EngineOptions engine;
  // Vote cache; disabled when empty.
  std::filesystem::path votes_dir;
  std::string model_hash;
};

struct GraphCertificate {
  std::string graph_id;
  Label label = 0;
  LabelDistribution votes;
  ConfidenceBounds bounds;
  CertificationGrid grid;
  std::uint64_t seed = 0;

  // Smoothed prediction made (no abstention) and equal to the true label.
  bool correct() const { return !bounds.abstain && bounds.top == label; }
};

// Fraction of graphs whose smoothed prediction is correct and certified at
// each R <= r_max.
struct AggregateGrid {
  RadiusVector r_max;
  std::vector<double> certified_ratio;
  std::size_t num_graphs = 0;
  std::size_t abstained = 0;
  double smoothed_accuracy = 0.0;

  double Ratio(const RadiusVector& r) const;
};

// Partition a graph is smoothed with under `settings`.
NodePairPartition PartitionFor(const GraphBits& graph,
                               const CertifySettings& settings);

std::uint64_t GraphSeed(std::uint64_t seed, const std::string& graph_id);

std::vector<GraphCertificate> CertifyGraphs(
    std::span<const DatasetEntry> graphs, const LabelOracle& classify,
    const CertifySettings& settings);

AggregateGrid Aggregate(std::span<const GraphCertificate> certificates,
                        const RadiusVector& r_max);

// Number of grid points certified for strictly more than half of the graphs.
int Score(const AggregateGrid& aggregate);

// Sum over graphs of certified grid points with R <= box.
std::size_t CertifiedArea(std::span<const GraphCertificate> certificates,
                          const RadiusVector& box);

// Report files.
void WriteGridCsv(const std::filesystem::path& path,
                  const CertificationGrid& grid, const std::string& config_hash,
                  std::uint64_t seed);
void WriteGridSidecar(const std::filesystem::path& path,
                      const GraphCertificate& cert,
                      std::span<const double> noise,
                      const std::string& config_hash);
void WriteAggregateCsv(const std::filesystem::path& path,
                       const AggregateGrid& aggregate,
                       const std::string& config_hash, std::uint64_t seed);
AggregateGrid ReadAggregateCsv(const std::filesystem::path& path);

struct TrainReport {
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
};

struct CertifyReport {
  std::filesystem::path dir;
  std::vector<GraphCertificate> certificates;
  AggregateGrid aggregate;
};

struct ScoreRow {
  std::vector<double> noise;
  int score = 0;
  double smoothed_accuracy = 0.0;
};

Dataset RunGenerate(const ExperimentConfig& config);
TrainReport RunTrain(const ExperimentConfig& config);
CertifyReport RunCertify(const ExperimentConfig& config);
// Throws kIo listing every noise setting whose aggregate grid is missing.
std::vector<ScoreRow> RunScore(const ExperimentConfig& config);
std::string RunReport(const ExperimentConfig& config);

}  // namespace structcert

#endif  // STRUCTCERT_EXPERIMENT_H_
