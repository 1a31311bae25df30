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

#include "structcert/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include "internal.h"
#include "json.hpp"
#include "structcert/error.h"

namespace structcert {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string FormatDouble(double value, const char* format = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

void MakeDirs(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo,
                "cannot create " + dir.string() + ": " + ec.message());
  }
}

std::string PartitionHash(const NodePairPartition& partition) {
  std::string bytes;
  bytes.reserve(partition.num_pairs() * 2);
  for (int id : partition.region_of()) bytes += std::to_string(id) + ',';
  return internal::Hex64(internal::Fnv1a(bytes));
}

std::string VotesKey(const CertifySettings& settings,
                     const NodePairPartition& partition, std::uint64_t seed) {
  std::ostringstream key;
  key << settings.model_hash << '|' << ModeName(settings.mode) << '|';
  for (double p : settings.noise) key << FormatDouble(p, "%.17g") << ',';
  key << '|' << PartitionHash(partition) << '|' << seed << '|'
      << settings.samples;
  return internal::Hex64(internal::Fnv1a(key.str()));
}

LabelDistribution SampleVotes(const DatasetEntry& entry,
                              const LabelOracle& classify,
                              const NodePairPartition& partition,
                              const NoiseSpec& noise,
                              const CertifySettings& settings,
                              std::uint64_t seed, int threads) {
  std::filesystem::path cache_file;
  std::string key;
  if (!settings.votes_dir.empty()) {
    key = VotesKey(settings, partition, seed);
    cache_file = settings.votes_dir / (entry.id + ".json");
    std::error_code ec;
    if (std::filesystem::exists(cache_file, ec)) {
      const VotesRecord cached = VotesFromJson(ReadText(cache_file));
      if (cached.key == key) return LabelDistribution::FromCounts(cached.counts);
    }
  }
  SamplingOptions options;
  options.num_threads = threads;
  LabelDistribution dist = EstimateLabelDistribution(
      entry.example.graph, classify, partition, noise, settings.samples, seed,
      options);
  if (!cache_file.empty()) {
    VotesRecord record;
    record.graph_id = entry.id;
    record.key = key;
    record.seed = seed;
    record.num_samples = settings.samples;
    record.counts = dist.counts;
    WriteText(cache_file, VotesToJson(record));
  }
  return dist;
}

// Requested radius box for one partition: defaults to the full region sizes;
// clamped to the sizes when `clamp` is set, otherwise validated.
RadiusVector ResolveRadius(const std::vector<int>& requested,
                           const NodePairPartition& partition,
                           const NoiseSpec& noise, bool clamp) {
  const auto sizes = partition.region_sizes();
  std::vector<int> r = requested.empty() ? sizes : requested;
  if (r.size() != sizes.size()) {
    ThrowInvalid("r_max needs " + std::to_string(sizes.size()) + " entries");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (noise.prob(static_cast<int>(i)) == 0.0) r[i] = 0;
    if (clamp) r[i] = std::min(r[i], sizes[i]);
  }
  RadiusVector radius(std::move(r));
  ValidateRadius(radius, noise, partition);
  return radius;
}

struct BoundsKey {
  std::uint64_t a;
  std::uint64_t b;
  friend auto operator<=>(const BoundsKey&, const BoundsKey&) = default;
};

BoundsKey KeyOf(const ConfidenceBounds& bounds) {
  BoundsKey key{};
  std::memcpy(&key.a, &bounds.p_a_lower, sizeof(double));
  std::memcpy(&key.b, &bounds.p_b_upper, sizeof(double));
  return key;
}

ordered_json RadiusJson(const RadiusVector& r) { return r.values(); }

std::string CsvPreamble(const std::string& config_hash, std::uint64_t seed) {
  return "# config_hash=" + config_hash + " seed=" + std::to_string(seed) +
         "\n";
}

std::string RadiusHeader(std::size_t c) {
  std::string header;
  for (std::size_t i = 0; i < c; ++i) {
    header += "R_" + std::to_string(i + 1) + ",";
  }
  return header;
}

std::vector<std::vector<double>> SweepSettings(const ExperimentConfig& config) {
  std::vector<std::vector<double>> settings;
  if (config.mode == NoiseMode::kIsotropic) {
    for (double p : config.sweep_motif) settings.push_back({p});
  } else {
    for (double pm : config.sweep_motif) {
      for (double pr : config.sweep_random) settings.push_back({pm, pr});
    }
  }
  return settings;
}

}  // namespace

std::string ModeName(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kIsotropic:
      return "isotropic";
    case NoiseMode::kAnisotropic:
      return "anisotropic";
    case NoiseMode::kSparsityAware:
      return "sparsity-aware";
  }
  return "unknown";
}

NoiseMode ParseMode(const std::string& name) {
  if (name == "isotropic") return NoiseMode::kIsotropic;
  if (name == "anisotropic") return NoiseMode::kAnisotropic;
  if (name == "sparsity-aware") return NoiseMode::kSparsityAware;
  ThrowInvalid("unknown mode `" + name +
               "` (expected isotropic, anisotropic or sparsity-aware)");
}

std::string NoiseTag(NoiseMode mode, std::span<const double> probs) {
  std::string tag = ModeName(mode);
  for (double p : probs) tag += "_" + FormatDouble(p, "%g");
  return tag;
}

void ExperimentConfig::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) ThrowInvalid("alpha must lie in (0, 1)");
  if (samples < 1) ThrowInvalid("samples must be at least 1");
  if (threads < 1) ThrowInvalid("threads must be at least 1");
  if (limit < 0) ThrowInvalid("limit must be non-negative");
  const std::size_t regions = mode == NoiseMode::kIsotropic ? 1 : 2;
  if (mode != NoiseMode::kAnisotropic || partition.empty()) {
    if (noise.size() != regions) {
      ThrowInvalid(ModeName(mode) + " mode needs " + std::to_string(regions) +
                   " noise probabilities, got " + std::to_string(noise.size()));
    }
  }
  NoiseSpec{noise};
  for (int r : r_max) {
    if (r < 0) ThrowInvalid("r_max entries must be non-negative");
  }
  if (split != "train" && split != "val" && split != "test") {
    ThrowInvalid("split must be train, val or test");
  }
}

std::string ExperimentConfig::ToJson() const {
  ordered_json j;
  j["dataset"] = dataset.string();
  j["model"] = model.string();
  j["out"] = out.string();
  j["partition"] = partition.string();
  j["mode"] = ModeName(mode);
  j["noise"] = noise;
  j["samples"] = samples;
  j["alpha"] = alpha;
  j["r_max"] = r_max;
  j["seed"] = seed;
  j["prune"] = prune;
  j["split"] = split;
  j["limit"] = limit;
  j["n_motif"] = synth.n_motif;
  j["n_random"] = synth.n_random;
  j["er_p"] = synth.er_p;
  j["train_size"] = synth.train_size;
  j["val_size"] = synth.val_size;
  j["test_size"] = synth.test_size;
  j["epochs"] = train.epochs;
  j["learning_rate"] = train.learning_rate;
  j["regularization"] = train.regularization;
  j["sweep_motif"] = sweep_motif;
  j["sweep_random"] = sweep_random;
  return j.dump(2) + "\n";
}

std::string ExperimentConfig::Hash() const {
  return internal::Hex64(internal::Fnv1a(ToJson()));
}

double AggregateGrid::Ratio(const RadiusVector& r) const {
  CertificationGrid layout(r_max);
  return certified_ratio[layout.IndexOf(r)];
}

NodePairPartition PartitionFor(const GraphBits& graph,
                               const CertifySettings& settings) {
  switch (settings.mode) {
    case NoiseMode::kIsotropic:
      return IsotropicPartition(graph.num_nodes());
    case NoiseMode::kSparsityAware:
      return SparsityAwarePartition(graph);
    case NoiseMode::kAnisotropic:
      if (!settings.partition) {
        ThrowInvalid("anisotropic mode needs a partition");
      }
      if (settings.partition->num_nodes() != graph.num_nodes()) {
        ThrowInvalid("partition expects " +
                     std::to_string(settings.partition->num_nodes()) +
                     " nodes, graph has " + std::to_string(graph.num_nodes()));
      }
      return *settings.partition;
  }
  ThrowInvalid("unknown noise mode");
}

std::uint64_t GraphSeed(std::uint64_t seed, const std::string& graph_id) {
  return internal::Mix64(seed ^ internal::Fnv1a(graph_id));
}

std::vector<GraphCertificate> CertifyGraphs(
    std::span<const DatasetEntry> graphs, const LabelOracle& classify,
    const CertifySettings& settings) {
  if (!(settings.confidence > 0.0 && settings.confidence < 1.0)) {
    ThrowInvalid("confidence must lie in (0, 1)");
  }
  const NoiseSpec noise(settings.noise);
  if (!settings.votes_dir.empty()) MakeDirs(settings.votes_dir);

  // Partitions and radius boxes first, so cell plans can be shared.
  std::vector<NodePairPartition> partitions;
  std::vector<RadiusVector> boxes;
  partitions.reserve(graphs.size());
  const bool clamp = settings.mode == NoiseMode::kSparsityAware;
  for (const auto& entry : graphs) {
    partitions.push_back(PartitionFor(entry.example.graph, settings));
    boxes.push_back(
        ResolveRadius(settings.r_max, partitions.back(), noise, clamp));
  }
  std::map<RadiusVector, CellPlan> plans;
  for (const auto& box : boxes) {
    if (!plans.contains(box)) {
      plans.emplace(box, CellPlan(box, noise, settings.engine));
    }
  }

  std::vector<GraphCertificate> certs(graphs.size());
  std::mutex memo_mutex;
  std::map<std::pair<RadiusVector, BoundsKey>, CertificationGrid> memo;
  // With several graphs the pool fans out over graphs; a single graph gets
  // all workers for its sampling.
  const int outer = graphs.size() > 1 ? settings.threads : 1;
  const int inner = graphs.size() > 1 ? 1 : settings.threads;
  internal::ParallelFor(graphs.size(), outer, [&](std::size_t i) {
    const DatasetEntry& entry = graphs[i];
    GraphCertificate& cert = certs[i];
    cert.graph_id = entry.id;
    cert.label = entry.example.label;
    cert.seed = GraphSeed(settings.seed, entry.id);
    cert.votes = SampleVotes(entry, classify, partitions[i], noise, settings,
                             cert.seed, inner);
    cert.bounds = BoundTopTwo(cert.votes, settings.confidence);
    const auto memo_key = std::make_pair(boxes[i], KeyOf(cert.bounds));
    {
      std::lock_guard lock(memo_mutex);
      if (auto it = memo.find(memo_key); it != memo.end()) {
        cert.grid = it->second;
        return;
      }
    }
    cert.grid = ComputeCertificationGrid(cert.bounds, plans.at(boxes[i]),
                                         settings.engine);
    std::lock_guard lock(memo_mutex);
    memo.emplace(memo_key, cert.grid);
  });
  return certs;
}

AggregateGrid Aggregate(std::span<const GraphCertificate> certificates,
                        const RadiusVector& r_max) {
  AggregateGrid agg;
  agg.r_max = r_max;
  CertificationGrid layout(r_max);
  agg.certified_ratio.assign(layout.size(), 0.0);
  agg.num_graphs = certificates.size();
  if (certificates.empty()) return agg;
  std::size_t correct = 0;
  for (const auto& cert : certificates) {
    if (cert.bounds.abstain) ++agg.abstained;
    if (!cert.correct()) continue;
    ++correct;
    const RadiusVector& own = cert.grid.r_max();
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
      const RadiusVector r = layout.RadiusAt(idx);
      bool inside = own.size() == r.size();
      for (std::size_t d = 0; inside && d < r.size(); ++d) {
        inside = r[d] <= own[d];
      }
      if (inside && cert.grid.certified(r)) agg.certified_ratio[idx] += 1.0;
    }
  }
  const auto n = static_cast<double>(certificates.size());
  for (double& v : agg.certified_ratio) v /= n;
  agg.smoothed_accuracy = static_cast<double>(correct) / n;
  return agg;
}

int Score(const AggregateGrid& aggregate) {
  return static_cast<int>(std::count_if(aggregate.certified_ratio.begin(),
                                        aggregate.certified_ratio.end(),
                                        [](double v) { return v > 0.5; }));
}

std::size_t CertifiedArea(std::span<const GraphCertificate> certificates,
                          const RadiusVector& box) {
  std::size_t area = 0;
  CertificationGrid layout(box);
  for (const auto& cert : certificates) {
    if (cert.bounds.abstain) continue;
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
      if (cert.grid.certified(layout.RadiusAt(idx))) ++area;
    }
  }
  return area;
}

void WriteGridCsv(const std::filesystem::path& path,
                  const CertificationGrid& grid, const std::string& config_hash,
                  std::uint64_t seed) {
  std::string text = CsvPreamble(config_hash, seed);
  text += RadiusHeader(grid.r_max().size()) + "margin,certified\n";
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const RadiusVector r = grid.RadiusAt(idx);
    for (int v : r.values()) text += std::to_string(v) + ",";
    text += FormatDouble(grid.margin(idx)) + "," +
            (grid.certified(idx) ? "1" : "0") + "\n";
  }
  WriteText(path, text);
}

void WriteGridSidecar(const std::filesystem::path& path,
                      const GraphCertificate& cert,
                      std::span<const double> noise,
                      const std::string& config_hash) {
  ordered_json j;
  j["graph_id"] = cert.graph_id;
  j["label"] = cert.label;
  j["c_A"] = cert.bounds.top;
  j["c_B"] = cert.bounds.runner_up;
  j["n_A"] = cert.bounds.n_a;
  j["n_B"] = cert.bounds.n_b;
  j["p_A_lower"] = cert.bounds.p_a_lower;
  j["p_B_upper"] = cert.bounds.p_b_upper;
  j["alpha"] = cert.bounds.confidence;
  j["N"] = cert.bounds.n;
  j["seed"] = cert.seed;
  j["noise"] = std::vector<double>(noise.begin(), noise.end());
  j["abstain"] = cert.bounds.abstain;
  j["correct"] = cert.correct();
  j["r_max"] = RadiusJson(cert.grid.r_max());
  ordered_json front = ordered_json::array();
  for (const auto& r : cert.grid.pareto_front()) front.push_back(RadiusJson(r));
  j["pareto_front"] = front;
  j["config_hash"] = config_hash;
  WriteText(path, j.dump(2) + "\n");
}

void WriteAggregateCsv(const std::filesystem::path& path,
                       const AggregateGrid& aggregate,
                       const std::string& config_hash, std::uint64_t seed) {
  CertificationGrid layout(aggregate.r_max);
  std::string text = CsvPreamble(config_hash, seed);
  text += RadiusHeader(aggregate.r_max.size()) + "certified_ratio\n";
  for (std::size_t idx = 0; idx < layout.size(); ++idx) {
    const RadiusVector r = layout.RadiusAt(idx);
    for (int v : r.values()) text += std::to_string(v) + ",";
    text += FormatDouble(aggregate.certified_ratio[idx]) + "\n";
  }
  WriteText(path, text);
}

AggregateGrid ReadAggregateCsv(const std::filesystem::path& path) {
  std::istringstream in(ReadText(path));
  std::string line;
  std::vector<std::vector<int>> radii;
  std::vector<double> ratios;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() < 2) ThrowInvalid("malformed row in " + path.string());
    std::vector<int> r;
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      r.push_back(std::stoi(fields[i]));
    }
    radii.push_back(std::move(r));
    ratios.push_back(std::stod(fields.back()));
  }
  if (radii.empty()) ThrowInvalid("empty aggregate grid " + path.string());
  AggregateGrid agg;
  agg.r_max = RadiusVector(radii.back());
  CertificationGrid layout(agg.r_max);
  if (layout.size() != radii.size()) {
    ThrowInvalid("aggregate grid " + path.string() + " is not a full box");
  }
  agg.certified_ratio = std::move(ratios);
  return agg;
}

Dataset RunGenerate(const ExperimentConfig& config) {
  SynthConfig synth = config.synth;
  synth.seed = config.seed;
  Dataset dataset = GenerateDataset(synth);
  WriteDataset(config.dataset, dataset);
  return dataset;
}

TrainReport RunTrain(const ExperimentConfig& config) {
  const Dataset dataset = ReadDataset(config.dataset);
  TrainOptions options = config.train;
  options.seed = config.seed;
  const auto train = Dataset::Examples(dataset.train);
  const TrainResult result = Train(train, options);
  if (!config.model.parent_path().empty()) {
    MakeDirs(config.model.parent_path());
  }
  WriteModelFile(config.model, result.model);
  TrainReport report;
  report.train_accuracy = result.train_accuracy;
  report.val_accuracy =
      Accuracy(result.model, Dataset::Examples(dataset.val));
  report.test_accuracy =
      Accuracy(result.model, Dataset::Examples(dataset.test));
  return report;
}

CertifyReport RunCertify(const ExperimentConfig& config) {
  config.Validate();
  const Dataset dataset = ReadDataset(config.dataset);
  const LinearModel model = ReadModelFile(config.model);
  const int num_nodes = dataset.config.n_motif + dataset.config.n_random;

  CertifySettings settings;
  settings.mode = config.mode;
  settings.noise = config.noise;
  settings.samples = config.samples;
  settings.confidence = config.alpha;
  settings.r_max = config.r_max;
  settings.seed = config.seed;
  settings.threads = config.threads;
  settings.engine.monotone_pruning = config.prune;
  settings.model_hash = ModelHash(model);
  if (config.mode == NoiseMode::kAnisotropic) {
    settings.partition =
        config.partition.empty()
            ? MotifPartition(dataset.config.n_motif, dataset.config.n_random)
            : ReadPartitionFile(config.partition, num_nodes).partition;
  }

  CertifyReport report;
  report.dir = config.out / NoiseTag(config.mode, config.noise);
  settings.votes_dir = config.votes_cache.empty()
                           ? config.out / "votes" /
                                 NoiseTag(config.mode, config.noise)
                           : config.votes_cache;
  MakeDirs(report.dir / "graphs");

  std::vector<DatasetEntry> entries = dataset.split(config.split);
  if (config.limit > 0 && static_cast<std::size_t>(config.limit) < entries.size()) {
    entries.resize(static_cast<std::size_t>(config.limit));
  }
  const LabelOracle classify = [&model](const GraphBits& g) {
    return model.Predict(g);
  };
  report.certificates = CertifyGraphs(entries, classify, settings);

  std::vector<int> box(report.certificates.empty()
                           ? 0
                           : report.certificates.front().grid.r_max().size(),
                       0);
  for (const auto& cert : report.certificates) {
    for (std::size_t d = 0; d < box.size(); ++d) {
      box[d] = std::max(box[d], cert.grid.r_max()[d]);
    }
  }
  report.aggregate = Aggregate(report.certificates, RadiusVector(box));

  const std::string hash = config.Hash();
  for (const auto& cert : report.certificates) {
    WriteGridCsv(report.dir / "graphs" / (cert.graph_id + ".csv"), cert.grid,
                 hash, cert.seed);
    WriteGridSidecar(report.dir / "graphs" / (cert.graph_id + ".json"), cert,
                     config.noise, hash);
  }
  WriteAggregateCsv(report.dir / "aggregate.csv", report.aggregate, hash,
                    config.seed);
  ordered_json summary;
  summary["config_hash"] = hash;
  summary["seed"] = config.seed;
  summary["mode"] = ModeName(config.mode);
  summary["noise"] = config.noise;
  summary["N"] = config.samples;
  summary["alpha"] = config.alpha;
  summary["num_graphs"] = report.aggregate.num_graphs;
  summary["abstained"] = report.aggregate.abstained;
  summary["smoothed_accuracy"] = report.aggregate.smoothed_accuracy;
  summary["score"] = Score(report.aggregate);
  summary["r_max"] = box;
  summary["config"] = ordered_json::parse(config.ToJson());
  WriteText(report.dir / "summary.json", summary.dump(2) + "\n");
  return report;
}

std::vector<ScoreRow> RunScore(const ExperimentConfig& config) {
  const auto settings = SweepSettings(config);
  if (settings.empty()) {
    ThrowInvalid("score needs sweep_motif (and sweep_random unless isotropic)");
  }
  std::vector<std::string> missing;
  for (const auto& noise : settings) {
    const auto dir = config.out / NoiseTag(config.mode, noise);
    if (!std::filesystem::exists(dir / "aggregate.csv") ||
        !std::filesystem::exists(dir / "summary.json")) {
      missing.push_back(dir.string());
    }
  }
  if (!missing.empty()) {
    std::string message = "missing aggregate grids:";
    for (const auto& m : missing) message += "\n  " + m;
    throw Error(ErrorKind::kIo, message);
  }
  std::vector<ScoreRow> rows;
  std::string text = RadiusHeader(0);
  text = config.mode == NoiseMode::kIsotropic ? "p,score,smoothed_accuracy\n"
                                              : "p_motif,p_random,score,smoothed_accuracy\n";
  for (const auto& noise : settings) {
    const auto dir = config.out / NoiseTag(config.mode, noise);
    ScoreRow row;
    row.noise = noise;
    row.score = Score(ReadAggregateCsv(dir / "aggregate.csv"));
    try {
      row.smoothed_accuracy = nlohmann::json::parse(ReadText(dir / "summary.json"))
                                  .at("smoothed_accuracy")
                                  .get<double>();
    } catch (const nlohmann::json::exception& e) {
      ThrowInvalid(dir.string() + "/summary.json: " + e.what());
    }
    for (double p : noise) text += FormatDouble(p, "%g") + ",";
    text += std::to_string(row.score) + "," +
            FormatDouble(row.smoothed_accuracy) + "\n";
    rows.push_back(std::move(row));
  }
  MakeDirs(config.out);
  WriteText(config.out / "score.csv", text);
  return rows;
}

std::string RunReport(const ExperimentConfig& config) {
  const auto dir = config.out / NoiseTag(config.mode, config.noise);
  const AggregateGrid agg = ReadAggregateCsv(dir / "aggregate.csv");
  nlohmann::json summary;
  try {
    summary = nlohmann::json::parse(ReadText(dir / "summary.json"));
  } catch (const nlohmann::json::exception& e) {
    ThrowInvalid(dir.string() + "/summary.json: " + e.what());
  }
  std::ostringstream out;
  out << "noise setting   " << dir.filename().string() << "\n"
      << "graphs          " << summary.value("num_graphs", 0) << "\n"
      << "abstained       " << summary.value("abstained", 0) << "\n"
      << "smoothed acc.   " << summary.value("smoothed_accuracy", 0.0) << "\n"
      << "score           " << Score(agg) << "\n";
  CertificationGrid layout(agg.r_max);
  const std::size_t c = agg.r_max.size();
  if (c == 1) {
    out << "radius  certified_ratio\n";
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
      out << idx << "  " << FormatDouble(agg.certified_ratio[idx], "%.3f")
          << "\n";
      if (agg.certified_ratio[idx] == 0.0) break;
    }
  } else {
    // For each leading prefix, the largest last-region radius certified for
    // all graphs and for more than half of them.
    out << "prefix  max_last(all)  max_last(>half)\n";
    const auto last = static_cast<std::size_t>(agg.r_max[c - 1]) + 1;
    for (std::size_t base = 0; base < layout.size(); base += last) {
      int all = -1;
      int half = -1;
      for (std::size_t j = 0; j < last; ++j) {
        const double v = agg.certified_ratio[base + j];
        if (v >= 1.0) all = static_cast<int>(j);
        if (v > 0.5) half = static_cast<int>(j);
      }
      if (half < 0) continue;
      const RadiusVector r = layout.RadiusAt(base);
      std::string prefix;
      for (std::size_t d = 0; d + 1 < c; ++d) {
        prefix += (d ? "," : "") + std::to_string(r[d]);
      }
      out << prefix << "  " << all << "  " << half << "\n";
    }
  }
  return out.str();
}

}  // namespace structcert
