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


// Command-line driver: generate, train, certify, score and report.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "structcert/error.h"
#include "structcert/experiment.h"

namespace {

using structcert::Error;
using structcert::ErrorKind;
using structcert::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kInfeasible:
      return kExitInvalid;
    case ErrorKind::kResourceLimit:
      return kExitResource;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kGeneration:
      return kExitOther;
  }
  return kExitOther;
}

void AddOptions(CLI::App& app, ExperimentConfig& cfg, std::string& mode) {
  app.add_option("--dataset", cfg.dataset, "Dataset directory");
  app.add_option("--model", cfg.model, "Model file");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--partition", cfg.partition,
                 "Partition file (anisotropic mode)");
  app.add_option("--votes-cache", cfg.votes_cache, "Vote cache directory");
  app.add_option("--mode", mode, "isotropic, anisotropic or sparsity-aware");
  app.add_option("--noise", cfg.noise, "Flip probability per region")
      ->delimiter(',');
  app.add_option("--samples", cfg.samples, "Monte Carlo samples per graph");
  app.add_option("--alpha", cfg.alpha, "Confidence level of the bounds");
  app.add_option("--r-max", cfg.r_max, "Radius box, one entry per region")
      ->delimiter(',');
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_flag("--prune", cfg.prune, "Only check the corner of each box");
  app.add_option("--split", cfg.split, "Split to certify");
  app.add_option("--limit", cfg.limit, "Certify only the first graphs");
  app.add_option("--n-motif", cfg.synth.n_motif, "Motif nodes");
  app.add_option("--n-random", cfg.synth.n_random, "Random-graph nodes");
  app.add_option("--er-p", cfg.synth.er_p, "Edge probability of the ER part");
  app.add_option("--train-size", cfg.synth.train_size, "Training graphs");
  app.add_option("--val-size", cfg.synth.val_size, "Validation graphs");
  app.add_option("--test-size", cfg.synth.test_size, "Test graphs");
  app.add_option("--epochs", cfg.train.epochs, "Training epochs");
  app.add_option("--learning-rate", cfg.train.learning_rate, "SGD step");
  app.add_option("--regularization", cfg.train.regularization,
                 "L2 penalty");
  app.add_option("--sweep-motif", cfg.sweep_motif, "Motif-region sweep")
      ->delimiter(',');
  app.add_option("--sweep-random", cfg.sweep_random, "Random-region sweep")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-aware certification of graph classifiers"};
  app.set_config("--config", "", "Read options from a config file");
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig cfg;
  std::string mode = "anisotropic";
  AddOptions(app, cfg, mode);

  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  auto* train = app.add_subcommand("train", "Train the base classifier");
  auto* certify = app.add_subcommand("certify", "Certify one noise setting");
  auto* score = app.add_subcommand("score", "Score a sweep of noise settings");
  auto* report = app.add_subcommand("report", "Summarize a certification run");
  for (auto* sub : {generate, train, certify, score, report}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    cfg.mode = structcert::ParseMode(mode);
    if (generate->parsed()) {
      const auto dataset = structcert::RunGenerate(cfg);
      std::printf("wrote %zu/%zu/%zu graphs to %s\n", dataset.train.size(),
                  dataset.val.size(), dataset.test.size(),
                  cfg.dataset.string().c_str());
    } else if (train->parsed()) {
      const auto result = structcert::RunTrain(cfg);
      std::printf("accuracy train=%.4f val=%.4f test=%.4f\n",
                  result.train_accuracy, result.val_accuracy,
                  result.test_accuracy);
    } else if (certify->parsed()) {
      const auto result = structcert::RunCertify(cfg);
      std::printf("certified %zu graphs into %s (smoothed accuracy %.4f, "
                  "abstained %zu, score %d)\n",
                  result.aggregate.num_graphs, result.dir.string().c_str(),
                  result.aggregate.smoothed_accuracy,
                  result.aggregate.abstained,
                  structcert::Score(result.aggregate));
    } else if (score->parsed()) {
      for (const auto& row : structcert::RunScore(cfg)) {
        for (double p : row.noise) std::printf("%g ", p);
        std::printf("score=%d smoothed_accuracy=%.4f\n", row.score,
                    row.smoothed_accuracy);
      }
    } else if (report->parsed()) {
      std::cout << structcert::RunReport(cfg);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "error: out of memory\n");
    return kExitResource;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOther;
  }
  return kExitOk;
}
