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

#ifndef STRUCTCERT_CLASSIFIER_H_
#define STRUCTCERT_CLASSIFIER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "structcert/graph.h"
#include "structcert/smoothing.h"

namespace structcert {

// counts[d] = number of nodes of degree d, d in [0, n-1].
struct DegreeHistogram {
  std::vector<std::int64_t> counts;
};

DegreeHistogram ComputeDegreeHistogram(const GraphBits& graph);

// Vertex histogram kernel: sum_d c(G1, d) * c(G2, d).
std::int64_t Kernel(const GraphBits& g1, const GraphBits& g2);

struct LabeledGraph {
  GraphBits graph;
  Label label = 0;
};

// Linear decision rule on the degree histogram (the explicit feature map of
// the vertex histogram kernel). A score of exactly zero maps to the
// negative label.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  Label positive_label = 1;
  Label negative_label = 0;

  int feature_dim() const { return static_cast<int>(weights.size()); }
  double Score(const GraphBits& graph) const;
  Label Predict(const GraphBits& graph) const;
};

Label Predict(const LinearModel& model, const GraphBits& graph);
double Accuracy(const LinearModel& model, std::span<const LabeledGraph> data);

struct TrainOptions {
  int epochs = 100;
  double learning_rate = 0.01;
  double regularization = 1e-3;
  std::uint64_t seed = 0;
};

struct TrainResult {
  LinearModel model;
  double train_accuracy = 0.0;
};

// Soft-margin linear SVM (hinge loss + L2) trained primally by stochastic
// subgradient descent on degree histograms. The feature dimension is the
// largest node count in `data`. The smaller label becomes the negative
// class. Throws kInvalidInput unless exactly two labels are present.
TrainResult Train(std::span<const LabeledGraph> data,
                  const TrainOptions& options);

// {"weights": [...], "bias": b, "labels": [neg, pos], "feature_dim": d}
std::string ModelToJson(const LinearModel& model);
LinearModel ModelFromJson(const std::string& text);
void WriteModelFile(const std::filesystem::path& path,
                    const LinearModel& model);
LinearModel ReadModelFile(const std::filesystem::path& path);
// Stable hex digest of the serialized model.
std::string ModelHash(const LinearModel& model);

}  // namespace structcert

#endif  // STRUCTCERT_CLASSIFIER_H_
