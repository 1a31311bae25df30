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

#include "structcert/classifier.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "internal.h"
#include "json.hpp"
#include "structcert/error.h"

namespace structcert {
namespace {

// Degree histogram as dense features of width `dim`; degrees beyond the top
// bin are folded into it.
void Features(const GraphBits& graph, std::size_t dim,
              std::vector<double>& out) {
  out.assign(dim, 0.0);
  if (dim == 0) return;
  bool clamped = false;
  for (int d : graph.Degrees()) {
    auto bin = static_cast<std::size_t>(d);
    if (bin >= dim) {
      bin = dim - 1;
      clamped = true;
    }
    out[bin] += 1.0;
  }
  static std::atomic<bool> warned{false};
  if (clamped && !warned.exchange(true)) {
    std::clog << "warning: degree beyond the model's " << dim
              << " feature bins folded into the top bin\n";
  }
}

}  // namespace

DegreeHistogram ComputeDegreeHistogram(const GraphBits& graph) {
  DegreeHistogram h;
  h.counts.assign(static_cast<std::size_t>(graph.num_nodes()), 0);
  for (int d : graph.Degrees()) ++h.counts[static_cast<std::size_t>(d)];
  return h;
}

std::int64_t Kernel(const GraphBits& g1, const GraphBits& g2) {
  const auto h1 = ComputeDegreeHistogram(g1);
  const auto h2 = ComputeDegreeHistogram(g2);
  const std::size_t common = std::min(h1.counts.size(), h2.counts.size());
  std::int64_t sum = 0;
  for (std::size_t d = 0; d < common; ++d) sum += h1.counts[d] * h2.counts[d];
  return sum;
}

double LinearModel::Score(const GraphBits& graph) const {
  std::vector<double> x;
  Features(graph, weights.size(), x);
  return std::inner_product(x.begin(), x.end(), weights.begin(), bias);
}

Label LinearModel::Predict(const GraphBits& graph) const {
  return Score(graph) > 0.0 ? positive_label : negative_label;
}

Label Predict(const LinearModel& model, const GraphBits& graph) {
  return model.Predict(graph);
}

double Accuracy(const LinearModel& model, std::span<const LabeledGraph> data) {
  if (data.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& ex : data) {
    if (model.Predict(ex.graph) == ex.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

TrainResult Train(std::span<const LabeledGraph> data,
                  const TrainOptions& options) {
  std::set<Label> labels;
  int max_nodes = 0;
  for (const auto& ex : data) {
    labels.insert(ex.label);
    max_nodes = std::max(max_nodes, ex.graph.num_nodes());
  }
  if (labels.size() != 2) {
    ThrowInvalid("training needs exactly two labels, got " +
                 std::to_string(labels.size()));
  }
  if (options.epochs < 1 || !(options.learning_rate > 0.0) ||
      options.regularization < 0.0) {
    ThrowInvalid("bad training hyperparameters");
  }

  LinearModel model;
  model.negative_label = *labels.begin();
  model.positive_label = *labels.rbegin();
  const auto dim = static_cast<std::size_t>(max_nodes);
  model.weights.assign(dim, 0.0);

  std::vector<std::vector<double>> features(data.size());
  std::vector<double> targets(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    Features(data[i].graph, dim, features[i]);
    targets[i] = data[i].label == model.positive_label ? 1.0 : -1.0;
  }

  std::mt19937_64 rng(internal::Mix64(options.seed));
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  const double lambda = options.regularization;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double eta = options.learning_rate / (1.0 + epoch);
    for (std::size_t i : order) {
      const auto& x = features[i];
      const double y = targets[i];
      const double score =
          std::inner_product(x.begin(), x.end(), model.weights.begin(),
                             model.bias);
      for (auto& w : model.weights) w *= 1.0 - eta * lambda;
      if (y * score < 1.0) {
        for (std::size_t d = 0; d < dim; ++d) model.weights[d] += eta * y * x[d];
        model.bias += eta * y;
      }
    }
  }

  TrainResult result;
  result.model = std::move(model);
  result.train_accuracy = Accuracy(result.model, data);
  return result;
}

std::string ModelToJson(const LinearModel& model) {
  nlohmann::ordered_json j;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["labels"] = {model.negative_label, model.positive_label};
  j["feature_dim"] = model.feature_dim();
  return j.dump(2) + "\n";
}

LinearModel ModelFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    LinearModel model;
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    const auto labels = j.at("labels").get<std::vector<Label>>();
    if (labels.size() != 2 || labels[0] == labels[1]) {
      ThrowInvalid("model needs two distinct labels");
    }
    model.negative_label = labels[0];
    model.positive_label = labels[1];
    if (j.at("feature_dim").get<int>() != model.feature_dim()) {
      ThrowInvalid("feature_dim does not match the weight vector");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    ThrowInvalid(std::string("malformed model: ") + e.what());
  }
}

void WriteModelFile(const std::filesystem::path& path,
                    const LinearModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << ModelToJson(model);
}

LinearModel ReadModelFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ModelFromJson(buffer.str());
}

std::string ModelHash(const LinearModel& model) {
  return internal::Hex64(internal::Fnv1a(ModelToJson(model)));
}

}  // namespace structcert
