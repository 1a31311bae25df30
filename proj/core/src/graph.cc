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

#include "structcert/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "structcert/error.h"
#include "structcert/partition.h"

namespace structcert {

Edge PairAt(std::size_t index, int num_nodes) {
  if (index >= NumPairs(num_nodes)) {
    ThrowInvalid("pair index " + std::to_string(index) + " out of range");
  }
  int u = 0;
  std::size_t row = static_cast<std::size_t>(num_nodes - 1);
  while (index >= row) {
    index -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + static_cast<int>(index)};
}

GraphBits::GraphBits(int num_nodes) : num_nodes_(num_nodes) {
  if (num_nodes < 1) ThrowInvalid("graph needs at least one node");
  bits_.assign(NumPairs(num_nodes), 0);
}

GraphBits::GraphBits(int num_nodes, std::vector<std::uint8_t> bits)
    : num_nodes_(num_nodes), bits_(std::move(bits)) {
  if (num_nodes < 1) ThrowInvalid("graph needs at least one node");
  if (bits_.size() != NumPairs(num_nodes)) {
    ThrowInvalid("bit vector has length " + std::to_string(bits_.size()) +
                 ", expected " + std::to_string(NumPairs(num_nodes)));
  }
  for (std::uint8_t b : bits_) {
    if (b > 1) ThrowInvalid("graph bits must be 0 or 1");
  }
}

bool GraphBits::HasEdge(int u, int v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return bit(PairIndex(u, v, num_nodes_));
}

std::size_t GraphBits::EdgeCount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<int> GraphBits::Degrees() const {
  std::vector<int> degree(static_cast<std::size_t>(num_nodes_), 0);
  std::size_t k = 0;
  for (int u = 0; u < num_nodes_; ++u) {
    for (int v = u + 1; v < num_nodes_; ++v, ++k) {
      if (bits_[k]) {
        ++degree[static_cast<std::size_t>(u)];
        ++degree[static_cast<std::size_t>(v)];
      }
    }
  }
  return degree;
}

GraphBits GraphBits::WithFlipped(std::span<const std::size_t> indices) const {
  std::vector<std::uint8_t> bits = bits_;
  for (std::size_t k : indices) {
    if (k >= bits.size()) ThrowInvalid("flip index out of range");
    bits[k] ^= 1;
  }
  return GraphBits(num_nodes_, std::move(bits));
}

GraphBits GraphBits::Complement() const {
  std::vector<std::uint8_t> bits = bits_;
  for (auto& b : bits) b ^= 1;
  return GraphBits(num_nodes_, std::move(bits));
}

GraphBits EncodeGraph(std::span<const Edge> edges, int num_nodes) {
  GraphBits empty(num_nodes);
  std::vector<std::uint8_t> bits(empty.num_pairs(), 0);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes) {
      ThrowInvalid("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                   ") has an endpoint outside [0, " +
                   std::to_string(num_nodes) + ")");
    }
    if (e.u == e.v) {
      ThrowInvalid("self-loop at node " + std::to_string(e.u));
    }
    const int u = std::min(e.u, e.v);
    const int v = std::max(e.u, e.v);
    bits[PairIndex(u, v, num_nodes)] = 1;
  }
  return GraphBits(num_nodes, std::move(bits));
}

std::vector<Edge> DecodeGraph(const GraphBits& graph) {
  std::vector<Edge> edges;
  const int n = graph.num_nodes();
  std::size_t k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      if (graph.bit(k)) edges.push_back({u, v});
    }
  }
  return edges;
}

std::vector<int> RegionDistances(const GraphBits& x, const GraphBits& x_tilde,
                                 const NodePairPartition& partition) {
  if (x.num_nodes() != x_tilde.num_nodes() ||
      x.num_nodes() != partition.num_nodes()) {
    ThrowInvalid("region distances need graphs and partition of equal size");
  }
  const int c = partition.num_regions();
  std::vector<int> distances(static_cast<std::size_t>(c) + 1, 0);
  for (std::size_t k = 0; k < x.num_pairs(); ++k) {
    if (x.bit(k) == x_tilde.bit(k)) continue;
    const int region = partition.region(k);
    ++distances[region == kNoiseFree ? static_cast<std::size_t>(c)
                                     : static_cast<std::size_t>(region)];
  }
  return distances;
}

namespace {

std::string StripComment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

GraphBits ReadEdgeList(std::istream& in) {
  std::string line;
  int num_nodes = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(StripComment(line));
    std::string first;
    if (!(fields >> first)) continue;
    if (num_nodes < 0) {
      if (first != "n" || !(fields >> num_nodes) || num_nodes < 1) {
        ThrowInvalid("edge list line " + std::to_string(line_no) +
                     ": expected header `n <num_nodes>`");
      }
      continue;
    }
    Edge e;
    try {
      std::size_t used = 0;
      e.u = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      ThrowInvalid("edge list line " + std::to_string(line_no) +
                   ": bad node id `" + first + "`");
    }
    if (!(fields >> e.v)) {
      ThrowInvalid("edge list line " + std::to_string(line_no) +
                   ": expected `u v`");
    }
    std::string extra;
    if (fields >> extra) {
      ThrowInvalid("edge list line " + std::to_string(line_no) +
                   ": trailing field `" + extra + "`");
    }
    edges.push_back(e);
  }
  if (num_nodes < 0) ThrowInvalid("edge list is missing the `n` header");
  return EncodeGraph(edges, num_nodes);
}

void WriteEdgeList(std::ostream& out, const GraphBits& graph) {
  out << "n " << graph.num_nodes() << '\n';
  for (const Edge& e : DecodeGraph(graph)) out << e.u << ' ' << e.v << '\n';
}

GraphBits ReadEdgeListFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return ReadEdgeList(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void WriteEdgeListFile(const std::filesystem::path& path,
                       const GraphBits& graph) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  WriteEdgeList(out, graph);
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace structcert
