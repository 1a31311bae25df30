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

#ifndef STRUCTCERT_GRAPH_H_
#define STRUCTCERT_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace structcert {

class NodePairPartition;

struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Number of unordered node pairs, n(n-1)/2.
constexpr std::size_t NumPairs(int num_nodes) {
  return num_nodes < 2 ? 0
                       : static_cast<std::size_t>(num_nodes) *
                             static_cast<std::size_t>(num_nodes - 1) / 2;
}

// Position of pair (u, v), u < v, in the upper-triangle row-major order:
// u*n - u(u+1)/2 + (v-u-1).
constexpr std::size_t PairIndex(int u, int v, int num_nodes) {
  const auto su = static_cast<std::size_t>(u);
  const auto sn = static_cast<std::size_t>(num_nodes);
  return su * sn - su * (su + 1) / 2 + static_cast<std::size_t>(v - u - 1);
}

// Inverse of PairIndex.
Edge PairAt(std::size_t index, int num_nodes);

// An undirected, unweighted graph stored as one byte (0 or 1) per node pair.
// Values are immutable once built; noisy copies are new objects.
class GraphBits {
 public:
  GraphBits() = default;
  // The empty graph on `num_nodes` nodes.
  explicit GraphBits(int num_nodes);
  // Throws kInvalidInput unless bits.size() == NumPairs(num_nodes) and every
  // entry is 0 or 1.
  GraphBits(int num_nodes, std::vector<std::uint8_t> bits);

  int num_nodes() const { return num_nodes_; }
  std::size_t num_pairs() const { return bits_.size(); }
  bool bit(std::size_t index) const { return bits_[index] != 0; }
  bool HasEdge(int u, int v) const;
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t EdgeCount() const;

  // Per-node degree, computed in one pass over the pair vector.
  std::vector<int> Degrees() const;

  // Copy with the given pair indices toggled.
  GraphBits WithFlipped(std::span<const std::size_t> indices) const;
  GraphBits Complement() const;

  friend bool operator==(const GraphBits&, const GraphBits&) = default;

 private:
  int num_nodes_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Throws kInvalidInput on self-loops or endpoints outside [0, num_nodes).
// Edge order and duplicates are ignored.
GraphBits EncodeGraph(std::span<const Edge> edges, int num_nodes);

// Sorted (u < v) edge list.
std::vector<Edge> DecodeGraph(const GraphBits& graph);

// Number of differing bits per region of `partition`, followed by one extra
// entry for the noise-free pairs.
std::vector<int> RegionDistances(const GraphBits& x, const GraphBits& x_tilde,
                                 const NodePairPartition& partition);

// Edge-list text format:
//   n <num_nodes>
//   u v
//   ...
// Zero-indexed, whitespace separated, '#' starts a comment.
GraphBits ReadEdgeList(std::istream& in);
void WriteEdgeList(std::ostream& out, const GraphBits& graph);
GraphBits ReadEdgeListFile(const std::filesystem::path& path);
void WriteEdgeListFile(const std::filesystem::path& path,
                       const GraphBits& graph);

}  // namespace structcert

#endif  // STRUCTCERT_GRAPH_H_
