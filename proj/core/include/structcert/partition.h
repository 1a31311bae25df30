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

#ifndef STRUCTCERT_PARTITION_H_
#define STRUCTCERT_PARTITION_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "structcert/graph.h"

namespace structcert {

// Region id of node pairs that never receive noise (and therefore can never
// be certified against).
inline constexpr int kNoiseFree = -1;

// Assignment of every node pair to exactly one region 0..C-1 or kNoiseFree.
class NodePairPartition {
 public:
  // Throws kInvalidInput if num_regions < 1, region_of has the wrong length,
  // or any id is outside {kNoiseFree, 0..num_regions-1}. Empty regions are
  // allowed (the sparsity-aware split of a complete graph has one).
  NodePairPartition(int num_nodes, std::vector<int> region_of,
                    int num_regions);

  int num_nodes() const { return num_nodes_; }
  int num_regions() const { return static_cast<int>(members_.size()); }
  std::size_t num_pairs() const { return region_of_.size(); }
  int region(std::size_t pair_index) const { return region_of_[pair_index]; }
  const std::vector<int>& region_of() const { return region_of_; }
  std::size_t region_size(int region) const {
    return members_[static_cast<std::size_t>(region)].size();
  }
  std::vector<int> region_sizes() const;
  std::size_t noise_free_count() const { return noise_free_.size(); }

  // Pair indices of `region`, ascending.
  const std::vector<std::size_t>& members(int region) const {
    return members_[static_cast<std::size_t>(region)];
  }
  const std::vector<std::size_t>& noise_free_members() const {
    return noise_free_;
  }

  friend bool operator==(const NodePairPartition& a,
                         const NodePairPartition& b) {
    return a.num_nodes_ == b.num_nodes_ && a.region_of_ == b.region_of_ &&
           a.members_.size() == b.members_.size();
  }

 private:
  int num_nodes_;
  std::vector<int> region_of_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> noise_free_;
};

// Builds a partition from (pair, region id) entries. Ids are arbitrary and
// are compacted to 0..C-1 in order of first appearance; unlisted pairs are
// noise-free. Throws kInvalidInput when a pair is given two different ids or
// when no pair is assigned at all.
NodePairPartition BuildPartition(
    int num_nodes, const std::vector<std::pair<Edge, int>>& assignment);

// Every pair in region 0.
NodePairPartition IsotropicPartition(int num_nodes);

// Nodes 0..n_motif-1 form the motif, the rest the random part. Motif-internal
// pairs go to region 0, random-internal pairs to region 1, and every cross
// pair (the bridge included) is noise-free.
NodePairPartition MotifPartition(int n_motif, int n_random);

// Region 0 holds the pairs that are edges of `x` (deletions), region 1 the
// non-edges (additions).
NodePairPartition SparsityAwarePartition(const GraphBits& x);

struct NamedPartition {
  NodePairPartition partition;
  // names[i] is the name of region i; ids follow alphabetical order.
  std::vector<std::string> names;
};

// Partition file: one `u v region_name` line per assigned pair, '#' comments.
NamedPartition ReadPartition(std::istream& in, int num_nodes);
void WritePartition(std::ostream& out, const NamedPartition& named);
NamedPartition ReadPartitionFile(const std::filesystem::path& path,
                                 int num_nodes);
void WritePartitionFile(const std::filesystem::path& path,
                        const NamedPartition& named);

}  // namespace structcert

#endif  // STRUCTCERT_PARTITION_H_
