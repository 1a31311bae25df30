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

#include "structcert/partition.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "structcert/error.h"

namespace structcert {

NodePairPartition::NodePairPartition(int num_nodes, std::vector<int> region_of,
                                     int num_regions)
    : num_nodes_(num_nodes), region_of_(std::move(region_of)) {
  if (num_regions < 1) ThrowInvalid("a partition needs at least one region");
  if (region_of_.size() != NumPairs(num_nodes)) {
    ThrowInvalid("partition covers " + std::to_string(region_of_.size()) +
                 " pairs, graph has " + std::to_string(NumPairs(num_nodes)));
  }
  members_.resize(static_cast<std::size_t>(num_regions));
  for (std::size_t k = 0; k < region_of_.size(); ++k) {
    const int id = region_of_[k];
    if (id == kNoiseFree) {
      noise_free_.push_back(k);
    } else if (id >= 0 && id < num_regions) {
      members_[static_cast<std::size_t>(id)].push_back(k);
    } else {
      ThrowInvalid("region id " + std::to_string(id) + " out of range");
    }
  }
}

std::vector<int> NodePairPartition::region_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(members_.size());
  for (const auto& m : members_) sizes.push_back(static_cast<int>(m.size()));
  return sizes;
}

NodePairPartition BuildPartition(
    int num_nodes, const std::vector<std::pair<Edge, int>>& assignment) {
  const std::size_t pairs = NumPairs(num_nodes);
  std::vector<int> raw(pairs, kNoiseFree);
  std::vector<bool> assigned(pairs, false);
  std::unordered_map<int, int> compact;
  for (const auto& [edge, id] : assignment) {
    if (edge.u == edge.v || edge.u < 0 || edge.v < 0 ||
        edge.u >= num_nodes || edge.v >= num_nodes) {
      ThrowInvalid("invalid node pair (" + std::to_string(edge.u) + "," +
                   std::to_string(edge.v) + ")");
    }
    const std::size_t k = PairIndex(std::min(edge.u, edge.v),
                                    std::max(edge.u, edge.v), num_nodes);
    auto [it, inserted] = compact.emplace(id, static_cast<int>(compact.size()));
    const int region = it->second;
    if (assigned[k] && raw[k] != region) {
      ThrowInvalid("node pair (" + std::to_string(edge.u) + "," +
                   std::to_string(edge.v) + ") assigned to two regions");
    }
    assigned[k] = true;
    raw[k] = region;
  }
  if (compact.empty()) ThrowInvalid("partition assigns no node pair");
  return NodePairPartition(num_nodes, std::move(raw),
                           static_cast<int>(compact.size()));
}

NodePairPartition IsotropicPartition(int num_nodes) {
  return NodePairPartition(num_nodes, std::vector<int>(NumPairs(num_nodes), 0),
                           1);
}

NodePairPartition MotifPartition(int n_motif, int n_random) {
  if (n_motif < 3) ThrowInvalid("motif needs at least 3 nodes");
  if (n_random < 2) {
    ThrowInvalid("random part needs at least 2 nodes for a non-empty region");
  }
  const int n = n_motif + n_random;
  std::vector<int> region_of(NumPairs(n), kNoiseFree);
  std::size_t k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      if (v < n_motif) {
        region_of[k] = 0;
      } else if (u >= n_motif) {
        region_of[k] = 1;
      }
    }
  }
  return NodePairPartition(n, std::move(region_of), 2);
}

NodePairPartition SparsityAwarePartition(const GraphBits& x) {
  std::vector<int> region_of(x.num_pairs());
  for (std::size_t k = 0; k < x.num_pairs(); ++k) {
    region_of[k] = x.bit(k) ? 0 : 1;
  }
  return NodePairPartition(x.num_nodes(), std::move(region_of), 2);
}

NamedPartition ReadPartition(std::istream& in, int num_nodes) {
  std::vector<std::pair<Edge, std::string>> rows;
  std::set<std::string> names;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    Edge e;
    std::string name;
    if (!(fields >> e.u)) {
      std::string probe;
      std::istringstream again(line);
      if (again >> probe) {
        ThrowInvalid("partition line " + std::to_string(line_no) +
                     ": expected `u v region_name`");
      }
      continue;
    }
    if (!(fields >> e.v >> name)) {
      ThrowInvalid("partition line " + std::to_string(line_no) +
                   ": expected `u v region_name`");
    }
    rows.emplace_back(e, name);
    names.insert(name);
  }
  std::map<std::string, int> ids;
  for (const auto& name : names) ids.emplace(name, static_cast<int>(ids.size()));

  std::vector<int> region_of(NumPairs(num_nodes), kNoiseFree);
  std::vector<bool> seen(region_of.size(), false);
  for (const auto& [e, name] : rows) {
    if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= num_nodes ||
        e.v >= num_nodes) {
      ThrowInvalid("partition pair (" + std::to_string(e.u) + "," +
                   std::to_string(e.v) + ") invalid for " +
                   std::to_string(num_nodes) + " nodes");
    }
    const std::size_t k =
        PairIndex(std::min(e.u, e.v), std::max(e.u, e.v), num_nodes);
    const int id = ids.at(name);
    if (seen[k] && region_of[k] != id) {
      ThrowInvalid("partition pair (" + std::to_string(e.u) + "," +
                   std::to_string(e.v) + ") assigned to two regions");
    }
    seen[k] = true;
    region_of[k] = id;
  }
  if (ids.empty()) ThrowInvalid("partition file assigns no node pair");
  return {NodePairPartition(num_nodes, std::move(region_of),
                            static_cast<int>(ids.size())),
          std::vector<std::string>(names.begin(), names.end())};
}

void WritePartition(std::ostream& out, const NamedPartition& named) {
  const auto& p = named.partition;
  if (named.names.size() != static_cast<std::size_t>(p.num_regions())) {
    ThrowInvalid("one name per region required");
  }
  const int n = p.num_nodes();
  std::size_t k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      const int id = p.region(k);
      if (id == kNoiseFree) continue;
      out << u << ' ' << v << ' ' << named.names[static_cast<std::size_t>(id)]
          << '\n';
    }
  }
}

NamedPartition ReadPartitionFile(const std::filesystem::path& path,
                                 int num_nodes) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return ReadPartition(in, num_nodes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void WritePartitionFile(const std::filesystem::path& path,
                        const NamedPartition& named) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  WritePartition(out, named);
}

}  // namespace structcert
