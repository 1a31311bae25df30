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

#include "structcert/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "structcert/error.h"

namespace structcert::oracle {
namespace {

struct NoisyBits {
  std::vector<std::size_t> pairs;
  std::vector<double> probs;
  std::vector<int> regions;
};

NoisyBits CollectNoisyBits(const NodePairPartition& partition,
                           const NoiseSpec& noise) {
  if (partition.num_regions() != noise.num_regions()) {
    ThrowInvalid("partition and noise disagree on the number of regions");
  }
  NoisyBits bits;
  for (std::size_t k = 0; k < partition.num_pairs(); ++k) {
    const int region = partition.region(k);
    if (region == kNoiseFree || noise.prob(region) == 0.0) continue;
    bits.pairs.push_back(k);
    bits.probs.push_back(noise.prob(region));
    bits.regions.push_back(region);
  }
  if (bits.pairs.size() > static_cast<std::size_t>(kMaxNoisyBits)) {
    ThrowResourceLimit(std::to_string(bits.pairs.size()) +
                       " noisy pairs exceed the oracle limit of " +
                       std::to_string(kMaxNoisyBits));
  }
  return bits;
}

GraphBits ApplyMask(const GraphBits& x, const NoisyBits& noisy,
                    std::uint32_t mask) {
  auto bits = std::vector<std::uint8_t>(x.bits().begin(), x.bits().end());
  for (std::size_t j = 0; j < noisy.pairs.size(); ++j) {
    if (mask >> j & 1U) bits[noisy.pairs[j]] ^= 1;
  }
  return GraphBits(x.num_nodes(), std::move(bits));
}

// Probability that the noise turns the base point into base ^ flips, where
// `flips` is a mask over the noisy bits.
double PatternProbability(const NoisyBits& noisy, std::uint32_t flips) {
  double prob = 1.0;
  for (std::size_t j = 0; j < noisy.probs.size(); ++j) {
    prob *= (flips >> j & 1U) ? noisy.probs[j] : 1.0 - noisy.probs[j];
  }
  return prob;
}

struct Atom {
  double base = 0.0;     // P(phi(x) = z)
  double shifted = 0.0;  // P(phi(x~) = z)
};

// min (ascending) or max (descending) of sum h * shifted subject to
// sum h * base = target over individual outcomes.
double FillAtoms(std::vector<Atom> atoms, double target, bool minimise) {
  std::sort(atoms.begin(), atoms.end(), [&](const Atom& a, const Atom& b) {
    const double ra = a.shifted / a.base;
    const double rb = b.shifted / b.base;
    return minimise ? ra < rb : ra > rb;
  });
  double remaining = target;
  double value = 0.0;
  for (const Atom& a : atoms) {
    if (remaining <= 0.0) break;
    const double take = std::min(a.base, remaining);
    value += a.shifted * (take / a.base);
    remaining -= take;
  }
  return value;
}

}  // namespace

std::map<Label, double> ExactSmoothedDistribution(
    const GraphBits& x, const LabelOracle& classify,
    const NodePairPartition& partition, const NoiseSpec& noise) {
  if (x.num_nodes() != partition.num_nodes()) {
    ThrowInvalid("graph and partition node counts differ");
  }
  const NoisyBits noisy = CollectNoisyBits(partition, noise);
  const std::uint32_t patterns = 1U << noisy.pairs.size();
  std::map<Label, double> dist;
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    dist[classify(ApplyMask(x, noisy, mask))] +=
        PatternProbability(noisy, mask);
  }
  return dist;
}

LpBounds ExhaustiveLp(double p_target, std::span<const RegionCell> cells) {
  const std::size_t t = cells.size();
  if (t > kMaxCells) {
    ThrowResourceLimit("exhaustive LP supports at most " +
                       std::to_string(kMaxCells) + " cells");
  }
  constexpr double kTol = 1e-12;
  LpBounds best{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
  bool feasible = false;
  auto consider = [&](double value) {
    feasible = true;
    best.lower = std::min(best.lower, value);
    best.upper = std::max(best.upper, value);
  };
  for (std::uint32_t subset = 0; subset < (1U << t); ++subset) {
    double mass = 0.0;
    double objective = 0.0;
    for (std::size_t k = 0; k < t; ++k) {
      if (subset >> k & 1U) {
        mass += cells[k].mass;
        objective += cells[k].shifted_mass;
      }
    }
    if (std::abs(mass - p_target) <= kTol) consider(objective);
    for (std::size_t j = 0; j < t; ++j) {
      if (subset >> j & 1U || cells[j].mass <= 0.0) continue;
      const double h = (p_target - mass) / cells[j].mass;
      if (h < -kTol || h > 1.0 + kTol) continue;
      consider(objective + std::clamp(h, 0.0, 1.0) * cells[j].shifted_mass);
    }
  }
  if (!feasible) {
    throw Error(ErrorKind::kInfeasible,
                "target " + std::to_string(p_target) + " is not reachable");
  }
  return best;
}

WorstCaseResult ExhaustiveWorstCase(const GraphBits& x,
                                    const ConfidenceBounds& bounds,
                                    const RadiusVector& r,
                                    const NodePairPartition& partition,
                                    const NoiseSpec& noise,
                                    const LabelOracle& classify) {
  if (x.num_nodes() != partition.num_nodes()) {
    ThrowInvalid("graph and partition node counts differ");
  }
  if (r.size() != static_cast<std::size_t>(partition.num_regions())) {
    ThrowInvalid("radius needs one entry per region");
  }
  const NoisyBits noisy = CollectNoisyBits(partition, noise);
  const std::size_t m = noisy.pairs.size();
  const std::uint32_t patterns = 1U << m;
  const std::size_t c = r.size();

  // Ball members as flip masks over the noisy bits.
  std::vector<std::uint32_t> ball;
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    std::vector<int> per_region(c, 0);
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1U) ++per_region[static_cast<std::size_t>(noisy.regions[j])];
    }
    bool inside = true;
    for (std::size_t i = 0; i < c; ++i) inside &= per_region[i] <= r[i];
    if (inside) {
      ball.push_back(mask);
      if (ball.size() > kMaxBall) {
        ThrowResourceLimit("perturbation ball exceeds " +
                           std::to_string(kMaxBall) + " graphs");
      }
    }
  }

  std::vector<Label> label_of(patterns);
  std::vector<double> base_prob(patterns);
  for (std::uint32_t z = 0; z < patterns; ++z) {
    label_of[z] = classify(ApplyMask(x, noisy, z));
    base_prob[z] = PatternProbability(noisy, z);
  }

  WorstCaseResult result;
  result.ball_size = ball.size();
  result.min_margin = std::numeric_limits<double>::infinity();
  std::vector<Atom> atoms(patterns);
  for (std::uint32_t flips : ball) {
    std::map<Label, double> smoothed;
    for (std::uint32_t z = 0; z < patterns; ++z) {
      // phi(x~) = z iff the noise pattern is z ^ flips relative to x~.
      atoms[z] = {base_prob[z], PatternProbability(noisy, z ^ flips)};
      smoothed[label_of[z]] += atoms[z].shifted;
    }
    const double margin = FillAtoms(atoms, bounds.p_a_lower, true) -
                          FillAtoms(atoms, bounds.p_b_upper, false);

    std::vector<int> distance(c, 0);
    for (std::size_t j = 0; j < m; ++j) {
      if (flips >> j & 1U) ++distance[static_cast<std::size_t>(noisy.regions[j])];
    }
    auto [it, inserted] =
        result.sphere_margins.try_emplace(distance, margin, margin);
    if (!inserted) {
      it->second.first = std::min(it->second.first, margin);
      it->second.second = std::max(it->second.second, margin);
    }
    if (margin < result.min_margin) {
      result.min_margin = margin;
      result.argmin = ApplyMask(x, noisy, flips);
    }

    const double top = smoothed[bounds.top];
    for (const auto& [label, p] : smoothed) {
      if (label != bounds.top && p >= top) result.prediction_preserved = false;
    }
  }
  for (const auto& [distance, range] : result.sphere_margins) {
    result.max_sphere_spread =
        std::max(result.max_sphere_spread, range.second - range.first);
  }
  return result;
}

}  // namespace structcert::oracle
