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

#ifndef STRUCTCERT_ORACLE_H_
#define STRUCTCERT_ORACLE_H_

// Brute-force references for tiny instances. Nothing here calls into the
// certification engine; only data types are shared.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "structcert/certify.h"
#include "structcert/graph.h"
#include "structcert/partition.h"
#include "structcert/smoothing.h"
#include "structcert/stats.h"

namespace structcert::oracle {

inline constexpr int kMaxNoisyBits = 20;
inline constexpr std::size_t kMaxCells = 12;
inline constexpr std::size_t kMaxBall = 100'000;

// Exact label probabilities of the smoothed classifier at x, summing over
// all 2^m flip patterns of the m noisy pairs. Throws kResourceLimit for
// m > kMaxNoisyBits.
std::map<Label, double> ExactSmoothedDistribution(
    const GraphBits& x, const LabelOracle& classify,
    const NodePairPartition& partition, const NoiseSpec& noise);

struct LpBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Optimum of min / max h.shifted s.t. h.mass = p_target, 0 <= h <= 1 by
// enumerating every basic feasible solution (a saturated subset plus at most
// one fractional cell). Cell order is irrelevant. Throws kResourceLimit for
// more than kMaxCells cells and kInfeasible for an unreachable target.
LpBounds ExhaustiveLp(double p_target, std::span<const RegionCell> cells);

struct WorstCaseResult {
  double min_margin = 0.0;
  GraphBits argmin;
  std::size_t ball_size = 0;
  // Per-region distance vector -> (min, max) exact margin over that sphere.
  std::map<std::vector<int>, std::pair<double, double>> sphere_margins;
  double max_sphere_spread = 0.0;
  // Whether the exact smoothed classifier at every x~ still prefers
  // bounds.top over every other label.
  bool prediction_preserved = true;
};

// Enumerates every x~ with at most R_i flips inside each region, and for
// each one builds the likelihood-ratio LP over individual outcomes z from
// per-bit probabilities. Throws kResourceLimit when the ball exceeds
// kMaxBall graphs or the noisy bits exceed kMaxNoisyBits.
WorstCaseResult ExhaustiveWorstCase(const GraphBits& x,
                                    const ConfidenceBounds& bounds,
                                    const RadiusVector& r,
                                    const NodePairPartition& partition,
                                    const NoiseSpec& noise,
                                    const LabelOracle& classify);

}  // namespace structcert::oracle

#endif  // STRUCTCERT_ORACLE_H_
