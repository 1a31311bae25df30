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

#ifndef STRUCTCERT_STATS_H_
#define STRUCTCERT_STATS_H_

#include <cstdint>

#include "structcert/smoothing.h"

namespace structcert {

// One-sided Clopper-Pearson bounds on a binomial success probability from k
// successes in n trials. The lower bound is the (1 - confidence) quantile of
// Beta(k, n - k + 1), 0 when k == 0; the upper bound is the confidence
// quantile of Beta(k + 1, n - k), 1 when k == n. Quantiles are found by
// bisection on the regularized incomplete beta function to 1e-12.
double ClopperPearsonLower(std::int64_t k, std::int64_t n, double confidence);
double ClopperPearsonUpper(std::int64_t k, std::int64_t n, double confidence);

struct ConfidenceBounds {
  double p_a_lower = 0.0;
  double p_b_upper = 1.0;
  double confidence = 0.99;
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
  std::int64_t n = 0;
  Label top = kNoLabel;
  Label runner_up = kNoLabel;
  // No certificate (and no prediction) when p_a_lower <= p_b_upper.
  bool abstain = true;
};

// p_b_upper is clamped to 1 - p_a_lower; both bounds use the same sample.
ConfidenceBounds BoundTopTwo(const LabelDistribution& dist, double confidence);

// Bounds given directly as probabilities (exact smoothing, tests, tables).
ConfidenceBounds BoundsFromProbabilities(double p_a_lower, double p_b_upper,
                                         Label top = 0, Label runner_up = 1);

}  // namespace structcert

#endif  // STRUCTCERT_STATS_H_
