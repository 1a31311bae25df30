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

#include "structcert/stats.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "structcert/error.h"

namespace structcert {
namespace {

constexpr double kTolerance = 1e-12;

void CheckArgs(std::int64_t k, std::int64_t n, double confidence) {
  if (n < 1 || k < 0 || k > n) {
    ThrowInvalid("need 0 <= k <= n and n >= 1, got k=" + std::to_string(k) +
                 ", n=" + std::to_string(n));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    ThrowInvalid("confidence must lie in (0, 1)");
  }
}

// Smallest x with I_x(a, b) >= target, by bisection. I_x is increasing in x.
double BetaQuantile(double a, double b, double target) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (boost::math::ibeta(a, b, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ClopperPearsonLower(std::int64_t k, std::int64_t n, double confidence) {
  CheckArgs(k, n, confidence);
  if (k == 0) return 0.0;
  return BetaQuantile(static_cast<double>(k), static_cast<double>(n - k + 1),
                      1.0 - confidence);
}

double ClopperPearsonUpper(std::int64_t k, std::int64_t n, double confidence) {
  CheckArgs(k, n, confidence);
  if (k == n) return 1.0;
  return BetaQuantile(static_cast<double>(k + 1), static_cast<double>(n - k),
                      confidence);
}

ConfidenceBounds BoundTopTwo(const LabelDistribution& dist, double confidence) {
  if (dist.total < 1) ThrowInvalid("label distribution is empty");
  ConfidenceBounds b;
  b.confidence = confidence;
  b.n = dist.total;
  b.top = dist.top;
  b.runner_up = dist.runner_up;
  b.n_a = dist.count(dist.top);
  b.n_b = dist.runner_up == kNoLabel ? 0 : dist.count(dist.runner_up);
  b.p_a_lower = ClopperPearsonLower(b.n_a, b.n, confidence);
  b.p_b_upper = std::min(1.0 - b.p_a_lower,
                         ClopperPearsonUpper(b.n_b, b.n, confidence));
  b.abstain = b.p_a_lower <= b.p_b_upper;
  return b;
}

ConfidenceBounds BoundsFromProbabilities(double p_a_lower, double p_b_upper,
                                         Label top, Label runner_up) {
  if (!(p_a_lower >= 0.0 && p_a_lower <= 1.0 && p_b_upper >= 0.0 &&
        p_b_upper <= 1.0)) {
    ThrowInvalid("probability bounds must lie in [0, 1]");
  }
  ConfidenceBounds b;
  b.p_a_lower = p_a_lower;
  b.p_b_upper = p_b_upper;
  b.top = top;
  b.runner_up = runner_up;
  b.abstain = p_a_lower <= p_b_upper;
  return b;
}

}  // namespace structcert
