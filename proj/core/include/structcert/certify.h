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

#ifndef STRUCTCERT_CERTIFY_H_
#define STRUCTCERT_CERTIFY_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "structcert/partition.h"
#include "structcert/smoothing.h"
#include "structcert/stats.h"

namespace structcert {

// Per-region flip budgets R_i.
class RadiusVector {
 public:
  RadiusVector() = default;
  explicit RadiusVector(std::vector<int> values) : values_(std::move(values)) {}
  RadiusVector(std::initializer_list<int> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  const std::vector<int>& values() const { return values_; }
  // Number of equal-likelihood-ratio cells, prod_i (R_i + 1).
  std::uint64_t NumCells() const;

  friend bool operator==(const RadiusVector&, const RadiusVector&) = default;
  friend auto operator<=>(const RadiusVector&, const RadiusVector&) = default;

 private:
  std::vector<int> values_;
};

// Throws kInvalidInput unless r has one entry per region, 0 <= R_i <= |C_i|,
// and R_i == 0 wherever p_i == 0.
void ValidateRadius(const RadiusVector& r, const NoiseSpec& noise,
                    const NodePairPartition& partition);

// One region R_Q of outcomes z sharing a likelihood ratio. q[i] counts the
// perturbed bits of region i on which z agrees with x.
struct RegionCell {
  std::vector<int> q;
  // log P(phi(x~) = z) / P(phi(x) = z) = sum_i (R_i - 2 Q_i) log((1-p_i)/p_i)
  double log_ratio = 0.0;
  // P(phi(x) in R_Q) = prod_i Bin(R_i - Q_i | R_i, p_i)
  double mass = 0.0;
  // P(phi(x~) in R_Q) = prod_i Bin(Q_i | R_i, p_i), i.e. ratio * mass.
  double shifted_mass = 0.0;
};

inline constexpr std::uint64_t kDefaultCellCap = 10'000'000;

// All prod_i (R_i + 1) cells, stably sorted by ascending log_ratio (cells are
// generated in lexicographic Q order). Throws kResourceLimit above `cell_cap`.
std::vector<RegionCell> EnumerateCells(const RadiusVector& r,
                                       const NoiseSpec& noise,
                                       std::uint64_t cell_cap = kDefaultCellCap);

// prod_i Bin(R_i - Q_i | R_i, p_i) through log-gamma; results below the
// smallest normal double are returned as 0.
double RegionMass(std::span<const int> q, const RadiusVector& r,
                  const NoiseSpec& noise);

// min h.shifted s.t. h.mass = p_target, 0 <= h <= 1, over cells sorted by
// ascending ratio. Throws kInfeasible if p_target is outside [0, sum mass]
// beyond a 1e-9 tolerance.
double GreedyLpLower(double p_target, std::span<const RegionCell> cells);
// max h.shifted s.t. h.mass = p_target, 0 <= h <= 1.
double GreedyLpUpper(double p_target, std::span<const RegionCell> cells);

// Phi = GreedyLpLower(p_A) - GreedyLpUpper(p_B) over the cells of r. Constant
// over every x~ at per-region distance r. Requires non-abstaining bounds.
double Margin(const ConfidenceBounds& bounds, const RadiusVector& r,
              const NoiseSpec& noise);

struct EngineOptions {
  // Evaluate only the corner Q = R instead of every Q <= R. Relies on the
  // (unproven) monotonicity of certification in R.
  bool monotone_pruning = false;
  // Certified iff margin > strictness.
  double strictness = 1e-12;
  std::uint64_t cell_cap = kDefaultCellCap;
  std::uint64_t grid_cap = 10'000'000;
};

// True iff the margin is > strictness at every Q <= r (or only at r when
// pruning). Abstaining bounds never certify.
bool Certify(const ConfidenceBounds& bounds, const RadiusVector& r,
             const NoiseSpec& noise, const NodePairPartition& partition,
             const EngineOptions& options = {});

// Certified/failed flags over the box 0 <= R <= r_max, laid out
// lexicographically (last region fastest).
class CertificationGrid {
 public:
  CertificationGrid() = default;
  explicit CertificationGrid(RadiusVector r_max);

  const RadiusVector& r_max() const { return r_max_; }
  std::size_t size() const { return certified_.size(); }
  std::size_t IndexOf(const RadiusVector& r) const;
  RadiusVector RadiusAt(std::size_t index) const;
  std::size_t stride(std::size_t region) const { return strides_[region]; }

  bool certified(std::size_t index) const { return certified_[index] != 0; }
  bool certified(const RadiusVector& r) const {
    return certified(IndexOf(r));
  }
  // Margin reported for each point: the worst margin over Q <= R, or the
  // corner margin alone when pruning. NaN for abstaining bounds.
  double margin(std::size_t index) const { return margin_[index]; }
  std::size_t CertifiedCount() const;

  // Certified radius vectors not dominated elementwise by another certified
  // vector, in lexicographic order.
  const std::vector<RadiusVector>& pareto_front() const {
    return pareto_front_;
  }

  void set(std::size_t index, bool certified, double margin) {
    certified_[index] = certified ? 1 : 0;
    margin_[index] = margin;
  }
  void ComputeParetoFront();

 private:
  RadiusVector r_max_;
  std::vector<std::size_t> strides_;
  std::vector<std::uint8_t> certified_;
  std::vector<double> margin_;
  std::vector<RadiusVector> pareto_front_;
};

// Sorted cell spectra for every R <= r_max, shared across many graphs that
// use the same noise: per graph only the two O(T) greedy passes remain.
class CellPlan {
 public:
  CellPlan(const RadiusVector& r_max, const NoiseSpec& noise,
           const EngineOptions& options = {});

  const RadiusVector& r_max() const { return r_max_; }
  const NoiseSpec& noise() const { return noise_; }
  std::size_t num_points() const { return offsets_.size() - 1; }

  // Corner margin at grid point `index`.
  double MarginAt(std::size_t index, const ConfidenceBounds& bounds) const;

 private:
  RadiusVector r_max_;
  NoiseSpec noise_;
  std::vector<std::size_t> offsets_;
  std::vector<double> mass_;
  std::vector<double> shifted_;
};

CertificationGrid ComputeCertificationGrid(const ConfidenceBounds& bounds,
                                           const RadiusVector& r_max,
                                           const NoiseSpec& noise,
                                           const NodePairPartition& partition,
                                           const EngineOptions& options = {});

// Same grid from a prebuilt plan. The caller is responsible for r_max being
// valid against the partition.
CertificationGrid ComputeCertificationGrid(const ConfidenceBounds& bounds,
                                           const CellPlan& plan,
                                           const EngineOptions& options = {});

}  // namespace structcert

#endif  // STRUCTCERT_CERTIFY_H_
