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

#include "structcert/certify.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "internal.h"
#include "structcert/error.h"

namespace structcert {
namespace {

constexpr double kFeasibilityTolerance = 1e-9;
constexpr std::uint64_t kPlanCellCap = 40'000'000;
const double kLogMinNormal = std::log(DBL_MIN);

double LogBinomialPmf(int k, int n, double p) {
  if (p == 0.0) {
    return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0) + k * std::log(p) + (n - k) * std::log1p(-p);
}

double ExpClamped(double log_value) {
  return log_value < kLogMinNormal ? 0.0 : std::exp(log_value);
}

// log((1 - p) / p); zero-probability regions only ever appear with R_i = 0.
double LogOdds(double p) { return p == 0.0 ? 0.0 : std::log1p(-p) - std::log(p); }

void CheckShape(const RadiusVector& r, const NoiseSpec& noise) {
  if (r.size() != static_cast<std::size_t>(noise.num_regions())) {
    ThrowInvalid("radius has " + std::to_string(r.size()) +
                 " entries, noise has " + std::to_string(noise.num_regions()));
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0) ThrowInvalid("radius entries must be non-negative");
    if (r[i] > 0 && noise.prob(static_cast<int>(i)) == 0.0) {
      ThrowInvalid("region " + std::to_string(i) +
                   " has zero noise and cannot take a positive radius");
    }
  }
}

// Per-region lookup tables indexed by Q_i.
struct RegionTables {
  std::vector<std::vector<double>> log_ratio;
  std::vector<std::vector<double>> log_mass;
  std::vector<std::vector<double>> log_shifted;

  RegionTables(const RadiusVector& r, const NoiseSpec& noise) {
    const std::size_t c = r.size();
    log_ratio.resize(c);
    log_mass.resize(c);
    log_shifted.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
      const int ri = r[i];
      const double p = noise.prob(static_cast<int>(i));
      const double w = LogOdds(p);
      for (int q = 0; q <= ri; ++q) {
        log_ratio[i].push_back((ri - 2 * q) * w);
        log_mass[i].push_back(LogBinomialPmf(ri - q, ri, p));
        log_shifted[i].push_back(LogBinomialPmf(q, ri, p));
      }
    }
  }
};

// Visits every Q with 0 <= Q <= r in lexicographic order (last index
// fastest).
template <typename Fn>
void ForEachQ(const RadiusVector& r, Fn&& fn) {
  const std::size_t c = r.size();
  std::vector<int> q(c, 0);
  for (;;) {
    fn(static_cast<const std::vector<int>&>(q));
    std::size_t i = c;
    while (i > 0) {
      --i;
      if (q[i] < r[i]) {
        ++q[i];
        break;
      }
      q[i] = 0;
      if (i == 0) return;
    }
    if (c == 0) return;
  }
}

void CheckCellCap(const RadiusVector& r, std::uint64_t cap) {
  const std::uint64_t t = r.NumCells();
  if (t > cap) {
    ThrowResourceLimit("radius needs " + std::to_string(t) +
                       " likelihood-ratio cells, cap is " +
                       std::to_string(cap));
  }
}

// Sorted (ascending ratio) mass / shifted-mass arrays for one radius.
struct Spectrum {
  std::vector<double> mass;
  std::vector<double> shifted;
};

void BuildSpectrum(const RadiusVector& r, const NoiseSpec& noise,
                   std::uint64_t cap, Spectrum& out) {
  CheckCellCap(r, cap);
  const RegionTables tables(r, noise);
  const std::size_t t = static_cast<std::size_t>(r.NumCells());
  std::vector<double> log_ratio;
  std::vector<double> mass;
  std::vector<double> shifted;
  log_ratio.reserve(t);
  mass.reserve(t);
  shifted.reserve(t);
  ForEachQ(r, [&](const std::vector<int>& q) {
    double lr = 0.0;
    double lm = 0.0;
    double ls = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto qi = static_cast<std::size_t>(q[i]);
      lr += tables.log_ratio[i][qi];
      lm += tables.log_mass[i][qi];
      ls += tables.log_shifted[i][qi];
    }
    log_ratio.push_back(lr);
    mass.push_back(ExpClamped(lm));
    shifted.push_back(ExpClamped(ls));
  });
  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return log_ratio[a] < log_ratio[b];
                   });
  out.mass.resize(t);
  out.shifted.resize(t);
  for (std::size_t k = 0; k < t; ++k) {
    out.mass[k] = mass[order[k]];
    out.shifted[k] = shifted[order[k]];
  }
}

double ClampTarget(double p_target, std::span<const double> mass) {
  internal::CompensatedSum total;
  for (double m : mass) total.Add(m);
  const double sum = total.value();
  if (std::isnan(p_target) || p_target < -kFeasibilityTolerance ||
      p_target > sum + kFeasibilityTolerance) {
    throw Error(ErrorKind::kInfeasible,
                "target probability " + std::to_string(p_target) +
                    " outside [0, " + std::to_string(sum) + "]");
  }
  return std::clamp(p_target, 0.0, sum);
}

// Greedy fill of the box-constrained LP over cells sorted by ascending ratio.
// `ascending` fills from the smallest ratio (minimisation), otherwise from
// the largest (maximisation). Zero-mass cells cost nothing: the minimiser
// leaves them out and the maximiser takes all of them.
double GreedyFill(double p_target, std::span<const double> mass,
                  std::span<const double> shifted, bool ascending) {
  const double target = ClampTarget(p_target, mass);
  const std::size_t t = mass.size();
  internal::CompensatedSum objective;
  internal::CompensatedSum used;
  if (!ascending) {
    for (std::size_t k = 0; k < t; ++k) {
      if (mass[k] == 0.0) objective.Add(shifted[k]);
    }
  }
  for (std::size_t step = 0; step < t; ++step) {
    const std::size_t k = ascending ? step : t - 1 - step;
    if (mass[k] == 0.0) continue;
    const double remaining = target - used.value();
    if (remaining <= 0.0) break;
    if (mass[k] <= remaining) {
      objective.Add(shifted[k]);
      used.Add(mass[k]);
    } else {
      objective.Add(shifted[k] * (remaining / mass[k]));
      break;
    }
  }
  return objective.value();
}

void SplitCells(std::span<const RegionCell> cells, std::vector<double>& mass,
                std::vector<double>& shifted) {
  mass.resize(cells.size());
  shifted.resize(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k > 0 && cells[k].log_ratio < cells[k - 1].log_ratio) {
      ThrowInvalid("cells must be sorted by ascending likelihood ratio");
    }
    mass[k] = cells[k].mass;
    shifted[k] = cells[k].shifted_mass;
  }
}

double SpectrumMargin(const ConfidenceBounds& bounds,
                      std::span<const double> mass,
                      std::span<const double> shifted) {
  return GreedyFill(bounds.p_a_lower, mass, shifted, true) -
         GreedyFill(bounds.p_b_upper, mass, shifted, false);
}

void RequireDecision(const ConfidenceBounds& bounds) {
  if (bounds.abstain) ThrowInvalid("margin is undefined for abstaining bounds");
}

std::uint64_t GridPoints(const RadiusVector& r_max, std::uint64_t cap) {
  std::uint64_t points = 1;
  for (int v : r_max.values()) {
    points *= static_cast<std::uint64_t>(v) + 1;
    if (points > cap) {
      ThrowResourceLimit("certification grid exceeds " + std::to_string(cap) +
                         " points");
    }
  }
  return points;
}

// Fills certified flags from corner margins (already stored in the grid).
void Finalize(CertificationGrid& grid, const EngineOptions& options) {
  const std::size_t n = grid.size();
  const std::size_t c = grid.r_max().size();
  if (!options.monotone_pruning) {
    // Worst margin over the box 0 <= Q <= R: running minimum along each axis.
    std::vector<double> worst(n);
    for (std::size_t idx = 0; idx < n; ++idx) worst[idx] = grid.margin(idx);
    for (std::size_t d = 0; d < c; ++d) {
      const std::size_t stride = grid.stride(d);
      const auto extent = static_cast<std::size_t>(grid.r_max()[d]) + 1;
      for (std::size_t idx = 0; idx < n; ++idx) {
        if ((idx / stride) % extent != 0) {
          worst[idx] = std::min(worst[idx], worst[idx - stride]);
        }
      }
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
      grid.set(idx, worst[idx] > options.strictness, worst[idx]);
    }
  } else {
    for (std::size_t idx = 0; idx < n; ++idx) {
      grid.set(idx, grid.margin(idx) > options.strictness, grid.margin(idx));
    }
  }
  grid.ComputeParetoFront();
}

CertificationGrid AbstainGrid(const RadiusVector& r_max) {
  CertificationGrid grid(r_max);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    grid.set(idx, false, std::numeric_limits<double>::quiet_NaN());
  }
  grid.ComputeParetoFront();
  return grid;
}

}  // namespace

std::uint64_t RadiusVector::NumCells() const {
  std::uint64_t t = 1;
  for (int v : values_) {
    const auto f = static_cast<std::uint64_t>(v) + 1;
    if (t > std::numeric_limits<std::uint64_t>::max() / f) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    t *= f;
  }
  return t;
}

void ValidateRadius(const RadiusVector& r, const NoiseSpec& noise,
                    const NodePairPartition& partition) {
  if (partition.num_regions() != noise.num_regions()) {
    ThrowInvalid("partition and noise disagree on the number of regions");
  }
  CheckShape(r, noise);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto size = partition.region_size(static_cast<int>(i));
    if (static_cast<std::size_t>(r[i]) > size) {
      ThrowInvalid("radius " + std::to_string(r[i]) + " exceeds region " +
                   std::to_string(i) + " size " + std::to_string(size));
    }
  }
}

std::vector<RegionCell> EnumerateCells(const RadiusVector& r,
                                       const NoiseSpec& noise,
                                       std::uint64_t cell_cap) {
  CheckShape(r, noise);
  CheckCellCap(r, cell_cap);
  const RegionTables tables(r, noise);
  std::vector<RegionCell> cells;
  cells.reserve(static_cast<std::size_t>(r.NumCells()));
  ForEachQ(r, [&](const std::vector<int>& q) {
    RegionCell cell;
    cell.q = q;
    double lm = 0.0;
    double ls = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto qi = static_cast<std::size_t>(q[i]);
      cell.log_ratio += tables.log_ratio[i][qi];
      lm += tables.log_mass[i][qi];
      ls += tables.log_shifted[i][qi];
    }
    cell.mass = ExpClamped(lm);
    cell.shifted_mass = ExpClamped(ls);
    cells.push_back(std::move(cell));
  });
  std::stable_sort(cells.begin(), cells.end(),
                   [](const RegionCell& a, const RegionCell& b) {
                     return a.log_ratio < b.log_ratio;
                   });
  return cells;
}

double RegionMass(std::span<const int> q, const RadiusVector& r,
                  const NoiseSpec& noise) {
  CheckShape(r, noise);
  if (q.size() != r.size()) ThrowInvalid("Q and R differ in length");
  double log_mass = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < 0 || q[i] > r[i]) {
      ThrowInvalid("Q must satisfy 0 <= Q <= R elementwise");
    }
    log_mass +=
        LogBinomialPmf(r[i] - q[i], r[i], noise.prob(static_cast<int>(i)));
  }
  return ExpClamped(log_mass);
}

double GreedyLpLower(double p_target, std::span<const RegionCell> cells) {
  std::vector<double> mass;
  std::vector<double> shifted;
  SplitCells(cells, mass, shifted);
  return GreedyFill(p_target, mass, shifted, true);
}

double GreedyLpUpper(double p_target, std::span<const RegionCell> cells) {
  std::vector<double> mass;
  std::vector<double> shifted;
  SplitCells(cells, mass, shifted);
  return GreedyFill(p_target, mass, shifted, false);
}

double Margin(const ConfidenceBounds& bounds, const RadiusVector& r,
              const NoiseSpec& noise) {
  RequireDecision(bounds);
  CheckShape(r, noise);
  Spectrum spectrum;
  BuildSpectrum(r, noise, kDefaultCellCap, spectrum);
  return SpectrumMargin(bounds, spectrum.mass, spectrum.shifted);
}

bool Certify(const ConfidenceBounds& bounds, const RadiusVector& r,
             const NoiseSpec& noise, const NodePairPartition& partition,
             const EngineOptions& options) {
  ValidateRadius(r, noise, partition);
  CheckCellCap(r, options.cell_cap);
  if (bounds.abstain) return false;
  Spectrum spectrum;
  if (options.monotone_pruning) {
    BuildSpectrum(r, noise, options.cell_cap, spectrum);
    return SpectrumMargin(bounds, spectrum.mass, spectrum.shifted) >
           options.strictness;
  }
  bool ok = true;
  ForEachQ(r, [&](const std::vector<int>& q) {
    if (!ok) return;
    BuildSpectrum(RadiusVector(q), noise, options.cell_cap, spectrum);
    ok = SpectrumMargin(bounds, spectrum.mass, spectrum.shifted) >
         options.strictness;
  });
  return ok;
}

CertificationGrid::CertificationGrid(RadiusVector r_max)
    : r_max_(std::move(r_max)) {
  const std::size_t c = r_max_.size();
  strides_.assign(c, 1);
  std::size_t total = 1;
  for (std::size_t d = c; d > 0; --d) {
    strides_[d - 1] = total;
    total *= static_cast<std::size_t>(r_max_[d - 1]) + 1;
  }
  certified_.assign(total, 0);
  margin_.assign(total, std::numeric_limits<double>::quiet_NaN());
}

std::size_t CertificationGrid::IndexOf(const RadiusVector& r) const {
  if (r.size() != r_max_.size()) ThrowInvalid("radius dimension mismatch");
  std::size_t idx = 0;
  for (std::size_t d = 0; d < r.size(); ++d) {
    if (r[d] < 0 || r[d] > r_max_[d]) ThrowInvalid("radius outside grid");
    idx += static_cast<std::size_t>(r[d]) * strides_[d];
  }
  return idx;
}

RadiusVector CertificationGrid::RadiusAt(std::size_t index) const {
  std::vector<int> r(r_max_.size());
  for (std::size_t d = 0; d < r.size(); ++d) {
    r[d] = static_cast<int>(index / strides_[d]);
    index %= strides_[d];
  }
  return RadiusVector(std::move(r));
}

std::size_t CertificationGrid::CertifiedCount() const {
  return static_cast<std::size_t>(
      std::count(certified_.begin(), certified_.end(), 1));
}

void CertificationGrid::ComputeParetoFront() {
  pareto_front_.clear();
  const std::size_t n = certified_.size();
  const std::size_t c = r_max_.size();
  // reach[idx]: some certified R' >= R(idx) exists.
  std::vector<std::uint8_t> reach = certified_;
  for (std::size_t d = 0; d < c; ++d) {
    const auto extent = static_cast<std::size_t>(r_max_[d]) + 1;
    for (std::size_t idx = n; idx > 0; --idx) {
      const std::size_t i = idx - 1;
      if ((i / strides_[d]) % extent + 1 < extent) {
        reach[i] |= reach[i + strides_[d]];
      }
    }
  }
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (!certified_[idx]) continue;
    bool maximal = true;
    for (std::size_t d = 0; d < c && maximal; ++d) {
      const auto extent = static_cast<std::size_t>(r_max_[d]) + 1;
      if ((idx / strides_[d]) % extent + 1 < extent &&
          reach[idx + strides_[d]]) {
        maximal = false;
      }
    }
    if (maximal) pareto_front_.push_back(RadiusAt(idx));
  }
}

CellPlan::CellPlan(const RadiusVector& r_max, const NoiseSpec& noise,
                   const EngineOptions& options)
    : r_max_(r_max), noise_(noise) {
  CheckShape(r_max, noise);
  const std::uint64_t points = GridPoints(r_max, options.grid_cap);
  CertificationGrid layout(r_max);
  offsets_.reserve(static_cast<std::size_t>(points) + 1);
  offsets_.push_back(0);
  Spectrum spectrum;
  for (std::size_t idx = 0; idx < layout.size(); ++idx) {
    BuildSpectrum(layout.RadiusAt(idx), noise, options.cell_cap, spectrum);
    if (mass_.size() + spectrum.mass.size() > kPlanCellCap) {
      ThrowResourceLimit("cell plan exceeds " + std::to_string(kPlanCellCap) +
                         " cells");
    }
    mass_.insert(mass_.end(), spectrum.mass.begin(), spectrum.mass.end());
    shifted_.insert(shifted_.end(), spectrum.shifted.begin(),
                    spectrum.shifted.end());
    offsets_.push_back(mass_.size());
  }
}

double CellPlan::MarginAt(std::size_t index,
                          const ConfidenceBounds& bounds) const {
  RequireDecision(bounds);
  const std::size_t begin = offsets_[index];
  const std::size_t len = offsets_[index + 1] - begin;
  return SpectrumMargin(bounds, std::span(mass_).subspan(begin, len),
                        std::span(shifted_).subspan(begin, len));
}

CertificationGrid ComputeCertificationGrid(const ConfidenceBounds& bounds,
                                           const RadiusVector& r_max,
                                           const NoiseSpec& noise,
                                           const NodePairPartition& partition,
                                           const EngineOptions& options) {
  ValidateRadius(r_max, noise, partition);
  GridPoints(r_max, options.grid_cap);
  if (bounds.abstain) return AbstainGrid(r_max);
  CertificationGrid grid(r_max);
  Spectrum spectrum;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    BuildSpectrum(grid.RadiusAt(idx), noise, options.cell_cap, spectrum);
    grid.set(idx, false,
             SpectrumMargin(bounds, spectrum.mass, spectrum.shifted));
  }
  Finalize(grid, options);
  return grid;
}

CertificationGrid ComputeCertificationGrid(const ConfidenceBounds& bounds,
                                           const CellPlan& plan,
                                           const EngineOptions& options) {
  if (bounds.abstain) return AbstainGrid(plan.r_max());
  CertificationGrid grid(plan.r_max());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    grid.set(idx, false, plan.MarginAt(idx, bounds));
  }
  Finalize(grid, options);
  return grid;
}

}  // namespace structcert
