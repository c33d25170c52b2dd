// Copyright 2026 The dcqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "dcqe/montecarlo.hpp"
#include "dcqe/optics.hpp"

namespace dcqe::analysis {

using optics::Choice;
using optics::Detector;

/// Coincidence cell (environment detector, system detector).
struct Cell {
  Detector env;
  Detector sys;
};

/// Fixed cell order used by every table and file: p13, p23, p14, p24.
inline constexpr std::array<Cell, 4> kCells = {{
    {Detector::kD1, Detector::kD3},
    {Detector::kD2, Detector::kD3},
    {Detector::kD1, Detector::kD4},
    {Detector::kD2, Detector::kD4},
}};

/// Index of (env, sys) in kCells.
std::size_t cell_index(Detector env, Detector sys);

using CellValues = std::array<double, 4>;

/// Closed-form coincidence probabilities.
struct AnalyticProbTable {
  double theta = 0.0;
  double alpha = 0.0;
  Choice choice = Choice::kLinear;
  CellValues p{};

  double at(Detector env, Detector sys) const { return p[cell_index(env, sys)]; }
};

/// choice 1: p13 = p24 = sin^2(alpha)/2, p23 = p14 = cos^2(alpha)/2 with
/// alpha = theta/2 + pi/4. choice 0: every cell 1/4.
AnalyticProbTable analytic_table(double theta, Choice choice);

/// Marginal probability of a system detector (D3 or D4) from cell values.
double system_marginal(const CellValues& p, Detector sys);

/// Conditioned fringe p(env and sys) / p(sys). Returns nullopt if p(sys) is 0.
std::optional<double> conditioned(const CellValues& p, Detector env, Detector sys);

/// Joint probabilities computed from the pipeline state by projection.
CellValues state_probabilities(double theta, Choice choice);

class CoincidenceTable {
 public:
  void add(Detector env, Detector sys);
  CoincidenceTable& merge(const CoincidenceTable& other);

  std::uint64_t count(Detector env, Detector sys) const { return counts_[cell_index(env, sys)]; }
  const std::array<std::uint64_t, 4>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }

  /// Empirical frequencies; nullopt for an empty table.
  std::optional<CellValues> frequencies() const;

  bool operator==(const CoincidenceTable&) const = default;

 private:
  std::array<std::uint64_t, 4> counts_{};
  std::uint64_t total_ = 0;
};

/// Counts partitioned by the choice bit.
struct StratifiedTally {
  std::array<CoincidenceTable, 2> by_choice;

  const CoincidenceTable& operator[](Choice c) const { return by_choice[optics::to_int(c)]; }
  StratifiedTally& merge(const StratifiedTally& other);
  bool operator==(const StratifiedTally&) const = default;
};

StratifiedTally tally(std::span<const montecarlo::TrialRecord> records);

struct SweepPoint {
  double theta = 0.0;
  double value = 0.0;
};

/// (max - min) / (max + min) over a sweep spanning a full 2*pi period.
/// Throws ConfigError for shorter sweeps and UndefinedVisibilityError when
/// max + min == 0.
double visibility(std::span<const SweepPoint> sweep);

struct CellComparison {
  Cell cell;
  std::uint64_t count = 0;
  double expected = 0.0;
  double observed = 0.0;
  double z = 0.0;
  /// Expected probability is 0 (or 1): verdict is by exact count.
  bool exact = false;
  bool pass = true;
};

struct Comparison {
  std::array<CellComparison, 4> cells;
  double sigma_threshold = 0.0;
  bool pass = true;
  double max_abs_z = 0.0;
};

/// Per-cell binomial z-scores z = (f - p) / sqrt(p(1-p)/N). Cells with p at
/// 0 or 1 pass only on an exact count. Throws ConfigError on an empty table.
Comparison compare(const CoincidenceTable& empirical, const AnalyticProbTable& analytic,
                   double sigma_threshold = 4.0);

/// Two-sample z-score per cell with a pooled proportion; 0 where both
/// tables have the same degenerate frequency.
std::array<double, 4> two_sample_z(const CoincidenceTable& a, const CoincidenceTable& b);

}  // namespace dcqe::analysis
