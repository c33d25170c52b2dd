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

#include "dcqe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dcqe/errors.hpp"
#include "dcqe/measurement.hpp"
#include "dcqe/tolerance.hpp"

namespace dcqe::analysis {

std::size_t cell_index(Detector env, Detector sys) {
  for (std::size_t i = 0; i < kCells.size(); ++i) {
    if (kCells[i].env == env && kCells[i].sys == sys) return i;
  }
  throw LabelError("no coincidence cell (" + std::string(optics::to_string(env)) + "," +
                   std::string(optics::to_string(sys)) + ")");
}

AnalyticProbTable analytic_table(double theta, Choice choice) {
  AnalyticProbTable t;
  t.theta = optics::wrap_theta(theta);
  t.alpha = optics::alpha_of(t.theta);
  t.choice = choice;
  if (choice == Choice::kLinear) {
    t.p = {0.25, 0.25, 0.25, 0.25};
    return t;
  }
  const double s2 = 0.5 * std::pow(std::sin(t.alpha), 2);
  const double c2 = 0.5 * std::pow(std::cos(t.alpha), 2);
  t.p = {s2, c2, c2, s2};
  return t;
}

double system_marginal(const CellValues& p, Detector sys) {
  return p[cell_index(Detector::kD1, sys)] + p[cell_index(Detector::kD2, sys)];
}

std::optional<double> conditioned(const CellValues& p, Detector env, Detector sys) {
  const double marginal = system_marginal(p, sys);
  if (marginal <= 0.0) return std::nullopt;
  return p[cell_index(env, sys)] / marginal;
}

CellValues state_probabilities(double theta, Choice choice) {
  const auto& catalog = optics::ElementCatalog::standard();
  const Ket state = optics::full_eraser_state(theta, catalog);
  const ProjectiveMeasurement env = catalog.env_analyzer(choice);
  const ProjectiveMeasurement ports = catalog.port_measurement();
  CellValues out{};
  for (std::size_t i = 0; i < kCells.size(); ++i) {
    const auto& e = env.by_detector(optics::to_string(kCells[i].env));
    const auto& s = ports.by_detector(optics::to_string(kCells[i].sys));
    out[i] = joint_probability(state, env, e.label, ports, s.label);
  }
  return out;
}

// --- tallies ----------------------------------------------------------------

void CoincidenceTable::add(Detector env, Detector sys) {
  ++counts_[cell_index(env, sys)];
  ++total_;
}

CoincidenceTable& CoincidenceTable::merge(const CoincidenceTable& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  return *this;
}

std::optional<CellValues> CoincidenceTable::frequencies() const {
  if (total_ == 0) return std::nullopt;
  CellValues f{};
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    f[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  }
  return f;
}

StratifiedTally& StratifiedTally::merge(const StratifiedTally& other) {
  for (std::size_t c = 0; c < by_choice.size(); ++c) by_choice[c].merge(other.by_choice[c]);
  return *this;
}

StratifiedTally tally(std::span<const montecarlo::TrialRecord> records) {
  StratifiedTally t;
  for (const auto& r : records) {
    t.by_choice[optics::to_int(r.choice)].add(r.env_detector, r.sys_detector);
  }
  return t;
}

// --- statistics -------------------------------------------------------------

double visibility(std::span<const SweepPoint> sweep) {
  if (sweep.empty()) throw ConfigError("visibility of an empty sweep");
  const auto [lo_t, hi_t] = std::minmax_element(
      sweep.begin(), sweep.end(), [](const auto& a, const auto& b) { return a.theta < b.theta; });
  if (hi_t->theta - lo_t->theta < 2.0 * std::numbers::pi - 1e-9) {
    throw ConfigError("visibility sweep must cover a full 2*pi period");
  }
  const auto [lo, hi] = std::minmax_element(
      sweep.begin(), sweep.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  const double sum = hi->value + lo->value;
  if (sum == 0.0) throw UndefinedVisibilityError("max + min of the fringe is zero");
  return (hi->value - lo->value) / sum;
}

Comparison compare(const CoincidenceTable& empirical, const AnalyticProbTable& analytic,
                   double sigma_threshold) {
  if (empirical.empty()) throw ConfigError("cannot compare an empty coincidence table");
  Comparison out;
  out.sigma_threshold = sigma_threshold;
  const double n = static_cast<double>(empirical.total());
  for (std::size_t i = 0; i < kCells.size(); ++i) {
    CellComparison& c = out.cells[i];
    c.cell = kCells[i];
    c.count = empirical.counts()[i];
    c.expected = analytic.p[i];
    c.observed = static_cast<double>(c.count) / n;
    if (c.expected < kImpossibleProbability) {
      c.exact = true;
      c.pass = c.count == 0;
    } else if (1.0 - c.expected < kImpossibleProbability) {
      c.exact = true;
      c.pass = c.count == empirical.total();
    } else {
      c.z = (c.observed - c.expected) / std::sqrt(c.expected * (1.0 - c.expected) / n);
      c.pass = std::abs(c.z) < sigma_threshold;
      out.max_abs_z = std::max(out.max_abs_z, std::abs(c.z));
    }
    out.pass = out.pass && c.pass;
  }
  return out;
}

std::array<double, 4> two_sample_z(const CoincidenceTable& a, const CoincidenceTable& b) {
  if (a.empty() || b.empty()) throw ConfigError("two-sample test needs non-empty tables");
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  std::array<double, 4> z{};
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double fa = static_cast<double>(a.counts()[i]) / na;
    const double fb = static_cast<double>(b.counts()[i]) / nb;
    const double pooled = static_cast<double>(a.counts()[i] + b.counts()[i]) / (na + nb);
    const double var = pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb);
    z[i] = var > 0.0 ? (fa - fb) / std::sqrt(var) : 0.0;
  }
  return z;
}

}  // namespace dcqe::analysis
