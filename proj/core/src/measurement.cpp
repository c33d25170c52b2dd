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

#include "dcqe/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dcqe/errors.hpp"
#include "dcqe/tolerance.hpp"

namespace dcqe {
namespace {

void require_distinct(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
  if (a.reg().name() == b.reg().name()) {
    throw RegisterConflictError("both measurements act on register '" + a.reg().name() +
                                "'");
  }
}

}  // namespace

ProjectiveMeasurement::ProjectiveMeasurement(Register reg, std::vector<Outcome> outcomes)
    : reg_(std::move(reg)), outcomes_(std::move(outcomes)) {
  std::unordered_set<std::string> labels;
  std::vector<const Ket*> all;
  for (const auto& o : outcomes_) {
    if (!labels.insert(o.label).second) {
      throw LabelError("duplicate outcome label '" + o.label + "'");
    }
    if (o.vectors.empty()) {
      throw NonOrthonormalBasisError("outcome '" + o.label + "' has no vectors");
    }
    for (const auto& v : o.vectors) {
      if (v.layout() != Layout{reg_}) {
        throw LayoutError("outcome '" + o.label + "' vector is not on register '" +
                          reg_.name() + "'");
      }
      all.push_back(&v);
    }
  }
  if (all.size() != reg_.dim()) {
    throw NonOrthonormalBasisError("measurement on '" + reg_.name() + "' has " +
                                   std::to_string(all.size()) + " vectors for dimension " +
                                   std::to_string(reg_.dim()));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(*all[i], *all[j]) - expected) > kTolerance) {
        throw NonOrthonormalBasisError("measurement vectors on '" + reg_.name() +
                                       "' are not orthonormal");
      }
    }
  }
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const BasisSet& basis,
                                                        const std::vector<std::string>& detectors) {
  if (detectors.size() != basis.vectors().size()) {
    throw LabelError("need one detector label per basis vector");
  }
  std::vector<Outcome> outcomes;
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    outcomes.push_back({basis.vectors()[i].label, detectors[i], {basis.vectors()[i].ket}});
  }
  return ProjectiveMeasurement(basis.reg(), std::move(outcomes));
}

std::size_t ProjectiveMeasurement::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == label) return i;
  }
  throw LabelError("unknown outcome '" + std::string(label) + "' on register '" +
                   reg_.name() + "'");
}

const ProjectiveMeasurement::Outcome& ProjectiveMeasurement::outcome(std::string_view label) const {
  return outcomes_[index_of(label)];
}

const ProjectiveMeasurement::Outcome& ProjectiveMeasurement::by_detector(
    std::string_view detector) const {
  for (const auto& o : outcomes_) {
    if (o.detector == detector) return o;
  }
  throw LabelError("no outcome reports to detector '" + std::string(detector) + "'");
}

Matrix ProjectiveMeasurement::projector(std::string_view label) const {
  const std::size_t d = reg_.dim();
  Matrix p(d, d);
  for (const auto& v : outcome(label).vectors) {
    const auto a = v.amplitudes();
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) p(r, c) += a[r] * std::conj(a[c]);
    }
  }
  return p;
}

ProjectiveMeasurement ProjectiveMeasurement::preceded_by(const LinearMap& map) const {
  if (!map.is_square() || !(map.output() == reg_)) {
    throw LayoutError("map must be unitary onto register '" + reg_.name() + "'");
  }
  const Matrix back = map.matrix().adjoint();
  std::vector<Outcome> pulled;
  for (const auto& o : outcomes_) {
    Outcome p{o.label, o.detector, {}};
    for (const auto& v : o.vectors) {
      std::vector<Complex> amps(map.input().dim());
      for (std::size_t r = 0; r < amps.size(); ++r) {
        for (std::size_t c = 0; c < reg_.dim(); ++c) amps[r] += back(r, c) * v.amplitudes()[c];
      }
      p.vectors.push_back(Ket::on(map.input(), std::move(amps)));
    }
    pulled.push_back(std::move(p));
  }
  return ProjectiveMeasurement(map.input(), std::move(pulled));
}

// --- distributions ----------------------------------------------------------

OutcomeDistribution::OutcomeDistribution(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("empty outcome distribution");
  double total = 0.0;
  for (const auto& [label, p] : entries_) {
    if (!(p >= -kTolerance && p <= 1.0 + kTolerance)) {
      throw ConfigError("probability of '" + label + "' is outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw ConfigError("outcome probabilities sum to " + std::to_string(total));
  }
}

double OutcomeDistribution::probability(std::string_view label) const {
  for (const auto& [l, p] : entries_) {
    if (l == label) return p;
  }
  throw LabelError("distribution has no outcome '" + std::string(label) + "'");
}

Ket project(const Ket& state, const ProjectiveMeasurement& meas, std::string_view outcome) {
  return apply_operator(meas.projector(outcome), meas.reg(), state);
}

double outcome_probability(const Ket& state, const ProjectiveMeasurement& meas,
                           std::string_view outcome) {
  return project(state, meas, outcome).squared_norm();
}

OutcomeDistribution outcome_distribution(const Ket& state, const ProjectiveMeasurement& meas) {
  std::vector<OutcomeDistribution::Entry> entries;
  for (const auto& o : meas.outcomes()) {
    entries.emplace_back(o.label, outcome_probability(state, meas, o.label));
  }
  return OutcomeDistribution(std::move(entries));
}

Ket collapse(const Ket& state, const ProjectiveMeasurement& meas, std::string_view outcome) {
  const Ket projected = project(state, meas, outcome);
  const double p = projected.squared_norm();
  if (p < kImpossibleProbability) {
    throw ImpossibleOutcomeError("outcome '" + std::string(outcome) + "' on register '" +
                                 meas.reg().name() + "' has zero probability");
  }
  return Complex(1.0 / std::sqrt(p)) * projected;
}

double joint_probability(const Ket& state, const ProjectiveMeasurement& meas_a,
                         std::string_view outcome_k, const ProjectiveMeasurement& meas_b,
                         std::string_view outcome_l) {
  require_distinct(meas_a, meas_b);
  const auto& ka = meas_a.outcome(outcome_k);
  const auto& lb = meas_b.outcome(outcome_l);
  double p = 0.0;
  for (const auto& a : ka.vectors) {
    const Ket partial = contract(state, a);
    for (const auto& b : lb.vectors) p += contract(partial, b).squared_norm();
  }
  return p;
}

double conditional_probability(const Ket& state, const ProjectiveMeasurement& first,
                               std::string_view first_outcome,
                               const ProjectiveMeasurement& second,
                               std::string_view second_outcome) {
  require_distinct(first, second);
  second.index_of(second_outcome);
  if (outcome_probability(state, first, first_outcome) < kImpossibleProbability) return 0.0;
  return outcome_probability(collapse(state, first, first_outcome), second, second_outcome);
}

double sequential_joint(const Ket& state, const ProjectiveMeasurement& first,
                        std::string_view first_outcome, const ProjectiveMeasurement& second,
                        std::string_view second_outcome) {
  require_distinct(first, second);
  second.index_of(second_outcome);
  const double p_first = outcome_probability(state, first, first_outcome);
  if (p_first < kImpossibleProbability) return 0.0;
  const Ket after = collapse(state, first, first_outcome);
  return p_first * outcome_probability(after, second, second_outcome);
}

double OrderCheckReport::worst() const {
  return std::max(max_deviation_a_first, max_deviation_b_first);
}

OrderCheckReport order_independence_report(const Ket& state, const ProjectiveMeasurement& meas_a,
                                           const ProjectiveMeasurement& meas_b, double tol) {
  require_distinct(meas_a, meas_b);
  OrderCheckReport report;
  for (const auto& k : meas_a.outcomes()) {
    for (const auto& l : meas_b.outcomes()) {
      const double joint = joint_probability(state, meas_a, k.label, meas_b, l.label);
      const double a_first = sequential_joint(state, meas_a, k.label, meas_b, l.label);
      const double b_first = sequential_joint(state, meas_b, l.label, meas_a, k.label);
      const double dev_a = std::abs(joint - a_first);
      const double dev_b = std::abs(joint - b_first);
      report.max_deviation_a_first = std::max(report.max_deviation_a_first, dev_a);
      report.max_deviation_b_first = std::max(report.max_deviation_b_first, dev_b);
      ++report.pairs_checked;
      if (dev_a > tol || dev_b > tol) report.violations.push_back({k.label, l.label, dev_a, dev_b});
    }
  }
  return report;
}

}  // namespace dcqe
