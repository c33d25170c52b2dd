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

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcqe/hilbert.hpp"

namespace dcqe {

/// Projective measurement on one register. Each outcome owns one or more
/// orthonormal vectors (several for a degenerate projector) and names the
/// detector that clicks for it. Outcomes together span the register.
class ProjectiveMeasurement {
 public:
  struct Outcome {
    std::string label;
    std::string detector;
    std::vector<Ket> vectors;
  };

  ProjectiveMeasurement(Register reg, std::vector<Outcome> outcomes);

  /// One outcome per basis vector; detectors[i] goes with basis vector i.
  static ProjectiveMeasurement from_basis(const BasisSet& basis,
                                          const std::vector<std::string>& detectors);

  const Register& reg() const { return reg_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const Outcome& outcome(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  /// Outcome label whose detector is `detector`.
  const Outcome& by_detector(std::string_view detector) const;

  /// Projector sum_v |v><v| for one outcome.
  Matrix projector(std::string_view label) const;

  /// The measurement seen through `map` applied first: outcome vectors are
  /// pulled back as map^dagger |v> onto map.input(). `map` must be unitary
  /// and end on this measurement's register.
  ProjectiveMeasurement preceded_by(const LinearMap& map) const;

 private:
  Register reg_;
  std::vector<Outcome> outcomes_;
};

/// Born-rule distribution over outcome labels, in the measurement's
/// declared outcome order.
class OutcomeDistribution {
 public:
  using Entry = std::pair<std::string, double>;

  /// Validates: every probability in [0, 1] up to tolerance and the sum
  /// within kTolerance of 1.
  explicit OutcomeDistribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  double probability(std::string_view label) const;

 private:
  std::vector<Entry> entries_;
};

double outcome_probability(const Ket& state, const ProjectiveMeasurement& meas,
                           std::string_view outcome);

OutcomeDistribution outcome_distribution(const Ket& state, const ProjectiveMeasurement& meas);

/// Unnormalized projection P_outcome |state>.
Ket project(const Ket& state, const ProjectiveMeasurement& meas, std::string_view outcome);

/// Projected and renormalized post-measurement state. Throws
/// ImpossibleOutcomeError when the outcome has (numerically) zero probability.
Ket collapse(const Ket& state, const ProjectiveMeasurement& meas, std::string_view outcome);

/// p_KL = sum over outcome vectors |(<a| (x) <b|) |state>|^2, computed by
/// contraction without collapse. Throws RegisterConflictError if both
/// measurements act on the same register.
double joint_probability(const Ket& state, const ProjectiveMeasurement& meas_a,
                         std::string_view outcome_k, const ProjectiveMeasurement& meas_b,
                         std::string_view outcome_l);

/// Probability of `second` on the state collapsed by `first`; 0 when the
/// first outcome is impossible.
double conditional_probability(const Ket& state, const ProjectiveMeasurement& first,
                               std::string_view first_outcome,
                               const ProjectiveMeasurement& second,
                               std::string_view second_outcome);

/// p(first) * p(second | first), the time-ordered route to the joint
/// probability.
double sequential_joint(const Ket& state, const ProjectiveMeasurement& first,
                        std::string_view first_outcome, const ProjectiveMeasurement& second,
                        std::string_view second_outcome);

struct OrderViolation {
  std::string outcome_a;
  std::string outcome_b;
  double deviation_a_first = 0.0;
  double deviation_b_first = 0.0;
};

struct OrderCheckReport {
  double max_deviation_a_first = 0.0;
  double max_deviation_b_first = 0.0;
  std::size_t pairs_checked = 0;
  std::vector<OrderViolation> violations;

  bool passed() const { return violations.empty(); }
  double worst() const;
};

/// Compares the joint probability with both sequential orders for every
/// outcome pair of two measurements on distinct registers.
OrderCheckReport order_independence_report(const Ket& state, const ProjectiveMeasurement& meas_a,
                                           const ProjectiveMeasurement& meas_b, double tol);

}  // namespace dcqe
