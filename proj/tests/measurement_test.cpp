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

#include <gtest/gtest.h>

#include <random>

#include "dcqe/errors.hpp"
#include "dcqe/optics.hpp"
#include "oracles.hpp"

using namespace dcqe;
namespace reg = dcqe::optics::registers;
using dcqe::oracle::kPi;

namespace {

const optics::ElementCatalog& cat() { return optics::ElementCatalog::standard(); }

Register numbered(const std::string& name, std::size_t dim) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back(name + std::to_string(i));
  return Register(name, labels);
}

ProjectiveMeasurement measurement_from(const Register& r, const std::vector<oracle::Vec>& cols) {
  std::vector<ProjectiveMeasurement::Outcome> outcomes;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    outcomes.push_back({"k" + std::to_string(i), "d" + std::to_string(i), {Ket::on(r, cols[i])}});
  }
  return ProjectiveMeasurement(r, std::move(outcomes));
}

}  // namespace

TEST(ProjectiveMeasurement, ValidatesCompletenessAndOrthonormality) {
  const Register& env = reg::env_polarization();
  const Ket h = Ket::basis(env, "H");
  EXPECT_THROW(ProjectiveMeasurement(env, {{"H", "D2", {h}}}), NonOrthonormalBasisError);
  EXPECT_THROW(ProjectiveMeasurement(env, {{"H", "D2", {h}}, {"H2", "D1", {h}}}),
               NonOrthonormalBasisError);
  EXPECT_THROW(ProjectiveMeasurement(env, {{"H", "D2", {h}}, {"H", "D1", {Ket::basis(env, "V")}}}),
               LabelError);
}

TEST(OutcomeProbability, CollapsedFormPortThreeIsHalf) {
  const Ket psi = optics::collapsed_form_state(0.8);
  EXPECT_NEAR(outcome_probability(psi, cat().port_measurement(), "3"), 0.5, 1e-12);
}

TEST(OutcomeProbability, EigenstateIsCertain) {
  const BasisSet circ = optics::circular_basis();
  const auto m = ProjectiveMeasurement::from_basis(circ, {"D1", "D2"});
  EXPECT_NEAR(outcome_probability(circ.vector("R"), m, "R"), 1.0, 1e-12);
  EXPECT_NEAR(outcome_probability(circ.vector("R"), m, "L"), 0.0, 1e-12);
}

TEST(OutcomeProbability, CircularAnalyzerOnEraserStateAtQuarterTurn) {
  // oracle: closed-form amplitudes projected onto <R| (x) <j| for j in {3,4}
  const auto psi = oracle::ports_closed_form(kPi / 2);
  const double expected = oracle::brute_joint(psi, oracle::circ_r(), oracle::unit(2, 0)) +
                          oracle::brute_joint(psi, oracle::circ_r(), oracle::unit(2, 1));
  EXPECT_NEAR(expected, 0.5, 1e-12);
  const Ket state = optics::full_eraser_state(kPi / 2);
  EXPECT_NEAR(outcome_probability(state, cat().env_analyzer(optics::Choice::kCircular), "R"),
              expected, 1e-12);
}

TEST(OutcomeProbability, UnknownLabel) {
  EXPECT_THROW(outcome_probability(optics::full_eraser_state(0.0), cat().port_measurement(), "5"),
               LabelError);
}

TEST(Collapse, SystemOutcomesLeaveEnvironmentElliptical) {
  for (double theta : {0.0, 0.4, -1.9, kPi / 2}) {
    const Ket psi = optics::collapsed_form_state(theta);
    const BasisSet ell = optics::elliptical_basis(theta);
    const Ket after3 = collapse(psi, cat().port_measurement(), "3");
    EXPECT_TRUE(equal_up_to_global_phase(
        after3, tensor(ell.vector("E"), Ket::basis(reg::sys_ports(), "3")), 1e-12));
    const Ket after4 = collapse(psi, cat().port_measurement(), "4");
    EXPECT_TRUE(equal_up_to_global_phase(
        after4, tensor(ell.vector("E_perp"), Ket::basis(reg::sys_ports(), "4")), 1e-12));
  }
}

TEST(Collapse, ProductStateLeavesOtherFactor) {
  std::mt19937_64 rng(21);
  const Register a = numbered("a", 3);
  const Register b = numbered("b", 2);
  const Ket left = Ket::on(a, oracle::random_state(3, rng));
  const Ket right = Ket::on(b, oracle::random_state(2, rng));
  const auto m = ProjectiveMeasurement::from_basis(BasisSet::computational(a), {"x", "y", "z"});
  const Ket after = collapse(tensor(left, right), m, "a1");
  EXPECT_TRUE(equal_up_to_global_phase(after, tensor(Ket::basis(a, "a1"), right), 1e-12));
}

TEST(Collapse, ForbiddenBranchIsImpossible) {
  const Ket psi = optics::full_eraser_state(kPi / 2);
  const Ket after3 = collapse(psi, cat().port_measurement(), "3");
  EXPECT_THROW(collapse(after3, cat().env_analyzer(optics::Choice::kCircular), "L"),
               ImpossibleOutcomeError);
  const Ket l = collapse(psi, cat().env_analyzer(optics::Choice::kCircular), "L");
  EXPECT_THROW(collapse(l, cat().port_measurement(), "3"), ImpossibleOutcomeError);
}

TEST(Collapse, IdempotentRemeasurement) {
  std::mt19937_64 rng(22);
  const Register a = numbered("a", 4);
  const Register b = numbered("b", 3);
  const Ket psi(Layout{a, b}, oracle::random_state(12, rng));
  const auto m = measurement_from(a, oracle::random_orthonormal(4, rng));
  for (const auto& o : m.outcomes()) {
    const Ket once = collapse(psi, m, o.label);
    EXPECT_NEAR(outcome_probability(once, m, o.label), 1.0, 1e-12);
  }
}

TEST(Collapse, EllipticalRemeasurementRepeats) {
  for (double theta : {0.0, 1.1, -0.6, 3.0}) {
    const Ket after = collapse(optics::collapsed_form_state(theta), cat().port_measurement(), "3");
    const auto ell =
        ProjectiveMeasurement::from_basis(optics::elliptical_basis(theta), {"D1", "D2"});
    EXPECT_NEAR(outcome_probability(after, ell, "E"), 1.0, 1e-12);
  }
}

TEST(JointProbability, EraserCellsAtQuarterTurn) {
  const Ket psi = optics::full_eraser_state(kPi / 2);
  const auto env = cat().env_analyzer(optics::Choice::kCircular);
  const auto ports = cat().port_measurement();
  EXPECT_NEAR(joint_probability(psi, env, "R", ports, "3"), 0.5, 1e-12);
  EXPECT_NEAR(joint_probability(psi, env, "L", ports, "3"), 0.0, 1e-12);
  EXPECT_NEAR(joint_probability(psi, ports, "3", env, "R"), 0.5, 1e-12);
}

TEST(JointProbability, LinearChoiceIsFlatOnCollapsedForm) {
  const auto env = cat().env_analyzer(optics::Choice::kLinear);
  const auto ports = cat().port_measurement();
  for (double theta : {-3.0, -1.0, 0.0, 0.5, 2.2}) {
    const Ket psi = optics::collapsed_form_state(theta);
    for (const auto& e : env.outcomes()) {
      for (const auto& s : ports.outcomes()) {
        EXPECT_NEAR(joint_probability(psi, env, e.label, ports, s.label), 0.25, 1e-12);
      }
    }
  }
}

TEST(JointProbability, SameRegisterConflict) {
  const auto ports = cat().port_measurement();
  const Ket psi = optics::full_eraser_state(0.0);
  EXPECT_THROW(joint_probability(psi, ports, "3", ports, "4"), RegisterConflictError);
}

TEST(JointProbability, MatchesBruteForceAndIsSymmetric) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::size_t da = 2 + rng() % 3;
    const std::size_t db = 2 + rng() % 3;
    const Register a = numbered("a", da);
    const Register b = numbered("b", db);
    const auto psi_vec = oracle::random_state(da * db, rng);
    const Ket psi(Layout{a, b}, psi_vec);
    const auto ca = oracle::random_orthonormal(da, rng);
    const auto cb = oracle::random_orthonormal(db, rng);
    const auto ma = measurement_from(a, ca);
    const auto mb = measurement_from(b, cb);
    for (std::size_t k = 0; k < da; ++k) {
      for (std::size_t l = 0; l < db; ++l) {
        const std::string K = "k" + std::to_string(k);
        const std::string L = "k" + std::to_string(l);
        const double brute = oracle::brute_joint(psi_vec, ca[k], cb[l]);
        EXPECT_NEAR(joint_probability(psi, ma, K, mb, L), brute, 1e-12);
        EXPECT_NEAR(joint_probability(psi, mb, L, ma, K), brute, 1e-12);
      }
    }
  }
}

TEST(SequentialJoint, QuarterTurnBothOrders) {
  const Ket psi = optics::full_eraser_state(kPi / 2);
  const auto env = cat().env_analyzer(optics::Choice::kCircular);
  const auto ports = cat().port_measurement();
  EXPECT_NEAR(outcome_probability(psi, env, "R"), 0.5, 1e-12);
  EXPECT_NEAR(conditional_probability(psi, env, "R", ports, "3"), 1.0, 1e-12);
  EXPECT_NEAR(sequential_joint(psi, env, "R", ports, "3"), 0.5, 1e-12);
  EXPECT_NEAR(conditional_probability(psi, ports, "3", env, "R"), 1.0, 1e-12);
  EXPECT_NEAR(sequential_joint(psi, ports, "3", env, "R"), 0.5, 1e-12);
}

TEST(SequentialJoint, ImpossibleFirstOutcomeGivesZero) {
  const Ket psi = optics::full_eraser_state(kPi / 2);
  const auto env = cat().env_analyzer(optics::Choice::kCircular);
  const auto ports = cat().port_measurement();
  const Ket after = collapse(psi, ports, "3");
  EXPECT_EQ(sequential_joint(after, env, "L", ports, "3"), 0.0);
  EXPECT_EQ(conditional_probability(after, env, "L", ports, "3"), 0.0);
}

TEST(OrderIndependence, EraserGrid) {
  const auto ports = cat().port_measurement();
  for (auto choice : {optics::Choice::kLinear, optics::Choice::kCircular}) {
    const auto env = cat().env_analyzer(choice);
    for (int i = 0; i < 181; ++i) {
      const double theta = -kPi + 2.0 * kPi * i / 180.0;
      const auto report = order_independence_report(optics::full_eraser_state(theta), env, ports, 1e-12);
      EXPECT_TRUE(report.passed()) << "theta=" << theta;
      EXPECT_EQ(report.pairs_checked, 4u);
      EXPECT_LT(report.worst(), 1e-12);
    }
  }
}

TEST(OrderIndependence, RandomBipartiteStates) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t da = 2 + rng() % 3;
    const std::size_t db = 2 + rng() % 3;
    const Register a = numbered("a", da);
    const Register b = numbered("b", db);
    const Ket psi(Layout{a, b}, oracle::random_state(da * db, rng));
    const auto ma = measurement_from(a, oracle::random_orthonormal(da, rng));
    const auto mb = measurement_from(b, oracle::random_orthonormal(db, rng));
    const auto report = order_independence_report(psi, ma, mb, 1e-12);
    ASSERT_TRUE(report.passed()) << "sample " << i << " worst " << report.worst();
  }
}

TEST(OrderIndependence, ProductStateFactorizes) {
  std::mt19937_64 rng(25);
  const Register a = numbered("a", 3);
  const Register b = numbered("b", 2);
  const auto va = oracle::random_state(3, rng);
  const auto vb = oracle::random_state(2, rng);
  const Ket psi = tensor(Ket::on(a, va), Ket::on(b, vb));
  const auto ca = oracle::random_orthonormal(3, rng);
  const auto cb = oracle::random_orthonormal(2, rng);
  const auto ma = measurement_from(a, ca);
  const auto mb = measurement_from(b, cb);
  const auto report = order_independence_report(psi, ma, mb, 1e-14);
  EXPECT_TRUE(report.passed()) << report.worst();
  // joint factorizes into the marginals
  EXPECT_NEAR(joint_probability(psi, ma, "k1", mb, "k0"),
              std::norm(oracle::dot(ca[1], va)) * std::norm(oracle::dot(cb[0], vb)), 1e-14);
}

TEST(OutcomeDistribution, CompletenessOnRandomStates) {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 100; ++i) {
    const Register a = numbered("a", 3);
    const Register b = numbered("b", 4);
    const Ket psi(Layout{a, b}, oracle::random_state(12, rng));
    const auto mb = measurement_from(b, oracle::random_orthonormal(4, rng));
    double total = 0.0;
    for (const auto& [label, p] : outcome_distribution(psi, mb).entries()) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  EXPECT_THROW(OutcomeDistribution({{"x", 0.5}, {"y", 0.4}}), ConfigError);
  EXPECT_THROW(OutcomeDistribution({{"x", 1.5}, {"y", -0.5}}), ConfigError);
}

TEST(DegenerateOutcome, ProbabilitySumsProjections) {
  std::mt19937_64 rng(27);
  const Register a = numbered("a", 3);
  const Register b = numbered("b", 2);
  const auto cols = oracle::random_orthonormal(3, rng);
  const ProjectiveMeasurement m(
      a, {{"low", "dL", {Ket::on(a, cols[0]), Ket::on(a, cols[1])}}, {"high", "dH", {Ket::on(a, cols[2])}}});
  const auto psi_vec = oracle::random_state(6, rng);
  const Ket psi(Layout{a, b}, psi_vec);
  double brute = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (std::size_t l = 0; l < 2; ++l) brute += oracle::brute_joint(psi_vec, cols[k], oracle::unit(2, l));
  }
  EXPECT_NEAR(outcome_probability(psi, m, "low"), brute, 1e-12);
  const auto mb = ProjectiveMeasurement::from_basis(BasisSet::computational(b), {"x", "y"});
  EXPECT_TRUE(order_independence_report(psi, m, mb, 1e-12).passed());
}

TEST(PrecededBy, PullsOutcomeVectorsBackThroughUnitary) {
  const auto m = cat().linear_analyzer().preceded_by(cat().eom_on());
  const BasisSet circ = optics::circular_basis();
  EXPECT_TRUE(equal_up_to_global_phase(m.by_detector("D1").vectors[0], circ.vector("R"), 1e-12));
  EXPECT_TRUE(equal_up_to_global_phase(m.by_detector("D2").vectors[0], circ.vector("L"), 1e-12));
}
