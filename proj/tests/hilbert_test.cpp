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

#include "dcqe/hilbert.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dcqe/errors.hpp"
#include "dcqe/optics.hpp"
#include "dcqe/rng.hpp"
#include "oracles.hpp"

using namespace dcqe;
using dcqe::oracle::kI;
using dcqe::oracle::kS;

namespace {

const Register kEnv("env", {"H", "V"});
const Register kSys("sys", {"H", "V"});
const Register kPath("sys", {"a", "b"});

Ket random_on(const Layout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return random_ket(layout, [&] { return g(rng); });
}

void expect_near(Complex actual, Complex expected, double tol = 1e-12) {
  EXPECT_NEAR(actual.real(), expected.real(), tol);
  EXPECT_NEAR(actual.imag(), expected.imag(), tol);
}

}  // namespace

TEST(Register, RejectsDuplicateLabelsAndTinyDimension) {
  EXPECT_THROW(Register("r", {"x", "x"}), LabelError);
  EXPECT_THROW(Register("r", {"x"}), LayoutError);
  EXPECT_EQ(kPath.index_of("b"), 1u);
  EXPECT_THROW((void)kPath.index_of("c"), LabelError);
}

TEST(Tensor, ProductOfBasisKets) {
  const Ket k = tensor(Ket::basis(kEnv, "H"), Ket::basis(kSys, "V"));
  ASSERT_EQ(k.size(), 4u);
  expect_near(k.amplitude({"H", "V"}), 1.0);
  expect_near(k.amplitude({"H", "H"}), 0.0);
  expect_near(k.amplitude({"V", "V"}), 0.0);
  expect_near(k.amplitude({"V", "H"}), 0.0);
}

TEST(Tensor, Distributes) {
  const Ket plus = Complex(kS) * (Ket::basis(kEnv, "H") + Ket::basis(kEnv, "V"));
  const Ket k = tensor(plus, Ket::basis(kPath, "b"));
  expect_near(k.amplitude({"H", "b"}), kS);
  expect_near(k.amplitude({"V", "b"}), kS);
  expect_near(k.amplitude({"H", "a"}), 0.0);
  expect_near(k.amplitude({"V", "a"}), 0.0);
}

TEST(Tensor, NormIsMultiplicative) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Ket x = Complex(scale(rng)) * random_on({kEnv}, rng);
    const Ket y = Complex(scale(rng)) * random_on({Register("q", {"0", "1", "2"})}, rng);
    EXPECT_NEAR(tensor(x, y).norm(), x.norm() * y.norm(), 1e-12);
  }
}

TEST(Tensor, DuplicateRegisterIsLayoutConflict) {
  EXPECT_THROW(tensor(Ket::basis(kSys, "H"), Ket::basis(kPath, "a")), LayoutError);
}

TEST(Tensor, AssociativeUpToLayoutOrder) {
  std::mt19937_64 rng(12);
  const Register r3("c", {"0", "1", "2"});
  for (int i = 0; i < 20; ++i) {
    const Ket x = random_on({kEnv}, rng);
    const Ket y = random_on({kPath}, rng);
    const Ket z = random_on({r3}, rng);
    const Ket left = tensor(tensor(x, y), z);
    const Ket right = tensor(x, tensor(y, z));
    ASSERT_EQ(left.layout(), right.layout());
    for (std::size_t k = 0; k < left.size(); ++k) {
      expect_near(left.amplitudes()[k], right.amplitudes()[k]);
    }
    // a genuinely permuted product agrees after reordering
    const Ket permuted = tensor(z, tensor(x, y));
    const std::vector<std::string> order{"env", "sys", "c"};
    const Ket back = permuted.reordered(order);
    for (std::size_t k = 0; k < left.size(); ++k) {
      expect_near(back.amplitudes()[k], left.amplitudes()[k]);
    }
  }
}

TEST(ApplyMap, FrontStageProducesHybridState) {
  for (double theta : {0.0, 0.7, -2.1, oracle::kPi}) {
    const Ket out = optics::front_stage(optics::build_initial_state(), theta);
    const auto expected = oracle::hybrid_closed_form(theta);
    ASSERT_EQ(out.layout(), (Layout{kEnv, kPath}));
    for (std::size_t k = 0; k < expected.size(); ++k) expect_near(out.amplitudes()[k], expected[k]);
  }
}

TEST(ApplyMap, IdentityLeavesStateUnchanged) {
  std::mt19937_64 rng(13);
  const Ket psi = random_on({kEnv, kPath}, rng);
  const Ket out = apply_map(LinearMap::identity(kPath), psi);
  for (std::size_t k = 0; k < psi.size(); ++k) EXPECT_EQ(out.amplitudes()[k], psi.amplitudes()[k]);
}

TEST(ApplyMap, FinalBeamSplitterOnArmA) {
  const Ket out = apply_map(optics::ElementCatalog::standard().final_bs(), Ket::basis(kPath, "a"));
  expect_near(out.amplitude({"3"}), kS);
  expect_near(out.amplitude({"4"}), kI * kS);
}

TEST(ApplyMap, MissingRegister) {
  const Register other("q", {"a", "b"});
  EXPECT_THROW(apply_map(LinearMap::identity(other), Ket::basis(kEnv, "H")),
               MissingRegisterError);
  // register present but at a different stage
  EXPECT_THROW(apply_map(optics::ElementCatalog::standard().final_bs(), Ket::basis(kSys, "H")),
               LayoutError);
}

TEST(LinearMap, RejectsNonIsometry) {
  EXPECT_THROW(LinearMap(kPath, kPath, Matrix{{1.0, 1.0}, {0.0, 1.0}}), NonIsometricMapError);
  EXPECT_THROW(LinearMap(kPath, kPath, Matrix{{1.0, 0.0}, {0.0, 1.0 + 1e-9}}),
               NonIsometricMapError);
  EXPECT_THROW(LinearMap::from_images(kSys, kPath, {{"H", Ket::basis(kPath, "a")}}), LabelError);
}

TEST(LinearMap, EveryConstructedMapPreservesNorm) {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g;
  const Register r3("out", {"x", "y", "z"});
  std::vector<LinearMap> maps;
  const auto& cat = optics::ElementCatalog::standard();
  maps.push_back(cat.front_pbs());
  maps.push_back(cat.phase_plate(1.3));
  maps.push_back(cat.final_bs());
  maps.push_back(cat.eom_on());
  maps.push_back(cat.interferometer_transfer(-0.4));
  // a non-square isometry {a,b} -> {x,y,z}
  const auto cols = oracle::random_orthonormal(3, rng);
  Matrix iso(3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    iso(r, 0) = cols[0][r];
    iso(r, 1) = cols[1][r];
  }
  maps.emplace_back(kPath, r3, iso);

  for (const auto& m : maps) {
    for (int i = 0; i < 100; ++i) {
      Ket v = Complex(std::abs(g(rng)) + 0.1) * random_on({m.input()}, rng);
      EXPECT_NEAR(apply_map(m, v).norm(), v.norm(), 1e-12);
    }
  }
}

TEST(ExpressIn, HybridStateInCircularBasis) {
  const Ket psi = optics::front_stage(optics::build_initial_state(), 0.9);
  const Expansion e = express_in(psi, optics::circular_basis());
  const Complex phase = std::exp(kI * 0.9);
  // (1/2)[L(-e^{i theta}a + b) + R(e^{i theta}a + b)], up to one common factor
  const Complex common = e.coefficient("R", {"b"}) / 0.5;
  EXPECT_NEAR(std::abs(common), 1.0, 1e-12);
  expect_near(e.coefficient("R", {"a"}), common * 0.5 * phase);
  expect_near(e.coefficient("L", {"a"}), common * -0.5 * phase);
  expect_near(e.coefficient("L", {"b"}), common * 0.5);
  EXPECT_NEAR(e.squared_norm(), psi.squared_norm(), 1e-12);
}

TEST(ExpressIn, BasisKetInOwnBasis) {
  const BasisSet circ = optics::circular_basis();
  const Expansion e = express_in(circ.vector("L"), circ);
  expect_near(e.term("L").remainder.amplitudes()[0], 1.0);
  expect_near(e.term("R").remainder.amplitudes()[0], 0.0);
}

TEST(ExpressIn, CollapsedFormInLinearBasisHasFourQuarterTerms) {
  const double theta = 0.35;
  const Expansion e = express_in(optics::collapsed_form_state(theta),
                                 BasisSet::computational(kEnv));
  const auto expected = oracle::ports_closed_form(theta);  // H3, H4, V3, V4
  expect_near(e.coefficient("H", {"3"}), expected[0]);
  expect_near(e.coefficient("H", {"4"}), expected[1]);
  expect_near(e.coefficient("V", {"3"}), expected[2]);
  expect_near(e.coefficient("V", {"4"}), expected[3]);
  for (const auto& label : {"H", "V"}) {
    for (const auto& port : {"3", "4"}) EXPECT_NEAR(std::abs(e.coefficient(label, {port})), 0.5, 1e-12);
  }
}

TEST(ExpressIn, RoundTripReconstructsState) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> g;
  const Register r3("c", {"0", "1", "2"});
  for (int i = 0; i < 30; ++i) {
    const Ket psi = random_on({kEnv, r3, kPath}, rng);
    for (const Register* reg : {&kEnv, &r3, &kPath}) {
      const BasisSet b = random_basis(*reg, [&] { return g(rng); });
      const Expansion e = express_in(psi, b);
      EXPECT_NEAR(e.squared_norm(), psi.squared_norm(), 1e-12);
      const Ket back = e.reconstruct();
      ASSERT_EQ(back.layout(), psi.layout());
      for (std::size_t k = 0; k < psi.size(); ++k) expect_near(back.amplitudes()[k], psi.amplitudes()[k]);
    }
  }
}

TEST(BasisSet, RejectsNonOrthonormal) {
  const Ket h = Ket::basis(kEnv, "H");
  const Ket d = Complex(kS) * (h + Ket::basis(kEnv, "V"));
  EXPECT_THROW(BasisSet(kEnv, {{"H", h}, {"D", d}}), NonOrthonormalBasisError);
  EXPECT_THROW(BasisSet(kEnv, {{"H", h}}), NonOrthonormalBasisError);
  EXPECT_THROW(BasisSet(kEnv, {{"H", h}, {"V", Complex(2.0) * Ket::basis(kEnv, "V")}}),
               NonOrthonormalBasisError);
}

TEST(GlobalPhase, Examples) {
  std::mt19937_64 rng(16);
  const Ket x = random_on({kEnv, kPath}, rng);
  for (double theta : {0.0, 0.5, 2.0, -3.0}) {
    EXPECT_TRUE(equal_up_to_global_phase(x, std::exp(kI * theta) * x, 1e-12));
  }
  EXPECT_FALSE(equal_up_to_global_phase(Ket::basis(kEnv, "H"), Ket::basis(kEnv, "V"), 1e-12));
  EXPECT_THROW((void)equal_up_to_global_phase(Ket::basis(kEnv, "H"), Ket::basis(kPath, "a")),
               LayoutError);
}

TEST(GlobalPhase, PipelineMatchesEllipticalRoute) {
  for (double theta : {0.0, 1.0, -2.5, oracle::kPi / 2}) {
    EXPECT_TRUE(equal_up_to_global_phase(optics::full_eraser_state(theta),
                                         optics::elliptical_route_state(theta), 1e-12));
  }
}

TEST(GlobalPhase, IsAnEquivalenceOnTheCorpus) {
  std::mt19937_64 rng(17);
  std::vector<Ket> corpus;
  for (int i = 0; i < 6; ++i) {
    const Ket base = random_on({kEnv, kPath}, rng);
    corpus.push_back(base);
    corpus.push_back(std::exp(kI * (0.3 * i + 0.1)) * base);
  }
  const double tol = 1e-12;
  for (const auto& a : corpus) {
    EXPECT_TRUE(equal_up_to_global_phase(a, a, tol));
    for (const auto& b : corpus) {
      EXPECT_EQ(equal_up_to_global_phase(a, b, tol), equal_up_to_global_phase(b, a, tol));
      for (const auto& c : corpus) {
        if (equal_up_to_global_phase(a, b, tol) && equal_up_to_global_phase(b, c, tol)) {
          EXPECT_TRUE(equal_up_to_global_phase(a, c, tol));
        }
      }
    }
  }
}

TEST(Ket, RejectsNonFiniteAmplitudes) {
  EXPECT_THROW(Ket::on(kEnv, {std::nan(""), 0.0}), Error);
  EXPECT_THROW(Ket::on(kEnv, {1.0}), LayoutError);
}

TEST(RandomBasis, IsOrthonormalForAllSmallDimensions) {
  CounterStream stream(3, 4);
  for (std::size_t d = 2; d <= 8; ++d) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i) labels.push_back(std::to_string(i));
    EXPECT_NO_THROW(random_basis(Register("r", labels), [&] { return stream.next_gaussian(); }));
  }
}
