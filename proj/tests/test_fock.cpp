// Copyright 2026 The Pulsegate Authors
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

// Truncated Fock-space engine. Cutoffs stay small here; the full-size
// cross-check runs in the acceptance binary.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pulsegate/fock.hpp"
#include "support.hpp"

namespace pulsegate::fock {
namespace {

TEST(FockSpaceTest, MixedRadixBasisRoundTrips) {
  const FockSpace space(3, 4);
  ASSERT_EQ(space.dimension(), 125u);
  EXPECT_EQ(space.vacuum_index(), 0u);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto occ = space.occupations(i);
    for (std::size_t k = 0; k < 3; ++k) ASSERT_EQ(space.occupation(i, k), occ[k]);
    ASSERT_EQ(space.index_of(occ), i);
  }
  const std::vector<int> beyond{0, 5, 0};
  EXPECT_FALSE(space.index_of(beyond).has_value());
}

TEST(FockSpaceTest, ChargeConstraintSelectsSector) {
  const FockSpace space(3, 3, ChargeConstraint{{1, 1, -1}, 0});
  EXPECT_EQ(space.dimension(), 10u);  // sum over b of (b + 1) pairs with c + a = b
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto o = space.occupations(i);
    EXPECT_EQ(o[0] + o[1], o[2]);
  }
  const std::vector<int> outside{1, 0, 0};
  EXPECT_FALSE(space.index_of(outside).has_value());
}

TEST(FockSpaceTest, RejectsBadShapes) {
  EXPECT_THROW(FockSpace(0, 3), DimensionError);
  EXPECT_THROW(FockSpace(7, 1), DimensionError);
  EXPECT_THROW(FockSpace(2, 0), DomainError);
  EXPECT_THROW(FockSpace(6, 30), DimensionError);
  EXPECT_THROW(FockSpace(2, 3, ChargeConstraint{{1}, 0}), DimensionError);
  EXPECT_THROW(FockSpace(2, 3, ChargeConstraint{{1, 1}, 100}), DimensionError);
  EXPECT_THROW(FockSpace(2, 3, ChargeConstraint{{1, 1}, 2}).vacuum_index(), DimensionError);
}

TEST(Operators, NumberOperatorIsDiagonal) {
  const FockSpace space(2, 5);
  const std::vector<Monomial> n1{{1.0, {create(1), annihilate(1)}}};
  const Eigen::MatrixXcd op(build_operator(space, n1));
  for (std::size_t i = 0; i < space.dimension(); ++i)
    for (std::size_t j = 0; j < space.dimension(); ++j) {
      const cplx expected = i == j ? cplx(space.occupation(i, 1), 0.0) : cplx(0.0, 0.0);
      ASSERT_LT(std::abs(op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected), 1e-14);
    }
}

TEST(Operators, CreationIsTruncatedAtCutoff) {
  const FockSpace space(1, 3);
  const std::vector<Monomial> ad{{1.0, {create(0)}}};
  const Eigen::MatrixXcd op(build_operator(space, ad));
  EXPECT_NEAR(std::abs(op(3, 2)), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(op.col(3).norm(), 0.0);
}

TEST(Operators, MonomialActsRightToLeft) {
  // a a^dagger |n> = (n + 1) |n>, a^dagger a |n> = n |n>.
  const FockSpace space(1, 6);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(7);
  psi(2) = 1.0;
  EXPECT_NEAR(expectation(space, psi, {1.0, {annihilate(0), create(0)}}).real(), 3.0, 1e-14);
  EXPECT_NEAR(expectation(space, psi, {1.0, {create(0), annihilate(0)}}).real(), 2.0, 1e-14);
}

TEST(Propagation, GateUnitaryIsUnitaryAndConservesPhotons) {
  const FockSpace space(3, 4);
  const auto mu = testing::random_projections(2);
  const std::vector<std::size_t> modes{0, 1, 2};
  const Eigen::MatrixXcd u = gate_unitary(space, 1.1, mu, modes);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-11);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      int ni = 0, nj = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        ni += space.occupation(static_cast<std::size_t>(i), k);
        nj += space.occupation(static_cast<std::size_t>(j), k);
      }
      if (ni != nj) {
        ASSERT_LT(std::abs(u(i, j)), 1e-12);
      }
    }
}

TEST(Propagation, KrylovMatchesDenseExponential) {
  const FockSpace space(2, 12);
  const std::vector<double> gains{0.6, 0.3};
  const std::vector<std::size_t> sig{0, 1};
  const auto g = build_operator(space, squeeze_generator_terms(gains, Pairing::Single, sig));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(testing::uniform(-1, 1), testing::uniform(-1, 1));
  v.normalize();
  for (double t : {0.2, 1.0, 4.0}) {
    const Eigen::VectorXcd dense = (Eigen::MatrixXcd(g) * t).exp() * v;
    const Eigen::VectorXcd kry = krylov_expmv(g, t, v);
    EXPECT_LT((dense - kry).norm(), 1e-10) << "t = " << t;
    EXPECT_NEAR(kry.norm(), 1.0, 1e-11);
  }
}

TEST(SqueezedStates, MomentsMatchClosedForm) {
  const FockSpace space(1, 40);
  const std::vector<double> gains{0.4};
  const std::vector<std::size_t> sig{0};
  const auto st = squeeze_state(space, gains, Pairing::Single, sig);
  EXPECT_LT(st.leak, 1e-12);
  const auto o = measure(space, st);
  EXPECT_NEAR(o.norm, 1.0, 1e-12);
  EXPECT_NEAR(o.photon_numbers(0), std::pow(std::sinh(0.4), 2), 1e-12);
  const auto ref = single_mode_squeezed_state(gains, false);
  EXPECT_NEAR(std::abs(o.anomalous(0, 0) - ref.anomalous(0, 0)), 0.0, 1e-12);
  EXPECT_NEAR(o.quadratures[0].x, std::exp(0.8) / 2.0, 1e-10);
  EXPECT_NEAR(o.quadratures[0].p, std::exp(-0.8) / 2.0, 1e-10);
}

TEST(SqueezedStates, TwinBeamHasPerfectNumberCorrelation) {
  const FockSpace space(2, 20, ChargeConstraint{{1, -1}, 0});
  EXPECT_EQ(space.dimension(), 21u);
  const std::vector<double> gains{0.5};
  const std::vector<std::size_t> sig{0}, idl{1};
  const auto st = squeeze_state(space, gains, Pairing::Twin, sig, idl);
  const auto o = measure(space, st);
  const double var_diff = o.number_covariance(0, 0) + o.number_covariance(1, 1) - 2.0 * o.number_covariance(0, 1);
  EXPECT_NEAR(var_diff, 0.0, 1e-12);
  EXPECT_NEAR(o.photon_numbers(0), std::pow(std::sinh(0.5), 2), 1e-10);
}

TEST(SqueezedStates, LeakAboveThresholdThrows) {
  const FockSpace space(1, 6);
  const std::vector<double> gains{1.0};
  const std::vector<std::size_t> sig{0};
  EXPECT_THROW(squeeze_state(space, gains, Pairing::Single, sig), TruncationError);
}

TEST(SqueezedStates, GeneratorShapesChecked) {
  const std::vector<double> gains{0.1, 0.2};
  const std::vector<std::size_t> one{0};
  EXPECT_THROW(squeeze_generator_terms(gains, Pairing::Single, one), DimensionError);
  const std::vector<cplx> mu{1.0};
  EXPECT_THROW(gate_generator_terms(mu, one), DimensionError);
}

TEST(Measurement, VacuumQuadraturesAreOneHalf) {
  const FockSpace space(2, 3);
  FockState vac{Eigen::VectorXcd::Zero(16), 0.0};
  vac.amplitudes(0) = 1.0;
  const auto o = measure(space, vac);
  for (const auto& q : o.quadratures) {
    EXPECT_NEAR(q.x, 0.5, 1e-15);
    EXPECT_NEAR(q.p, 0.5, 1e-15);
  }
}

// --- comparison with the moments engine at reduced size --------------------

TEST(OracleComparison, SingleModeGate) {
  const OracleScenario sc{"single", {0.3}, false, 0.25 * kPi, {1.0}, 16};
  const auto rep = compare_with_gaussian(sc);
  EXPECT_TRUE(rep.passed) << "max rel dev " << rep.max_rel_dev() << ", leak " << rep.leak;
  EXPECT_EQ(rep.dimension, 289u);
  EXPECT_LT(rep.max_rel_dev(), 1e-6);
}

TEST(OracleComparison, TwoModeSwap) {
  const double h = std::sqrt(0.5);
  const OracleScenario sc{"swap", {0.04, 0.028}, false, kPi, {h, std::polar(h, kPi / 3.0)}, 6};
  const auto rep = compare_with_gaussian(sc);
  EXPECT_TRUE(rep.passed) << "max rel dev " << rep.max_rel_dev() << ", leak " << rep.leak;
}

TEST(OracleComparison, TwinBeamGate) {
  const OracleScenario sc{"twin", {0.3}, true, 0.4 * kPi, {1.0}, 10};
  const auto rep = compare_with_gaussian(sc);
  EXPECT_TRUE(rep.passed) << "max rel dev " << rep.max_rel_dev() << ", leak " << rep.leak;
  bool has_diff = false;
  for (const auto& r : rep.rows) has_diff |= r.quantity.rfind("Var(", 0) == 0;
  EXPECT_TRUE(has_diff);
}

TEST(OracleComparison, ToleranceRuleUsesAbsoluteFloor) {
  OracleScenario sc{"single", {0.3}, false, 0.25 * kPi, {1.0}, 16};
  const auto strict = compare_with_gaussian(sc, Tolerances{1e-18, 1e-18});
  // Rows with deviations above 1e-18 fail under the strict rule.
  EXPECT_FALSE(strict.passed);
  EXPECT_EQ(strict.tolerances.relative, 1e-18);
}

TEST(OracleComparison, RequiresOneProjectionPerMode) {
  const OracleScenario sc{"bad", {0.3, 0.2}, false, 0.1, {1.0}, 4};
  EXPECT_THROW(compare_with_gaussian(sc), DimensionError);
}

}  // namespace
}  // namespace pulsegate::fock
