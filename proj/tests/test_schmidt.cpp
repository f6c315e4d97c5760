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

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "pulsegate/grid.hpp"
#include "pulsegate/schmidt.hpp"
#include "support.hpp"

namespace pulsegate {
namespace {

// --- FrequencyGrid / ModeFunction -------------------------------------------

TEST(FrequencyGrid, RejectsDegenerateGrids) {
  EXPECT_THROW(FrequencyGrid(0.0, 1, 0.1), DomainError);
  EXPECT_THROW(FrequencyGrid(0.0, 10, 0.0), DomainError);
  EXPECT_THROW(FrequencyGrid(0.0, 10, -1.0), DomainError);
}

TEST(FrequencyGrid, SymmetricGridEndpoints) {
  const auto g = FrequencyGrid::symmetric(8.0, 2048);
  EXPECT_DOUBLE_EQ(g.start(), -8.0);
  EXPECT_NEAR(g.stop(), 8.0, 1e-12);
  EXPECT_EQ(g.count(), 2048u);
  EXPECT_EQ(g.points().size(), 2048u);
}

TEST(ModeFunction, InterpolatesAndVanishesOutside) {
  const FrequencyGrid g(0.0, 3, 1.0);
  const ModeFunction f(g, {cplx(0.0), cplx(2.0), cplx(4.0)});
  EXPECT_NEAR(f.at(0.5).real(), 1.0, 1e-15);
  EXPECT_NEAR(f.at(1.75).real(), 3.5, 1e-15);
  EXPECT_EQ(f.at(-0.1), cplx(0.0));
  EXPECT_EQ(f.at(2.5), cplx(0.0));
}

TEST(ModeFunction, InnerProductRequiresCommonGrid) {
  const auto a = hermite_gauss_mode(0, FrequencyGrid::symmetric(8.0, 512), 0.0, 1.0);
  const auto b = hermite_gauss_mode(0, FrequencyGrid::symmetric(8.0, 513), 0.0, 1.0);
  EXPECT_THROW(inner_product(a, b), GridMismatchError);
}

// --- Hermite-Gauss profiles -------------------------------------------------

TEST(HermiteGauss, GroundModeIsNormalizedGaussian) {
  const auto grid = default_spectral_grid();
  const auto u0 = hermite_gauss_mode(0, grid, 0.0, 1.0);
  for (std::size_t i = 0; i < grid.count(); i += 97) {
    const double w = grid.at(i);
    EXPECT_NEAR(u0[i].real(), std::exp(-0.5 * w * w) / std::pow(kPi, 0.25), 1e-14);
    EXPECT_EQ(u0[i].imag(), 0.0);
  }
  EXPECT_NEAR(u0.norm(), 1.0, 1e-9);
}

TEST(HermiteGauss, FirstOrderVanishesAtCentre) {
  const FrequencyGrid odd = FrequencyGrid::symmetric(8.0, 2049);  // contains w = 0
  const auto u1 = hermite_gauss_mode(1, odd, 0.0, 1.0);
  EXPECT_NEAR(std::abs(u1[1024]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u1.at(0.0)), 0.0, 1e-15);
}

TEST(HermiteGauss, ImaginaryPowerConvention) {
  const auto grid = default_spectral_grid();
  const auto on = hermite_gauss_mode(3, grid, 0.0, 1.0, PhaseConvention::ImaginaryPowers);
  const auto off = hermite_gauss_mode(3, grid, 0.0, 1.0, PhaseConvention::Real);
  for (std::size_t i = 0; i < grid.count(); i += 101) EXPECT_LT(std::abs(on[i] - cplx(0.0, -1.0) * off[i]), 1e-15);
  EXPECT_EQ(imaginary_power(0), cplx(1.0));
  EXPECT_EQ(imaginary_power(2), cplx(-1.0));
  EXPECT_DOUBLE_EQ(mode_phase(5, PhaseConvention::ImaginaryPowers), 0.5 * kPi);  // reduced mod 2 pi
  EXPECT_DOUBLE_EQ(mode_phase(5, PhaseConvention::Real), 0.0);
}

TEST(HermiteGauss, OrthonormalUpToOrderEight) {
  const auto grid = default_spectral_grid();
  std::vector<ModeFunction> u;
  for (int n = 0; n <= 8; ++n) u.push_back(hermite_gauss_mode(n, grid, 0.0, 1.0));
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n <= 8; ++n) {
      const cplx o = inner_product(u[m], u[n]);
      if (m == n)
        EXPECT_NEAR(std::abs(o - 1.0), 0.0, 1e-9) << m;
      else
        EXPECT_LT(std::abs(o), 1e-6) << m << "," << n;
    }
  EXPECT_LT(std::abs(inner_product(u[0], u[2])), 1e-8);
}

TEST(HermiteGauss, DefaultGridTailBelowThreshold) {
  EXPECT_LT(hermite_gauss_tail_mass(8, default_spectral_grid(), 0.0, 1.0), 1e-10);
}

TEST(HermiteGauss, RejectsNarrowGridAndBadWidth) {
  EXPECT_THROW(hermite_gauss_mode(4, FrequencyGrid::symmetric(2.0, 256), 0.0, 1.0), GridCoverageError);
  EXPECT_THROW(hermite_gauss_mode(0, default_spectral_grid(), 0.0, 0.0), DomainError);
  EXPECT_THROW(hermite_gauss_mode(0, default_spectral_grid(), 0.0, -1.0), DomainError);
  EXPECT_THROW(hermite_gauss_mode(-1, default_spectral_grid(), 0.0, 1.0), DomainError);
}

TEST(HermiteGauss, CentreAndWidthRescale) {
  const auto grid = FrequencyGrid::symmetric(12.0, 4096);
  const auto u = hermite_gauss_mode(2, grid, 1.5, 0.7);
  EXPECT_NEAR(u.norm(), 1.0, 1e-9);
  const auto v = hermite_gauss_mode(0, grid, 1.5, 0.7);
  EXPECT_LT(std::abs(inner_product(u, v)), 1e-8);
}

// --- Schmidt coefficients and photon statistics ----------------------------

TEST(GeometricWeights, Examples) {
  const auto single = geometric_schmidt_weights(0.0, 5);
  EXPECT_EQ(single, (std::vector<double>{1, 0, 0, 0, 0}));
  const auto pair = geometric_schmidt_weights(0.5, 2);
  EXPECT_NEAR(pair[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(pair[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(geometric_schmidt_weights(0.8, 30)[0], 0.20024789488686307, 1e-14);
}

TEST(GeometricWeights, DomainErrors) {
  EXPECT_THROW(geometric_schmidt_weights(1.0, 3), DomainError);
  EXPECT_THROW(geometric_schmidt_weights(-0.1, 3), DomainError);
  EXPECT_THROW(geometric_schmidt_weights(0.5, 0), DomainError);
}

TEST(GeometricWeights, SumToOneAndDecrease) {
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    const auto l = geometric_schmidt_weights(r, 40);
    EXPECT_NEAR(std::accumulate(l.begin(), l.end(), 0.0), 1.0, 1e-12);
    for (std::size_t n = 1; n < l.size(); ++n) EXPECT_LE(l[n], l[n - 1]);
  }
}

TEST(PhotonNumber, Examples) {
  EXPECT_EQ(mode_photon_number(0.0, 0.3), 0.0);
  EXPECT_TRUE(testing::rel_near(mode_photon_number(4.39, 1.0), 1625.2193317812393, 1e-13));
  EXPECT_TRUE(testing::rel_near(mode_photon_number(6.59, 1.0), 132415.74864814584, 1e-13));
  EXPECT_TRUE(testing::rel_near(mode_photon_number(0.3, 1.0), 0.09273260912113384, 1e-13));
  EXPECT_THROW(mode_photon_number(-1.0, 0.5), DomainError);
  EXPECT_THROW(mode_photon_number(1.0, 1.5), DomainError);
}

TEST(PhotonNumber, MonotoneInOrder) {
  const SchmidtSpectrum sp(5.0, geometric_schmidt_weights(0.6, 10));
  const auto n = sp.photon_numbers();
  for (std::size_t k = 1; k < n.size(); ++k) EXPECT_LE(n[k], n[k - 1]);
}

TEST(WeightFractions, Examples) {
  EXPECT_EQ(mode_weight_fractions(std::vector<double>{3, 1}), (std::vector<double>{0.75, 0.25}));
  EXPECT_EQ(mode_weight_fractions(std::vector<double>{7, 0, 0}), (std::vector<double>{1, 0, 0}));
  const SchmidtSpectrum sp(5.0, geometric_schmidt_weights(0.6, 10));
  const auto f = mode_weight_fractions(sp.photon_numbers());
  EXPECT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), 1.0, 1e-12);
  EXPECT_THROW(mode_weight_fractions(std::vector<double>{0, 0}), DomainError);
  EXPECT_THROW(mode_weight_fractions(std::vector<double>{1, -1}), DomainError);
}

TEST(SchmidtSpectrum, ValidatesCoefficients) {
  EXPECT_THROW(SchmidtSpectrum(1.0, {0.5, 0.6}), DomainError);        // increasing
  EXPECT_THROW(SchmidtSpectrum(1.0, {0.5, 0.4}), DomainError);        // sum != 1
  EXPECT_THROW(SchmidtSpectrum(1.0, {1.2, -0.2}), DomainError);       // negative
  EXPECT_THROW(SchmidtSpectrum(-1.0, {1.0}), DomainError);            // G < 0
  EXPECT_THROW(SchmidtSpectrum(1.0, {}), DomainError);
  EXPECT_THROW(SchmidtSpectrum(1.0, {1.0}, 0.0, 0.0), DomainError);   // width
  EXPECT_NO_THROW(SchmidtSpectrum(1.0, {0.5, 0.5}));
}

TEST(SchmidtSpectrum, LeadingSqueezingFixesG) {
  const auto l = geometric_schmidt_weights(0.5, 10);
  const auto sp = SchmidtSpectrum::from_leading_squeezing(4.39, l);
  EXPECT_NEAR(sp.squeezing(0), 4.39, 1e-14);
  EXPECT_NEAR(sp.G(), 4.39 / std::sqrt(l[0]), 1e-14);
  EXPECT_THROW(sp.squeezing(10), IndexError);
}

TEST(SchmidtSpectrum, ModeSetFollowsGeometry) {
  const SchmidtSpectrum sp(1.0, geometric_schmidt_weights(0.5, 4));
  const auto modes = schmidt_mode_set(sp, default_spectral_grid());
  ASSERT_EQ(modes.size(), 4u);
  for (const auto& m : modes) EXPECT_NEAR(m.norm(), 1.0, 1e-9);
}

}  // namespace
}  // namespace pulsegate
