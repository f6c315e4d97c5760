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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "pulsegate/spectra.hpp"
#include "support.hpp"

namespace pulsegate {
namespace {

class SpectraTest : public ::testing::Test {
 protected:
  SchmidtSpectrum spectrum_ = SchmidtSpectrum::from_leading_squeezing(2.0, geometric_schmidt_weights(0.5, 6));
  std::vector<ModeFunction> modes_ = schmidt_mode_set(spectrum_, default_spectral_grid());

  GaussianMoments gated(double theta, const std::vector<cplx>& mu, const std::vector<int>& orders) const {
    const auto in = squeezed_vacuum_state(spectrum_, true);
    std::vector<std::size_t> map{0};
    for (int n : orders) map.push_back(in.index_of(ModeLabel::signal(n)));
    return apply_gate(in, multimode_gate(theta, mu), map);
  }
};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST_F(SpectraTest, DiagonalStateGivesIndependentModeForm) {
  const auto in = squeezed_vacuum_state(spectrum_, true);
  const auto full = signal_spectral_density(in, modes_);
  const auto diag = diagonal_density(in, modes_);
  EXPECT_LT(max_abs_diff(full.values, diag.values), 1e-12 * full.max());
  // Normalized by input photons the integral is one.
  double total = 0.0;
  for (double n : spectrum_.photon_numbers()) total += n;
  const auto normed = signal_spectral_density(in, modes_, SpectralNormalization::ByInputPhotons, total);
  EXPECT_NEAR(normed.integral(), 1.0, 1e-6);
}

TEST_F(SpectraTest, VacuumIsIdenticallyZero) {
  const SchmidtSpectrum dark(0.0, geometric_schmidt_weights(0.5, 3));
  const auto d = signal_spectral_density(squeezed_vacuum_state(dark, true), schmidt_mode_set(dark, default_spectral_grid()));
  EXPECT_EQ(*std::max_element(d.values.begin(), d.values.end()), 0.0);
}

TEST_F(SpectraTest, IntegralMatchesPhotonNumbers) {
  for (int trial = 0; trial < 10; ++trial) {
    const auto mu = testing::random_projections(2);
    const auto out = gated(testing::uniform(0.0, 2.0 * kPi), mu, {0, 3});
    const auto d = signal_spectral_density(out, modes_);
    double n = 0.0;
    for (std::size_t i = 1; i < out.mode_count(); ++i) n += photon_number(out, i);
    EXPECT_TRUE(testing::rel_near(d.integral(), n, 1e-6));
    EXPECT_GE(*std::min_element(d.values.begin(), d.values.end()), -1e-10);
  }
}

TEST_F(SpectraTest, InterferenceTermVanishesAtZeroAngle) {
  const GateConfig cfg(0.0, testing::random_projections(2), {0, 1});
  const auto t = interference_term(cfg, spectrum_, modes_);
  for (double v : t.values) ASSERT_EQ(v, 0.0);
}

TEST_F(SpectraTest, InterferenceTermVanishesAtPiForEqualWeights) {
  const double h = std::sqrt(0.5);
  const GateConfig cfg(kPi, {h, std::polar(h, 0.7)}, {0, 2});
  const auto t = interference_term(cfg, spectrum_, modes_);
  for (double v : t.values) ASSERT_NEAR(v, 0.0, 1e-12);
}

TEST_F(SpectraTest, DecompositionIntoDiagonalPlusInterference) {
  for (int trial = 0; trial < 20; ++trial) {
    const int n1 = trial % 3, n2 = n1 + 1 + trial % 2;
    const auto mu = trial == 0 ? std::vector<cplx>{std::sqrt(0.5), std::sqrt(0.5)} : testing::random_projections(2);
    const double theta = trial == 0 ? 0.5 * kPi : testing::uniform(0.0, 2.0 * kPi);
    const GateConfig cfg(theta, mu, {n1, n2});
    const auto out = gated(theta, cfg.projections, cfg.matched_orders);
    const auto full = signal_spectral_density(out, modes_);
    const auto diag = diagonal_density(out, modes_);
    const auto inter = interference_term(cfg, spectrum_, modes_);
    double defect = 0.0;
    for (std::size_t i = 0; i < full.values.size(); ++i)
      defect = std::max(defect, std::abs(full.values[i] - diag.values[i] - inter.values[i]));
    ASSERT_LT(defect, 1e-8 * full.max()) << trial;
  }
}

TEST_F(SpectraTest, InterferenceNeedsTwoModes) {
  const GateConfig cfg(0.3, {1.0}, {0});
  EXPECT_THROW(interference_term(cfg, spectrum_, modes_), DimensionError);
  const GateConfig far(0.3, {std::sqrt(0.5), std::sqrt(0.5)}, {0, 9});
  EXPECT_THROW(interference_term(far, spectrum_, modes_), IndexError);
}

TEST_F(SpectraTest, MismatchedSelectionRejected) {
  const auto in = squeezed_vacuum_state(spectrum_, true);
  const std::vector<std::size_t> idx{1, 2};
  const std::vector<ModeFunction> one{modes_[0]};
  EXPECT_THROW(spectral_density(in, idx, one), DimensionError);
}

TEST_F(SpectraTest, NormalizationModes) {
  const auto in = squeezed_vacuum_state(spectrum_, true);
  const auto m = signal_spectral_density(in, modes_, SpectralNormalization::ByMax);
  EXPECT_NEAR(m.max(), 1.0, 1e-15);
  EXPECT_THROW(signal_spectral_density(in, modes_, SpectralNormalization::ByInputPhotons, 0.0), DomainError);
}

// --- phase sweeps -----------------------------------------------------------

PhaseSweepScenario sweep_scenario(int n1, int n2) {
  PhaseSweepScenario sc{SchmidtSpectrum::from_leading_squeezing(6.59, geometric_schmidt_weights(0.5, 6)), n1, n2};
  sc.grid = FrequencyGrid::symmetric(8.0, 512);
  return sc;
}

TEST(PhaseSweep, PeriodicInTotalPhase) {
  const auto sc = sweep_scenario(0, 1);
  const std::vector<double> phases{0.3, 0.3 + 2.0 * kPi, 1.7, 1.7 + 2.0 * kPi};
  const auto map = phase_sweep(sc, phases, 2);
  EXPECT_LT(max_abs_diff(map.rows[0], map.rows[1]), 1e-12);
  EXPECT_LT(max_abs_diff(map.rows[2], map.rows[3]), 1e-12);
}

TEST(PhaseSweep, OddPairLobeFlipsAcrossPi) {
  const auto sc = sweep_scenario(0, 1);
  const std::vector<double> phases{0.0, kPi};
  const auto map = phase_sweep(sc, phases, 1);
  const std::size_t n = sc.grid.count();
  // Row at pi is the mirror image of the row at 0.
  double mirror = 0.0, asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mirror = std::max(mirror, std::abs(map.rows[0][i] - map.rows[1][n - 1 - i]));
    asym = std::max(asym, std::abs(map.rows[0][i] - map.rows[0][n - 1 - i]));
  }
  EXPECT_LT(mirror, 1e-9);
  EXPECT_GT(asym, 0.05);
  const auto peak0 = std::distance(map.rows[0].begin(), std::max_element(map.rows[0].begin(), map.rows[0].end()));
  const auto peak1 = std::distance(map.rows[1].begin(), std::max_element(map.rows[1].begin(), map.rows[1].end()));
  EXPECT_NE(peak0 < static_cast<long>(n / 2), peak1 < static_cast<long>(n / 2));
}

TEST(PhaseSweep, EvenPairStaysSymmetric) {
  const auto sc = sweep_scenario(0, 2);
  std::vector<double> phases;
  for (int k = 0; k < 9; ++k) phases.push_back(2.0 * kPi * k / 8.0);
  const auto map = phase_sweep(sc, phases, 3);
  const std::size_t n = sc.grid.count();
  for (const auto& row : map.rows)
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(row[i], row[n - 1 - i], 1e-9);
}

TEST(PhaseSweep, RowsNormalizedToUnitMaximum) {
  const auto sc = sweep_scenario(0, 1);
  const std::vector<double> phases{0.0, 1.0, 2.0};
  for (const auto& row : phase_sweep(sc, phases).rows)
    EXPECT_NEAR(*std::max_element(row.begin(), row.end()), 1.0, 1e-15);
}

TEST(PhaseSweep, TotalPhaseFoldsModePhases) {
  const auto mu = projections_for_total_phase(0, 1, 0.5, 0.0, PhaseConvention::ImaginaryPowers);
  EXPECT_NEAR(std::arg(mu[1]) - std::arg(mu[0]), -0.5 * kPi, 1e-15);
  const auto real = projections_for_total_phase(0, 1, 0.5, 0.4, PhaseConvention::Real);
  EXPECT_NEAR(std::arg(real[1]), 0.4, 1e-15);
}

TEST(PhaseSweep, DeterministicAcrossWorkerCounts) {
  const auto sc = sweep_scenario(0, 1);
  std::vector<double> phases;
  for (int k = 0; k < 7; ++k) phases.push_back(0.9 * k);
  const auto a = phase_sweep(sc, phases, 1);
  const auto b = phase_sweep(sc, phases, 4);
  for (std::size_t k = 0; k < phases.size(); ++k) EXPECT_EQ(a.rows[k], b.rows[k]);
}

// --- weight tables ----------------------------------------------------------

TEST(WeightRedistribution, BlockingLeadingModeAtFullConversion) {
  const auto sp = SchmidtSpectrum::from_leading_squeezing(4.39, geometric_schmidt_weights(0.5, 10));
  const auto in = squeezed_vacuum_state(sp, true);
  const auto out = apply_gate(in, single_mode_gate(0.5 * kPi), std::vector<std::size_t>{0, 1});
  const auto rows = weight_redistribution(in, out);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_LT(rows[0].lambda_out, 1e-9);
  std::size_t best = 0;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].lambda_out > rows[best].lambda_out) best = k;
  EXPECT_EQ(best, 1u);
}

TEST(WeightRedistribution, SwapExchangesWeights) {
  const auto sp = SchmidtSpectrum::from_leading_squeezing(6.59, geometric_schmidt_weights(0.5, 10));
  const auto in = squeezed_vacuum_state(sp, true);
  const double h = std::sqrt(0.5);
  const auto out = apply_gate(in, multimode_gate(kPi, std::vector<cplx>{h, h}), std::vector<std::size_t>{0, 1, 3});
  const auto rows = weight_redistribution(in, out);
  EXPECT_TRUE(testing::rel_near(rows[0].lambda_out, rows[2].lambda_in, 1e-9, 0.0));
  EXPECT_TRUE(testing::rel_near(rows[2].lambda_out, rows[0].lambda_in, 1e-9, 0.0));
  EXPECT_TRUE(testing::rel_near(rows[1].lambda_out, rows[1].lambda_in, 1e-9, 0.0));
}

TEST(WeightRedistribution, IdentityGateKeepsColumnsEqual) {
  const auto sp = SchmidtSpectrum(2.0, geometric_schmidt_weights(0.4, 5));
  const auto in = squeezed_vacuum_state(sp, true);
  const auto out = apply_gate(in, single_mode_gate(0.0), std::vector<std::size_t>{0, 1});
  for (const auto& r : weight_redistribution(in, out)) EXPECT_EQ(r.lambda_in, r.lambda_out);
}

}  // namespace
}  // namespace pulsegate
