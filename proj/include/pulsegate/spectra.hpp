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

// Spectral densities of the light leaving the gate.
//
// The field is expanded as a(w) = sum_n conj(u_n(w)) A_n, so that the signal
// operator D = integral Phi(w) a(w) dw equals sum_n mu_n A_n with
// mu_n = <u_n|Phi>. The density is then
//   N(w) = sum_{m,n} u_m(w) conj(u_n(w)) <A_m^dagger A_n>.
// For real mode functions this is the familiar sum u_n u_m^* <A_m^dagger A_n>.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "pulsegate/error.hpp"
#include "pulsegate/gate.hpp"
#include "pulsegate/grid.hpp"
#include "pulsegate/moments.hpp"
#include "pulsegate/parallel.hpp"
#include "pulsegate/schmidt.hpp"

namespace pulsegate {

enum class SpectralNormalization { None, ByInputPhotons, ByMax };

struct SpectralDensity {
  FrequencyGrid grid;
  std::vector<double> values;
  SpectralNormalization normalization = SpectralNormalization::None;

  double integral() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += grid.weight(i) * values[i];
    return acc;
  }

  double max() const { return *std::max_element(values.begin(), values.end()); }
};

namespace detail {

inline void apply_normalization(std::vector<double>& values, SpectralNormalization normalization, double reference) {
  double scale = 1.0;
  if (normalization == SpectralNormalization::ByInputPhotons) {
    if (!(reference > 0.0)) throw DomainError("spectral normalization by input photons needs a positive photon count");
    scale = 1.0 / reference;
  } else if (normalization == SpectralNormalization::ByMax) {
    const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    if (peak > 0.0) scale = 1.0 / peak;
  }
  if (scale != 1.0)
    for (auto& v : values) v *= scale;
}

}  // namespace detail

/// Density of the listed state modes; functions[k] is the profile of
/// state mode state_modes[k].
inline SpectralDensity spectral_density(const GaussianMoments& state, std::span<const std::size_t> state_modes,
                                        std::span<const ModeFunction> functions,
                                        SpectralNormalization normalization = SpectralNormalization::None,
                                        double reference = 0.0) {
  if (state_modes.size() != functions.size() || functions.empty())
    throw DimensionError("spectral_density: one mode function per selected state mode required");
  for (const auto& f : functions) require_same_grid(functions.front(), f);
  const std::size_t k = state_modes.size();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state.normal(state_modes[a], state_modes[b]);
  const FrequencyGrid& grid = functions.front().grid();
  std::vector<double> values(grid.count());
  const double scale = m.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < grid.count(); ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t a = 0; a < k; ++a) {
      const cplx ua = functions[a][i];
      for (std::size_t b = 0; b < k; ++b)
        acc += ua * std::conj(functions[b][i]) * m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    double v = acc.real();
    if (v < 0.0 && v > -1e-12 * (1.0 + scale)) v = 0.0;
    values[i] = v;
  }
  detail::apply_normalization(values, normalization, reference);
  return SpectralDensity{grid, std::move(values), normalization};
}

/// Signal-mode indices of `state` paired with their Hermite-Gauss profiles
/// (profiles indexed by Schmidt order).
inline std::vector<std::size_t> signal_mode_indices(const GaussianMoments& state, std::size_t order_count) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < state.mode_count(); ++i) {
    const auto& l = state.labels()[i];
    if (l.kind == ModeKind::Signal && static_cast<std::size_t>(l.order) < order_count) idx.push_back(i);
  }
  return idx;
}

inline std::vector<ModeFunction> profiles_for(const GaussianMoments& state, std::span<const std::size_t> indices,
                                              std::span<const ModeFunction> by_order) {
  std::vector<ModeFunction> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(by_order[static_cast<std::size_t>(state.labels()[i].order)]);
  return out;
}

/// Spectrum of every signal Schmidt mode of `state`.
inline SpectralDensity signal_spectral_density(const GaussianMoments& state, std::span<const ModeFunction> by_order,
                                               SpectralNormalization normalization = SpectralNormalization::None,
                                               double reference = 0.0) {
  const auto idx = signal_mode_indices(state, by_order.size());
  const auto funcs = profiles_for(state, idx, by_order);
  return spectral_density(state, idx, funcs, normalization, reference);
}

/// sum_n |u_n(w)|^2 M_nn over the signal modes (independent-mode form).
inline SpectralDensity diagonal_density(const GaussianMoments& state, std::span<const ModeFunction> by_order) {
  const auto idx = signal_mode_indices(state, by_order.size());
  if (idx.empty()) throw DimensionError("diagonal_density: state has no signal modes");
  const FrequencyGrid& grid = by_order.front().grid();
  std::vector<double> values(grid.count(), 0.0);
  for (auto m : idx) {
    const auto& u = by_order[static_cast<std::size_t>(state.labels()[m].order)];
    const double n = photon_number(state, m);
    for (std::size_t i = 0; i < grid.count(); ++i) values[i] += std::norm(u[i]) * n;
  }
  return SpectralDensity{grid, std::move(values), SpectralNormalization::None};
}

/// Cross term between the two matched modes:
///   2 Re{conj(mu_1) conj(u_1) mu_2 u_2} (cos - 1) sum_k (1 + |mu_k|^2 (cos - 1)) N_k^in.
inline SpectralDensity interference_term(const GateConfig& config, const SchmidtSpectrum& spectrum_in,
                                         std::span<const ModeFunction> by_order) {
  if (config.matched_count() != 2) throw DimensionError("interference_term: defined for exactly two matched modes");
  const auto n1 = static_cast<std::size_t>(config.matched_orders[0]);
  const auto n2 = static_cast<std::size_t>(config.matched_orders[1]);
  if (n1 >= by_order.size() || n2 >= by_order.size() || n1 >= spectrum_in.mode_count() ||
      n2 >= spectrum_in.mode_count())
    throw IndexError("interference_term: matched order outside the mode set");
  const auto& mu = config.projections;
  const double cm1 = std::cos(config.theta) - 1.0;
  const auto n_in = spectrum_in.photon_numbers();
  const double sum = (1.0 + std::norm(mu[0]) * cm1) * n_in[n1] + (1.0 + std::norm(mu[1]) * cm1) * n_in[n2];
  const auto& u1 = by_order[n1];
  const auto& u2 = by_order[n2];
  require_same_grid(u1, u2);
  std::vector<double> values(u1.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = 2.0 * (std::conj(mu[0]) * std::conj(u1[i]) * mu[1] * u2[i]).real() * cm1 * sum;
  return SpectralDensity{u1.grid(), std::move(values), SpectralNormalization::None};
}

/// Two-mode gate at fixed theta with the total interference phase swept.
struct PhaseSweepScenario {
  SchmidtSpectrum spectrum;
  int order1 = 0;
  int order2 = 1;
  double theta = 0.5 * kPi;
  double weight1 = 0.5;  // |mu_1|^2
  PhaseConvention convention = PhaseConvention::ImaginaryPowers;
  FrequencyGrid grid = default_spectral_grid();
};

/// Projections realizing total phase `delta_phi`: the phase of
/// conj(mu_1) mu_2 times the constant phase ratio of u_2 over u_1.
inline std::vector<cplx> projections_for_total_phase(int order1, int order2, double weight1, double delta_phi,
                                                     PhaseConvention convention) {
  const double relative = delta_phi - (mode_phase(order2, convention) - mode_phase(order1, convention));
  return {cplx(std::sqrt(weight1), 0.0), std::polar(std::sqrt(1.0 - weight1), relative)};
}

struct PhaseMap {
  std::vector<double> phases;
  FrequencyGrid grid;
  std::vector<std::vector<double>> rows;  // rows[k] normalized to its maximum
};

inline PhaseMap phase_sweep(const PhaseSweepScenario& sc, std::span<const double> phase_grid,
                            std::size_t workers = default_worker_count()) {
  const auto modes = schmidt_mode_set(sc.spectrum, sc.grid, sc.convention);
  const GaussianMoments seed = squeezed_vacuum_state(sc.spectrum, true);
  const std::size_t i1 = seed.index_of(ModeLabel::signal(sc.order1));
  const std::size_t i2 = seed.index_of(ModeLabel::signal(sc.order2));
  const std::vector<std::size_t> map{0, i1, i2};
  auto rows = parallel_map(
      phase_grid.size(),
      [&](std::size_t k) {
        const auto mu = projections_for_total_phase(sc.order1, sc.order2, sc.weight1, phase_grid[k], sc.convention);
        const auto out = apply_gate(seed, multimode_gate(sc.theta, mu), map);
        return signal_spectral_density(out, modes, SpectralNormalization::ByMax).values;
      },
      workers);
  return PhaseMap{std::vector<double>(phase_grid.begin(), phase_grid.end()), sc.grid, std::move(rows)};
}

struct WeightRow {
  ModeLabel label;
  double lambda_in = 0.0;
  double lambda_out = 0.0;
};

/// Weight fractions of the signal Schmidt modes before and after the gate.
inline std::vector<WeightRow> weight_redistribution(const GaussianMoments& state_in, const GaussianMoments& state_out) {
  if (state_in.labels() != state_out.labels()) throw DimensionError("weight_redistribution: mode layouts differ");
  std::vector<std::size_t> idx;
  std::vector<double> n_in, n_out;
  for (std::size_t i = 0; i < state_in.mode_count(); ++i) {
    if (state_in.labels()[i].kind != ModeKind::Signal) continue;
    idx.push_back(i);
    n_in.push_back(photon_number(state_in, i));
    n_out.push_back(std::max(0.0, photon_number(state_out, i)));
  }
  const auto f_in = mode_weight_fractions(n_in);
  const auto f_out = mode_weight_fractions(n_out);
  std::vector<WeightRow> rows;
  for (std::size_t k = 0; k < idx.size(); ++k) rows.push_back({state_in.labels()[idx[k]], f_in[k], f_out[k]});
  return rows;
}

}  // namespace pulsegate
