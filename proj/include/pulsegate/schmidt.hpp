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

// Schmidt-mode profiles and photon statistics of a squeezed-vacuum seed.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "pulsegate/error.hpp"
#include "pulsegate/grid.hpp"

namespace pulsegate {

/// Whether Hermite-Gauss mode n carries the constant factor i^n.
enum class PhaseConvention { Real, ImaginaryPowers };

/// Global phase (radians) that `convention` attaches to mode `order`.
inline double mode_phase(int order, PhaseConvention convention) noexcept {
  return convention == PhaseConvention::ImaginaryPowers ? 0.5 * kPi * static_cast<double>(order % 4) : 0.0;
}

/// i^n without trigonometric round-off.
inline cplx imaginary_power(int n) noexcept {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

namespace detail {

// Normalized Hermite function psi_n(x) by the three-term recurrence; stable for
// the orders used here (n < 100).
inline double hermite_function(int n, double x) noexcept {
  double prev = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return prev;
  double cur = std::sqrt(2.0) * x * prev;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Mass of psi_n^2 on [a, a + length] by composite Simpson.
inline double hermite_mass(int n, double a, double length) noexcept {
  constexpr int kIntervals = 4000;
  const double h = length / kIntervals;
  double acc = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double f = std::pow(hermite_function(n, a + h * i), 2);
    acc += f * ((i == 0 || i == kIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
  }
  return acc * h / 3.0;
}

}  // namespace detail

/// Mass of the order-n Hermite-Gauss mode lying outside the grid.
inline double hermite_gauss_tail_mass(int n, const FrequencyGrid& grid, double center, double width) {
  const double right = (grid.stop() - center) / width;
  const double left = (center - grid.start()) / width;
  const double span = 2.0 * std::sqrt(2.0 * n + 1.0) + 20.0;
  // psi_n^2 is even in x, so the left tail equals mass on [left, left + span].
  return detail::hermite_mass(n, right, span) + detail::hermite_mass(n, left, span);
}

/// Normalized Hermite-Gauss function u_n(w) = psi_n((w - center) / width) / sqrt(width),
/// optionally multiplied by i^n.
inline ModeFunction hermite_gauss_mode(int n, const FrequencyGrid& grid, double center, double width,
                                       PhaseConvention convention = PhaseConvention::ImaginaryPowers) {
  if (n < 0) throw DomainError("hermite_gauss_mode: order must be non-negative");
  if (!(width > 0.0)) throw DomainError("hermite_gauss_mode: width must be positive");
  const double tail = hermite_gauss_tail_mass(n, grid, center, width);
  if (tail > 1e-8) {
    std::ostringstream msg;
    msg << "hermite_gauss_mode: grid too narrow for order " << n << " (tail mass " << tail << " > 1e-8)";
    throw GridCoverageError(msg.str());
  }
  const cplx phase = convention == PhaseConvention::ImaginaryPowers ? imaginary_power(n) : cplx{1.0, 0.0};
  const double scale = 1.0 / std::sqrt(width);
  std::vector<cplx> values(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i)
    values[i] = phase * (scale * detail::hermite_function(n, (grid.at(i) - center) / width));
  return ModeFunction(grid, std::move(values));
}

/// Truncated geometric Schmidt coefficients (1 - r) r^n / (1 - r^count).
inline std::vector<double> geometric_schmidt_weights(double ratio, std::size_t count) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw DomainError("geometric_schmidt_weights: ratio must lie in [0, 1)");
  if (count < 1) throw DomainError("geometric_schmidt_weights: count must be >= 1");
  const double total = 1.0 - std::pow(ratio, static_cast<double>(count));
  std::vector<double> out(count);
  double power = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = (1.0 - ratio) * power / total;
    power *= ratio;
  }
  return out;
}

/// N_n = sinh^2(G sqrt(lambda_n)).
inline double mode_photon_number(double G, double lambda) {
  if (!(G >= 0.0)) throw DomainError("mode_photon_number: G must be non-negative");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mode_photon_number: lambda must lie in [0, 1]");
  return std::pow(std::sinh(G * std::sqrt(lambda)), 2);
}

/// Lambda_n = N_n / sum_k N_k.
inline std::vector<double> mode_weight_fractions(std::span<const double> photon_numbers) {
  double total = 0.0;
  for (double n : photon_numbers) {
    if (!(n >= 0.0)) throw DomainError("mode_weight_fractions: photon numbers must be non-negative");
    total += n;
  }
  if (!(total > 0.0)) throw DomainError("mode_weight_fractions: all photon numbers are zero");
  std::vector<double> out;
  out.reserve(photon_numbers.size());
  for (double n : photon_numbers) out.push_back(n / total);
  return out;
}

/// Squeezing parameter G, Schmidt coefficients and mode geometry of the seed.
class SchmidtSpectrum {
 public:
  SchmidtSpectrum(double G, std::vector<double> lambdas, double mode_center = 0.0, double mode_width = 1.0)
      : G_(G), lambdas_(std::move(lambdas)), center_(mode_center), width_(mode_width) {
    if (!(G_ >= 0.0) || !std::isfinite(G_)) throw DomainError("SchmidtSpectrum: G must be finite and non-negative");
    if (lambdas_.empty()) throw DomainError("SchmidtSpectrum: at least one Schmidt coefficient required");
    if (!(width_ > 0.0)) throw DomainError("SchmidtSpectrum: mode width must be positive");
    double sum = 0.0;
    for (std::size_t n = 0; n < lambdas_.size(); ++n) {
      if (!(lambdas_[n] >= 0.0)) throw DomainError("SchmidtSpectrum: lambda_n must be non-negative");
      if (n > 0 && lambdas_[n] > lambdas_[n - 1]) throw DomainError("SchmidtSpectrum: lambda_n must be non-increasing");
      sum += lambdas_[n];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DomainError("SchmidtSpectrum: Schmidt coefficients must sum to 1");
  }

  /// Chooses G so that the leading mode has squeezing g0 = G sqrt(lambda_0).
  static SchmidtSpectrum from_leading_squeezing(double g0, std::vector<double> lambdas, double mode_center = 0.0,
                                                double mode_width = 1.0) {
    if (lambdas.empty() || !(lambdas.front() > 0.0))
      throw DomainError("SchmidtSpectrum: leading Schmidt coefficient must be positive");
    const double G = g0 / std::sqrt(lambdas.front());
    return SchmidtSpectrum(G, std::move(lambdas), mode_center, mode_width);
  }

  double G() const noexcept { return G_; }
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  double mode_center() const noexcept { return center_; }
  double mode_width() const noexcept { return width_; }
  std::size_t mode_count() const noexcept { return lambdas_.size(); }

  /// g_n = G sqrt(lambda_n).
  double squeezing(std::size_t n) const {
    if (n >= lambdas_.size()) throw IndexError("SchmidtSpectrum: mode order out of range");
    return G_ * std::sqrt(lambdas_[n]);
  }

  std::vector<double> squeezings() const {
    std::vector<double> g(lambdas_.size());
    for (std::size_t n = 0; n < g.size(); ++n) g[n] = squeezing(n);
    return g;
  }

  std::vector<double> photon_numbers() const {
    std::vector<double> out(lambdas_.size());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = mode_photon_number(G_, lambdas_[n]);
    return out;
  }

 private:
  double G_;
  std::vector<double> lambdas_;
  double center_;
  double width_;
};

/// Hermite-Gauss profiles u_0 .. u_{K-1} of a spectrum on `grid`.
inline std::vector<ModeFunction> schmidt_mode_set(const SchmidtSpectrum& spectrum, const FrequencyGrid& grid,
                                                  PhaseConvention convention = PhaseConvention::ImaginaryPowers) {
  std::vector<ModeFunction> modes;
  modes.reserve(spectrum.mode_count());
  for (std::size_t n = 0; n < spectrum.mode_count(); ++n)
    modes.push_back(
        hermite_gauss_mode(static_cast<int>(n), grid, spectrum.mode_center(), spectrum.mode_width(), convention));
  return modes;
}

/// 2048 points spanning +-8 mode widths.
inline FrequencyGrid default_spectral_grid() { return FrequencyGrid::symmetric(8.0, 2048); }

}  // namespace pulsegate
