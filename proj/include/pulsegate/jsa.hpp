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

// Two-photon amplitude F(s, x) of the SFG process, s = w_s - w_p (signal) and
// x = w_o - 2 w_p (sum frequency):
//
//   F(s, x) ~ Phi(s - x) exp(i y) sinc(y),    y = dk L / 2 = tau x / 2,
//
// with tau = L |k_p'(w_p) - k_o'(2 w_p)|. The Gaussian variant replaces
// exp(i y) sinc(y) by exp(-x^2 / (2 dw^2)), where dw is fixed by matching
// sinc(y) ~ exp(-alpha y^2):  dw = sqrt(2 / alpha) / tau.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "pulsegate/error.hpp"
#include "pulsegate/grid.hpp"
#include "pulsegate/schmidt.hpp"

namespace pulsegate {

inline constexpr double kSincGaussianAlpha = 0.193;

enum class JsaApproximation { Sinc, Gaussian };

struct DispersionParams {
  double group_delay_mismatch = 1.0;  // tau = L |k_p' - k_o'|
  double pump_width = 1.0;            // sigma
  double alpha = kSincGaussianAlpha;

  DispersionParams() = default;
  DispersionParams(double tau, double sigma, double alpha_ = kSincGaussianAlpha)
      : group_delay_mismatch(tau), pump_width(sigma), alpha(alpha_) {
    if (!(tau > 0.0)) throw DomainError("DispersionParams: group delay mismatch must be positive");
    if (!(sigma > 0.0)) throw DomainError("DispersionParams: pump width must be positive");
    if (!(alpha > 0.0)) throw DomainError("DispersionParams: alpha must be positive");
  }

  /// Parameters with sigma / dw = ratio.
  static DispersionParams from_ratio(double ratio, double sigma = 1.0, double alpha = kSincGaussianAlpha) {
    if (!(ratio > 0.0)) throw DomainError("DispersionParams: ratio must be positive");
    const double dw = sigma / ratio;
    return DispersionParams(std::sqrt(2.0 / alpha) / dw, sigma, alpha);
  }

  /// Width dw of the Gaussian phase-matching envelope.
  double dispersion_width() const { return std::sqrt(2.0 / alpha) / group_delay_mismatch; }
};

/// sigma / dw; values much larger than 1 mean the amplitude factorizes.
inline double factorization_ratio(const DispersionParams& disp) { return disp.pump_width / disp.dispersion_width(); }

struct JsaGrid {
  FrequencyGrid signal_grid;
  FrequencyGrid output_grid;
  Eigen::MatrixXcd values;  // rows: signal samples, columns: output samples

  double frobenius_norm() const { return values.norm(); }
};

namespace detail {

inline void require_coverage(const FrequencyGrid& grid, double half_width, const char* what) {
  if (grid.start() > -half_width || grid.stop() < half_width)
    throw GridCoverageError(std::string("grid does not cover +-3 widths of the ") + what);
}

inline cplx phase_matching(double x, const DispersionParams& disp, JsaApproximation approx) {
  if (approx == JsaApproximation::Gaussian) {
    const double dw = disp.dispersion_width();
    return {std::exp(-x * x / (2.0 * dw * dw)), 0.0};
  }
  const double y = 0.5 * disp.group_delay_mismatch * x;
  const double sinc = std::abs(y) < 1e-8 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
  return std::polar(sinc, y);
}

}  // namespace detail

/// Normalized (unit Frobenius norm) amplitude on the product grid. The pump
/// envelope is linearly interpolated from its samples.
inline JsaGrid two_photon_amplitude(const ModeFunction& pump, const DispersionParams& disp,
                                    const FrequencyGrid& signal_grid, const FrequencyGrid& output_grid,
                                    JsaApproximation approx) {
  detail::require_coverage(signal_grid, 3.0 * disp.pump_width, "pump envelope");
  detail::require_coverage(output_grid, 3.0 * disp.dispersion_width(), "phase-matching envelope");
  const auto ns = static_cast<Eigen::Index>(signal_grid.count());
  const auto no = static_cast<Eigen::Index>(output_grid.count());
  Eigen::MatrixXcd f(ns, no);
  std::vector<cplx> pm(static_cast<std::size_t>(no));
  for (Eigen::Index j = 0; j < no; ++j)
    pm[static_cast<std::size_t>(j)] = detail::phase_matching(output_grid.at(static_cast<std::size_t>(j)), disp, approx);
  for (Eigen::Index j = 0; j < no; ++j) {
    const double x = output_grid.at(static_cast<std::size_t>(j));
    for (Eigen::Index i = 0; i < ns; ++i)
      f(i, j) = pump.at(signal_grid.at(static_cast<std::size_t>(i)) - x) * pm[static_cast<std::size_t>(j)];
  }
  const double norm = f.norm();
  if (!(norm > 0.0)) throw GridCoverageError("two_photon_amplitude: amplitude vanishes on the grid");
  f /= norm;
  return JsaGrid{signal_grid, output_grid, std::move(f)};
}

/// Gaussian pump envelope of width sigma on a grid wide enough for s - x.
inline ModeFunction gaussian_pump(const DispersionParams& disp, const FrequencyGrid& signal_grid,
                                  const FrequencyGrid& output_grid, std::size_t samples = 8192) {
  const double reach = std::max(std::abs(signal_grid.start()), std::abs(signal_grid.stop())) +
                       std::max(std::abs(output_grid.start()), std::abs(output_grid.stop()));
  const double half = std::max(reach, 12.0 * disp.pump_width);
  return hermite_gauss_mode(0, FrequencyGrid::symmetric(half, samples), 0.0, disp.pump_width, PhaseConvention::Real);
}

struct JsaGrids {
  FrequencyGrid signal;
  FrequencyGrid output;
};

/// Default product grid: output spans +-`output_widths` dw, signal spans the
/// same plus 5 sigma.
inline JsaGrids default_jsa_grids(const DispersionParams& disp, std::size_t signal_points = 512,
                                  std::size_t output_points = 512, double output_widths = 5.0) {
  const double wo = output_widths * disp.dispersion_width();
  const double ws = wo + 5.0 * disp.pump_width;
  return {FrequencyGrid::symmetric(ws, signal_points), FrequencyGrid::symmetric(wo, output_points)};
}

/// Normalized sum-frequency wave packet (1/(pi dw^2))^(1/4) exp(-x^2/(2 dw^2)).
inline ModeFunction sum_frequency_mode(const DispersionParams& disp, const FrequencyGrid& grid) {
  const double dw = disp.dispersion_width();
  detail::require_coverage(grid, 3.0 * dw, "sum-frequency envelope");
  const double peak = std::pow(1.0 / (kPi * dw * dw), 0.25);
  std::vector<cplx> v(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double x = grid.at(i);
    v[i] = peak * std::exp(-x * x / (2.0 * dw * dw));
  }
  return ModeFunction(grid, std::move(v));
}

struct JsaDecomposition {
  std::vector<double> singular_values;  // descending
  std::vector<ModeFunction> signal_modes;
  std::vector<ModeFunction> output_modes;
  double reconstruction_error = 0.0;  // Frobenius, all retained terms

  /// K = 1 / sum sigma_k^4.
  double schmidt_number() const {
    double acc = 0.0;
    for (double s : singular_values) acc += s * s * s * s;
    return 1.0 / acc;
  }

  double leading_weight() const { return singular_values.front() * singular_values.front(); }
};

namespace detail {

inline void require_normalized(const JsaGrid& jsa) {
  if (std::abs(jsa.frobenius_norm() - 1.0) > 1e-9) throw DomainError("JSA grid is not normalized");
}

inline ModeFunction column_mode(const FrequencyGrid& grid, const Eigen::VectorXcd& col, bool conjugate) {
  std::vector<cplx> v(grid.count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const cplx c = col(static_cast<Eigen::Index>(i));
    v[i] = conjugate ? std::conj(c) : c;
  }
  return ModeFunction(grid, std::move(v)).normalized();
}

}  // namespace detail

/// SVD F = sum_k sigma_k u_k(s) v_k(x). Mode functions are renormalized under
/// trapezoidal quadrature; at most `max_modes` are returned (all singular
/// values are always reported).
inline JsaDecomposition schmidt_decompose_jsa(const JsaGrid& jsa, std::size_t max_modes = 16) {
  detail::require_normalized(jsa);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(jsa.values, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite())
    throw DecompositionError("schmidt_decompose_jsa: SVD failed");
  JsaDecomposition out;
  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const Eigen::MatrixXcd recon = svd.matrixU() * sv.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
  out.reconstruction_error = (jsa.values - recon).norm();
  const auto keep = std::min<Eigen::Index>(static_cast<Eigen::Index>(max_modes), sv.size());
  for (Eigen::Index k = 0; k < keep; ++k) {
    out.signal_modes.push_back(detail::column_mode(jsa.signal_grid, svd.matrixU().col(k), false));
    out.output_modes.push_back(detail::column_mode(jsa.output_grid, svd.matrixV().col(k), true));
  }
  return out;
}

/// Singular values only; cheaper for parameter sweeps.
inline std::vector<double> jsa_singular_values(const JsaGrid& jsa) {
  detail::require_normalized(jsa);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(jsa.values);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite())
    throw DecompositionError("jsa_singular_values: SVD failed");
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

}  // namespace pulsegate
