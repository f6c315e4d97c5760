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

// Closed-form expressions for the standard gate scenarios. These are evaluated
// directly from the scalar inputs and never touch the moment matrices, so the
// moments engine can be checked against them.

#pragma once

#include <cmath>

namespace pulsegate::closed_form {

// Single matched mode, SF input in vacuum.

inline double sf_photon_number(double theta, double n_in) { return std::pow(std::sin(theta), 2) * n_in; }
inline double signal_photon_number(double theta, double n_in) { return std::pow(std::cos(theta), 2) * n_in; }

/// Matched-mode (or, with roles exchanged below, SF-mode) quadrature variances.
inline double matched_x_variance(double theta, double g) {
  return 0.5 * (std::pow(std::sin(theta), 2) + std::pow(std::cos(theta), 2) * std::exp(2.0 * g));
}
inline double matched_p_variance(double theta, double g) {
  return 0.5 * (std::pow(std::sin(theta), 2) + std::pow(std::cos(theta), 2) * std::exp(-2.0 * g));
}
inline double sf_x_variance(double theta, double g) {
  return 0.5 * (std::pow(std::cos(theta), 2) + std::pow(std::sin(theta), 2) * std::exp(2.0 * g));
}
inline double sf_p_variance(double theta, double g) {
  return 0.5 * (std::pow(std::cos(theta), 2) + std::pow(std::sin(theta), 2) * std::exp(-2.0 * g));
}

/// Product of the matched-mode variances, (1/4)(1 + sinh^2(g) sin^2(2 theta)).
inline double uncertainty_product(double theta, double g) {
  return 0.25 * (1.0 + std::pow(std::sinh(g), 2) * std::pow(std::sin(2.0 * theta), 2));
}

/// The same product with sinh^2(g/2), as it is usually quoted in print. Kept to
/// document that it differs from the product of the individual variances.
inline double uncertainty_product_half_argument(double theta, double g) {
  return 0.25 * (1.0 + std::pow(std::sinh(0.5 * g), 2) * std::pow(std::sin(2.0 * theta), 2));
}

/// NRF between signal and SF: [Var(N) cos^2 2t + N sin^2 2t] / N, Var(N) = 2N(N+1).
inline double single_mode_nrf(double theta, double n_in) {
  const double var = 2.0 * n_in * (n_in + 1.0);
  return (var * std::pow(std::cos(2.0 * theta), 2) + n_in * std::pow(std::sin(2.0 * theta), 2)) / n_in;
}

// Two matched modes with |mu_1|^2 = w1, |mu_2|^2 = w2 = 1 - w1.

inline double two_mode_signal_out(double theta, double w1, double n1, double w2, double n2) {
  return std::pow(std::cos(theta), 2) * (w1 * n1 + w2 * n2);
}
inline double two_mode_sf_out(double theta, double w1, double n1, double w2, double n2) {
  return std::pow(std::sin(theta), 2) * (w1 * n1 + w2 * n2);
}

/// N_i^out = (1-w_i) N_i + w_i cos^2 N_i - w_i w_j (cos - 1)^2 (N_i - N_j).
inline double matched_mode_out(double theta, double wi, double ni, double wj, double nj) {
  const double c = std::cos(theta);
  return (1.0 - wi) * ni + wi * c * c * ni - wi * wj * (c - 1.0) * (c - 1.0) * (ni - nj);
}

/// The part of matched_mode_out involved in the conversion, relative to N_i.
inline double converted_fraction(double theta, double wi, double ni, double wj, double nj) {
  return (matched_mode_out(theta, wi, ni, wj, nj) - (1.0 - wi) * ni) / ni;
}

/// Equal projections at theta = pi/2: (N_1 + N_2) / 4.
inline double half_conversion_matched_out(double n1, double n2) { return 0.25 * (n1 + n2); }

/// sum (1 - w_k) N_k.
inline double residual_photons(double w1, double n1, double w2, double n2) {
  return (1.0 - w1) * n1 + (1.0 - w2) * n2;
}

/// Twin beams, signal mode matched alone: Var(N_s - N_i) after the gate.
inline double twin_number_difference_variance(double theta, double g) {
  const double s2 = std::pow(std::sin(theta), 2);
  const double sh2 = std::pow(std::sinh(g), 2);
  return s2 * sh2 * (std::pow(std::cos(theta), 2) + s2 * std::pow(std::cosh(g), 2));
}

}  // namespace pulsegate::closed_form
