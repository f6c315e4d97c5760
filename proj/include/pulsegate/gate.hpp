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

// Mode-transformation matrices of the sum-frequency gate.
//
// Ordering contract: index 0 is the sum-frequency mode C, indices 1..M are the
// matched Schmidt modes in the order their projections are given. A gate
// matrix U acts on annihilation operators, a_out = U a_in.

#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pulsegate/error.hpp"
#include "pulsegate/grid.hpp"

namespace pulsegate {

/// Receives non-fatal diagnostics (e.g. renormalized projections).
inline std::function<void(const std::string&)>& warning_handler() {
  static std::function<void(const std::string&)> handler = [](const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return handler;
}

inline constexpr double kProjectionTolerance = 1e-6;

struct GateMatrix {
  Eigen::MatrixXcd entries;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
  cplx operator()(std::size_t r, std::size_t c) const { return entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }

  /// max |U U^dagger - I|.
  double unitarity_defect() const {
    const Eigen::MatrixXcd d = entries * entries.adjoint() - Eigen::MatrixXcd::Identity(entries.rows(), entries.cols());
    return d.cwiseAbs().maxCoeff();
  }

  GateMatrix operator*(const GateMatrix& rhs) const { return GateMatrix{entries * rhs.entries}; }
};

/// Returns mu rescaled to unit norm. Deviations of sum |mu|^2 from 1 up to
/// kProjectionTolerance are corrected (with a warning above 1e-12); larger
/// ones are rejected.
inline std::vector<cplx> normalize_projections(std::span<const cplx> mu) {
  if (mu.empty()) throw DimensionError("at least one projection required");
  double sum = 0.0;
  for (const auto& m : mu) sum += std::norm(m);
  const double deviation = std::abs(sum - 1.0);
  if (!(deviation <= kProjectionTolerance)) {
    std::ostringstream msg;
    msg << "projections violate the normalization condition sum |mu_n|^2 = 1 (got " << sum << ")";
    throw NormalizationError(msg.str());
  }
  if (deviation > 1e-12) {
    std::ostringstream msg;
    msg << "renormalizing projections (sum |mu_n|^2 = " << sum << ")";
    warning_handler()(msg.str());
  }
  std::vector<cplx> out(mu.begin(), mu.end());
  const double scale = 1.0 / std::sqrt(sum);
  for (auto& m : out) m *= scale;
  return out;
}

/// Beamsplitter angle, projections mu_n and the Schmidt orders they refer to.
struct GateConfig {
  double theta = 0.0;
  std::vector<cplx> projections;
  std::vector<int> matched_orders;

  GateConfig() = default;
  GateConfig(double theta_, std::vector<cplx> mu, std::vector<int> orders)
      : theta(theta_), matched_orders(std::move(orders)) {
    if (mu.size() != matched_orders.size()) throw DimensionError("GateConfig: one projection per matched order");
    std::set<int> seen;
    for (int n : matched_orders) {
      if (n < 0) throw DomainError("GateConfig: matched orders must be non-negative");
      if (!seen.insert(n).second) throw DomainError("GateConfig: matched orders must be distinct");
    }
    projections = normalize_projections(mu);
  }

  std::size_t matched_count() const noexcept { return projections.size(); }
};

/// Overlaps mu_n = <u_n|Phi> together with the captured norm sum |mu_n|^2.
struct ProjectionResult {
  std::vector<cplx> mu;
  double captured = 0.0;
  /// 1 - captured; non-negligible values mean the mode set should be extended.
  double remainder = 0.0;
  bool complete = false;
};

inline ProjectionResult projections(const ModeFunction& signal_mode, std::span<const ModeFunction> schmidt_modes,
                                    double tolerance = kProjectionTolerance) {
  ProjectionResult r;
  r.mu.reserve(schmidt_modes.size());
  for (const auto& u : schmidt_modes) {
    r.mu.push_back(inner_product(u, signal_mode));
    r.captured += std::norm(r.mu.back());
  }
  r.remainder = 1.0 - r.captured;
  r.complete = r.remainder <= tolerance;
  return r;
}

/// [[cos, sin], [-sin, cos]].
inline GateMatrix single_mode_gate(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXcd u(2, 2);
  u << c, s, -s, c;
  return GateMatrix{u};
}

/// Rotation by theta in the (C, D) plane, D = sum mu_n A_n:
///   row 0 = [cos, mu_1 sin, ..., mu_M sin]
///   row n = [-conj(mu_n) sin, delta_nm + conj(mu_n) mu_m (cos - 1)]
inline GateMatrix multimode_gate(double theta, std::span<const cplx> projections_in) {
  const std::vector<cplx> mu = normalize_projections(projections_in);
  const auto m = static_cast<Eigen::Index>(mu.size());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m + 1, m + 1);
  u(0, 0) = c;
  for (Eigen::Index k = 0; k < m; ++k) {
    u(0, k + 1) = mu[k] * s;
    u(k + 1, 0) = -std::conj(mu[k]) * s;
    for (Eigen::Index l = 0; l < m; ++l) u(k + 1, l + 1) += std::conj(mu[k]) * mu[l] * (c - 1.0);
  }
  return GateMatrix{u};
}

inline GateMatrix multimode_gate(const GateConfig& config) { return multimode_gate(config.theta, config.projections); }

/// Phi_R = -conj(mu_2) u_1 + conj(mu_1) u_2, normalized; orthogonal to Phi.
inline ModeFunction residual_mode(std::span<const cplx> projections_in, std::span<const ModeFunction> schmidt_modes) {
  if (projections_in.size() != 2 || schmidt_modes.size() != 2)
    throw DimensionError("residual_mode: defined for exactly two matched modes");
  const std::vector<cplx> mu = normalize_projections(projections_in);
  const std::vector<cplx> coeffs{-std::conj(mu[1]), std::conj(mu[0])};
  return linear_combination(coeffs, schmidt_modes).normalized();
}

/// extraction * rotation * embedding == multimode_gate(theta, mu).
struct GateFactorization {
  GateMatrix embedding;   // (C, A_1, A_2) -> (C, D, R)
  GateMatrix rotation;    // theta-rotation of (C, D), R fixed
  GateMatrix extraction;  // (C, D, R) -> (C, A_1, A_2)

  GateMatrix product() const { return extraction * rotation * embedding; }
};

inline GateFactorization decompose_gate(double theta, std::span<const cplx> projections_in) {
  if (projections_in.size() != 2) throw DimensionError("decompose_gate: defined for exactly two matched modes");
  const std::vector<cplx> mu = normalize_projections(projections_in);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(3, 3);
  e(0, 0) = 1.0;
  e(1, 1) = mu[0];
  e(1, 2) = mu[1];
  e(2, 1) = -std::conj(mu[1]);
  e(2, 2) = std::conj(mu[0]);
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(3, 3);
  r.topLeftCorner(2, 2) = single_mode_gate(theta).entries;
  return GateFactorization{GateMatrix{e}, GateMatrix{r}, GateMatrix{Eigen::MatrixXcd(e.adjoint())}};
}

}  // namespace pulsegate
