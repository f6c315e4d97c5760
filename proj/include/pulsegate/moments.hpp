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

// Zero-mean multimode Gaussian states in terms of the normal moments
// M[m][n] = <a_m^dagger a_n> and anomalous moments S[m][n] = <a_m a_n>.
//
// Quadratures are X = (a + a^dagger)/sqrt(2), P = (a - a^dagger)/(i sqrt(2)),
// so the vacuum variance is 1/2. Fourth moments follow from Wick's theorem:
//   Var(N_i)       = M_ii + M_ii^2 + |S_ii|^2
//   Cov(N_i, N_j)  = |M_ij|^2 + |S_ij|^2          (i != j)

#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pulsegate/error.hpp"
#include "pulsegate/gate.hpp"
#include "pulsegate/schmidt.hpp"

namespace pulsegate {

enum class ModeKind { SumFrequency, Signal, Idler };

struct ModeLabel {
  ModeKind kind = ModeKind::Signal;
  int order = 0;

  static ModeLabel sum_frequency() { return {ModeKind::SumFrequency, 0}; }
  static ModeLabel signal(int n) { return {ModeKind::Signal, n}; }
  static ModeLabel idler(int n) { return {ModeKind::Idler, n}; }

  bool operator==(const ModeLabel&) const = default;

  std::string to_string() const {
    switch (kind) {
      case ModeKind::SumFrequency: return "SF";
      case ModeKind::Signal: return "A" + std::to_string(order);
      case ModeKind::Idler: return "B" + std::to_string(order);
    }
    return "?";
  }
};

/// Zero-mean Gaussian state held both as complex moments (M, S) and as the
/// real covariance V of (x_1..x_N, p_1..p_N). The two carry the same state;
/// V is kept separately because a strongly squeezed quadrature, e^{-2g}/2,
/// is a small difference of large numbers when formed from M and S.
class GaussianMoments {
 public:
  GaussianMoments(Eigen::MatrixXcd normal, Eigen::MatrixXcd anomalous, std::vector<ModeLabel> labels)
      : normal_(std::move(normal)), anomalous_(std::move(anomalous)), labels_(std::move(labels)) {
    validate_moments();
    covariance_ = covariance_from_moments();
  }

  /// As above with the quadrature covariance supplied; it must agree with
  /// (M, S) up to rounding.
  GaussianMoments(Eigen::MatrixXcd normal, Eigen::MatrixXcd anomalous, std::vector<ModeLabel> labels,
                  Eigen::MatrixXd covariance)
      : normal_(std::move(normal)),
        anomalous_(std::move(anomalous)),
        labels_(std::move(labels)),
        covariance_(std::move(covariance)) {
    validate_moments();
    const auto n2 = static_cast<Eigen::Index>(2 * labels_.size());
    if (covariance_.rows() != n2 || covariance_.cols() != n2)
      throw DimensionError("GaussianMoments: covariance shape does not match label count");
    if ((covariance_ - covariance_from_moments()).cwiseAbs().maxCoeff() > 1e-9 * moment_scale())
      throw InvariantError("GaussianMoments: covariance disagrees with the complex moments");
  }

  static GaussianMoments vacuum(std::vector<ModeLabel> labels) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    return GaussianMoments(Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n), std::move(labels));
  }

  std::size_t mode_count() const noexcept { return labels_.size(); }
  const Eigen::MatrixXcd& normal() const noexcept { return normal_; }
  const Eigen::MatrixXcd& anomalous() const noexcept { return anomalous_; }
  const std::vector<ModeLabel>& labels() const noexcept { return labels_; }

  cplx normal(std::size_t m, std::size_t n) const { return normal_(idx(m), idx(n)); }
  cplx anomalous(std::size_t m, std::size_t n) const { return anomalous_(idx(m), idx(n)); }

  std::size_t index_of(const ModeLabel& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw IndexError("GaussianMoments: no mode labelled " + label.to_string());
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool contains(const ModeLabel& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  /// Reduced state on the listed modes (in the listed order).
  GaussianMoments subset(std::span<const std::size_t> modes) const {
    const auto k = static_cast<Eigen::Index>(modes.size());
    const auto n = static_cast<Eigen::Index>(labels_.size());
    Eigen::MatrixXcd m(k, k), s(k, k);
    Eigen::MatrixXd v(2 * k, 2 * k);
    std::vector<ModeLabel> labels;
    for (Eigen::Index a = 0; a < k; ++a) {
      labels.push_back(labels_.at(modes[a]));
      const auto ia = static_cast<Eigen::Index>(modes[a]);
      for (Eigen::Index b = 0; b < k; ++b) {
        const auto ib = static_cast<Eigen::Index>(modes[b]);
        m(a, b) = normal(modes[a], modes[b]);
        s(a, b) = anomalous(modes[a], modes[b]);
        v(a, b) = covariance_(ia, ib);
        v(a, k + b) = covariance_(ia, n + ib);
        v(k + a, b) = covariance_(n + ia, ib);
        v(k + a, k + b) = covariance_(n + ia, n + ib);
      }
    }
    return GaussianMoments(std::move(m), std::move(s), std::move(labels), std::move(v));
  }

  /// Symmetrized covariance of (x_1..x_N, p_1..p_N), x = (a + a^dagger)/sqrt 2.
  const Eigen::MatrixXd& quadrature_covariance() const noexcept { return covariance_; }

  /// Smallest Williamson eigenvalue; physical states have >= 1/2.
  double min_symplectic_eigenvalue() const {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (n == 0) return 0.5;
    const Eigen::MatrixXd v = quadrature_covariance();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    if (es.info() != Eigen::Success) throw DecompositionError("covariance eigen-decomposition failed");
    if (es.eigenvalues().minCoeff() <= 0.0) return 0.0;
    const Eigen::MatrixXd root = es.operatorSqrt();
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    // i * sqrt(V) Omega sqrt(V) is Hermitian with eigenvalues +-nu_k.
    const Eigen::MatrixXcd h = cplx(0.0, 1.0) * (root * omega * root).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h, Eigen::EigenvaluesOnly);
    if (hs.info() != Eigen::Success) throw DecompositionError("symplectic spectrum computation failed");
    return hs.eigenvalues().cwiseAbs().minCoeff();
  }

  bool is_physical(double tolerance = 1e-9) const { return min_symplectic_eigenvalue() >= 0.5 - tolerance; }

 private:
  Eigen::Index idx(std::size_t m) const {
    if (m >= labels_.size()) throw IndexError("GaussianMoments: mode index out of range");
    return static_cast<Eigen::Index>(m);
  }

  double moment_scale() const {
    if (labels_.empty()) return 1.0;
    return 1.0 + std::max(normal_.cwiseAbs().maxCoeff(), anomalous_.cwiseAbs().maxCoeff());
  }

  void validate_moments() const {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (normal_.rows() != n || normal_.cols() != n || anomalous_.rows() != n || anomalous_.cols() != n)
      throw DimensionError("GaussianMoments: matrix shape does not match label count");
    const double scale = moment_scale();
    if ((normal_ - normal_.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw InvariantError("GaussianMoments: normal moment matrix is not Hermitian");
    if ((anomalous_ - anomalous_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw InvariantError("GaussianMoments: anomalous moment matrix is not symmetric");
  }

  // Vxx = 1/2 + Re(M + S), Vpp = 1/2 + Re(M - S), Vxp = Im(M + S).
  Eigen::MatrixXd covariance_from_moments() const {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    Eigen::MatrixXd v(2 * n, 2 * n);
    const Eigen::MatrixXd id = 0.5 * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXcd sum = normal_ + anomalous_;
    const Eigen::MatrixXcd diff = normal_ - anomalous_;
    v.topLeftCorner(n, n) = id + sum.real();
    v.bottomRightCorner(n, n) = id + diff.real();
    v.topRightCorner(n, n) = sum.imag();
    v.bottomLeftCorner(n, n) = sum.imag().transpose();
    return v;
  }

  Eigen::MatrixXcd normal_;
  Eigen::MatrixXcd anomalous_;
  std::vector<ModeLabel> labels_;
  Eigen::MatrixXd covariance_;
};

/// Independent single-mode squeezed vacua with per-mode squeezing g_n:
/// M_nn = sinh^2 g_n, S_nn = sinh g_n cosh g_n. With `include_sf` the SF mode
/// is prepended in vacuum (index 0).
inline GaussianMoments single_mode_squeezed_state(std::span<const double> gains, bool include_sf) {
  const std::size_t off = include_sf ? 1 : 0;
  const auto n = static_cast<Eigen::Index>(gains.size() + off);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n), s = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  std::vector<ModeLabel> labels;
  if (include_sf) labels.push_back(ModeLabel::sum_frequency());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k + off);
    m(i, i) = std::pow(std::sinh(gains[k]), 2);
    s(i, i) = std::sinh(gains[k]) * std::cosh(gains[k]);
    v(i, i) = 0.5 * std::exp(2.0 * gains[k]);
    v(n + i, n + i) = 0.5 * std::exp(-2.0 * gains[k]);
    labels.push_back(ModeLabel::signal(static_cast<int>(k)));
  }
  return GaussianMoments(std::move(m), std::move(s), std::move(labels), std::move(v));
}

inline GaussianMoments squeezed_vacuum_state(const SchmidtSpectrum& spectrum, bool include_sf_vacuum) {
  const auto g = spectrum.squeezings();
  return single_mode_squeezed_state(g, include_sf_vacuum);
}

/// Twin beams: signal n paired with idler n, layout [SF?, A_0..A_{K-1}, B_0..B_{K-1}].
inline GaussianMoments twin_beam_from_gains(std::span<const double> gains, bool include_sf) {
  const std::size_t off = include_sf ? 1 : 0;
  const std::size_t k = gains.size();
  const auto n = static_cast<Eigen::Index>(2 * k + off);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n), s = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  std::vector<ModeLabel> labels;
  if (include_sf) labels.push_back(ModeLabel::sum_frequency());
  for (std::size_t q = 0; q < k; ++q) labels.push_back(ModeLabel::signal(static_cast<int>(q)));
  for (std::size_t q = 0; q < k; ++q) labels.push_back(ModeLabel::idler(static_cast<int>(q)));
  for (std::size_t q = 0; q < k; ++q) {
    const auto a = static_cast<Eigen::Index>(off + q);
    const auto b = static_cast<Eigen::Index>(off + k + q);
    const double sh = std::sinh(gains[q]);
    const double ch = std::cosh(gains[q]);
    m(a, a) = m(b, b) = sh * sh;
    s(a, b) = s(b, a) = sh * ch;
    const double c2 = 0.5 * std::cosh(2.0 * gains[q]);
    const double s2 = 0.5 * std::sinh(2.0 * gains[q]);
    v(a, a) = v(b, b) = v(n + a, n + a) = v(n + b, n + b) = c2;
    v(a, b) = v(b, a) = s2;
    v(n + a, n + b) = v(n + b, n + a) = -s2;
  }
  return GaussianMoments(std::move(m), std::move(s), std::move(labels), std::move(v));
}

inline GaussianMoments twin_beam_state(const SchmidtSpectrum& spectrum, bool include_sf = false) {
  const auto g = spectrum.squeezings();
  return twin_beam_from_gains(g, include_sf);
}

/// a_out = U a_in on the modes listed in `mode_map` (gate row/column k acts on
/// state mode mode_map[k]); identity elsewhere. M -> U* M U^T, S -> U S U^T.
inline GaussianMoments apply_gate(const GaussianMoments& state, const GateMatrix& gate,
                                  std::span<const std::size_t> mode_map) {
  if (gate.dim() != mode_map.size()) throw DimensionError("apply_gate: gate dimension does not match mode map");
  std::set<std::size_t> seen;
  for (auto m : mode_map) {
    if (m >= state.mode_count()) throw IndexError("apply_gate: mode map index out of range");
    if (!seen.insert(m).second) throw DimensionError("apply_gate: mode map collision");
  }
  const auto n = static_cast<Eigen::Index>(state.mode_count());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t r = 0; r < mode_map.size(); ++r)
    for (std::size_t c = 0; c < mode_map.size(); ++c)
      u(static_cast<Eigen::Index>(mode_map[r]), static_cast<Eigen::Index>(mode_map[c])) = gate(r, c);
  Eigen::MatrixXcd m = u.conjugate() * state.normal() * u.transpose();
  Eigen::MatrixXcd s = u * state.anomalous() * u.transpose();
  m = (0.5 * (m + m.adjoint())).eval();
  s = (0.5 * (s + s.transpose())).eval();
  // (x, p) transform with the real symplectic image of U.
  Eigen::MatrixXd r(2 * n, 2 * n);
  r << u.real(), -u.imag(), u.imag(), u.real();
  Eigen::MatrixXd v = r * state.quadrature_covariance() * r.transpose();
  v = (0.5 * (v + v.transpose())).eval();
  return GaussianMoments(std::move(m), std::move(s), state.labels(), std::move(v));
}

inline double photon_number(const GaussianMoments& state, std::size_t mode) { return state.normal(mode, mode).real(); }

struct QuadratureVariances {
  double x = 0.5;
  double p = 0.5;
};

inline QuadratureVariances quadrature_variances(const GaussianMoments& state, std::size_t mode) {
  if (mode >= state.mode_count()) throw IndexError("quadrature_variances: mode index out of range");
  const auto i = static_cast<Eigen::Index>(mode);
  const auto n = static_cast<Eigen::Index>(state.mode_count());
  const auto& v = state.quadrature_covariance();
  return {v(i, i), v(n + i, n + i)};
}

inline double uncertainty_product(const GaussianMoments& state, std::size_t mode) {
  const auto q = quadrature_variances(state, mode);
  return q.x * q.p;
}

inline double photon_number_variance(const GaussianMoments& state, std::size_t mode) {
  const double n = state.normal(mode, mode).real();
  return n + n * n + std::norm(state.anomalous(mode, mode));
}

inline double photon_number_covariance(const GaussianMoments& state, std::size_t a, std::size_t b) {
  if (a == b) return photon_number_variance(state, a);
  return std::norm(state.normal(a, b)) + std::norm(state.anomalous(a, b));
}

/// Var(N_a - N_b).
inline double number_difference_variance(const GaussianMoments& state, std::size_t a, std::size_t b) {
  if (a == b) throw DomainError("number_difference_variance: modes must be distinct");
  return photon_number_variance(state, a) + photon_number_variance(state, b) -
         2.0 * photon_number_covariance(state, a, b);
}

/// Var(N_a - N_b) / (<N_a> + <N_b>).
inline double nrf(const GaussianMoments& state, std::size_t a, std::size_t b) {
  if (a == b) throw DomainError("nrf: modes must be distinct");
  const double total = photon_number(state, a) + photon_number(state, b);
  if (!(total > 0.0)) throw DomainError("nrf: both modes are in vacuum");
  return number_difference_variance(state, a, b) / total;
}

struct Observables {
  std::vector<ModeLabel> labels;
  std::vector<double> photon_numbers;
  std::vector<QuadratureVariances> quadratures;
  Eigen::MatrixXd number_covariance;
};

inline Observables observables(const GaussianMoments& state) {
  Observables o;
  o.labels = state.labels();
  const std::size_t n = state.mode_count();
  o.number_covariance.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    o.photon_numbers.push_back(photon_number(state, i));
    o.quadratures.push_back(quadrature_variances(state, i));
    for (std::size_t j = 0; j < n; ++j)
      o.number_covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          photon_number_covariance(state, i, j);
  }
  return o;
}

/// Photon-number bookkeeping across a gate. `mode_map[0]` is the SF mode and
/// mode_map[1..] the matched Schmidt modes, as passed to apply_gate.
struct ConservationReport {
  double signal_in = 0.0;      // <D^dagger D> before the gate
  double signal_out = 0.0;     // <D^dagger D> after
  double sf_out = 0.0;
  double sf_in = 0.0;
  double residual_in = 0.0;    // photons of the matched span orthogonal to D
  double residual_in_closed_form = 0.0;  // sum (1 - |mu_k|^2) N_k (diagonal input)
  double signal_residual = 0.0;          // N_s^out + N_SF^out - N_s^in - N_SF^in
  double residual_mode_residual = 0.0;   // sum N_k^out - N_s^out - N_R^in
  double closed_form_residual = 0.0;     // N_R^in - sum (1 - |mu_k|^2) N_k^in
  double total_residual = 0.0;           // trace change over SF + matched modes

  double max_abs() const {
    return std::max({std::abs(signal_residual), std::abs(residual_mode_residual), std::abs(total_residual)});
  }
};

inline ConservationReport conservation_report(const GaussianMoments& state_in, const GaussianMoments& state_out,
                                              const GateConfig& config, std::span<const std::size_t> mode_map) {
  if (state_in.labels() != state_out.labels()) throw DimensionError("conservation_report: mode layouts differ");
  if (mode_map.size() != config.matched_count() + 1)
    throw DimensionError("conservation_report: mode map must list SF plus every matched mode");
  const auto& mu = config.projections;
  auto signal_number = [&](const GaussianMoments& st) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < mu.size(); ++k)
      for (std::size_t l = 0; l < mu.size(); ++l)
        acc += std::conj(mu[k]) * mu[l] * st.normal(mode_map[k + 1], mode_map[l + 1]);
    return acc.real();
  };
  auto matched_total = [&](const GaussianMoments& st) {
    double acc = 0.0;
    for (std::size_t k = 1; k < mode_map.size(); ++k) acc += photon_number(st, mode_map[k]);
    return acc;
  };
  ConservationReport r;
  r.signal_in = signal_number(state_in);
  r.signal_out = signal_number(state_out);
  r.sf_in = photon_number(state_in, mode_map[0]);
  r.sf_out = photon_number(state_out, mode_map[0]);
  r.residual_in = matched_total(state_in) - r.signal_in;
  for (std::size_t k = 0; k < mu.size(); ++k)
    r.residual_in_closed_form += (1.0 - std::norm(mu[k])) * photon_number(state_in, mode_map[k + 1]);
  r.signal_residual = r.signal_out + r.sf_out - r.signal_in - r.sf_in;
  r.residual_mode_residual = matched_total(state_out) - r.signal_out - r.residual_in;
  r.closed_form_residual = r.residual_in - r.residual_in_closed_form;
  r.total_residual = matched_total(state_out) + r.sf_out - matched_total(state_in) - r.sf_in;
  return r;
}

}  // namespace pulsegate
