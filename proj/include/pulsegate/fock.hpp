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

// Brute-force truncated Fock-space engine used to verify the Gaussian moments
// engine at small squeezing.
//
// Basis ordering: occupation tuples (n_0, ..., n_{M-1}) with n_k <= cutoff,
// sorted by the mixed-radix code sum_k n_k (cutoff+1)^(M-1-k), i.e. mode 0
// varies slowest. An optional charge constraint sum_k w_k n_k = q keeps only
// one superselection sector; every operator used here either preserves the
// charge or has vanishing expectation inside the sector.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include "pulsegate/error.hpp"
#include "pulsegate/gate.hpp"
#include "pulsegate/grid.hpp"
#include "pulsegate/moments.hpp"

namespace pulsegate::fock {

using SparseOperator = Eigen::SparseMatrix<cplx>;

inline constexpr std::size_t kMaxDimension = 1'000'000;
inline constexpr std::size_t kDenseLimit = 4096;
inline constexpr std::size_t kMaxModes = 6;

struct ChargeConstraint {
  std::vector<int> weights;
  int target = 0;
};

class FockSpace {
 public:
  FockSpace(std::size_t mode_count, int cutoff, std::optional<ChargeConstraint> constraint = std::nullopt)
      : modes_(mode_count), cutoff_(cutoff), constraint_(std::move(constraint)) {
    if (mode_count == 0 || mode_count > kMaxModes) throw DimensionError("FockSpace: mode count must lie in [1, 6]");
    if (cutoff < 1) throw DomainError("FockSpace: cutoff must be >= 1");
    if (constraint_ && constraint_->weights.size() != mode_count)
      throw DimensionError("FockSpace: one constraint weight per mode required");
    const double raw = std::pow(static_cast<double>(cutoff + 1), static_cast<double>(mode_count));
    if (!constraint_ && raw > static_cast<double>(kMaxDimension))
      throw DimensionError("FockSpace: dimension overflow");
    if (raw > 1e9) throw DimensionError("FockSpace: enumeration too large");
    const auto total = static_cast<std::uint64_t>(raw);
    std::vector<int> occ(modes_, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      decode(code, occ);
      if (constraint_) {
        int q = 0;
        for (std::size_t k = 0; k < modes_; ++k) q += constraint_->weights[k] * occ[k];
        if (q != constraint_->target) continue;
      }
      codes_.push_back(code);
      if (codes_.size() > kMaxDimension) throw DimensionError("FockSpace: dimension overflow");
    }
    if (codes_.empty()) throw DimensionError("FockSpace: constraint leaves an empty basis");
  }

  std::size_t mode_count() const noexcept { return modes_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t dimension() const noexcept { return codes_.size(); }
  const std::optional<ChargeConstraint>& constraint() const noexcept { return constraint_; }

  std::vector<int> occupations(std::size_t index) const {
    std::vector<int> occ(modes_);
    decode(codes_.at(index), occ);
    return occ;
  }

  int occupation(std::size_t index, std::size_t mode) const {
    std::uint64_t code = codes_[index];
    for (std::size_t k = modes_; k-- > mode + 1;) code /= static_cast<std::uint64_t>(cutoff_ + 1);
    return static_cast<int>(code % static_cast<std::uint64_t>(cutoff_ + 1));
  }

  std::optional<std::size_t> index_of(std::span<const int> occ) const {
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < modes_; ++k) {
      if (occ[k] < 0 || occ[k] > cutoff_) return std::nullopt;
      code = code * static_cast<std::uint64_t>(cutoff_ + 1) + static_cast<std::uint64_t>(occ[k]);
    }
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return std::nullopt;
    return static_cast<std::size_t>(it - codes_.begin());
  }

  std::size_t vacuum_index() const {
    const std::vector<int> zero(modes_, 0);
    auto idx = index_of(zero);
    if (!idx) throw DimensionError("FockSpace: vacuum is outside the constrained sector");
    return *idx;
  }

 private:
  void decode(std::uint64_t code, std::vector<int>& occ) const {
    for (std::size_t k = modes_; k-- > 0;) {
      occ[k] = static_cast<int>(code % static_cast<std::uint64_t>(cutoff_ + 1));
      code /= static_cast<std::uint64_t>(cutoff_ + 1);
    }
  }

  std::size_t modes_;
  int cutoff_;
  std::optional<ChargeConstraint> constraint_;
  std::vector<std::uint64_t> codes_;
};

/// One ladder operator of a monomial.
struct Ladder {
  std::size_t mode;
  bool create;
};

inline Ladder create(std::size_t mode) { return {mode, true}; }
inline Ladder annihilate(std::size_t mode) { return {mode, false}; }

/// coefficient * product of ladders, written left to right as in the
/// operator expression (the rightmost acts first).
struct Monomial {
  cplx coefficient;
  std::vector<Ladder> ladders;
};

namespace detail {

// Applies the truncated monomial to a basis tuple in place; returns the
// amplitude factor, or 0 if the result leaves the truncated space.
inline double apply_ladders(std::span<const Ladder> ladders, std::vector<int>& occ, int cutoff) {
  double factor = 1.0;
  for (std::size_t i = ladders.size(); i-- > 0;) {
    int& n = occ[ladders[i].mode];
    if (ladders[i].create) {
      if (n >= cutoff) return 0.0;
      ++n;
      factor *= std::sqrt(static_cast<double>(n));
    } else {
      if (n == 0) return 0.0;
      factor *= std::sqrt(static_cast<double>(n));
      --n;
    }
  }
  return factor;
}

}  // namespace detail

inline SparseOperator build_operator(const FockSpace& space, std::span<const Monomial> terms) {
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(space.dimension() * terms.size());
  std::vector<int> occ;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    for (const auto& term : terms) {
      occ = space.occupations(col);
      const double f = detail::apply_ladders(term.ladders, occ, space.cutoff());
      if (f == 0.0) continue;
      if (auto row = space.index_of(occ))
        triplets.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col), term.coefficient * f);
    }
  }
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseOperator op(n, n);
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

/// Theta * (D C^dagger - D^dagger C) with D = sum_k mu_k A_k; gate_modes[0] is C.
inline std::vector<Monomial> gate_generator_terms(std::span<const cplx> mu, std::span<const std::size_t> gate_modes) {
  if (gate_modes.size() != mu.size() + 1) throw DimensionError("gate generator: SF mode plus one mode per projection");
  std::vector<Monomial> terms;
  const std::size_t c = gate_modes[0];
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const std::size_t a = gate_modes[k + 1];
    terms.push_back({mu[k], {create(c), annihilate(a)}});
    terms.push_back({-std::conj(mu[k]), {create(a), annihilate(c)}});
  }
  return terms;
}

enum class Pairing { Single, Twin };

/// (g/2)(A^dagger^2 - A^2) per signal mode, or g (A^dagger B^dagger - A B) per
/// (signal, idler) pair.
inline std::vector<Monomial> squeeze_generator_terms(std::span<const double> gains, Pairing pairing,
                                                     std::span<const std::size_t> signal_modes,
                                                     std::span<const std::size_t> idler_modes = {}) {
  if (gains.size() != signal_modes.size()) throw DimensionError("squeeze generator: one gain per signal mode");
  if (pairing == Pairing::Twin && idler_modes.size() != signal_modes.size())
    throw DimensionError("squeeze generator: one idler per signal mode");
  std::vector<Monomial> terms;
  for (std::size_t k = 0; k < gains.size(); ++k) {
    const std::size_t a = signal_modes[k];
    if (pairing == Pairing::Single) {
      terms.push_back({cplx(0.5 * gains[k], 0.0), {create(a), create(a)}});
      terms.push_back({cplx(-0.5 * gains[k], 0.0), {annihilate(a), annihilate(a)}});
    } else {
      const std::size_t b = idler_modes[k];
      terms.push_back({cplx(gains[k], 0.0), {create(a), create(b)}});
      terms.push_back({cplx(-gains[k], 0.0), {annihilate(a), annihilate(b)}});
    }
  }
  return terms;
}

/// exp(t G) v for anti-Hermitian sparse G by Lanczos on H = iG with full
/// reorthogonalization and adaptive sub-stepping.
inline Eigen::VectorXcd krylov_expmv(const SparseOperator& generator, double t, Eigen::VectorXcd v,
                                     int krylov_dim = 40, double tolerance = 1e-13) {
  const auto n = generator.rows();
  const double beta0_total = v.norm();
  if (beta0_total == 0.0 || t == 0.0) return v;
  krylov_dim = static_cast<int>(std::min<Eigen::Index>(krylov_dim, n));
  double remaining = t;
  const cplx i_unit(0.0, 1.0);
  int guard = 0;
  while (std::abs(remaining) > 0.0) {
    if (++guard > 100000) throw DecompositionError("krylov_expmv: step size collapsed");
    const double beta0 = v.norm();
    Eigen::MatrixXcd basis(n, krylov_dim);
    std::vector<double> alpha, beta;
    basis.col(0) = v / beta0;
    int m = 0;
    double next_beta = 0.0;
    for (int j = 0; j < krylov_dim; ++j) {
      Eigen::VectorXcd w = i_unit * (generator * basis.col(j));
      alpha.push_back(basis.col(j).dot(w).real());
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) w -= basis.col(i).dot(w) * basis.col(i);
      next_beta = w.norm();
      m = j + 1;
      if (next_beta < 1e-12 * beta0 || j + 1 == krylov_dim) break;
      beta.push_back(next_beta);
      basis.col(j + 1) = w / next_beta;
    }
    const bool exhausted = next_beta < 1e-12 * beta0;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) tri(j, j) = alpha[static_cast<std::size_t>(j)];
    for (int j = 0; j + 1 < m; ++j) tri(j, j + 1) = tri(j + 1, j) = beta[static_cast<std::size_t>(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    if (es.info() != Eigen::Success) throw DecompositionError("krylov_expmv: tridiagonal eigensolver failed");
    const Eigen::MatrixXd& q = es.eigenvectors();
    auto propagate = [&](double tau) {
      Eigen::VectorXcd coeff(m);
      for (int k = 0; k < m; ++k) coeff(k) = std::exp(-i_unit * tau * es.eigenvalues()(k)) * q(0, k);
      return Eigen::VectorXcd(beta0 * (q.cast<cplx>() * coeff));
    };
    double tau = remaining;
    Eigen::VectorXcd y = propagate(tau);
    if (!exhausted) {
      while (next_beta * std::abs(y(m - 1)) > tolerance * beta0) {
        tau *= 0.5;
        y = propagate(tau);
      }
    }
    v = basis.leftCols(m) * y;
    remaining -= tau;
    if (std::abs(remaining) < 1e-15 * std::abs(t)) break;
  }
  return v;
}

/// exp(t G) v: dense scaling-and-squaring up to kDenseLimit, Krylov above.
inline Eigen::VectorXcd evolve(const SparseOperator& generator, double t, const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(generator.rows()) <= kDenseLimit) {
    const Eigen::MatrixXcd dense = Eigen::MatrixXcd(generator) * t;
    const Eigen::MatrixXcd u = dense.exp();
    return u * v;
  }
  return krylov_expmv(generator, t, v);
}

/// U = exp{theta (D C^dagger - D^dagger C)} as a dense matrix.
inline Eigen::MatrixXcd gate_unitary(const FockSpace& space, double theta, std::span<const cplx> mu,
                                     std::span<const std::size_t> gate_modes) {
  if (space.dimension() > kDenseLimit) throw DimensionError("gate_unitary: dimension overflow for dense unitary");
  const auto terms = gate_generator_terms(mu, gate_modes);
  const Eigen::MatrixXcd g = Eigen::MatrixXcd(build_operator(space, terms)) * theta;
  return g.exp();
}

struct FockState {
  Eigen::VectorXcd amplitudes;
  /// Probability on basis states with some occupation >= cutoff - 1.
  double leak = 0.0;
};

inline double edge_population(const FockSpace& space, const Eigen::VectorXcd& psi) {
  double acc = 0.0;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    bool edge = false;
    for (std::size_t k = 0; k < space.mode_count() && !edge; ++k) edge = space.occupation(i, k) >= space.cutoff() - 1;
    if (edge) acc += std::norm(psi(static_cast<Eigen::Index>(i)));
  }
  return acc;
}

inline FockState squeeze_state(const FockSpace& space, std::span<const double> gains, Pairing pairing,
                               std::span<const std::size_t> signal_modes, std::span<const std::size_t> idler_modes = {},
                               double max_leak = 1e-8) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi(static_cast<Eigen::Index>(space.vacuum_index())) = 1.0;
  const auto terms = squeeze_generator_terms(gains, pairing, signal_modes, idler_modes);
  psi = evolve(build_operator(space, terms), 1.0, psi);
  FockState out{psi, edge_population(space, psi)};
  if (out.leak > max_leak)
    throw TruncationError("squeeze_state: truncation leak " + std::to_string(out.leak) + " exceeds threshold");
  return out;
}

inline FockState apply_gate(const FockSpace& space, const FockState& state, double theta, std::span<const cplx> mu,
                            std::span<const std::size_t> gate_modes) {
  const auto terms = gate_generator_terms(mu, gate_modes);
  Eigen::VectorXcd psi = evolve(build_operator(space, terms), theta, state.amplitudes);
  const double leak = edge_population(space, psi);
  return FockState{std::move(psi), std::max(leak, state.leak)};
}

/// <psi| monomial |psi>.
inline cplx expectation(const FockSpace& space, const Eigen::VectorXcd& psi, const Monomial& term) {
  cplx acc{0.0, 0.0};
  std::vector<int> occ;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    const cplx amp = psi(static_cast<Eigen::Index>(col));
    if (amp == cplx{0.0, 0.0}) continue;
    occ = space.occupations(col);
    const double f = detail::apply_ladders(term.ladders, occ, space.cutoff());
    if (f == 0.0) continue;
    if (auto row = space.index_of(occ)) acc += std::conj(psi(static_cast<Eigen::Index>(*row))) * f * amp;
  }
  return term.coefficient * acc;
}

struct FockObservables {
  Eigen::VectorXd photon_numbers;
  Eigen::MatrixXd number_covariance;
  std::vector<QuadratureVariances> quadratures;
  Eigen::MatrixXcd normal;     // <a_m^dagger a_n>
  Eigen::MatrixXcd anomalous;  // <a_m a_n>
  double norm = 1.0;
};

/// Exact expectations on the truncated space.
inline FockObservables measure(const FockSpace& space, const FockState& state) {
  const auto& psi = state.amplitudes;
  const auto m = static_cast<Eigen::Index>(space.mode_count());
  FockObservables o;
  o.norm = psi.squaredNorm();
  o.photon_numbers = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const double p = std::norm(psi(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    const auto occ = space.occupations(i);
    for (Eigen::Index a = 0; a < m; ++a) {
      o.photon_numbers(a) += p * occ[static_cast<std::size_t>(a)];
      for (Eigen::Index b = 0; b < m; ++b)
        second(a, b) += p * occ[static_cast<std::size_t>(a)] * occ[static_cast<std::size_t>(b)];
    }
  }
  o.number_covariance = second - o.photon_numbers * o.photon_numbers.transpose();
  o.normal.resize(m, m);
  o.anomalous.resize(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const auto ma = static_cast<std::size_t>(a), mb = static_cast<std::size_t>(b);
      o.normal(a, b) = expectation(space, psi, {cplx(1.0, 0.0), {create(ma), annihilate(mb)}});
      o.anomalous(a, b) = expectation(space, psi, {cplx(1.0, 0.0), {annihilate(ma), annihilate(mb)}});
    }
    // <X^2> and <P^2> from (a + a^dagger)^2 / 2 and -(a - a^dagger)^2 / 2,
    // each ordering applied literally on the truncated space.
    const auto k = static_cast<std::size_t>(a);
    const cplx aa = expectation(space, psi, {1.0, {annihilate(k), annihilate(k)}});
    const cplx cc = expectation(space, psi, {1.0, {create(k), create(k)}});
    const cplx ac = expectation(space, psi, {1.0, {annihilate(k), create(k)}});
    const cplx ca = expectation(space, psi, {1.0, {create(k), annihilate(k)}});
    const cplx xa = expectation(space, psi, {1.0, {annihilate(k)}});
    const double mean_x = std::sqrt(2.0) * xa.real();
    const double mean_p = std::sqrt(2.0) * xa.imag();
    const double x2 = 0.5 * (aa + cc + ac + ca).real();
    const double p2 = -0.5 * (aa + cc - ac - ca).real();
    o.quadratures.push_back({x2 - mean_x * mean_x, p2 - mean_p * mean_p});
  }
  return o;
}

// ---------------------------------------------------------------------------
// Oracle-versus-Gaussian comparison.

struct OracleScenario {
  std::string name;
  std::vector<double> gains;  // squeezing per matched signal mode
  bool twin = false;          // pair every signal mode with an untouched idler
  double theta = 0.0;
  std::vector<cplx> projections;
  int cutoff = 24;
};

struct Tolerances {
  double relative = 1e-6;
  double absolute = 1e-8;
};

struct ComparisonRow {
  std::string quantity;
  double oracle = 0.0;
  double gaussian = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  bool pass = false;
};

struct ComparisonReport {
  std::string scenario;
  std::size_t dimension = 0;
  double leak = 0.0;
  double norm_defect = 0.0;
  double elapsed_seconds = 0.0;
  std::vector<ComparisonRow> rows;
  bool passed = false;
  Tolerances tolerances;

  /// Largest relative deviation among rows large enough for the relative
  /// criterion to apply (tiny values are judged by the absolute floor).
  double max_rel_dev() const {
    double m = 0.0;
    for (const auto& r : rows)
      if (tolerances.relative * std::max(std::abs(r.oracle), std::abs(r.gaussian)) >= tolerances.absolute)
        m = std::max(m, r.rel_dev);
    return m;
  }

  double max_abs_dev() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.abs_dev);
    return m;
  }
};

inline ComparisonReport compare_with_gaussian(const OracleScenario& sc, const Tolerances& tol = {}) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t matched = sc.gains.size();
  if (matched == 0 || sc.projections.size() != matched)
    throw DimensionError("compare_with_gaussian: one projection per matched mode");
  const std::size_t modes = 1 + matched * (sc.twin ? 2 : 1);
  std::vector<std::size_t> gate_modes(matched + 1), signal(matched), idler;
  for (std::size_t k = 0; k <= matched; ++k) gate_modes[k] = k;
  for (std::size_t k = 0; k < matched; ++k) signal[k] = k + 1;
  if (sc.twin)
    for (std::size_t k = 0; k < matched; ++k) idler.push_back(matched + 1 + k);

  std::optional<ChargeConstraint> constraint;
  if (sc.twin) {
    ChargeConstraint cc;
    cc.weights.assign(modes, 1);
    for (auto b : idler) cc.weights[b] = -1;
    constraint = cc;
  }
  const auto mu = normalize_projections(sc.projections);
  const FockSpace space(modes, sc.cutoff, constraint);
  const FockState seed = squeeze_state(space, sc.gains, sc.twin ? Pairing::Twin : Pairing::Single, signal, idler);
  const FockState out = apply_gate(space, seed, sc.theta, mu, gate_modes);
  const FockObservables fo = measure(space, out);

  const GaussianMoments g_in =
      sc.twin ? twin_beam_from_gains(sc.gains, true) : single_mode_squeezed_state(sc.gains, true);
  const GaussianMoments g_out = pulsegate::apply_gate(g_in, multimode_gate(sc.theta, mu), gate_modes);

  ComparisonReport rep;
  rep.scenario = sc.name;
  rep.tolerances = tol;
  rep.dimension = space.dimension();
  rep.leak = out.leak;
  rep.norm_defect = std::abs(fo.norm - 1.0);
  auto add = [&](std::string what, double o, double g) {
    ComparisonRow r{std::move(what), o, g, std::abs(o - g), 0.0, false};
    const double scale = std::max(std::abs(o), std::abs(g));
    r.rel_dev = scale > 0.0 ? r.abs_dev / scale : 0.0;
    r.pass = r.abs_dev <= std::max(tol.relative * scale, tol.absolute);
    rep.rows.push_back(std::move(r));
  };
  const auto& labels = g_out.labels();
  for (std::size_t i = 0; i < modes; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const std::string l = labels[i].to_string();
    add("N[" + l + "]", fo.photon_numbers(ii), photon_number(g_out, i));
    const auto q = quadrature_variances(g_out, i);
    add("dX[" + l + "]", fo.quadratures[i].x, q.x);
    add("dP[" + l + "]", fo.quadratures[i].p, q.p);
    for (std::size_t j = i; j < modes; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const std::string lj = labels[j].to_string();
      add("Cov[" + l + "," + lj + "]", fo.number_covariance(ii, jj), photon_number_covariance(g_out, i, j));
      add("|M|[" + l + "," + lj + "]", std::abs(fo.normal(ii, jj)), std::abs(g_out.normal(i, j)));
      add("|S|[" + l + "," + lj + "]", std::abs(fo.anomalous(ii, jj)), std::abs(g_out.anomalous(i, j)));
    }
  }
  if (sc.twin) {
    // Idler k against every signal mode: after a swap the correlations move
    // to the exchanged partner.
    for (std::size_t k = 0; k < matched; ++k)
      for (std::size_t s = 0; s < matched; ++s) {
        const auto b = static_cast<Eigen::Index>(idler[k]);
        const auto a = static_cast<Eigen::Index>(signal[s]);
        const double oracle = fo.number_covariance(b, b) + fo.number_covariance(a, a) - 2.0 * fo.number_covariance(a, b);
        add("Var(N[" + labels[idler[k]].to_string() + "]-N[" + labels[signal[s]].to_string() + "])", oracle,
            number_difference_variance(g_out, idler[k], signal[s]));
      }
  }
  rep.passed = rep.leak < 1e-8 && rep.norm_defect < 1e-10 &&
               std::all_of(rep.rows.begin(), rep.rows.end(), [](const ComparisonRow& r) { return r.pass; });
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pulsegate::fock
