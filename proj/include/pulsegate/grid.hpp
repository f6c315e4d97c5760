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

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "pulsegate/error.hpp"

namespace pulsegate {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid of frequency offsets. All spectral quantities are expressed in
/// units of the seed Schmidt-mode width, relative to the carrier.
class FrequencyGrid {
 public:
  FrequencyGrid(double start, std::size_t count, double step) : start_(start), count_(count), step_(step) {
    if (count < 2) throw DomainError("FrequencyGrid: count must be >= 2");
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("FrequencyGrid: step must be positive");
    if (!std::isfinite(start)) throw DomainError("FrequencyGrid: start must be finite");
  }

  /// `count` points spanning [-half_width, half_width] inclusive.
  static FrequencyGrid symmetric(double half_width, std::size_t count) {
    if (!(half_width > 0.0)) throw DomainError("FrequencyGrid: half width must be positive");
    if (count < 2) throw DomainError("FrequencyGrid: count must be >= 2");
    return FrequencyGrid(-half_width, count, 2.0 * half_width / static_cast<double>(count - 1));
  }

  double start() const noexcept { return start_; }
  std::size_t count() const noexcept { return count_; }
  double step() const noexcept { return step_; }
  double stop() const noexcept { return at(count_ - 1); }
  double at(std::size_t i) const noexcept { return start_ + step_ * static_cast<double>(i); }

  /// Trapezoidal quadrature weight of sample i.
  double weight(std::size_t i) const noexcept { return (i == 0 || i + 1 == count_) ? 0.5 * step_ : step_; }

  std::vector<double> points() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = at(i);
    return out;
  }

  bool operator==(const FrequencyGrid& other) const noexcept {
    return count_ == other.count_ && start_ == other.start_ && step_ == other.step_;
  }

 private:
  double start_;
  std::size_t count_;
  double step_;
};

/// Complex spectral amplitude sampled on a FrequencyGrid.
class ModeFunction {
 public:
  ModeFunction(FrequencyGrid grid, std::vector<cplx> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.count()) throw DimensionError("ModeFunction: value count does not match grid");
  }

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) acc += grid_.weight(i) * std::norm(values_[i]);
    return std::sqrt(acc);
  }

  ModeFunction normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw DomainError("ModeFunction: cannot normalize a zero function");
    return scaled(cplx(1.0 / n, 0.0));
  }

  ModeFunction scaled(cplx factor) const {
    std::vector<cplx> v(values_);
    for (auto& x : v) x *= factor;
    return ModeFunction(grid_, std::move(v));
  }

  /// Linear interpolation; zero outside the grid.
  cplx at(double omega) const noexcept {
    const double pos = (omega - grid_.start()) / grid_.step();
    if (pos < 0.0 || pos > static_cast<double>(grid_.count() - 1)) return {0.0, 0.0};
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= grid_.count()) return values_.back();
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * values_[i] + t * values_[i + 1];
  }

 private:
  FrequencyGrid grid_;
  std::vector<cplx> values_;
};

inline void require_same_grid(const ModeFunction& a, const ModeFunction& b) {
  if (!(a.grid() == b.grid())) throw GridMismatchError("mode functions are sampled on different grids");
}

/// <a|b> = integral of conj(a) * b (trapezoidal rule).
inline cplx inner_product(const ModeFunction& a, const ModeFunction& b) {
  require_same_grid(a, b);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.grid().weight(i) * std::conj(a[i]) * b[i];
  return acc;
}

/// sum_k c_k f_k over functions sharing one grid.
inline ModeFunction linear_combination(std::span<const cplx> coeffs, std::span<const ModeFunction> funcs) {
  if (coeffs.size() != funcs.size() || funcs.empty())
    throw DimensionError("linear_combination: coefficient/function count mismatch");
  std::vector<cplx> v(funcs.front().size(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < funcs.size(); ++k) {
    require_same_grid(funcs.front(), funcs[k]);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += coeffs[k] * funcs[k][i];
  }
  return ModeFunction(funcs.front().grid(), std::move(v));
}

}  // namespace pulsegate
