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

// Shared helpers for the test suites: seeded random scenarios and tolerance
// predicates.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pulsegate/grid.hpp"

namespace pulsegate::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eed'2026ULL);
  return engine;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

/// Random complex projections with sum |mu|^2 = 1.
inline std::vector<cplx> random_projections(std::size_t m) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<cplx> mu(m);
  double s = 0.0;
  for (auto& x : mu) {
    x = {n(rng()), n(rng())};
    s += std::norm(x);
  }
  for (auto& x : mu) x /= std::sqrt(s);
  return mu;
}

/// |a - b| <= rel * max(|a|, |b|, floor).
inline ::testing::AssertionResult rel_near(double a, double b, double rel, double floor = 1.0) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  if (std::abs(a - b) <= rel * scale) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << a << " vs " << b << " (rel dev " << std::abs(a - b) / scale << ", limit "
                                       << rel << ")";
}

}  // namespace pulsegate::testing
