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

#include <stdexcept>
#include <string>

namespace pulsegate {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative width,
/// ratio outside [0, 1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A frequency grid does not cover the support of a function placed on it.
class GridCoverageError : public Error {
 public:
  using Error::Error;
};

/// Two mode functions live on different grids.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Projection coefficients violate sum |mu|^2 = 1.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Shapes, mode counts or index maps that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A numerical factorization (SVD, eigensolver) did not converge.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation lost more weight than the caller allowed.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A computed result violates a physical invariant (unitarity, uncertainty
/// relation, conservation law) beyond tolerance.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario configuration. `path()` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace pulsegate
