// Copyright 2026 The paulishape developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ps {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands act on different qubit counts or incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds the supported dense-matrix budget (n > 6).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Input fails a numeric precondition (non-unitary, non-stochastic, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Named entity (Clifford, analysis, ...) is not in the supported set.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// The target PTM has a nonzero entry where the implemented channel has a
/// structural zero, so no characteristic matrix exists.
class UnreachableTargetError : public Error {
 public:
  UnreachableTargetError(const std::string& msg, int row, int col)
      : Error(msg), row(row), col(col) {}
  int row;
  int col;
};

/// A 2x2 block has real eigenvalues, so the damped-oscillation
/// parameterization does not apply.
class StrongNoiseRegimeError : public Error {
 public:
  using Error::Error;
};

/// Malformed or rejected run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ps
