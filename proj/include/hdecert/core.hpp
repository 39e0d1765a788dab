// Copyright 2026 The hdecert Authors
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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hdecert {

inline constexpr const char* kVersion = "0.3.0";

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Density operator on the full bipartite space.
using DensityMatrix = Eigen::MatrixXcd;

namespace tol {
/// Closed-form equality checks.
inline constexpr double kClosedForm = 1e-10;
/// Spectra/states within this distance of unit sum/norm are silently renormalized.
inline constexpr double kRenormalize = 1e-9;
/// Entrywise hermiticity of an operator.
inline constexpr double kHermitian = 1e-10;
/// Eigenvalue slack for 0 <= Omega <= 1 and for the PPT test.
inline constexpr double kEigen = 1e-9;
/// Omega |Psi> = |Psi> check used by spectral_gap.
inline constexpr double kFixesTarget = 1e-8;
}  // namespace tol

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad dimension, r out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Request is well formed but cannot be satisfied, e.g. a separation
/// probability of 1 makes the number of tests infinite.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed or an internal consistency check tripped.
class NumericalError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace detail

/// Local dimensions of a bipartite space; operators act on C^a (x) C^b with
/// row index j * b + k for |j>|k>.
struct Dims {
  int a = 1;
  int b = 1;
  [[nodiscard]] int total() const { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

}  // namespace hdecert
