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

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace ps {

struct FitPoint {
  double d = 0.0;      // circuit depth
  double y = 0.0;      // estimated expectation value
  double sigma = 0.0;  // standard error of y
};

enum class FitModel { Exponential, DampedCosine };

/// Weighted nonlinear least-squares result. For Exponential the model is
/// d -> A r^d; for DampedCosine it is d -> A r^d cos(omega d - delta).
/// Parameter uncertainties come from the inverse Gauss-Newton normal matrix
/// at the optimum. `converged` is false on iteration-cap exhaustion or when
/// the solution leaves the admissible ranges (r in (0, 1.05], omega in
/// (0, pi), delta in (-pi/2, pi/2)).
struct FitResult {
  FitModel model = FitModel::Exponential;
  double A = 0.0, r = 0.0, omega = 0.0, delta = 0.0;
  double sigma_A = 0.0, sigma_r = 0.0, sigma_omega = 0.0, sigma_delta = 0.0;
  Eigen::MatrixXd covariance;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string message;
};

/// Fit d -> A r^d. Requires >= 3 distinct depths and at least one point above
/// its own noise floor (|y| > 3 sigma).
FitResult fit_exponential(std::span<const FitPoint> points);

/// Fit d -> A r^d cos(omega d - delta), starting from
/// (A, r, omega, delta) = (1, 1, omega_guess, 0) with a multi-start over
/// omega in {guess/2, guess, 2 guess} if the first attempt fails. Requires
/// >= 6 distinct depths spanning at least one period of the guess frequency.
FitResult fit_damped_cosine(std::span<const FitPoint> points, double omega_guess);

}  // namespace ps
