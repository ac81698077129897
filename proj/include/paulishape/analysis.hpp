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

#include <array>
#include <utility>

#include "paulishape/shaping.hpp"
#include "paulishape/shotsim.hpp"

namespace ps {

/// Per-shot Fisher information of the decay rate in mu = A r^d:
/// I(r) = mu^2 / (1 - mu^2) * d^2 / r^2.
double fisher_exp(double A, double r, double d);

/// Depth dependence of the ideal-amplitude Fisher information is captured by
/// g(x) = x^2 / (4 (e^x - 1)) with x = 2 d ln(1/r); g peaks near
/// (x, g) ~ (1.59, 0.162).
double g_of_x(double x);

struct FisherOptimum {
  double x_star = 0.0;
  double g_star = 0.0;
  int d_star = 0;        // integer depth, better of floor/ceil
  double info_max = 0.0; // I at d_star with the given amplitude
  bool unbounded = false;  // r >= 1: information grows without bound
};
FisherOptimum fisher_max_exp(double A, double r);

/// Exact per-depth information about each parameter of
/// mu = A r^d cos(omega d - delta), plus their analytic bounds
/// I_delta <= A^2 and I_omega <= (A r^d d)^2.
struct DampedFisher {
  double info_r = 0.0, info_omega = 0.0, info_delta = 0.0;
  double bound_omega = 0.0, bound_delta = 0.0;
};
DampedFisher fisher_damped(double A, double r, double omega, double delta, double d);

/// Noiseless-limit concentration of the twirl schemes. Zero for commuting
/// observables and for the partial/correlated schemes; for the fully-twirled
/// gate on an anti-commuting observable the 4x4 two-copy block gives
/// Delta^2 = (V^d row 0) . (s_i^2, s_i s_j, s_j s_i, s_j^2) - (s_i cos^d)^2.
double predict_delta(TwirlKind scheme, bool observable_anticommutes, double theta, int d,
                     double s_i, double s_j);

/// The over-rotation cancellation overhead as a function of the shared free
/// block entry x, and its closed-form minimum gamma* =
/// max{|cos t / cos(t+e)|, |sin t / sin(t+e)|} at x* = sgn(cs) min{|c|,|s|}.
double gamma_example1(double theta, double epsilon, double x);
struct GammaMinimum {
  double x_star = 0.0;
  double gamma_star = 0.0;
};
GammaMinimum minimize_gamma_example1(double theta, double epsilon);

/// Cancellation overhead of the dissipative example versus the free entry x,
/// and its weak-noise limit (28|x| + 3|x-8| + |x+24|)/32, minimized at
/// gamma = 1.5, x = 0.
double gamma_example2(double epsilon, double x);
double gamma_example2_limit(double x);

/// gamma-minimizing scalar fill for the free entries inside the 2x2 block
/// structure (free entries outside the blocks stay zero). gamma is convex
/// piecewise-linear in the fill, so the exact minimum sits at a breakpoint.
struct FreeFillOptimum {
  double x_star = 0.0;
  double gamma_star = 0.0;
  CharacteristicMatrix c;
  QuasiProbMatrix q;
};
FreeFillOptimum optimize_block_free_fill(const Ptm& target, const Ptm& actual,
                                         double zero_threshold = 1e-10);

/// First-order off-diagonal response of B -> B^(1+alpha):
/// eta = (gii^(1+a) - gjj^(1+a)) / (gii - gjj), continued across the
/// coincident-diagonal limit (1+a) gii^a.
double amplification_eta(double gii, double gjj, double alpha);

/// Approximate noise amplification for the dissipative-example family: a
/// characteristic matrix built only from the Type-1 diagonal pairs and a
/// reported noise strength (first-order entries; the realized channel matches
/// U N^(1+alpha) up to O(epsilon^2)). gamma grows like 1 + alpha (1 + eps).
struct AmplificationPlan {
  double alpha = 0.0;
  double epsilon = 0.0;
  std::array<double, 4> eta{};
  CharacteristicMatrix c;
  QuasiProbMatrix q;
  double gamma = 1.0;
};
AmplificationPlan approx_amplification(const std::array<std::pair<double, double>, 4>& type1_pairs,
                                       double alpha, double epsilon_report);

/// Real matrix power through a real eigendecomposition; requires a positive
/// real spectrum.
Eigen::MatrixXd real_matrix_power(const Eigen::MatrixXd& m, double power);

/// Golden-section minimizer for unimodal functions.
double golden_section_minimize(double lo, double hi, double tol, double (*fn)(double));

}  // namespace ps
