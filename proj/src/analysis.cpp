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

#include "paulishape/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace ps {

namespace {
constexpr double kGolden = 0.6180339887498949;
}

double fisher_exp(double A, double r, double d) {
  if (!(r > 0.0 && r < 1.0)) throw ValidationError("fisher_exp requires 0 < r < 1");
  if (!(A > 0.0 && A <= 1.0)) throw ValidationError("fisher_exp requires 0 < A <= 1");
  const double mu = A * std::pow(r, d);
  const double denom = 1.0 - mu * mu;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return (mu * mu / denom) * (d * d) / (r * r);
}

double g_of_x(double x) {
  if (x == 0.0) return 0.0;  // x^2 / (4(e^x - 1)) ~ x/4 near 0
  return x * x / (4.0 * (std::exp(x) - 1.0));
}

double golden_section_minimize(double lo, double hi, double tol, double (*fn)(double)) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

FisherOptimum fisher_max_exp(double A, double r) {
  FisherOptimum opt;
  if (r >= 1.0) {
    opt.unbounded = true;
    return opt;
  }
  opt.x_star = golden_section_minimize(1e-6, 10.0, 1e-10, [](double x) { return -g_of_x(x); });
  opt.g_star = g_of_x(opt.x_star);
  const double d_cont = opt.x_star / (2.0 * std::log(1.0 / r));
  const int d_lo = std::max(1, static_cast<int>(std::floor(d_cont)));
  const int d_hi = std::max(1, static_cast<int>(std::ceil(d_cont)));
  const double info_lo = fisher_exp(A, r, d_lo);
  const double info_hi = fisher_exp(A, r, d_hi);
  opt.d_star = info_lo >= info_hi ? d_lo : d_hi;
  opt.info_max = std::max(info_lo, info_hi);
  return opt;
}

DampedFisher fisher_damped(double A, double r, double omega, double delta, double d) {
  const double rd = std::pow(r, d);
  const double phase = omega * d - delta;
  const double c = std::cos(phase), s = std::sin(phase);
  const double mu = A * rd * c;
  const double denom = 1.0 - mu * mu;
  DampedFisher out;
  const double dmu_dr = d == 0.0 ? 0.0 : A * d * std::pow(r, d - 1.0) * c;
  const double dmu_domega = -A * rd * d * s;
  const double dmu_ddelta = A * rd * s;
  out.info_r = dmu_dr * dmu_dr / denom;
  out.info_omega = dmu_domega * dmu_domega / denom;
  out.info_delta = dmu_ddelta * dmu_ddelta / denom;
  out.bound_omega = A * rd * d * A * rd * d;
  out.bound_delta = A * A;
  return out;
}

double predict_delta(TwirlKind scheme, bool observable_anticommutes, double theta, int d,
                     double s_i, double s_j) {
  if (scheme != TwirlKind::FullTwirlEach) return 0.0;  // logically equivalent circuits
  if (!observable_anticommutes) return 0.0;            // identity two-copy block
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix2d u;
  u << c, -s, s, c;
  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
  // (1/2) u (x) u + (1/2) u^T (x) u^T
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int e = 0; e < 2; ++e)
        for (int f = 0; f < 2; ++f)
          v(2 * a + e, 2 * b + f) = 0.5 * (u(a, b) * u(e, f) + u(b, a) * u(f, e));
  Eigen::Matrix4d vd = Eigen::Matrix4d::Identity();
  for (int k = 0; k < d; ++k) vd = vd * v;
  Eigen::Vector4d ss(s_i * s_i, s_i * s_j, s_j * s_i, s_j * s_j);
  const double mu = std::pow(c, d) * s_i;
  const double var = vd.row(0).dot(ss) - mu * mu;
  return std::sqrt(std::max(var, 0.0));
}

namespace {

// ratios cos(t)/cos(t+e) and sin(t)/sin(t+e); the implemented angle must be
// bounded away from the rotation singularities where a ratio diverges
std::pair<double, double> overrotation_ratios(double theta, double epsilon) {
  constexpr double kSingular = 1e-12;
  const double cd = std::cos(theta + epsilon);
  const double sd = std::sin(theta + epsilon);
  if (std::abs(cd) < kSingular || std::abs(sd) < kSingular)
    throw ValidationError("theta + epsilon sits at a rotation singularity");
  return {std::cos(theta) / cd, std::sin(theta) / sd};
}

}  // namespace

double gamma_example1(double theta, double epsilon, double x) {
  const auto [c, s] = overrotation_ratios(theta, epsilon);
  return 0.25 * (std::abs(1 + x + c + s) + std::abs(1 + x - c - s) + std::abs(1 - x - c + s) +
                 std::abs(1 - x + c - s));
}

GammaMinimum minimize_gamma_example1(double theta, double epsilon) {
  const auto [c, s] = overrotation_ratios(theta, epsilon);
  GammaMinimum out;
  out.gamma_star = std::max(std::abs(c), std::abs(s));
  out.x_star = (c * s >= 0 ? 1.0 : -1.0) * std::min(std::abs(c), std::abs(s));
  return out;
}

double gamma_example2(double epsilon, double x) {
  if (epsilon < 0.0 || epsilon >= 0.5)
    throw ValidationError("gamma_example2 requires epsilon in [0, 1/2)");
  const double e = epsilon;
  const double inv2 = 1.0 / (1.0 - 2.0 * e);
  const double inv1 = 1.0 / (1.0 - e);
  const double root = 16.0 / std::sqrt(1.0 - 2.0 * e);
  const double tiny = 2.0 * e * e / (1.0 - 3.0 * e + 2.0 * e * e);
  return std::abs(1 - x + inv2 + 6 * inv1) / 16.0 +
         (std::abs(1 + x + inv2 - root + 6 * inv1) + std::abs(1 + x + inv2 + root + 6 * inv1)) /
             32.0 +
         (std::abs(1 - x - inv2) + std::abs(1 + x - inv2)) / 4.0 +
         3.0 * (std::abs(x - tiny) + std::abs(x + tiny)) / 16.0;
}

double gamma_example2_limit(double x) {
  return (28.0 * std::abs(x) + 3.0 * std::abs(x - 8.0) + std::abs(x + 24.0)) / 32.0;
}

FreeFillOptimum optimize_block_free_fill(const Ptm& target, const Ptm& actual,
                                         double zero_threshold) {
  // Fill mask: free entries inside the 2x2 block structure share one scalar;
  // free entries outside the blocks stay zero.
  const int dim = target.dim();
  const CharacteristicMatrix base =
      characteristic_matrix(target, actual, FreeFill::zero(), zero_threshold);
  Eigen::MatrixXd direction = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (base.free_mask(i, j) && i / 2 == j / 2) direction(i, j) = 1.0;

  const Eigen::MatrixXd& w = walsh_matrix(target.n).entries;
  const double scale = std::pow(4.0, 2 * target.n);
  const Eigen::MatrixXd q0 = (w * base.c * w) / scale;
  const Eigen::MatrixXd qd = (w * direction * w) / scale;

  // gamma(x) = sum |q0 + x qd| is convex piecewise-linear; its minimum is at
  // a breakpoint -q0_ij / qd_ij (or gamma is constant in x).
  std::vector<double> breakpoints{0.0};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (std::abs(qd(i, j)) > 1e-14) breakpoints.push_back(-q0(i, j) / qd(i, j));

  auto gamma_at = [&](double x) { return (q0 + x * qd).cwiseAbs().sum(); };
  FreeFillOptimum opt;
  opt.x_star = 0.0;
  opt.gamma_star = gamma_at(0.0);
  for (double x : breakpoints) {
    const double g = gamma_at(x);
    if (g < opt.gamma_star - 1e-15) {
      opt.gamma_star = g;
      opt.x_star = x;
    }
  }
  Eigen::MatrixXd fill = direction * opt.x_star;
  opt.c = characteristic_matrix(target, actual, FreeFill::matrix(fill), zero_threshold);
  opt.q = quasi_probs(opt.c);
  opt.gamma_star = opt.q.gamma;
  return opt;
}

double amplification_eta(double gii, double gjj, double alpha) {
  if (gii <= 0.0 || gjj <= 0.0)
    throw ValidationError("amplification requires positive diagonal entries");
  if (std::abs(gii - gjj) < 1e-12) return (1.0 + alpha) * std::pow(gii, alpha);
  return (std::pow(gii, 1.0 + alpha) - std::pow(gjj, 1.0 + alpha)) / (gii - gjj);
}

AmplificationPlan approx_amplification(const std::array<std::pair<double, double>, 4>& type1_pairs,
                                       double alpha, double epsilon_report) {
  if (alpha < 0.0) throw ValidationError("amplification exponent must be >= 0");
  AmplificationPlan plan;
  plan.alpha = alpha;
  plan.epsilon = epsilon_report;
  for (int b = 0; b < 4; ++b)
    plan.eta[b] = amplification_eta(type1_pairs[b].first, type1_pairs[b].second, alpha);

  // First-order characteristic matrix: top blocks carry the eta couplings to
  // the (unknown) off-diagonals, bottom blocks scale the damped rotations.
  // The (0,1) entry multiplies a structural zero; 1 + alpha is the
  // conventional choice.
  const double e = epsilon_report;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(16, 16);
  c.block<2, 2>(0, 0) << 1.0, 1.0 + alpha, 1.0 + alpha, 1.0 - 2.0 * alpha * e;
  for (int b = 1; b < 4; ++b)
    c.block<2, 2>(2 * b, 2 * b) << 1.0 - alpha * e, 1.0 + alpha, 1.0 + alpha, 1.0 - alpha * e;
  for (int b = 0; b < 4; ++b)
    c.block<2, 2>(8 + 2 * b, 8 + 2 * b).setConstant(1.0 - alpha * e);

  plan.c.n = 2;
  plan.c.c = c;
  plan.c.free_mask.setConstant(16, 16, false);
  plan.q = quasi_probs(plan.c);
  plan.gamma = plan.q.gamma;
  return plan;
}

Eigen::MatrixXd real_matrix_power(const Eigen::MatrixXd& m, double power) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXcd& evals = es.eigenvalues();
  for (int i = 0; i < evals.size(); ++i) {
    if (std::abs(evals(i).imag()) > 1e-10 || evals(i).real() <= 0.0)
      throw ValidationError("matrix power requires a positive real spectrum");
  }
  Eigen::VectorXcd powered(evals.size());
  for (int i = 0; i < evals.size(); ++i) powered(i) = std::pow(evals(i).real(), power);
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::MatrixXcd result = v * powered.asDiagonal() * v.inverse();
  return result.real();
}

}  // namespace ps
