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

#include "paulishape/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "paulishape/errors.hpp"

namespace ps {

namespace {

constexpr double kSigmaFloor = 1e-4;
constexpr double kPi = 3.14159265358979323846;

// model(d, params, value, gradient)
using ModelFn = std::function<void(double, const Eigen::VectorXd&, double&, Eigen::VectorXd&)>;

struct LmOutcome {
  Eigen::VectorXd params;
  Eigen::MatrixXd covariance;
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;
};

double weighted_cost(std::span<const FitPoint> pts, const ModelFn& model,
                     const Eigen::VectorXd& p) {
  double cost = 0.0;
  Eigen::VectorXd grad(p.size());
  for (const auto& pt : pts) {
    double f;
    model(pt.d, p, f, grad);
    const double w = 1.0 / std::max(pt.sigma, kSigmaFloor);
    const double r = (pt.y - f) * w;
    cost += r * r;
  }
  return cost;
}

LmOutcome levenberg_marquardt(std::span<const FitPoint> pts, const ModelFn& model,
                              Eigen::VectorXd p, int max_iter = 400) {
  const int np = static_cast<int>(p.size());
  const int m = static_cast<int>(pts.size());
  Eigen::MatrixXd jac(m, np);
  Eigen::VectorXd resid(m);
  Eigen::VectorXd grad(np);

  auto evaluate = [&](const Eigen::VectorXd& params) {
    for (int k = 0; k < m; ++k) {
      double f;
      model(pts[k].d, params, f, grad);
      const double w = 1.0 / std::max(pts[k].sigma, kSigmaFloor);
      resid(k) = (pts[k].y - f) * w;
      jac.row(k) = grad.transpose() * w;
    }
  };

  double lambda = 1e-3;
  evaluate(p);
  double cost = resid.squaredNorm();
  LmOutcome out;
  int it = 0;
  for (; it < max_iter; ++it) {
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * resid;
    if (jtr.lpNorm<Eigen::Infinity>() < 1e-14) {
      out.converged = true;
      break;
    }
    Eigen::MatrixXd damped = jtj;
    for (int i = 0; i < np; ++i) damped(i, i) += lambda * std::max(jtj(i, i), 1e-12);
    const Eigen::VectorXd step = damped.ldlt().solve(jtr);
    const Eigen::VectorXd candidate = p + step;
    const double new_cost = weighted_cost(pts, model, candidate);
    if (new_cost < cost) {
      const double rel_step = step.norm() / std::max(p.norm(), 1e-12);
      const double rel_drop = (cost - new_cost) / std::max(cost, 1e-300);
      p = candidate;
      evaluate(p);
      cost = new_cost;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel_step < 1e-12 || rel_drop < 1e-14) {
        out.converged = true;
        break;
      }
    } else {
      lambda *= 8.0;
      if (lambda > 1e12) {
        // no improving direction at maximal damping: numerical minimum
        out.converged = true;
        break;
      }
    }
  }

  out.params = p;
  out.cost = cost;
  out.iterations = it;
  evaluate(p);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  if (lu.isInvertible())
    out.covariance = lu.inverse();
  else
    out.covariance =
        Eigen::MatrixXd::Constant(np, np, std::numeric_limits<double>::quiet_NaN());
  return out;
}

int distinct_depths(std::span<const FitPoint> pts) {
  std::set<double> ds;
  for (const auto& p : pts) ds.insert(p.d);
  return static_cast<int>(ds.size());
}

void exp_model(double d, const Eigen::VectorXd& p, double& f, Eigen::VectorXd& g) {
  const double a = p(0), r = p(1);
  const double rd = std::pow(std::max(r, 1e-12), d);
  f = a * rd;
  g(0) = rd;
  g(1) = d == 0.0 ? 0.0 : a * d * std::pow(std::max(r, 1e-12), d - 1.0);
}

void cos_model(double d, const Eigen::VectorXd& p, double& f, Eigen::VectorXd& g) {
  const double a = p(0), r = p(1), w = p(2), del = p(3);
  const double rd = std::pow(std::max(r, 1e-12), d);
  const double phase = w * d - del;
  const double c = std::cos(phase), s = std::sin(phase);
  f = a * rd * c;
  g(0) = rd * c;
  g(1) = d == 0.0 ? 0.0 : a * d * std::pow(std::max(r, 1e-12), d - 1.0) * c;
  g(2) = -a * rd * s * d;
  g(3) = a * rd * s;
}

}  // namespace

FitResult fit_exponential(std::span<const FitPoint> points) {
  if (distinct_depths(points) < 3)
    throw ValidationError("exponential fit needs at least 3 distinct depths");
  bool above_floor = false;
  for (const auto& p : points) above_floor |= std::abs(p.y) > 3.0 * p.sigma;
  if (!above_floor)
    throw ValidationError("all points are at the noise floor; nothing to fit");

  // Log-linear regression on the positive points seeds (A, r).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const auto& p : points) {
    if (p.y <= 1e-6) continue;
    const double ly = std::log(p.y);
    sx += p.d;
    sy += ly;
    sxx += p.d * p.d;
    sxy += p.d * ly;
    ++cnt;
  }
  double a0 = 0.9, r0 = 0.95;
  if (cnt >= 2 && sxx * cnt - sx * sx > 1e-12) {
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    const double inter = (sy - slope * sx) / cnt;
    r0 = std::clamp(std::exp(slope), 1e-3, 1.05);
    a0 = std::clamp(std::exp(inter), 1e-3, 1.5);
  }

  Eigen::VectorXd p0(2);
  p0 << a0, r0;
  const LmOutcome lm = levenberg_marquardt(points, exp_model, p0);

  FitResult res;
  res.model = FitModel::Exponential;
  res.A = lm.params(0);
  res.r = lm.params(1);
  res.covariance = lm.covariance;
  res.sigma_A = std::sqrt(std::max(lm.covariance(0, 0), 0.0));
  res.sigma_r = std::sqrt(std::max(lm.covariance(1, 1), 0.0));
  res.residual_norm = std::sqrt(lm.cost);
  res.iterations = lm.iterations;
  res.converged = lm.converged;
  if (!(res.r > 0.0 && res.r <= 1.05)) {
    res.converged = false;
    res.message = "decay rate outside (0, 1.05]";
  }
  return res;
}

FitResult fit_damped_cosine(std::span<const FitPoint> points, double omega_guess) {
  if (distinct_depths(points) < 6)
    throw ValidationError("damped-cosine fit needs at least 6 distinct depths");
  if (omega_guess <= 0.0) throw ValidationError("omega guess must be positive");
  double dmin = points.front().d, dmax = points.front().d;
  for (const auto& p : points) {
    dmin = std::min(dmin, p.d);
    dmax = std::max(dmax, p.d);
  }
  if ((dmax - dmin) * omega_guess < 2.0 * kPi)
    throw ValidationError("depth range spans less than one oscillation period of the guess");

  double amp0 = 0.0;
  for (const auto& p : points) amp0 = std::max(amp0, std::abs(p.y));
  amp0 = std::clamp(amp0, 0.1, 1.5);

  FitResult best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (double wg : {omega_guess, 0.5 * omega_guess, 2.0 * omega_guess}) {
    Eigen::VectorXd p0(4);
    p0 << amp0, 1.0, wg, 0.0;
    const LmOutcome lm = levenberg_marquardt(points, cos_model, p0);

    FitResult res;
    res.model = FitModel::DampedCosine;
    res.A = lm.params(0);
    res.r = lm.params(1);
    res.omega = lm.params(2);
    res.delta = lm.params(3);
    // Canonicalize the cosine symmetries (A, w, d) -> (-A, w, d +- pi) and
    // (w, d) -> (-w, -d) toward A > 0, omega in (0, pi).
    if (res.A < 0) {
      res.A = -res.A;
      res.delta += res.delta > 0 ? -kPi : kPi;
    }
    if (res.omega < 0) {
      res.omega = -res.omega;
      res.delta = -res.delta;
    }
    res.covariance = lm.covariance;
    res.sigma_A = std::sqrt(std::max(lm.covariance(0, 0), 0.0));
    res.sigma_r = std::sqrt(std::max(lm.covariance(1, 1), 0.0));
    res.sigma_omega = std::sqrt(std::max(lm.covariance(2, 2), 0.0));
    res.sigma_delta = std::sqrt(std::max(lm.covariance(3, 3), 0.0));
    res.residual_norm = std::sqrt(lm.cost);
    res.iterations = lm.iterations;
    res.converged = lm.converged;
    if (!(res.r > 0.0 && res.r <= 1.05 && res.omega > 0.0 && res.omega < kPi &&
          std::abs(res.delta) < 0.5 * kPi)) {
      res.converged = false;
      res.message = "parameters outside admissible ranges";
    }
    const double rank = res.converged ? lm.cost : lm.cost + 1e6;
    if (rank < best_cost) {
      best_cost = rank;
      best = res;
    }
    if (best.converged && wg == omega_guess) break;  // first start succeeded
  }
  return best;
}

}  // namespace ps
