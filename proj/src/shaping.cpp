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

#include "paulishape/shaping.hpp"

#include <cmath>

namespace ps {

CharacteristicMatrix characteristic_matrix(const Ptm& target, const Ptm& actual,
                                           const FreeFill& fill, double zero_threshold) {
  detail::check_same_n(target.n, actual.n, "characteristic_matrix");
  const int dim = target.dim();
  CharacteristicMatrix out;
  out.n = target.n;
  out.c.resize(dim, dim);
  out.free_mask.setConstant(dim, dim, false);
  if (fill.kind == FreeFill::Kind::Matrix &&
      (fill.values->rows() != dim || fill.values->cols() != dim))
    throw DimensionError("free-fill matrix has wrong shape");

  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double a = target.m(i, j);
      const double g = actual.m(i, j);
      if (std::abs(g) > zero_threshold) {
        out.c(i, j) = a / g;
      } else if (std::abs(a) > zero_threshold) {
        throw UnreachableTargetError(
            "target entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                std::to_string(a) + " is unreachable: implemented channel vanishes there",
            i, j);
      } else {
        out.free_mask(i, j) = true;
        switch (fill.kind) {
          case FreeFill::Kind::Zero: out.c(i, j) = 0.0; break;
          case FreeFill::Kind::One: out.c(i, j) = 1.0; break;
          case FreeFill::Kind::Constant: out.c(i, j) = fill.value; break;
          case FreeFill::Kind::Matrix: out.c(i, j) = (*fill.values)(i, j); break;
        }
      }
    }
  }
  return out;
}

QuasiProbMatrix quasi_prob_from_matrix(int n, Eigen::MatrixXd q) {
  QuasiProbMatrix out;
  out.n = n;
  out.q = std::move(q);
  out.gamma = out.q.cwiseAbs().sum();
  return out;
}

QuasiProbMatrix quasi_probs(const CharacteristicMatrix& c) {
  const Eigen::MatrixXd& w = walsh_matrix(c.n).entries;
  const double scale = std::pow(4.0, 2 * c.n);
  return quasi_prob_from_matrix(c.n, (w * c.c * w) / scale);
}

Eigen::MatrixXd characteristic_of(const QuasiProbMatrix& q) {
  const Eigen::MatrixXd& w = walsh_matrix(q.n).entries;
  return w * q.q * w;
}

QuasiProbMatrix clifford_quasi_probs(const CliffordPauliMap& map, const Eigen::VectorXd& f,
                                     double alpha) {
  const int n = 2;
  const int dim = pauli_count(n);
  if (f.size() != dim) throw DimensionError("fidelity vector must have length 16");
  Eigen::VectorXd falpha(dim);
  for (int i = 0; i < dim; ++i) {
    if (f(i) <= 0.0 && alpha < 0.0)
      throw ValidationError("fidelity " + std::to_string(i) +
                            " is not positive; inverse powers are singular");
    falpha(i) = std::pow(f(i), alpha);
  }
  const Eigen::MatrixXd& w = walsh_matrix(n).entries;
  const Eigen::VectorXd qvec = w * falpha / static_cast<double>(dim);
  Eigen::MatrixXd q(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      q(i, j) = qvec(pauli_oplus(n, map.sigma[i], j)) / static_cast<double>(dim);
  return quasi_prob_from_matrix(n, std::move(q));
}

QuasiProbMatrix twirl_quasi_probs(int n, TwirlSubset subset) {
  const int dim = pauli_count(n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, dim);
  auto fill_diag = [&](const std::vector<int>& idx) {
    for (int k : idx) q(k, k) = 1.0 / static_cast<double>(idx.size());
  };
  switch (subset) {
    case TwirlSubset::Full: {
      std::vector<int> all(dim);
      for (int i = 0; i < dim; ++i) all[i] = i;
      fill_diag(all);
      break;
    }
    case TwirlSubset::CommutingZz:
      detail::check_same_n(n, 2, "twirl_quasi_probs");
      fill_diag(std::vector<int>(kCommutingWithZz.begin(), kCommutingWithZz.end()));
      break;
    case TwirlSubset::AnticommutingZz:
      detail::check_same_n(n, 2, "twirl_quasi_probs");
      fill_diag(std::vector<int>(kAntiCommutingWithZz.begin(), kAntiCommutingWithZz.end()));
      break;
  }
  return quasi_prob_from_matrix(n, std::move(q));
}

QuasiProbMatrix convolve(const QuasiProbMatrix& q1, const QuasiProbMatrix& q2) {
  detail::check_same_n(q1.n, q2.n, "convolve");
  const int dim = pauli_count(q1.n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) {
      const double w = q2.q(k, l);
      if (w == 0.0) continue;
      for (int i = 0; i < dim; ++i) {
        const int ik = pauli_oplus(q1.n, i, k);
        for (int j = 0; j < dim; ++j) out(i, j) += w * q1.q(ik, pauli_oplus(q1.n, j, l));
      }
    }
  }
  return quasi_prob_from_matrix(q1.n, std::move(out));
}

Ptm shaped_ptm(const QuasiProbMatrix& q, const Ptm& g) {
  detail::check_same_n(q.n, g.n, "shaped_ptm");
  const Eigen::MatrixXd& w = walsh_matrix(q.n).entries;
  return Ptm{g.n, ((w * q.q * w).array() * g.m.array()).matrix()};
}

ShapingPlan make_plan(const QuasiProbMatrix& q) {
  constexpr double kDropThreshold = 1e-15;
  ShapingPlan plan;
  plan.n = q.n;
  plan.gamma = q.gamma;
  double kept = 0.0;
  for (int i = 0; i < q.q.rows(); ++i) {
    for (int j = 0; j < q.q.cols(); ++j) {
      const double v = q.q(i, j);
      if (std::abs(v) < kDropThreshold) {
        plan.dropped_mass += std::abs(v);
        continue;
      }
      plan.entries.push_back({i, j, std::abs(v), q.gamma * (v < 0 ? -1.0 : 1.0)});
      kept += std::abs(v);
    }
  }
  if (plan.entries.empty()) throw ValidationError("quasi-probability matrix is entirely zero");
  double acc = 0.0;
  plan.cdf.reserve(plan.entries.size());
  for (auto& e : plan.entries) {
    e.prob /= kept;
    acc += e.prob;
    plan.cdf.push_back(acc);
  }
  plan.cdf.back() = 1.0;
  return plan;
}

ShapingPlan identity_plan(int n) {
  const int dim = pauli_count(n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, dim);
  q(0, 0) = 1.0;
  return make_plan(quasi_prob_from_matrix(n, std::move(q)));
}

nlohmann::json plan_to_json(const ShapingPlan& plan) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : plan.entries)
    entries.push_back({{"i", e.i}, {"j", e.j}, {"prob", e.prob}, {"weight", e.weight}});
  return {{"n", plan.n},
          {"basis", basis_name(plan.n)},
          {"gamma", plan.gamma},
          {"dropped_mass", plan.dropped_mass},
          {"entries", std::move(entries)}};
}

ShapingPlan plan_from_json(const nlohmann::json& j) {
  ShapingPlan plan;
  plan.n = j.at("n").get<int>();
  if (j.at("basis").get<std::string>() != basis_name(plan.n))
    throw ConfigError("plan basis tag mismatch");
  plan.gamma = j.at("gamma").get<double>();
  plan.dropped_mass = j.value("dropped_mass", 0.0);
  double acc = 0.0;
  for (const auto& e : j.at("entries")) {
    plan.entries.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("prob").get<double>(),
                            e.at("weight").get<double>()});
    acc += plan.entries.back().prob;
    plan.cdf.push_back(acc);
  }
  if (plan.entries.empty()) throw ConfigError("plan has no entries");
  if (std::abs(acc - 1.0) > 1e-9) throw ConfigError("plan probabilities do not sum to 1");
  plan.cdf.back() = 1.0;
  return plan;
}

}  // namespace ps
