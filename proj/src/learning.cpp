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

#include "paulishape/learning.hpp"

#include <cmath>

namespace ps {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t experiment_seed(std::uint64_t base, std::uint64_t experiment) {
  return mix64(base ^ mix64(0xE0 + experiment));
}

std::vector<FitPoint> to_points(const std::vector<DecayRecord>& records, double depth_scale = 1.0) {
  std::vector<FitPoint> pts;
  pts.reserve(records.size());
  for (const auto& r : records)
    pts.push_back({static_cast<double>(r.d) * depth_scale, r.mu_hat, r.stderr_});
  return pts;
}

}  // namespace

BlockParams block_powers_params(const Eigen::Matrix2d& b) {
  const double gii = b(0, 0), gij = b(0, 1), gji = b(1, 0), gjj = b(1, 1);
  const double disc = (gii - gjj) * (gii - gjj) + 4.0 * gij * gji;
  if (disc >= 0.0)
    throw StrongNoiseRegimeError(
        "block has real eigenvalues (strong-noise regime); no damped oscillation exists");
  const double y = 0.5 * std::sqrt(-disc);
  BlockParams p;
  p.r = std::sqrt(gii * gjj - gij * gji);
  p.omega = std::atan2(2.0 * y, gii + gjj);
  p.delta = std::atan2(gii - gjj, 2.0 * y);
  p.a = std::sqrt(-gij * gji) / y;
  return p;
}

BlockInversion invert_block_params(double r, double omega, double delta) {
  if (!(omega > 0.0 && omega < kPi))
    throw ValidationError("omega must lie in (0, pi)");
  if (!(std::abs(delta) < 0.5 * kPi))
    throw ValidationError("delta must lie in (-pi/2, pi/2)");
  BlockInversion inv;
  const double ratio = r * std::sin(omega) / std::cos(delta);
  inv.product = -ratio * ratio;
  inv.g_ii = r * (std::cos(omega) + std::sin(omega) * std::tan(delta));
  inv.g_jj = r * (std::cos(omega) - std::sin(omega) * std::tan(delta));
  return inv;
}

bool LearnedPtm::all_converged() const {
  for (const auto& e : type1)
    if (!e.converged) return false;
  for (const auto& e : type2)
    if (!e.converged) return false;
  for (const auto& t : type3)
    if (!t.product.converged) return false;
  return true;
}

Type1Result run_modified_cb(const Ptm& gate, const SpamModel& spam, const LearnKnobs& knobs) {
  detail::check_same_n(gate.n, 2, "run_modified_cb");
  Type1Result out;
  out.type1[0] = Estimate{1.0, 0.0, true};

  // Five experiments; the ZZ one also yields IZ and ZI from the same shots.
  struct Exp {
    int basis;
    std::vector<int> observables;
  };
  const Exp experiments[5] = {
      {1, {1, 4, 5}},  // ZZ -> ZZ, IZ, ZI
      {2, {2}},        // XX
      {3, {3}},        // YY
      {6, {6}},        // YX
      {7, {7}},        // XY
  };

  for (int e = 0; e < 5; ++e) {
    DecayExperimentSpec spec;
    spec.gate = gate;
    spec.spam = spam;
    spec.scheme = TwirlScheme{TwirlKind::FullTwirlEach, false};
    spec.initial = pauli_eigenstate(PauliIndex{2, experiments[e].basis}, +1);
    spec.basis_pauli = experiments[e].basis;
    spec.observables = experiments[e].observables;
    spec.depths = knobs.exp_depths;
    spec.n_circuits = knobs.n_circuits;
    spec.shots_per_circuit = knobs.shots_per_circuit;
    spec.seed = experiment_seed(knobs.seed, static_cast<std::uint64_t>(e));
    spec.threads = knobs.threads;
    const auto curves = run_decay_experiment(spec);
    for (const auto& curve : curves) {
      FitResult fit;
      try {
        fit = fit_exponential(to_points(curve.records));
        out.type1[curve.observable] = Estimate{fit.r, fit.sigma_r, fit.converged};
      } catch (const ValidationError&) {
        out.type1[curve.observable] = Estimate{0.0, 0.0, false};
      }
      out.fits.push_back(fit);
      out.curves.push_back({"modified_cb", e, curve.observable, curve.records});
    }
  }
  return out;
}

Type3Result run_partial_twirl_benchmark(const Ptm& gate, const SpamModel& spam,
                                        const LearnKnobs& knobs, double theta_nominal) {
  detail::check_same_n(gate.n, 2, "run_partial_twirl_benchmark");
  Type3Result out;

  // Two experiments, both preparing a product eigenstate whose components
  // cover two of the four bottom blocks. The state-prep twirl Pauli commutes
  // with both probed Paulis and anti-commutes with both partners.
  struct Exp {
    int basis;                    // weight-2 measurement basis Pauli
    int prep_twirl;               // applied with 50% before the sequence
    std::array<int, 2> observables;
  };
  const Exp experiments[2] = {
      {10, 8, {8, 10}},   // basis XZ, prep |+>|0>, probes XI and XZ
      {14, 12, {12, 14}}, // basis ZX, prep |0>|+>, probes IX and ZX
  };

  int slot = 0;
  for (int e = 0; e < 2; ++e) {
    DecayExperimentSpec spec;
    spec.gate = gate;
    spec.spam = spam;
    spec.scheme = TwirlScheme{TwirlKind::CommutingTwirlEach, true};
    spec.initial = pauli_eigenstate(PauliIndex{2, experiments[e].basis}, +1);
    spec.prep_twirl = experiments[e].prep_twirl;
    spec.basis_pauli = experiments[e].basis;
    spec.observables = {experiments[e].observables[0], experiments[e].observables[1]};
    spec.depths = knobs.cos_depths;
    spec.n_circuits = knobs.n_circuits;
    spec.shots_per_circuit = knobs.shots_per_circuit;
    spec.seed = experiment_seed(knobs.seed, 16 + static_cast<std::uint64_t>(e));
    spec.threads = knobs.threads;
    const auto curves = run_decay_experiment(spec);

    for (const auto& curve : curves) {
      FitResult fit;
      bool strong_noise = false;
      try {
        fit = fit_damped_cosine(to_points(curve.records), theta_nominal);
      } catch (const ValidationError&) {
        strong_noise = true;
      }
      LearnedPtm::Type3 t3;
      t3.i = curve.observable;
      t3.j = curve.observable + 1;
      if (!strong_noise && fit.converged) {
        const BlockInversion inv = invert_block_params(fit.r, fit.omega, fit.delta);
        // first-order propagation through -(r sin w / cos d)^2
        Eigen::Vector3d grad;
        grad(0) = 2.0 * inv.product / fit.r;
        grad(1) = 2.0 * inv.product * std::cos(fit.omega) / std::sin(fit.omega);
        grad(2) = 2.0 * inv.product * std::tan(fit.delta);
        const Eigen::Matrix3d cov = fit.covariance.block<3, 3>(1, 1);
        const double var = grad.dot(cov * grad);
        t3.product = Estimate{inv.product, std::sqrt(std::max(var, 0.0)), true};
      } else {
        t3.product = Estimate{0.0, 0.0, false};
      }
      out.type3[slot] = t3;
      out.fits[slot] = fit;
      out.curves.push_back({"partial_twirl", e, curve.observable, curve.records});
      ++slot;
    }
  }
  // order blocks by first index: (8,9), (10,11), (12,13), (14,15)
  std::sort(out.type3.begin(), out.type3.end(),
            [](const auto& a, const auto& b) { return a.i < b.i; });
  return out;
}

Estimate type2_from_ctb(const Estimate& r_hat, const Estimate& product) {
  const double radicand = r_hat.value + product.value;
  if (radicand <= 0.0 || !r_hat.converged || !product.converged) return Estimate{0.0, 0.0, false};
  const double g = std::sqrt(radicand);
  const double var = (r_hat.stderr_ * r_hat.stderr_ + product.stderr_ * product.stderr_) /
                     (4.0 * radicand);
  return Estimate{g, std::sqrt(var), true};
}

Type2Result run_correlated_twirl_benchmark(const Ptm& gate, const SpamModel& spam,
                                           const LearnKnobs& knobs,
                                           const std::array<LearnedPtm::Type3, 4>& type3) {
  detail::check_same_n(gate.n, 2, "run_correlated_twirl_benchmark");
  Type2Result out;

  auto product_for = [&type3](int obs) -> const Estimate& {
    const int block_first = obs - (obs - 8) % 2;
    for (const auto& t : type3)
      if (t.i == block_first) return t.product;
    throw ValidationError("missing Type-3 product for block " + std::to_string(block_first));
  };

  struct Exp {
    int basis;
    std::array<int, 2> observables;
  };
  const Exp experiments[4] = {
      {10, {8, 10}},   // basis XZ: XI, XZ
      {9, {9, 11}},    // basis YZ: YZ, YI
      {14, {12, 14}},  // basis ZX: IX, ZX
      {13, {13, 15}},  // basis ZY: ZY, IY
  };

  for (int e = 0; e < 4; ++e) {
    DecayExperimentSpec spec;
    spec.gate = gate;
    spec.spam = spam;
    spec.scheme = TwirlScheme{TwirlKind::CorrelatedPairs, false};
    spec.initial = pauli_eigenstate(PauliIndex{2, experiments[e].basis}, +1);
    spec.basis_pauli = experiments[e].basis;
    spec.observables = {experiments[e].observables[0], experiments[e].observables[1]};
    spec.depths = knobs.ctb_depths;
    spec.n_circuits = knobs.n_circuits;
    spec.shots_per_circuit = knobs.shots_per_circuit;
    spec.seed = experiment_seed(knobs.seed, 32 + static_cast<std::uint64_t>(e));
    spec.threads = knobs.threads;
    const auto curves = run_decay_experiment(spec);

    for (const auto& curve : curves) {
      // mu = A r^(d/2): fit the exponential in the pair count d/2.
      FitResult fit;
      Estimate r_hat{0.0, 0.0, false};
      try {
        fit = fit_exponential(to_points(curve.records, 0.5));
        r_hat = Estimate{fit.r, fit.sigma_r, fit.converged};
      } catch (const ValidationError&) {
      }
      out.type2[curve.observable - 8] = type2_from_ctb(r_hat, product_for(curve.observable));
      out.fits.push_back(fit);
      out.curves.push_back({"correlated_twirl", e, curve.observable, curve.records});
    }
  }
  return out;
}

LearningRun run_full_learning(const Ptm& gate, const SpamModel& spam, const LearnKnobs& knobs,
                              double theta_nominal) {
  LearningRun run;
  run.learned.theta_nominal = theta_nominal;

  Type1Result t1 = run_modified_cb(gate, spam, knobs);
  run.learned.type1 = t1.type1;
  run.curves.insert(run.curves.end(), t1.curves.begin(), t1.curves.end());

  Type3Result t3 = run_partial_twirl_benchmark(gate, spam, knobs, theta_nominal);
  run.learned.type3 = t3.type3;
  run.curves.insert(run.curves.end(), t3.curves.begin(), t3.curves.end());

  Type2Result t2 = run_correlated_twirl_benchmark(gate, spam, knobs, t3.type3);
  run.learned.type2 = t2.type2;
  run.curves.insert(run.curves.end(), t2.curves.begin(), t2.curves.end());

  run.learned.type4 = bound_type4(run.learned, knobs.type4_tol);
  return run;
}

Ptm assemble_learned_ptm(const LearnedPtm& learned, std::vector<std::string>* warnings) {
  Ptm g = Ptm::identity(2);
  for (int i = 1; i < 8; ++i) g.m(i, i) = learned.type1[i].value;
  for (int i = 8; i < 16; ++i) g.m(i, i) = learned.type2[i - 8].value;
  const double sign = std::sin(learned.theta_nominal) >= 0.0 ? 1.0 : -1.0;
  for (const auto& t : learned.type3) {
    double prod = t.product.value;
    if (prod > 0.0) {
      if (warnings)
        warnings->push_back("block (" + std::to_string(t.i) + "," + std::to_string(t.j) +
                            ") product is positive (outside the weak-noise regime); clamped to 0");
      prod = 0.0;
    }
    const double s = sign * std::sqrt(-prod);
    g.m(t.i, t.j) = -s;
    g.m(t.j, t.i) = s;
  }
  if (warnings) {
    for (const auto& t : learned.type3) {
      const double gii = g.m(t.i, t.i), gjj = g.m(t.j, t.j);
      const double disc = (gii - gjj) * (gii - gjj) + 4.0 * g.m(t.i, t.j) * g.m(t.j, t.i);
      if (disc >= 0.0)
        warnings->push_back("reassembled block (" + std::to_string(t.i) + "," +
                            std::to_string(t.j) + ") violates the weak-noise condition");
    }
  }
  return g;
}

std::array<LearnedPtm::Type4Bound, 4> bound_type4(const LearnedPtm& learned, double tol) {
  const Ptm base = assemble_learned_ptm(learned);
  std::array<LearnedPtm::Type4Bound, 4> bounds;

  auto min_choi = [](const Ptm& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi_matrix(g), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };
  const double base_eig = min_choi(base);

  for (int b = 0; b < 4; ++b) {
    LearnedPtm::Type4Bound& bound = bounds[b];
    bound.i = 2 * b;
    bound.j = 2 * b + 1;
    bound.base_min_choi = base_eig;
    bound.feasible = base_eig >= -tol;
    if (!bound.feasible) continue;

    auto largest_t = [&](double anti) {
      auto feasible_at = [&](double t) {
        Ptm g = base;
        g.m(bound.i, bound.j) = t;
        g.m(bound.j, bound.i) = anti * t;
        return min_choi(g) >= -tol;
      };
      // coarse bracket then bisection; 2.0 bounds any PTM entry magnitude
      double lo = 0.0, hi = 2.0;
      if (feasible_at(hi)) return hi;
      for (int step = 1; step <= 16; ++step) {
        const double t = 2.0 * step / 16.0;
        if (!feasible_at(t)) {
          hi = t;
          break;
        }
        lo = t;
      }
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible_at(mid) ? lo : hi) = mid;
      }
      return lo;
    };
    bound.t_symmetric = largest_t(+1.0);
    bound.t_antisymmetric = largest_t(-1.0);
  }
  return bounds;
}

namespace {

nlohmann::json estimate_to_json(const Estimate& e, int index) {
  return {{"index", index},
          {"label", pauli_label(2, index)},
          {"value", e.value},
          {"stderr", e.stderr_},
          {"converged", e.converged}};
}

Estimate estimate_from_json(const nlohmann::json& j) {
  return Estimate{j.at("value").get<double>(), j.at("stderr").get<double>(),
                  j.at("converged").get<bool>()};
}

}  // namespace

nlohmann::json learned_to_json(const LearnedPtm& learned) {
  nlohmann::json type1 = nlohmann::json::array();
  for (int i = 1; i < 8; ++i) type1.push_back(estimate_to_json(learned.type1[i], i));
  nlohmann::json type2 = nlohmann::json::array();
  for (int i = 8; i < 16; ++i) type2.push_back(estimate_to_json(learned.type2[i - 8], i));
  nlohmann::json type3 = nlohmann::json::array();
  for (const auto& t : learned.type3)
    type3.push_back({{"i", t.i},
                     {"j", t.j},
                     {"value", t.product.value},
                     {"stderr", t.product.stderr_},
                     {"converged", t.product.converged}});
  nlohmann::json out = {{"theta", learned.theta_nominal},
                        {"basis", "eq20"},
                        {"type1", std::move(type1)},
                        {"type2", std::move(type2)},
                        {"type3_products", std::move(type3)}};
  if (learned.type4) {
    nlohmann::json type4 = nlohmann::json::array();
    for (const auto& t : *learned.type4)
      type4.push_back({{"i", t.i},
                       {"j", t.j},
                       {"t_symmetric", t.t_symmetric},
                       {"t_antisymmetric", t.t_antisymmetric},
                       {"feasible", t.feasible},
                       {"base_min_choi", t.base_min_choi}});
    out["type4_bounds"] = std::move(type4);
  }
  return out;
}

LearnedPtm learned_from_json(const nlohmann::json& j) {
  LearnedPtm learned;
  learned.theta_nominal = j.at("theta").get<double>();
  learned.type1[0] = Estimate{1.0, 0.0, true};
  for (const auto& e : j.at("type1")) learned.type1[e.at("index").get<int>()] = estimate_from_json(e);
  for (const auto& e : j.at("type2"))
    learned.type2[e.at("index").get<int>() - 8] = estimate_from_json(e);
  int slot = 0;
  for (const auto& e : j.at("type3_products")) {
    learned.type3[slot].i = e.at("i").get<int>();
    learned.type3[slot].j = e.at("j").get<int>();
    learned.type3[slot].product = estimate_from_json(e);
    ++slot;
  }
  if (j.contains("type4_bounds")) {
    std::array<LearnedPtm::Type4Bound, 4> t4;
    int k = 0;
    for (const auto& e : j.at("type4_bounds")) {
      t4[k].i = e.at("i").get<int>();
      t4[k].j = e.at("j").get<int>();
      t4[k].t_symmetric = e.at("t_symmetric").get<double>();
      t4[k].t_antisymmetric = e.at("t_antisymmetric").get<double>();
      t4[k].feasible = e.at("feasible").get<bool>();
      t4[k].base_min_choi = e.value("base_min_choi", 0.0);
      ++k;
    }
    learned.type4 = t4;
  }
  return learned;
}

}  // namespace ps
