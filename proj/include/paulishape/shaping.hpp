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

#include <optional>
#include <vector>

#include "paulishape/ptm.hpp"

namespace ps {

/// How to fill characteristic-matrix entries that are unconstrained because
/// both the target and the implemented PTM vanish there.
struct FreeFill {
  enum class Kind { Zero, One, Constant, Matrix };
  Kind kind = Kind::Zero;
  double value = 0.0;
  std::optional<Eigen::MatrixXd> values;

  static FreeFill zero() { return {}; }
  static FreeFill one() { return {Kind::One, 1.0, std::nullopt}; }
  static FreeFill constant(double x) { return {Kind::Constant, x, std::nullopt}; }
  static FreeFill matrix(Eigen::MatrixXd m) { return {Kind::Matrix, 0.0, std::move(m)}; }
};

/// Element-wise ratio C with target = C (.) actual on the support of the
/// implemented channel. `free_mask` marks entries where both PTMs vanish and
/// C was chosen by policy rather than forced.
struct CharacteristicMatrix {
  int n = 0;
  Eigen::MatrixXd c;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> free_mask;
};

/// Throws UnreachableTargetError when |actual_ij| <= zero_threshold but
/// |target_ij| > zero_threshold: no characteristic matrix can produce a
/// nonzero entry from a structural zero.
CharacteristicMatrix characteristic_matrix(const Ptm& target, const Ptm& actual,
                                           const FreeFill& fill = FreeFill::zero(),
                                           double zero_threshold = 1e-10);

/// Quasi-probability matrix over ordered Pauli pairs (j before the gate, i
/// after). gamma = sum |Q_ij| >= |sum Q_ij|; sum Q_ij = 1 whenever the source
/// and target channels are both trace preserving.
struct QuasiProbMatrix {
  int n = 0;
  Eigen::MatrixXd q;
  double gamma = 0.0;
  double sum() const { return q.sum(); }
};

QuasiProbMatrix quasi_prob_from_matrix(int n, Eigen::MatrixXd q);

/// Q = W C W / 2^(4n), the Walsh transform of the characteristic matrix.
QuasiProbMatrix quasi_probs(const CharacteristicMatrix& c);

/// Inverse transform: C = W Q W (evaluates the realized characteristic
/// matrix of a quasi-probability matrix).
Eigen::MatrixXd characteristic_of(const QuasiProbMatrix& q);

/// The Clifford special case: q-vector with W qvec = f^alpha, correlated as
/// Q_ij = 4^-n qvec_{sigma(i) (+) j}. alpha = -1 is PEC, alpha > 0
/// probabilistic amplification. Requires every f_i > 0 when alpha < 0.
QuasiProbMatrix clifford_quasi_probs(const CliffordPauliMap& map, const Eigen::VectorXd& f,
                                     double alpha);

/// Plan that applies only the given twirl as a (true) probability
/// distribution of Pauli pairs.
QuasiProbMatrix twirl_quasi_probs(int n, TwirlSubset subset);

/// Composition of two shaping layers: Q_ij = sum_{kl} q2_kl q1_{i(+)k, j(+)l}.
/// Equals quasi_probs of the Hadamard product of the characteristic matrices,
/// and gamma(convolve) <= gamma1 * gamma2.
QuasiProbMatrix convolve(const QuasiProbMatrix& q1, const QuasiProbMatrix& q2);

/// Aggregate PTM sum_ij Q_ij PTM(P_i) g PTM(P_j) = (W Q W) (.) g.
Ptm shaped_ptm(const QuasiProbMatrix& q, const Ptm& g);

/// Sampling form of a quasi-probability matrix: categorical distribution over
/// surviving (i, j) pairs with probability |Q_ij| / gamma and outcome weight
/// gamma * sign(Q_ij). Entries below 1e-15 in magnitude are dropped and the
/// probabilities renormalized; the dropped mass is recorded.
struct ShapingPlan {
  struct Entry {
    int i = 0;
    int j = 0;
    double prob = 0.0;
    double weight = 0.0;
  };
  int n = 0;
  double gamma = 1.0;
  double dropped_mass = 0.0;
  std::vector<Entry> entries;
  std::vector<double> cdf;

  const Entry& sample(RngStream& rng) const { return entries[rng.categorical(cdf)]; }
};

ShapingPlan make_plan(const QuasiProbMatrix& q);
ShapingPlan identity_plan(int n);

nlohmann::json plan_to_json(const ShapingPlan& plan);
ShapingPlan plan_from_json(const nlohmann::json& j);

}  // namespace ps
