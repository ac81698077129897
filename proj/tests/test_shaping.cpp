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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "paulishape/noise.hpp"
#include "paulishape/shaping.hpp"

using namespace ps;

namespace {

// random characteristic matrix -> quasi-prob pair for algebra tests
QuasiProbMatrix random_quasi(RngStream& rng) {
  Eigen::MatrixXd c(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) c(i, j) = rng.uniform(-1.0, 1.0);
  CharacteristicMatrix cm{2, c, Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(16, 16, false)};
  return quasi_probs(cm);
}

}  // namespace

TEST_CASE("characteristic matrix of a channel against itself is all ones on support") {
  const Ptm g = lindblad_example_closed_form(0.4, 0.1);
  const CharacteristicMatrix c = characteristic_matrix(g, g, FreeFill::one());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) CHECK(c.c(i, j) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("over-rotation characteristic blocks match the closed form") {
  const double theta = 0.4, eps = 0.1;
  const Ptm target = rzz_ptm(theta);
  const Ptm actual = rzz_ptm(theta + eps);
  const CharacteristicMatrix c = characteristic_matrix(target, actual);
  const double cratio = std::cos(theta) / std::cos(theta + eps);
  const double sratio = std::sin(theta) / std::sin(theta + eps);
  for (int b = 0; b < 4; ++b) {
    const int i = 8 + 2 * b;
    CHECK(c.c(i, i) == doctest::Approx(cratio).epsilon(1e-12));
    CHECK(c.c(i, i + 1) == doctest::Approx(sratio).epsilon(1e-12));
    CHECK(c.c(i + 1, i) == doctest::Approx(sratio).epsilon(1e-12));
    CHECK(c.c(i + 1, i + 1) == doctest::Approx(cratio).epsilon(1e-12));
  }
  // top-block off-diagonals are free
  CHECK(c.free_mask(0, 1));
  CHECK(c.free_mask(2, 3));
  CHECK(!c.free_mask(8, 9));
}

TEST_CASE("unreachable target reports the offending entry") {
  Ptm target = Ptm::identity(2);
  target.m(2, 3) = 0.5;  // XX -> YY transfer
  const Ptm actual = Ptm::identity(2);  // strictly diagonal
  try {
    characteristic_matrix(target, actual);
    FAIL("expected UnreachableTargetError");
  } catch (const UnreachableTargetError& e) {
    CHECK(e.row == 2);
    CHECK(e.col == 3);
  }
}

TEST_CASE("quasi_probs of simple characteristic matrices") {
  // all-ones characteristic matrix is the do-nothing plan
  CharacteristicMatrix ones{2, Eigen::MatrixXd::Ones(16, 16),
                            Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(16, 16, false)};
  const QuasiProbMatrix q = quasi_probs(ones);
  CHECK(q.q(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.gamma == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (i || j) CHECK(std::abs(q.q(i, j)) < 1e-14);

  // block-diagonal all-ones pattern is the commuting-sector twirl
  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(16, 16);
  for (int b = 0; b < 8; ++b) blocks.block<2, 2>(2 * b, 2 * b).setOnes();
  CharacteristicMatrix cb{2, blocks,
                          Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(16, 16, false)};
  const QuasiProbMatrix qb = quasi_probs(cb);
  const QuasiProbMatrix expected = twirl_quasi_probs(2, TwirlSubset::CommutingZz);
  CHECK((qb.q - expected.q).cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 0; k < 8; ++k) CHECK(qb.q(k, k) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("shaping identity: (WQW) (.) G equals the explicit Pauli sandwich sum") {
  RngStream rng = derive_rng(31, {});
  for (int trial = 0; trial < 300; ++trial) {
    const QuasiProbMatrix q = random_quasi(rng);
    const Ptm g = random_cptp_ptm(2, rng);
    const Ptm fast = shaped_ptm(q, g);
    Eigen::MatrixXd slow = Eigen::MatrixXd::Zero(16, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        if (q.q(i, j) == 0.0) continue;
        const Ptm di = pauli_conjugation_ptm(2, i);
        const Ptm dj = pauli_conjugation_ptm(2, j);
        slow += q.q(i, j) * (di.m * g.m * dj.m);
      }
    CHECK((fast.m - slow).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("normalization: trace-preserving pairs give sum Q = 1") {
  RngStream rng = derive_rng(32, {});
  for (int trial = 0; trial < 20; ++trial) {
    const Ptm g = random_cptp_ptm(2, rng);
    const Ptm a = random_cptp_ptm(2, rng);
    bool reachable = true;
    try {
      const CharacteristicMatrix c = characteristic_matrix(a, g, FreeFill::zero(), 1e-10);
      const QuasiProbMatrix q = quasi_probs(c);
      CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(q.gamma >= std::abs(q.sum()) - 1e-12);
    } catch (const UnreachableTargetError&) {
      reachable = false;  // dense random PTMs occasionally have true zeros
    }
    CHECK(reachable);  // with Gaussian channels this should not trigger
  }
}

TEST_CASE("shaped_ptm special plans") {
  RngStream rng = derive_rng(33, {});
  const Ptm g = random_cptp_ptm(2, rng);
  // full-twirl plan diagonalizes
  const Ptm diag = shaped_ptm(twirl_quasi_probs(2, TwirlSubset::Full), g);
  CHECK((diag.m - twirl(g, TwirlSubset::Full).m).cwiseAbs().maxCoeff() < 1e-13);
  // delta plan leaves the channel alone
  Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(16, 16);
  dq(0, 0) = 1.0;
  CHECK((shaped_ptm(quasi_prob_from_matrix(2, dq), g).m - g.m).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("over-rotation cancellation recovers the ideal gate") {
  const double theta = 0.4, eps = 0.1;
  const Ptm target = rzz_ptm(theta);
  const Ptm actual = rzz_ptm(theta + eps);
  // any free fill cancels: the free entries multiply structural zeros
  const CharacteristicMatrix c = characteristic_matrix(target, actual, FreeFill::constant(0.7));
  const Ptm shaped = shaped_ptm(quasi_probs(c), actual);
  CHECK((shaped.m - target.m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("clifford reduction: engine equals the correlated q-vector formula") {
  RngStream rng = derive_rng(34, {});
  for (TwoQubitClifford cl : {TwoQubitClifford::Cnot, TwoQubitClifford::Cz}) {
    const CliffordPauliMap& map = clifford_pauli_map(cl);
    const Ptm u = ptm_from_unitary(clifford_unitary(cl));
    for (double alpha : {-1.0, 0.5}) {
      for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd f = random_pauli_channel(2, rng).fidelities();
        const QuasiProbMatrix q_formula = clifford_quasi_probs(map, f, alpha);

        // engine route: actual = U diag(f), target = U diag(f)^(1+alpha)
        Eigen::VectorXd fpow(16);
        for (int i = 0; i < 16; ++i) fpow(i) = std::pow(f(i), 1.0 + alpha);
        const Ptm actual{2, u.m * f.asDiagonal().toDenseMatrix()};
        const Ptm target{2, u.m * fpow.asDiagonal().toDenseMatrix()};
        const QuasiProbMatrix q_engine = quasi_probs(characteristic_matrix(target, actual));
        CHECK((q_engine.q - q_formula.q).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("clifford quasi-probs: trivial cases") {
  const CliffordPauliMap& id = clifford_pauli_map(TwoQubitClifford::Identity);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(16);
  for (double alpha : {-1.0, 0.0, 2.0}) {
    const QuasiProbMatrix q = clifford_quasi_probs(id, ones, alpha);
    CHECK(q.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // uniform correlated twirl pattern: Q_ij = (1/16) delta_{j, sigma(i)}
    for (int i = 0; i < 16; ++i) CHECK(q.q(i, i) == doctest::Approx(1.0 / 16).epsilon(1e-12));
  }
  // alpha = 0 realizes identity shaping of the twirled gate for any f
  RngStream rng = derive_rng(35, {});
  const Eigen::VectorXd f = random_pauli_channel(2, rng).fidelities();
  const QuasiProbMatrix q0 = clifford_quasi_probs(clifford_pauli_map(TwoQubitClifford::Cnot), f, 0.0);
  CHECK(q0.gamma == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::VectorXd with_zero = f;
  with_zero(3) = 0.0;
  CHECK_THROWS_AS(clifford_quasi_probs(id, with_zero, -1.0), ValidationError);
}

TEST_CASE("convolution: identity, Walsh-route equality, submultiplicative overhead") {
  RngStream rng = derive_rng(36, {});
  const QuasiProbMatrix q1 = random_quasi(rng);

  Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(16, 16);
  dq(0, 0) = 1.0;
  const QuasiProbMatrix delta = quasi_prob_from_matrix(2, dq);
  CHECK((convolve(q1, delta).q - q1.q).cwiseAbs().maxCoeff() < 1e-13);

  for (int trial = 0; trial < 200; ++trial) {
    const QuasiProbMatrix a = random_quasi(rng);
    const QuasiProbMatrix b = random_quasi(rng);
    const QuasiProbMatrix conv = convolve(a, b);
    // same thing through the characteristic matrices
    const Eigen::MatrixXd cc = characteristic_of(a).cwiseProduct(characteristic_of(b));
    CharacteristicMatrix cm{2, cc,
                            Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(16, 16, false)};
    CHECK((conv.q - quasi_probs(cm).q).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(conv.gamma <= a.gamma * b.gamma + 1e-10);
  }

  // composing the sector twirls multiplies their characteristic matrices,
  // which collapses onto the anti-commuting twirl; the full twirl is their
  // equal-weight mixture instead
  const QuasiProbMatrix qc = twirl_quasi_probs(2, TwirlSubset::CommutingZz);
  const QuasiProbMatrix qa = twirl_quasi_probs(2, TwirlSubset::AnticommutingZz);
  CHECK((convolve(qc, qa).q - qa.q).cwiseAbs().maxCoeff() < 1e-13);
  const Eigen::MatrixXd mixture = 0.5 * qc.q + 0.5 * qa.q;
  CHECK((mixture - twirl_quasi_probs(2, TwirlSubset::Full).q).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("gamma = 1 exactly when the plan is a true distribution") {
  RngStream rng = derive_rng(37, {});
  for (int trial = 0; trial < 50; ++trial) {
    const QuasiProbMatrix q = random_quasi(rng);
    const bool nonneg = q.q.minCoeff() >= -1e-12;
    const bool unit = std::abs(q.gamma - q.sum()) < 1e-12;
    CHECK(nonneg == unit);
  }
  CHECK(twirl_quasi_probs(2, TwirlSubset::Full).gamma == doctest::Approx(1.0));
}

TEST_CASE("sampling plans") {
  const double theta = 0.4, eps = 0.1;
  const CharacteristicMatrix c = characteristic_matrix(rzz_ptm(theta), rzz_ptm(theta + eps));
  const QuasiProbMatrix q = quasi_probs(c);
  const ShapingPlan plan = make_plan(q);

  double psum = 0.0, weighted = 0.0;
  for (const auto& e : plan.entries) {
    psum += e.prob;
    weighted += e.prob * e.weight;
  }
  CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weighted == doctest::Approx(q.sum()).epsilon(1e-9));
  CHECK(plan.gamma == doctest::Approx(q.gamma));
  CHECK(plan.dropped_mass < 1e-12);

  // sampling respects the cdf deterministically
  RngStream rng = derive_rng(38, {});
  for (int k = 0; k < 100; ++k) {
    const auto& e = plan.sample(rng);
    CHECK(e.prob > 0.0);
  }

  const ShapingPlan back = plan_from_json(plan_to_json(plan));
  CHECK(back.gamma == plan.gamma);
  CHECK(back.entries.size() == plan.entries.size());

  const ShapingPlan id = identity_plan(2);
  CHECK(id.entries.size() == 1);
  CHECK(id.gamma == 1.0);
}
