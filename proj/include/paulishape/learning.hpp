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
#include <optional>

#include "paulishape/fit.hpp"
#include "paulishape/shotsim.hpp"

namespace ps {

/// Parameters of the 2x2 block powers: (B^d)_00 = a r^d cos(omega d - delta)
/// whenever the block has complex eigenvalues (the weak-noise regime
/// (B00 - B11)^2 < -4 B01 B10). Throws StrongNoiseRegimeError otherwise.
struct BlockParams {
  double a = 0.0, r = 0.0, omega = 0.0, delta = 0.0;
};
BlockParams block_powers_params(const Eigen::Matrix2d& block);

/// Inverse map from fitted (r, omega, delta) back to block entries:
/// off-diagonal product B01*B10 = -(r sin w / cos d)^2 (always <= 0) and the
/// two diagonals r [cos w +- sin w tan d]. Round trip with
/// block_powers_params is the identity on weak-noise blocks.
struct BlockInversion {
  double g_ii = 0.0, g_jj = 0.0, product = 0.0;
};
BlockInversion invert_block_params(double r, double omega, double delta);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  bool converged = true;
};

/// Shot budget and schedules for the learning pipelines. The exponential
/// schedule is geometric so the decay is sampled over several e-foldings; the
/// oscillation schedule is linear so frequencies near theta stay
/// Nyquist-sampled.
struct LearnKnobs {
  std::vector<int> exp_depths = {0, 1, 2, 4, 8, 16, 32, 64};
  std::vector<int> cos_depths;  // defaults to 0..40
  std::vector<int> ctb_depths = {0, 2, 4, 8, 16, 32, 64};
  int n_circuits = 40;
  int shots_per_circuit = 5000;
  std::uint64_t seed = 1;
  int threads = 1;
  double type4_tol = 1e-6;

  LearnKnobs() {
    cos_depths.resize(41);
    for (int d = 0; d <= 40; ++d) cos_depths[d] = d;
  }
};

/// Everything the three schemes can say about a noisy R_ZZ(theta) gate.
struct LearnedPtm {
  double theta_nominal = 0.0;

  // Diagonal of the commuting sector; slot 0 is pinned to 1 (trace
  // preservation), slots 1..7 are fitted.
  std::array<Estimate, 8> type1;

  // Diagonal of the anti-commuting sector, slots 0..7 = indices 8..15.
  std::array<Estimate, 8> type2;

  struct Type3 {
    int i = 0, j = 0;  // bottom block (i, j = i+1)
    Estimate product;  // G_ij * G_ji
  };
  std::array<Type3, 4> type3;

  struct Type4Bound {
    int i = 0, j = 0;  // top block
    double t_symmetric = 0.0;      // largest |t| with G_ij = G_ji = t CP-feasible
    double t_antisymmetric = 0.0;  // largest |t| with G_ij = -G_ji = t CP-feasible
    bool feasible = true;          // CP holds at t = 0
    double base_min_choi = 0.0;
  };
  std::optional<std::array<Type4Bound, 4>> type4;

  bool all_converged() const;
};

/// Named decay curve for export; `experiment` groups curves recycled from
/// the same shots.
struct LabeledCurve {
  std::string scheme;
  int experiment = 0;
  int observable = 0;
  std::vector<DecayRecord> records;
};

/// Modified cycle benchmarking: fully twirl each noisy gate (turning it into
/// a Pauli channel) and fit exponential decays of the commuting-sector
/// Paulis. Five distinct experiments cover all seven Type-1 elements via
/// measurement recycling.
struct Type1Result {
  std::array<Estimate, 8> type1;
  std::vector<FitResult> fits;
  std::vector<LabeledCurve> curves;
};
Type1Result run_modified_cb(const Ptm& gate, const SpamModel& spam, const LearnKnobs& knobs);

/// Partial-twirl benchmarking: twirl each gate over the commuting sector,
/// state-prep twirl the probed Pauli, and fit damped cosines. Two distinct
/// experiments cover all four bottom blocks; only the off-diagonal products
/// are returned (isolating the factors is SPAM-degenerate).
struct Type3Result {
  std::array<LearnedPtm::Type3, 4> type3;
  std::array<FitResult, 4> fits;
  std::vector<LabeledCurve> curves;
};
Type3Result run_partial_twirl_benchmark(const Ptm& gate, const SpamModel& spam,
                                        const LearnKnobs& knobs, double theta_nominal);

/// Correlated-twirl benchmarking: twirl consecutive gate pairs over opposite
/// sectors, fit d -> A r^(d/2), and combine with the Type-3 products to
/// isolate the Type-2 diagonals (positive square root; a negative radicand
/// flags inconsistent inputs instead of guessing).
struct Type2Result {
  std::array<Estimate, 8> type2;
  std::vector<FitResult> fits;
  std::vector<LabeledCurve> curves;
};
Type2Result run_correlated_twirl_benchmark(const Ptm& gate, const SpamModel& spam,
                                           const LearnKnobs& knobs,
                                           const std::array<LearnedPtm::Type3, 4>& type3);

/// Combine r^2-type CTB decay with a Type-3 product: G_ii = sqrt(r + prod).
Estimate type2_from_ctb(const Estimate& r_hat, const Estimate& product);

struct LearningRun {
  LearnedPtm learned;
  std::vector<LabeledCurve> curves;
};
LearningRun run_full_learning(const Ptm& gate, const SpamModel& spam, const LearnKnobs& knobs,
                              double theta_nominal);

/// PTM assembled from the learned data: Type-4 entries at zero and Type-3
/// products split antisymmetrically with the ideal sign pattern (the labeled
/// weak-noise heuristic). Out-of-regime blocks are clamped and reported.
Ptm assemble_learned_ptm(const LearnedPtm& learned, std::vector<std::string>* warnings = nullptr);

/// CP-feasibility scan for the unknown Type-4 entries: with all learned
/// entries fixed and other unknowns at their ideal zeros, find the largest
/// |t| per top block and per symmetry mode keeping the minimum Choi
/// eigenvalue >= -tol.
std::array<LearnedPtm::Type4Bound, 4> bound_type4(const LearnedPtm& learned, double tol);

nlohmann::json learned_to_json(const LearnedPtm& learned);
LearnedPtm learned_from_json(const nlohmann::json& j);

}  // namespace ps
