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
#include <span>
#include <vector>

#include "paulishape/noise.hpp"
#include "paulishape/shaping.hpp"

namespace ps {

/// Twirl recipes used by the learning schemes. Layers are drawn
/// independently; CorrelatedPairs draws (commuting then anti-commuting) or
/// the reverse with equal probability for each consecutive pair of gates and
/// therefore only admits even depths.
enum class TwirlKind { FullTwirlEach, CommutingTwirlEach, CorrelatedPairs };

struct TwirlScheme {
  TwirlKind kind = TwirlKind::FullTwirlEach;
  bool state_prep_twirl = false;
};

/// One realized twirl instance: the Pauli index conjugating each of the d
/// gate applications.
std::vector<int> sample_twirl_sequence(const TwirlScheme& scheme, int depth, RngStream& rng);

/// P_t . gate . P_t applied for each t in `twirls`, left to right in time.
BlochVector apply_twirl_chain(const Ptm& gate, std::span<const int> twirls,
                              const BlochVector& in);

/// Intended state -> actually prepared state: scale non-identity components
/// by spam.prep_scale, then (optionally) zero every component that
/// anti-commutes with the state-prep twirl Pauli (the 50% randomization,
/// taken in expectation).
BlochVector prepared_state(const BlochVector& intended, const SpamModel& spam,
                           std::optional<int> prep_twirl);

/// Measurement frame: each qubit is rotated so that `basis_pauli`'s factor
/// (or Z where that factor is the identity) becomes the measured Z. Any Pauli
/// whose per-qubit factors lie in {I, basis factor} is readable from the same
/// bitstrings, which is what permits measurement recycling.
struct MeasurementBasis {
  int n = 0;
  std::vector<int> qubit_digit;  // 1,2,3 = X,Y,Z per qubit
};
MeasurementBasis measurement_basis(int n, int basis_pauli);

/// Bitmask of an observable in a basis (throws if not measurable there).
int observable_bits(const MeasurementBasis& basis, int observable);

/// Ideal bitstring distribution (before readout error) of a state measured
/// in `basis`. Tiny negative entries from roundoff are clamped.
Eigen::VectorXd outcome_distribution(const MeasurementBasis& basis, const BlochVector& state);

/// Exact E[outcome] for one realized circuit: prepared state -> twirl chain
/// -> readout error -> (twirled or raw) readout, as a single number.
double exact_circuit_expectation(const Ptm& gate, std::span<const int> twirls,
                                 const BlochVector& prepared, const SpamModel& spam,
                                 int observable, bool readout_twirl = true);

/// One +-1 shot drawn from the exact outcome law of the realized circuit.
int sample_outcome(const Ptm& gate, std::span<const int> twirls, const BlochVector& prepared,
                   const SpamModel& spam, int observable, bool readout_twirl, RngStream& rng);

struct DecayRecord {
  int d = 0;
  double mu_hat = 0.0;
  double stderr_ = 0.0;
  long n_tot = 0;
};

struct DecayCurve {
  int observable = 0;
  std::vector<DecayRecord> records;
};

/// A full decay experiment: for each depth, n_circuits independent twirl
/// instances with shots_per_circuit bitstring-level shots each. All listed
/// observables are evaluated on the same shots. Deterministic for a fixed
/// seed regardless of thread count.
struct DecayExperimentSpec {
  Ptm gate;
  SpamModel spam;
  TwirlScheme scheme;
  BlochVector initial;  // intended state
  std::optional<int> prep_twirl;
  int basis_pauli = 0;
  std::vector<int> observables;
  std::vector<int> depths;
  int n_circuits = 1;
  int shots_per_circuit = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  bool readout_twirl = true;
};

std::vector<DecayCurve> run_decay_experiment(const DecayExperimentSpec& spec);

/// Single-observable front end matching the scheme/SPAM bookkeeping above.
struct ExperimentPlan {
  std::vector<int> depths;
  int n_circuits = 1;
  int shots_per_circuit = 1;
  std::uint64_t seed = 0;
  TwirlScheme scheme;
  Ptm gate;
  SpamModel spam;
  int observable = 0;
  BlochVector initial;
  bool readout_twirl = true;
  int threads = 1;
};

std::vector<DecayRecord> estimate_mu(const ExperimentPlan& plan);

/// Monte Carlo shaped estimator: sample (i, j) from the plan, run
/// P_j -> gate -> P_i, scale the +-1 outcome by the entry weight. Mean is an
/// unbiased estimate of tr[O A(rho)] for the shaped channel A; the standard
/// error carries the gamma overhead. SPAM-free by construction.
struct ShapedEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long shots = 0;
};
ShapedEstimate estimate_shaped_expectation(const Ptm& gate, const ShapingPlan& plan,
                                           const BlochVector& initial, int observable,
                                           long shots, std::uint64_t seed, int threads = 1);

/// Deterministic oracle for the same quantity: full enumeration of
/// sum_ij Q_ij tr[O P_i G(P_j rho P_j) P_i] via explicit Pauli conjugations.
double enumerate_shaped_expectation(const Ptm& gate, const QuasiProbMatrix& q,
                                    const BlochVector& initial, int observable);

/// Sample standard deviation (ddof = 1) of exact_circuit_expectation over
/// n_samples random twirl instances at the given depth.
double empirical_delta(const Ptm& gate, const SpamModel& spam, const TwirlScheme& scheme,
                       const BlochVector& initial, int observable, int depth, int n_samples,
                       std::uint64_t seed);

}  // namespace ps
