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

#include <variant>

#include "paulishape/ptm.hpp"

namespace ps {

/// Coherent over- or under-rotation: the implemented gate is R_ZZ(theta+eps).
struct OverRotation {
  double theta = 0.0;
  double epsilon = 0.0;
};

/// The dissipative R_ZZ(theta) model: exp of a Lindblad generator whose
/// channel has closed-form PTM blocks [[1,0],[2e,1-2e]],
/// [[1-e,-e],[-e,1-e]], [[1-e,e],[e,1-e]] x2 on the commuting sector and
/// sqrt(1-2e) R(theta) on the anti-commuting sector. Requires eps in [0, 1/2).
struct LindbladExample {
  double theta = 0.0;
  double epsilon = 0.0;
};

/// Ideal R_ZZ(theta) followed by a Pauli channel (probabilities p).
struct PauliNoiseAfter {
  double theta = 0.0;
  Eigen::VectorXd p;
};

/// Pauli channel before the ideal gate.
struct PauliNoiseBefore {
  double theta = 0.0;
  Eigen::VectorXd p;
};

/// Any explicit PTM.
struct ExplicitPtm {
  Ptm ptm;
};

using NoiseSpec =
    std::variant<OverRotation, LindbladExample, PauliNoiseAfter, PauliNoiseBefore, ExplicitPtm>;

Ptm build_gate_ptm(const NoiseSpec& spec);

/// The closed-form channel PTM (exact; equals the matrix exponential path to
/// numerical precision).
Ptm lindblad_example_closed_form(double theta, double epsilon);

/// 16x16 PTM of the Lindblad generator (Hamiltonian (theta/2) ZZ plus the
/// rank-4 dissipator on the anti-commuting pairs), assembled by acting on
/// each basis Pauli.
Eigen::MatrixXd lindblad_example_generator(double theta, double epsilon);

/// exp of the generator PTM (scaling-and-squaring Pade).
Ptm lindblad_example_exp(double theta, double epsilon);

/// State-prep and readout error model. `prep_scale` multiplies every
/// non-identity Bloch component of the intended state. `readout` is a
/// column-stochastic 2^n x 2^n matrix: entry (l, k) is the probability that
/// outcome k is reported as l.
struct SpamModel {
  int n = 2;
  double prep_scale = 1.0;
  Eigen::MatrixXd readout;
};

SpamModel ideal_spam(int n);

/// Product readout error with identical per-qubit flips p01 = P(report 1 |
/// true 0) and p10 = P(report 0 | true 1).
SpamModel spam_from_flips(int n, double p01, double p10, double prep_scale = 1.0);

/// Per-bitstring readout bias under readout twirling:
/// m_j = 2^-n (W A W)_jj with W the 2^n Walsh-Hadamard matrix. Index j is the
/// bitmask of the measured Z-type Pauli (qubit 0 = most significant bit).
/// For product readout with symmetric flip p, a weight-w mask gives (1-2p)^w.
Eigen::VectorXd readout_bias(const SpamModel& spam);

/// 2^n Walsh-Hadamard matrix [[1,1],[1,-1]]^(x)n.
Eigen::MatrixXd walsh_hadamard(int n);

nlohmann::json noise_spec_to_json(const NoiseSpec& spec);
NoiseSpec noise_spec_from_json(const nlohmann::json& j);
nlohmann::json spam_to_json(const SpamModel& spam);
SpamModel spam_from_json(const nlohmann::json& j);

}  // namespace ps
