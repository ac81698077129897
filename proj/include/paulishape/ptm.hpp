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

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "paulishape/pauli.hpp"
#include "paulishape/rng.hpp"

#include "json.hpp"

namespace ps {

/// Pauli transfer matrix of an n-qubit channel: a real 4^n x 4^n matrix in
/// the canonical basis order (see PauliIndex). Composition of channels is
/// matrix multiplication; a channel is trace preserving iff the first row is
/// (1, 0, ..., 0).
struct Ptm {
  int n = 0;
  Eigen::MatrixXd m;

  int dim() const { return static_cast<int>(m.rows()); }
  static Ptm identity(int n);
};

/// Generalized Bloch vector: rho = 2^-n sum_i s_i P_i, with s_0 = 1 for unit
/// trace.
struct BlochVector {
  int n = 0;
  Eigen::VectorXd s;
};

/// Pauli channel given by error probabilities p (p >= 0, sum 1). Its PTM is
/// diag(f) with fidelities f = W p.
struct PauliChannel {
  int n = 0;
  Eigen::VectorXd p;

  Eigen::VectorXd fidelities() const;
  Ptm ptm() const;
};

/// Recover probabilities p = W f / 4^n from fidelities.
PauliChannel pauli_channel_from_fidelities(int n, const Eigen::VectorXd& f);

/// G_ij = Re tr[P_i U P_j U^dag] / 2^n. U must be unitary to `tol`.
Ptm ptm_from_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

/// Closed-form PTM of R_ZZ(theta) = exp(-i theta ZZ / 2): identity on the
/// commuting sector, and the four anti-commuting 2x2 blocks equal to the
/// rotation [[cos t, -sin t], [sin t, cos t]].
Ptm rzz_ptm(double theta);

/// PTM of conjugation by the Pauli P_k: diag over i of commutator_sign(i, k).
Ptm pauli_conjugation_ptm(int n, int k);

/// g2 after g1.
Ptm compose(const Ptm& g2, const Ptm& g1);

/// Affine combination sum_k w_k G_k. Weights must sum to 1 within 1e-9
/// unless `allow_quasi`; negative weights are always allowed (quasi-mixtures).
Ptm mix(const std::vector<std::pair<double, Ptm>>& terms, bool allow_quasi = false);

BlochVector apply(const Ptm& g, const BlochVector& s);

enum class TwirlSubset { Full, CommutingZz, AnticommutingZz };

/// |S|^-1 sum_{k in S} PTM(P_k) g PTM(P_k). The Full twirl keeps exactly the
/// diagonal; for n=2 the CommutingZz / AnticommutingZz twirls keep the 2x2
/// block diagonal, the latter with off-diagonal entries negated.
Ptm twirl(const Ptm& g, TwirlSubset subset);
Ptm twirl(const Ptm& g, const std::vector<int>& subset);

/// Choi matrix (1/2^n) sum_ij G_ij P_i (x) P_j^T. Hermitian for real G;
/// positive semidefinite iff the channel is completely positive, with trace
/// 2^n G_00.
Eigen::MatrixXcd choi_matrix(const Ptm& g);

struct CptpReport {
  bool trace_preserving = false;
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
  double first_row_error = 0.0;
};
CptpReport is_cptp(const Ptm& g, double tol = 1e-9);

/// Separable +-1 eigenstate of a non-identity Pauli, built per qubit from the
/// single-qubit eigenstates of its factors; identity factors become the +Z
/// fiducial |0>. The requested eigenvalue is carried by the first
/// non-identity factor.
BlochVector pauli_eigenstate(const PauliIndex& p, int eigenvalue);

/// CPTP-by-construction random channel: Stinespring isometry from a QR-
/// orthonormalized Gaussian matrix with `kraus_rank` environment dimensions.
/// Test/benchmark fixture.
Ptm random_cptp_ptm(int n, RngStream& rng, int kraus_rank = 4);

/// Random Pauli channel with all fidelities >= min_fidelity (identity weight
/// chosen accordingly). Test fixture.
PauliChannel random_pauli_channel(int n, RngStream& rng, double min_identity_weight = 0.7);

nlohmann::json ptm_to_json(const Ptm& g);
Ptm ptm_from_json(const nlohmann::json& j);
void write_ptm_csv(const Ptm& g, const std::string& path);

nlohmann::json bloch_to_json(const BlochVector& s);
BlochVector bloch_from_json(const nlohmann::json& j);

}  // namespace ps
