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
#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "paulishape/errors.hpp"

namespace ps {

/// Largest supported qubit count for dense 4^n x 4^n matrices.
inline constexpr int kMaxQubits = 6;

/// An n-qubit Pauli identified by its position in this library's canonical
/// basis ordering.
///
/// Labels are strings over {I,X,Y,Z}; the leftmost character acts on qubit 0,
/// which is the most significant factor in Kronecker products. For n != 2 the
/// ordering is plain base-4 (I=0, X=1, Y=2, Z=3, qubit 0 in the highest
/// digit). For n == 2 the ordering groups the Paulis by their commutation
/// with ZZ:
///
///   0..7  (commute with ZZ):      II ZZ XX YY IZ ZI YX XY
///   8..15 (anti-commute with ZZ): XI YZ XZ YI IX ZY ZX IY
///
/// so index 2k+1 is proportional to ZZ * P_{2k}. PTMs of R_ZZ-like gates are
/// 2x2 block-diagonal in this order.
struct PauliIndex {
  int n = 0;
  int index = 0;
};

/// Number of n-qubit Paulis (4^n). Throws CapacityError for n<1 or n>kMaxQubits.
int pauli_count(int n);

/// Basis tag for serialization: "eq20" for the 2-qubit ZZ-adapted order,
/// "base4" otherwise.
std::string basis_name(int n);

/// Canonical-order index -> base-4 code and back.
int index_to_code(int n, int index);
int code_to_index(int n, int code);

/// Base-4 digit (0..3 = I,X,Y,Z) of the factor acting on `qubit`.
int pauli_digit(int n, int index, int qubit);

std::string pauli_label(int n, int index);
PauliIndex pauli_from_label(std::string_view label);

/// 2-qubit sector constants in the canonical (eq20) order.
inline constexpr std::array<int, 8> kCommutingWithZz = {0, 1, 2, 3, 4, 5, 6, 7};
inline constexpr std::array<int, 8> kAntiCommutingWithZz = {8, 9, 10, 11, 12, 13, 14, 15};

/// Product of two Paulis: P_i * P_j = i^phase * P_k with phase an exact
/// quarter-turn count in {0,1,2,3}. The index map (i,j) -> k is an abelian
/// group law ("oplus") with identity 0 and every element self-inverse.
struct PauliProduct {
  int index;
  int phase;  // P_i P_j = i^phase P_index
};
PauliProduct pauli_mul(const PauliIndex& i, const PauliIndex& j);
PauliProduct pauli_mul(int n, int i, int j);

/// Index part of the product only.
int pauli_oplus(int n, int i, int j);

/// +1 if [P_i, P_j] = 0, -1 if they anti-commute.
int commutator_sign(const PauliIndex& i, const PauliIndex& j);
int commutator_sign(int n, int i, int j);

/// The 4^n x 4^n Walsh matrix W with W_ij = commutator_sign(i, j).
/// Satisfies W = W^T and W * W = 4^n * Identity.
struct WalshMatrix {
  int n = 0;
  Eigen::MatrixXd entries;
};
WalshMatrix walsh_matrix(int n);

/// Dense 2^n x 2^n matrix of the Pauli.
Eigen::MatrixXcd pauli_matrix(int n, int index);

/// Named 2-qubit Cliffords with precomputed Pauli conjugation action.
enum class TwoQubitClifford { Identity, Cnot, Cz, Swap };

TwoQubitClifford clifford_from_name(std::string_view name);
std::string clifford_name(TwoQubitClifford c);
Eigen::Matrix4cd clifford_unitary(TwoQubitClifford c);

/// sigma and v with U^dag P_i U = v_i P_{sigma(i)}; sigma is a bijection on
/// 0..15 and v_i in {+1,-1}. Derived from the unitary by conjugation in the
/// Pauli basis, which validates the map on construction.
struct CliffordPauliMap {
  std::array<int, 16> sigma;
  std::array<int, 16> sign;
};
const CliffordPauliMap& clifford_pauli_map(TwoQubitClifford c);

namespace detail {
void check_same_n(int n1, int n2, const char* what);
}

}  // namespace ps
