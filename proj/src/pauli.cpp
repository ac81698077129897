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

#include "paulishape/pauli.hpp"

#include <cmath>
#include <complex>
#include <mutex>

namespace ps {

namespace {

constexpr char kDigitChar[4] = {'I', 'X', 'Y', 'Z'};

// eq20 index -> base-4 code ("XY" = 1*4 + 2 = 6, qubit 0 in the high digit).
constexpr std::array<int, 16> kEq20ToCode = {0,  15, 5,  10, 3, 12, 9,  6,
                                             4,  11, 7,  8,  1, 14, 13, 2};

constexpr std::array<int, 16> make_code_to_eq20() {
  std::array<int, 16> inv{};
  for (int i = 0; i < 16; ++i) inv[kEq20ToCode[i]] = i;
  return inv;
}
constexpr std::array<int, 16> kCodeToEq20 = make_code_to_eq20();

// Quarter-turn exponent t in P_a P_b = i^t P_{a xor b} for single-qubit
// digits a, b in 0..3 (I,X,Y,Z).
constexpr int kMulPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

int digit_from_char(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw ValidationError(std::string("invalid Pauli character '") + c + "'");
  }
}

void check_index(int n, int index) {
  if (index < 0 || index >= pauli_count(n))
    throw ValidationError("Pauli index " + std::to_string(index) +
                          " out of range for n=" + std::to_string(n));
}

}  // namespace

namespace detail {
void check_same_n(int n1, int n2, const char* what) {
  if (n1 != n2)
    throw DimensionError(std::string(what) + ": qubit counts differ (" +
                         std::to_string(n1) + " vs " + std::to_string(n2) + ")");
}
}  // namespace detail

int pauli_count(int n) {
  if (n < 1) throw ValidationError("qubit count must be >= 1");
  if (n > kMaxQubits)
    throw CapacityError("qubit count " + std::to_string(n) + " exceeds dense budget (n <= " +
                        std::to_string(kMaxQubits) + ")");
  return 1 << (2 * n);
}

std::string basis_name(int n) { return n == 2 ? "eq20" : "base4"; }

int index_to_code(int n, int index) {
  check_index(n, index);
  return n == 2 ? kEq20ToCode[index] : index;
}

int code_to_index(int n, int code) {
  check_index(n, code);
  return n == 2 ? kCodeToEq20[code] : code;
}

int pauli_digit(int n, int index, int qubit) {
  const int code = index_to_code(n, index);
  const int shift = 2 * (n - 1 - qubit);
  return (code >> shift) & 3;
}

std::string pauli_label(int n, int index) {
  std::string out(n, 'I');
  for (int q = 0; q < n; ++q) out[q] = kDigitChar[pauli_digit(n, index, q)];
  return out;
}

PauliIndex pauli_from_label(std::string_view label) {
  const int n = static_cast<int>(label.size());
  pauli_count(n);  // range check
  int code = 0;
  for (char c : label) code = (code << 2) | digit_from_char(c);
  return PauliIndex{n, code_to_index(n, code)};
}

PauliProduct pauli_mul(int n, int i, int j) {
  const int ci = index_to_code(n, i);
  const int cj = index_to_code(n, j);
  int phase = 0;
  for (int q = 0; q < n; ++q) {
    const int shift = 2 * q;
    phase += kMulPhase[(ci >> shift) & 3][(cj >> shift) & 3];
  }
  return PauliProduct{code_to_index(n, ci ^ cj), phase & 3};
}

PauliProduct pauli_mul(const PauliIndex& i, const PauliIndex& j) {
  detail::check_same_n(i.n, j.n, "pauli_mul");
  return pauli_mul(i.n, i.index, j.index);
}

int pauli_oplus(int n, int i, int j) {
  return code_to_index(n, index_to_code(n, i) ^ index_to_code(n, j));
}

int commutator_sign(int n, int i, int j) {
  const int ci = index_to_code(n, i);
  const int cj = index_to_code(n, j);
  int anti = 0;
  for (int q = 0; q < n; ++q) {
    const int a = (ci >> (2 * q)) & 3;
    const int b = (cj >> (2 * q)) & 3;
    if (a != 0 && b != 0 && a != b) ++anti;
  }
  return (anti & 1) ? -1 : 1;
}

int commutator_sign(const PauliIndex& i, const PauliIndex& j) {
  detail::check_same_n(i.n, j.n, "commutator_sign");
  return commutator_sign(i.n, i.index, j.index);
}

WalshMatrix walsh_matrix(int n) {
  const int dim = pauli_count(n);
  WalshMatrix w;
  w.n = n;
  w.entries.resize(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      w.entries(i, j) = static_cast<double>(commutator_sign(n, i, j));
  return w;
}

Eigen::MatrixXcd pauli_matrix(int n, int index) {
  using Eigen::Matrix2cd;
  static const std::complex<double> im(0.0, 1.0);
  Matrix2cd single[4];
  single[0] << 1, 0, 0, 1;
  single[1] << 0, 1, 1, 0;
  single[2] << 0, -im, im, 0;
  single[3] << 1, 0, 0, -1;

  Eigen::MatrixXcd out = single[pauli_digit(n, index, 0)];
  for (int q = 1; q < n; ++q) {
    const Eigen::MatrixXcd& f = single[pauli_digit(n, index, q)];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

TwoQubitClifford clifford_from_name(std::string_view name) {
  if (name == "identity" || name == "I") return TwoQubitClifford::Identity;
  if (name == "CNOT" || name == "cnot" || name == "CX") return TwoQubitClifford::Cnot;
  if (name == "CZ" || name == "cz") return TwoQubitClifford::Cz;
  if (name == "SWAP" || name == "swap") return TwoQubitClifford::Swap;
  throw UnsupportedError("unknown 2-qubit Clifford '" + std::string(name) +
                         "' (supported: identity, CNOT, CZ, SWAP)");
}

std::string clifford_name(TwoQubitClifford c) {
  switch (c) {
    case TwoQubitClifford::Identity: return "identity";
    case TwoQubitClifford::Cnot: return "CNOT";
    case TwoQubitClifford::Cz: return "CZ";
    case TwoQubitClifford::Swap: return "SWAP";
  }
  throw UnsupportedError("bad Clifford enum");
}

Eigen::Matrix4cd clifford_unitary(TwoQubitClifford c) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  switch (c) {
    case TwoQubitClifford::Identity:
      break;
    case TwoQubitClifford::Cnot:
      // control qubit 0 (most significant), target qubit 1
      u.setZero();
      u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
      break;
    case TwoQubitClifford::Cz:
      u(3, 3) = -1.0;
      break;
    case TwoQubitClifford::Swap:
      u.setZero();
      u(0, 0) = u(3, 3) = u(1, 2) = u(2, 1) = 1.0;
      break;
  }
  return u;
}

namespace {

// U^dag P_i U expanded in the Pauli basis must hit exactly one Pauli with
// coefficient +-1; anything else means the unitary is not in the Pauli
// normalizer and the table construction is invalid.
CliffordPauliMap conjugation_map(const Eigen::Matrix4cd& u) {
  CliffordPauliMap map{};
  std::array<bool, 16> hit{};
  for (int i = 0; i < 16; ++i) {
    const Eigen::Matrix4cd conj = u.adjoint() * pauli_matrix(2, i) * u;
    int found = -1;
    double sign = 0.0;
    for (int k = 0; k < 16; ++k) {
      const std::complex<double> c = (pauli_matrix(2, k) * conj).trace() / 4.0;
      if (std::abs(c) > 0.5) {
        found = k;
        sign = c.real();
        break;
      }
    }
    if (found < 0 || std::abs(std::abs(sign) - 1.0) > 1e-12)
      throw ValidationError("Clifford table validation failed: conjugation of " +
                            pauli_label(2, i) + " is not a signed Pauli");
    if (hit[found])
      throw ValidationError("Clifford table validation failed: sigma not a bijection");
    hit[found] = true;
    map.sigma[i] = found;
    map.sign[i] = sign > 0 ? 1 : -1;
  }
  return map;
}

}  // namespace

const CliffordPauliMap& clifford_pauli_map(TwoQubitClifford c) {
  static std::array<CliffordPauliMap, 4> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (TwoQubitClifford cl : {TwoQubitClifford::Identity, TwoQubitClifford::Cnot,
                                TwoQubitClifford::Cz, TwoQubitClifford::Swap})
      cache[static_cast<int>(cl)] = conjugation_map(clifford_unitary(cl));
  });
  return cache[static_cast<int>(c)];
}

}  // namespace ps
