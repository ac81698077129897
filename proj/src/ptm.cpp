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

#include "paulishape/ptm.hpp"

#include <cmath>
#include <complex>
#include <fstream>

namespace ps {

namespace {

int qubits_from_dim(Eigen::Index rows) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < rows) {
    d *= 2;
    ++n;
  }
  if (d != rows) throw DimensionError("matrix dimension is not a power of two");
  return n;
}

}  // namespace

Ptm Ptm::identity(int n) {
  const int dim = pauli_count(n);
  return Ptm{n, Eigen::MatrixXd::Identity(dim, dim)};
}

Eigen::VectorXd PauliChannel::fidelities() const {
  return walsh_matrix(n).entries * p;
}

Ptm PauliChannel::ptm() const {
  return Ptm{n, fidelities().asDiagonal().toDenseMatrix()};
}

PauliChannel pauli_channel_from_fidelities(int n, const Eigen::VectorXd& f) {
  const int dim = pauli_count(n);
  if (f.size() != dim) throw DimensionError("fidelity vector has wrong length");
  PauliChannel ch;
  ch.n = n;
  ch.p = walsh_matrix(n).entries * f / static_cast<double>(dim);
  return ch;
}

Ptm ptm_from_unitary(const Eigen::MatrixXcd& u, double tol) {
  const int n = qubits_from_dim(u.rows());
  pauli_count(n);
  if (u.rows() != u.cols()) throw DimensionError("unitary must be square");
  const double unit_err =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (unit_err > tol)
    throw ValidationError("matrix is not unitary (deviation " + std::to_string(unit_err) + ")");

  const int dim = pauli_count(n);
  const double norm = static_cast<double>(1 << n);
  Ptm g{n, Eigen::MatrixXd(dim, dim)};
  std::vector<Eigen::MatrixXcd> paulis(dim);
  for (int i = 0; i < dim; ++i) paulis[i] = pauli_matrix(n, i);
  for (int j = 0; j < dim; ++j) {
    const Eigen::MatrixXcd out = u * paulis[j] * u.adjoint();
    for (int i = 0; i < dim; ++i)
      g.m(i, j) = (paulis[i] * out).trace().real() / norm;
  }
  return g;
}

Ptm rzz_ptm(double theta) {
  Ptm g = Ptm::identity(2);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int b = 0; b < 4; ++b) {
    const int i = 8 + 2 * b;
    g.m(i, i) = c;
    g.m(i, i + 1) = -s;
    g.m(i + 1, i) = s;
    g.m(i + 1, i + 1) = c;
  }
  return g;
}

Ptm pauli_conjugation_ptm(int n, int k) {
  const int dim = pauli_count(n);
  Ptm g{n, Eigen::MatrixXd::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) g.m(i, i) = commutator_sign(n, i, k);
  return g;
}

Ptm compose(const Ptm& g2, const Ptm& g1) {
  detail::check_same_n(g2.n, g1.n, "compose");
  return Ptm{g1.n, g2.m * g1.m};
}

Ptm mix(const std::vector<std::pair<double, Ptm>>& terms, bool allow_quasi) {
  if (terms.empty()) throw ValidationError("mix: empty term list");
  const int n = terms.front().second.n;
  double wsum = 0.0;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(terms.front().second.dim(), terms.front().second.dim());
  for (const auto& [w, g] : terms) {
    detail::check_same_n(n, g.n, "mix");
    acc += w * g.m;
    wsum += w;
  }
  if (!allow_quasi && std::abs(wsum - 1.0) > 1e-9)
    throw ValidationError("mix: weights sum to " + std::to_string(wsum) +
                          ", expected 1 (pass allow_quasi for quasi-mixtures)");
  return Ptm{n, std::move(acc)};
}

BlochVector apply(const Ptm& g, const BlochVector& s) {
  detail::check_same_n(g.n, s.n, "apply");
  return BlochVector{s.n, g.m * s.s};
}

Ptm twirl(const Ptm& g, const std::vector<int>& subset) {
  if (subset.empty()) throw ValidationError("twirl: empty subset");
  const int dim = g.dim();
  // PTM(P_k) is the diagonal sign matrix W_{., k}, so the conjugation sum
  // reduces to an entry-wise coefficient: avg_k W_ik W_jk.
  Eigen::MatrixXd out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double coef = 0.0;
      for (int k : subset)
        coef += static_cast<double>(commutator_sign(g.n, i, k) * commutator_sign(g.n, j, k));
      out(i, j) = g.m(i, j) * coef / static_cast<double>(subset.size());
    }
  }
  return Ptm{g.n, std::move(out)};
}

Ptm twirl(const Ptm& g, TwirlSubset subset) {
  std::vector<int> indices;
  switch (subset) {
    case TwirlSubset::Full: {
      indices.resize(g.dim());
      for (int i = 0; i < g.dim(); ++i) indices[i] = i;
      break;
    }
    case TwirlSubset::CommutingZz:
      detail::check_same_n(g.n, 2, "twirl(CommutingZz)");
      indices.assign(kCommutingWithZz.begin(), kCommutingWithZz.end());
      break;
    case TwirlSubset::AnticommutingZz:
      detail::check_same_n(g.n, 2, "twirl(AnticommutingZz)");
      indices.assign(kAntiCommutingWithZz.begin(), kAntiCommutingWithZz.end());
      break;
  }
  return twirl(g, indices);
}

Eigen::MatrixXcd choi_matrix(const Ptm& g) {
  const int dim = g.dim();
  const int hdim = 1 << g.n;
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(hdim * hdim, hdim * hdim);
  for (int i = 0; i < dim; ++i) {
    const Eigen::MatrixXcd pi = pauli_matrix(g.n, i);
    for (int j = 0; j < dim; ++j) {
      if (g.m(i, j) == 0.0) continue;
      const Eigen::MatrixXcd pjt = pauli_matrix(g.n, j).transpose();
      for (int r = 0; r < hdim; ++r)
        for (int c = 0; c < hdim; ++c)
          choi.block(r * hdim, c * hdim, hdim, hdim) += g.m(i, j) * pi(r, c) * pjt;
    }
  }
  return choi / static_cast<double>(hdim);
}

CptpReport is_cptp(const Ptm& g, double tol) {
  CptpReport rep;
  double row_err = std::abs(g.m(0, 0) - 1.0);
  for (int j = 1; j < g.dim(); ++j) row_err = std::max(row_err, std::abs(g.m(0, j)));
  rep.first_row_error = row_err;
  rep.trace_preserving = row_err <= tol;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi_matrix(g), Eigen::EigenvaluesOnly);
  rep.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  rep.completely_positive = rep.min_choi_eigenvalue >= -tol;
  return rep;
}

BlochVector pauli_eigenstate(const PauliIndex& p, int eigenvalue) {
  if (eigenvalue != 1 && eigenvalue != -1)
    throw ValidationError("eigenvalue must be +1 or -1");
  if (p.index == 0)
    throw ValidationError("identity Pauli has no nontrivial eigenstate");

  // Single-qubit Bloch 4-vectors (I,X,Y,Z order) of the +1 eigenstates of
  // X, Y, Z, and of the fiducial |0>.
  const double plus_eig[4][4] = {
      {1, 0, 0, 1},  // identity factor -> |0>
      {1, 1, 0, 0},
      {1, 0, 1, 0},
      {1, 0, 0, 1},
  };

  // Assign the requested sign to the first non-identity factor.
  int flip_qubit = -1;
  if (eigenvalue == -1) {
    for (int q = 0; q < p.n; ++q)
      if (pauli_digit(p.n, p.index, q) != 0) {
        flip_qubit = q;
        break;
      }
  }

  const int dim = pauli_count(p.n);
  BlochVector out{p.n, Eigen::VectorXd(dim)};
  for (int i = 0; i < dim; ++i) {
    double v = 1.0;
    for (int q = 0; q < p.n; ++q) {
      const int want = pauli_digit(p.n, i, q);
      double comp = plus_eig[pauli_digit(p.n, p.index, q)][want];
      if (q == flip_qubit && want != 0) comp = -comp;
      v *= comp;
    }
    out.s(i) = v;
  }
  return out;
}

Ptm random_cptp_ptm(int n, RngStream& rng, int kraus_rank) {
  const int hdim = 1 << n;
  const int rows = hdim * kraus_rank;
  Eigen::MatrixXcd gauss(rows, hdim);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < hdim; ++c)
      gauss(r, c) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  // Orthonormal columns give a Stinespring isometry V; rows split into Kraus
  // operators A_k with sum A_k^dag A_k = I.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gauss);
  Eigen::MatrixXcd v = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, hdim);

  std::vector<Eigen::MatrixXcd> kraus(kraus_rank);
  for (int k = 0; k < kraus_rank; ++k) kraus[k] = v.block(k * hdim, 0, hdim, hdim);

  const int dim = pauli_count(n);
  std::vector<Eigen::MatrixXcd> paulis(dim);
  for (int i = 0; i < dim; ++i) paulis[i] = pauli_matrix(n, i);

  Ptm g{n, Eigen::MatrixXd(dim, dim)};
  for (int j = 0; j < dim; ++j) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(hdim, hdim);
    for (const auto& a : kraus) out += a * paulis[j] * a.adjoint();
    for (int i = 0; i < dim; ++i)
      g.m(i, j) = (paulis[i] * out).trace().real() / static_cast<double>(hdim);
  }
  return g;
}

PauliChannel random_pauli_channel(int n, RngStream& rng, double min_identity_weight) {
  const int dim = pauli_count(n);
  PauliChannel ch;
  ch.n = n;
  ch.p.resize(dim);
  double tail = 0.0;
  for (int i = 1; i < dim; ++i) {
    ch.p(i) = rng.next_double();
    tail += ch.p(i);
  }
  const double scale = (1.0 - min_identity_weight) / tail;
  for (int i = 1; i < dim; ++i) ch.p(i) *= scale;
  ch.p(0) = min_identity_weight;
  return ch;
}

nlohmann::json ptm_to_json(const Ptm& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < g.dim(); ++j) row.push_back(g.m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", g.n}, {"basis", basis_name(g.n)}, {"rows", std::move(rows)}};
}

Ptm ptm_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int dim = pauli_count(n);
  if (j.at("basis").get<std::string>() != basis_name(n))
    throw ConfigError("PTM basis tag mismatch: expected " + basis_name(n));
  const auto& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != dim) throw ConfigError("PTM row count mismatch");
  Ptm g{n, Eigen::MatrixXd(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(rows[i].size()) != dim) throw ConfigError("PTM column count mismatch");
    for (int jj = 0; jj < dim; ++jj) g.m(i, jj) = rows[i][jj].get<double>();
  }
  return g;
}

void write_ptm_csv(const Ptm& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      if (j) out << ",";
      out << g.m(i, j);
    }
    out << "\n";
  }
}

nlohmann::json bloch_to_json(const BlochVector& b) {
  nlohmann::json s = nlohmann::json::array();
  for (int i = 0; i < b.s.size(); ++i) s.push_back(b.s(i));
  return {{"n", b.n}, {"basis", basis_name(b.n)}, {"s", std::move(s)}};
}

BlochVector bloch_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int dim = pauli_count(n);
  const auto& s = j.at("s");
  if (static_cast<int>(s.size()) != dim) throw ConfigError("Bloch vector length mismatch");
  BlochVector b{n, Eigen::VectorXd(dim)};
  for (int i = 0; i < dim; ++i) b.s(i) = s[i].get<double>();
  return b;
}

}  // namespace ps
