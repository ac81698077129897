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

#include "paulishape/noise.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

namespace ps {

namespace {

void check_lindblad_eps(double eps) {
  if (eps < 0.0 || eps >= 0.5)
    throw ValidationError("LindbladExample requires epsilon in [0, 1/2), got " +
                          std::to_string(eps));
}

Eigen::VectorXd checked_probs(const Eigen::VectorXd& p) {
  if (p.size() != 16) throw DimensionError("Pauli noise probability vector must have length 16");
  if (p.minCoeff() < -1e-12) throw ValidationError("Pauli noise probabilities must be >= 0");
  if (std::abs(p.sum() - 1.0) > 1e-9)
    throw ValidationError("Pauli noise probabilities must sum to 1");
  return p;
}

}  // namespace

Ptm lindblad_example_closed_form(double theta, double epsilon) {
  check_lindblad_eps(epsilon);
  const double e = epsilon;
  Ptm g = Ptm::identity(2);
  g.m(1, 0) = 2 * e;
  g.m(1, 1) = 1 - 2 * e;
  const double offsign[3] = {-1.0, 1.0, 1.0};  // (XX,YY), (IZ,ZI), (YX,XY)
  for (int b = 0; b < 3; ++b) {
    const int i = 2 + 2 * b;
    g.m(i, i) = 1 - e;
    g.m(i + 1, i + 1) = 1 - e;
    g.m(i, i + 1) = offsign[b] * e;
    g.m(i + 1, i) = offsign[b] * e;
  }
  const double damp = std::sqrt(1 - 2 * e);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int b = 0; b < 4; ++b) {
    const int i = 8 + 2 * b;
    g.m(i, i) = damp * c;
    g.m(i, i + 1) = -damp * s;
    g.m(i + 1, i) = damp * s;
    g.m(i + 1, i + 1) = damp * c;
  }
  return g;
}

Eigen::MatrixXd lindblad_example_generator(double theta, double epsilon) {
  check_lindblad_eps(epsilon);
  using cd = std::complex<double>;
  const cd im(0.0, 1.0);
  // Rate normalized so the exponential reproduces the closed form: each
  // anti-commuting pair (a, b) carries a rank-1 coefficient block
  // g * [[1, -i], [i, 1]] (jump operator proportional to P_a + i P_b).
  const double rate = epsilon > 0.0 ? -std::log(1 - 2 * epsilon) / 16.0 : 0.0;

  std::vector<Eigen::Matrix4cd> paulis(16);
  for (int i = 0; i < 16; ++i) paulis[i] = pauli_matrix(2, i);
  const Eigen::Matrix4cd h = 0.5 * theta * paulis[1];  // (theta/2) ZZ

  auto generator_action = [&](const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd out = -im * (h * rho - rho * h);
    for (int b = 0; b < 4; ++b) {
      const int a = 8 + 2 * b;
      const struct {
        int j, k;
        cd coef;
      } terms[4] = {{a, a, rate}, {a + 1, a + 1, rate}, {a, a + 1, -im * rate}, {a + 1, a, im * rate}};
      for (const auto& t : terms) {
        const Eigen::Matrix4cd kj = paulis[t.k] * paulis[t.j];
        out += t.coef * (paulis[t.j] * rho * paulis[t.k] - 0.5 * (kj * rho + rho * kj));
      }
    }
    return out;
  };

  Eigen::MatrixXd l(16, 16);
  for (int j = 0; j < 16; ++j) {
    const Eigen::Matrix4cd out = generator_action(paulis[j]);
    for (int i = 0; i < 16; ++i) l(i, j) = (paulis[i] * out).trace().real() / 4.0;
  }
  return l;
}

Ptm lindblad_example_exp(double theta, double epsilon) {
  const Eigen::MatrixXd l = lindblad_example_generator(theta, epsilon);
  return Ptm{2, l.exp()};
}

Ptm build_gate_ptm(const NoiseSpec& spec) {
  return std::visit(
      [](const auto& s) -> Ptm {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OverRotation>) {
          return rzz_ptm(s.theta + s.epsilon);
        } else if constexpr (std::is_same_v<T, LindbladExample>) {
          if (s.epsilon == 0.0) return rzz_ptm(s.theta);
          return lindblad_example_exp(s.theta, s.epsilon);
        } else if constexpr (std::is_same_v<T, PauliNoiseAfter>) {
          PauliChannel ch{2, checked_probs(s.p)};
          return compose(ch.ptm(), rzz_ptm(s.theta));
        } else if constexpr (std::is_same_v<T, PauliNoiseBefore>) {
          PauliChannel ch{2, checked_probs(s.p)};
          return compose(rzz_ptm(s.theta), ch.ptm());
        } else {
          static_assert(std::is_same_v<T, ExplicitPtm>);
          return s.ptm;
        }
      },
      spec);
}

Eigen::MatrixXd walsh_hadamard(int n) {
  Eigen::MatrixXd w(1, 1);
  w(0, 0) = 1.0;
  Eigen::Matrix2d h;
  h << 1, 1, 1, -1;
  for (int q = 0; q < n; ++q) {
    Eigen::MatrixXd next(w.rows() * 2, w.cols() * 2);
    next.topLeftCorner(w.rows(), w.cols()) = w;
    next.topRightCorner(w.rows(), w.cols()) = w;
    next.bottomLeftCorner(w.rows(), w.cols()) = w;
    next.bottomRightCorner(w.rows(), w.cols()) = -w;
    w = std::move(next);
  }
  return w;
}

SpamModel ideal_spam(int n) {
  const int d = 1 << n;
  return SpamModel{n, 1.0, Eigen::MatrixXd::Identity(d, d)};
}

SpamModel spam_from_flips(int n, double p01, double p10, double prep_scale) {
  if (p01 < 0 || p01 > 1 || p10 < 0 || p10 > 1)
    throw ValidationError("flip probabilities must lie in [0, 1]");
  Eigen::Matrix2d a1;
  // column k = distribution of the reported bit given true bit k
  a1 << 1 - p01, p10, p01, 1 - p10;
  Eigen::MatrixXd a(1, 1);
  a(0, 0) = 1.0;
  for (int q = 0; q < n; ++q) {
    Eigen::MatrixXd next(a.rows() * 2, a.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) next.block(r * a.rows(), c * a.cols(), a.rows(), a.cols()) = a1(r, c) * a;
    a = std::move(next);
  }
  return SpamModel{n, prep_scale, std::move(a)};
}

namespace {
void check_stochastic(const SpamModel& spam) {
  const int d = 1 << spam.n;
  if (spam.readout.rows() != d || spam.readout.cols() != d)
    throw DimensionError("readout matrix must be 2^n x 2^n");
  if (spam.readout.minCoeff() < -1e-12)
    throw ValidationError("readout matrix entries must be >= 0");
  for (int c = 0; c < d; ++c)
    if (std::abs(spam.readout.col(c).sum() - 1.0) > 1e-9)
      throw ValidationError("readout matrix columns must sum to 1");
}
}  // namespace

Eigen::VectorXd readout_bias(const SpamModel& spam) {
  check_stochastic(spam);
  const Eigen::MatrixXd w = walsh_hadamard(spam.n);
  const Eigen::MatrixXd waw = w * spam.readout * w;
  return waw.diagonal() / std::pow(2.0, spam.n);
}

nlohmann::json noise_spec_to_json(const NoiseSpec& spec) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OverRotation>) {
          return {{"kind", "over_rotation"}, {"theta", s.theta}, {"epsilon", s.epsilon}};
        } else if constexpr (std::is_same_v<T, LindbladExample>) {
          return {{"kind", "lindblad_example"}, {"theta", s.theta}, {"epsilon", s.epsilon}};
        } else if constexpr (std::is_same_v<T, PauliNoiseAfter> ||
                             std::is_same_v<T, PauliNoiseBefore>) {
          nlohmann::json p = nlohmann::json::array();
          for (int i = 0; i < s.p.size(); ++i) p.push_back(s.p(i));
          const char* kind =
              std::is_same_v<T, PauliNoiseAfter> ? "pauli_noise_after" : "pauli_noise_before";
          return {{"kind", kind}, {"theta", s.theta}, {"p", std::move(p)}};
        } else {
          return {{"kind", "explicit_ptm"}, {"ptm", ptm_to_json(s.ptm)}};
        }
      },
      spec);
}

NoiseSpec noise_spec_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "over_rotation")
    return OverRotation{j.at("theta").get<double>(), j.at("epsilon").get<double>()};
  if (kind == "lindblad_example")
    return LindbladExample{j.at("theta").get<double>(), j.at("epsilon").get<double>()};
  if (kind == "pauli_noise_after" || kind == "pauli_noise_before") {
    const auto& pj = j.at("p");
    Eigen::VectorXd p(pj.size());
    for (std::size_t i = 0; i < pj.size(); ++i) p(static_cast<int>(i)) = pj[i].get<double>();
    if (kind == "pauli_noise_after") return PauliNoiseAfter{j.at("theta").get<double>(), p};
    return PauliNoiseBefore{j.at("theta").get<double>(), p};
  }
  if (kind == "explicit_ptm") return ExplicitPtm{ptm_from_json(j.at("ptm"))};
  throw ConfigError("unknown noise kind '" + kind + "'");
}

nlohmann::json spam_to_json(const SpamModel& spam) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < spam.readout.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < spam.readout.cols(); ++j) row.push_back(spam.readout(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", spam.n},
          {"prep_scale", spam.prep_scale},
          {"readout", {{"kind", "matrix"}, {"matrix", std::move(rows)}}}};
}

SpamModel spam_from_json(const nlohmann::json& j) {
  const int n = j.value("n", 2);
  const double prep = j.value("prep_scale", 1.0);
  if (!j.contains("readout")) {
    SpamModel s = ideal_spam(n);
    s.prep_scale = prep;
    return s;
  }
  const auto& r = j.at("readout");
  const std::string kind = r.at("kind").get<std::string>();
  if (kind == "ideal") {
    SpamModel s = ideal_spam(n);
    s.prep_scale = prep;
    return s;
  }
  if (kind == "flip")
    return spam_from_flips(n, r.at("p01").get<double>(), r.at("p10").get<double>(), prep);
  if (kind == "matrix") {
    const auto& rows = r.at("matrix");
    const int d = 1 << n;
    if (static_cast<int>(rows.size()) != d) throw ConfigError("readout matrix row count mismatch");
    SpamModel s{n, prep, Eigen::MatrixXd(d, d)};
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj) s.readout(i, jj) = rows[i][jj].get<double>();
    check_stochastic(s);
    return s;
  }
  throw ConfigError("unknown readout kind '" + kind + "'");
}

}  // namespace ps
