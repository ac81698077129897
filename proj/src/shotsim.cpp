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

#include "paulishape/shotsim.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <thread>

namespace ps {

namespace {

// Stream tags keeping circuit construction and shot draws independent.
constexpr std::uint64_t kTagCircuit = 0xC1;
constexpr std::uint64_t kTagShot = 0x57;
constexpr std::uint64_t kTagDelta = 0xDE;

void run_indexed(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int parity_sign(unsigned bits) { return (std::popcount(bits) & 1) ? -1 : 1; }

}  // namespace

std::vector<int> sample_twirl_sequence(const TwirlScheme& scheme, int depth, RngStream& rng) {
  if (depth < 0) throw ValidationError("depth must be >= 0");
  std::vector<int> seq(static_cast<std::size_t>(depth));
  switch (scheme.kind) {
    case TwirlKind::FullTwirlEach:
      for (int k = 0; k < depth; ++k) seq[k] = static_cast<int>(rng.next_below(16));
      break;
    case TwirlKind::CommutingTwirlEach:
      for (int k = 0; k < depth; ++k) seq[k] = static_cast<int>(rng.next_below(8));
      break;
    case TwirlKind::CorrelatedPairs: {
      if (depth % 2 != 0)
        throw ValidationError("correlated-pair twirling admits even depths only, got " +
                              std::to_string(depth));
      for (int k = 0; k < depth; k += 2) {
        const bool commuting_first = rng.next_double() < 0.5;
        const int first = static_cast<int>(rng.next_below(8));
        const int second = static_cast<int>(rng.next_below(8));
        seq[k] = commuting_first ? first : 8 + first;
        seq[k + 1] = commuting_first ? 8 + second : second;
      }
      break;
    }
  }
  return seq;
}

BlochVector apply_twirl_chain(const Ptm& gate, std::span<const int> twirls,
                              const BlochVector& in) {
  const int dim = gate.dim();
  BlochVector state = in;
  Eigen::VectorXd tmp(dim);
  for (int t : twirls) {
    for (int i = 0; i < dim; ++i)
      tmp(i) = state.s(i) * static_cast<double>(commutator_sign(gate.n, i, t));
    tmp = gate.m * tmp;
    for (int i = 0; i < dim; ++i)
      state.s(i) = tmp(i) * static_cast<double>(commutator_sign(gate.n, i, t));
  }
  return state;
}

BlochVector prepared_state(const BlochVector& intended, const SpamModel& spam,
                           std::optional<int> prep_twirl) {
  detail::check_same_n(intended.n, spam.n, "prepared_state");
  BlochVector out = intended;
  for (int i = 1; i < out.s.size(); ++i) out.s(i) *= spam.prep_scale;
  if (prep_twirl) {
    for (int i = 0; i < out.s.size(); ++i)
      if (commutator_sign(out.n, i, *prep_twirl) < 0) out.s(i) = 0.0;
  }
  return out;
}

MeasurementBasis measurement_basis(int n, int basis_pauli) {
  MeasurementBasis basis;
  basis.n = n;
  basis.qubit_digit.resize(n);
  for (int q = 0; q < n; ++q) {
    const int d = pauli_digit(n, basis_pauli, q);
    basis.qubit_digit[q] = d == 0 ? 3 : d;
  }
  return basis;
}

int observable_bits(const MeasurementBasis& basis, int observable) {
  int bits = 0;
  for (int q = 0; q < basis.n; ++q) {
    const int d = pauli_digit(basis.n, observable, q);
    if (d == 0) continue;
    if (d != basis.qubit_digit[q])
      throw ValidationError("observable " + pauli_label(basis.n, observable) +
                            " is not measurable in the requested basis");
    bits |= 1 << (basis.n - 1 - q);
  }
  return bits;
}

namespace {

// Pauli index whose factor at each set bit of `mask` is the basis digit,
// identity elsewhere. Measuring the basis and evaluating the bit-parity of
// `mask` is exactly measuring this Pauli.
int pullback_index(const MeasurementBasis& basis, int mask) {
  int code = 0;
  for (int q = 0; q < basis.n; ++q) {
    code <<= 2;
    if (mask & (1 << (basis.n - 1 - q))) code |= basis.qubit_digit[q];
  }
  return code_to_index(basis.n, code);
}

}  // namespace

Eigen::VectorXd outcome_distribution(const MeasurementBasis& basis, const BlochVector& state) {
  const int d = 1 << basis.n;
  Eigen::VectorXd v(d);
  for (int mask = 0; mask < d; ++mask) v(mask) = state.s(pullback_index(basis, mask));
  Eigen::VectorXd p = walsh_hadamard(basis.n) * v / static_cast<double>(d);
  double total = 0.0;
  for (int k = 0; k < d; ++k) {
    if (p(k) < 0.0) {
      if (p(k) < -1e-9)
        throw ValidationError("outcome distribution has a negative weight: " +
                              std::to_string(p(k)));
      p(k) = 0.0;
    }
    total += p(k);
  }
  return p / total;
}

namespace {

// Distribution of reported bitstrings given a twirl mask m: flip, corrupt
// with A, unflip.
Eigen::VectorXd masked_readout(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, int mask) {
  const int d = static_cast<int>(p.size());
  Eigen::VectorXd flipped(d);
  for (int k = 0; k < d; ++k) flipped(k) = p(k ^ mask);
  Eigen::VectorXd corrupted = a * flipped;
  Eigen::VectorXd out(d);
  for (int k = 0; k < d; ++k) out(k) = corrupted(k ^ mask);
  return out;
}

struct ShotSampler {
  // one cdf per twirl mask (a single entry when twirling is off)
  std::vector<std::vector<double>> cdfs;
  int n = 0;
  bool twirl = true;

  ShotSampler(const MeasurementBasis& basis, const BlochVector& final_state,
              const SpamModel& spam, bool readout_twirl)
      : n(basis.n), twirl(readout_twirl) {
    const Eigen::VectorXd p = outcome_distribution(basis, final_state);
    const int d = 1 << n;
    const int n_masks = readout_twirl ? d : 1;
    cdfs.resize(n_masks);
    for (int m = 0; m < n_masks; ++m) {
      const Eigen::VectorXd dist = masked_readout(spam.readout, p, m);
      std::vector<double> cdf(d);
      double acc = 0.0;
      for (int k = 0; k < d; ++k) {
        acc += std::max(dist(k), 0.0);
        cdf[k] = acc;
      }
      for (int k = 0; k < d; ++k) cdf[k] /= acc;
      cdf[d - 1] = 1.0;
      cdfs[m] = std::move(cdf);
    }
  }

  int draw_bitstring(RngStream& rng) const {
    const int mask = twirl ? static_cast<int>(rng.next_below(1ULL << n)) : 0;
    return static_cast<int>(rng.categorical(cdfs[mask]));
  }
};

double exact_mean(const MeasurementBasis& basis, const BlochVector& final_state,
                  const SpamModel& spam, int obs_bits, bool readout_twirl) {
  const int d = 1 << basis.n;
  if (readout_twirl) {
    const Eigen::VectorXd m = readout_bias(spam);
    Eigen::VectorXd v(d);
    for (int mask = 0; mask < d; ++mask) v(mask) = final_state.s(pullback_index(basis, mask));
    return m(obs_bits) * v(obs_bits);
  }
  // raw readout: E = 2^-n (W A W v)_j, evaluated through the distribution
  const Eigen::VectorXd p = outcome_distribution(basis, final_state);
  const Eigen::VectorXd reported = spam.readout * p;
  double mean = 0.0;
  for (int k = 0; k < d; ++k) mean += parity_sign(static_cast<unsigned>(obs_bits & k)) * reported(k);
  return mean;
}

}  // namespace

double exact_circuit_expectation(const Ptm& gate, std::span<const int> twirls,
                                 const BlochVector& prepared, const SpamModel& spam,
                                 int observable, bool readout_twirl) {
  const MeasurementBasis basis = measurement_basis(gate.n, observable);
  const BlochVector final_state = apply_twirl_chain(gate, twirls, prepared);
  return exact_mean(basis, final_state, spam, observable_bits(basis, observable), readout_twirl);
}

int sample_outcome(const Ptm& gate, std::span<const int> twirls, const BlochVector& prepared,
                   const SpamModel& spam, int observable, bool readout_twirl, RngStream& rng) {
  const MeasurementBasis basis = measurement_basis(gate.n, observable);
  const BlochVector final_state = apply_twirl_chain(gate, twirls, prepared);
  const ShotSampler sampler(basis, final_state, spam, readout_twirl);
  const int bits = observable_bits(basis, observable);
  return parity_sign(static_cast<unsigned>(bits & sampler.draw_bitstring(rng)));
}

std::vector<DecayCurve> run_decay_experiment(const DecayExperimentSpec& spec) {
  if (spec.depths.empty()) throw ValidationError("depth list must be non-empty");
  if (spec.n_circuits < 1 || spec.shots_per_circuit < 1)
    throw ValidationError("n_circuits and shots_per_circuit must be positive");

  const MeasurementBasis basis = measurement_basis(spec.gate.n, spec.basis_pauli);
  std::vector<int> obs_bits(spec.observables.size());
  for (std::size_t o = 0; o < spec.observables.size(); ++o)
    obs_bits[o] = observable_bits(basis, spec.observables[o]);

  const BlochVector prepared = prepared_state(spec.initial, spec.spam, spec.prep_twirl);
  const long n_tot = static_cast<long>(spec.n_circuits) * spec.shots_per_circuit;

  std::vector<DecayCurve> curves(spec.observables.size());
  for (std::size_t o = 0; o < spec.observables.size(); ++o) {
    curves[o].observable = spec.observables[o];
    curves[o].records.resize(spec.depths.size());
  }

  for (std::size_t di = 0; di < spec.depths.size(); ++di) {
    const int depth = spec.depths[di];
    // circuit_means[o][c]
    std::vector<std::vector<double>> circuit_means(
        spec.observables.size(), std::vector<double>(spec.n_circuits, 0.0));

    run_indexed(static_cast<std::size_t>(spec.n_circuits), spec.threads, [&](std::size_t c) {
      RngStream circuit_rng = derive_rng(spec.seed, {kTagCircuit, di, c});
      const std::vector<int> twirls = sample_twirl_sequence(spec.scheme, depth, circuit_rng);
      const BlochVector final_state = apply_twirl_chain(spec.gate, twirls, prepared);
      const ShotSampler sampler(basis, final_state, spec.spam, spec.readout_twirl);

      RngStream shot_rng = derive_rng(spec.seed, {kTagShot, di, c});
      std::vector<long> sums(spec.observables.size(), 0);
      for (int s = 0; s < spec.shots_per_circuit; ++s) {
        const int k = sampler.draw_bitstring(shot_rng);
        for (std::size_t o = 0; o < spec.observables.size(); ++o)
          sums[o] += parity_sign(static_cast<unsigned>(obs_bits[o] & k));
      }
      for (std::size_t o = 0; o < spec.observables.size(); ++o)
        circuit_means[o][c] = static_cast<double>(sums[o]) / spec.shots_per_circuit;
    });

    for (std::size_t o = 0; o < spec.observables.size(); ++o) {
      double mean = 0.0;
      for (double m : circuit_means[o]) mean += m;
      mean /= spec.n_circuits;
      double se;
      if (spec.n_circuits > 1) {
        double ss = 0.0;
        for (double m : circuit_means[o]) ss += (m - mean) * (m - mean);
        se = std::sqrt(ss / (static_cast<double>(spec.n_circuits) * (spec.n_circuits - 1)));
      } else {
        se = std::sqrt(std::max(1.0 - mean * mean, 0.0) / static_cast<double>(n_tot));
      }
      curves[o].records[di] = DecayRecord{depth, mean, se, n_tot};
    }
  }
  return curves;
}

std::vector<DecayRecord> estimate_mu(const ExperimentPlan& plan) {
  DecayExperimentSpec spec;
  spec.gate = plan.gate;
  spec.spam = plan.spam;
  spec.scheme = plan.scheme;
  spec.initial = plan.initial;
  if (plan.scheme.state_prep_twirl) spec.prep_twirl = plan.observable;
  spec.basis_pauli = plan.observable;
  spec.observables = {plan.observable};
  spec.depths = plan.depths;
  spec.n_circuits = plan.n_circuits;
  spec.shots_per_circuit = plan.shots_per_circuit;
  spec.seed = plan.seed;
  spec.threads = plan.threads;
  spec.readout_twirl = plan.readout_twirl;
  return run_decay_experiment(spec).front().records;
}

ShapedEstimate estimate_shaped_expectation(const Ptm& gate, const ShapingPlan& plan,
                                           const BlochVector& initial, int observable,
                                           long shots, std::uint64_t seed, int threads) {
  if (shots <= 0) throw ValidationError("shots must be positive");
  detail::check_same_n(gate.n, plan.n, "estimate_shaped_expectation");

  // Exact +-1 outcome mean for every surviving (i, j) pair.
  std::vector<double> means(plan.entries.size());
  for (std::size_t e = 0; e < plan.entries.size(); ++e) {
    const auto& entry = plan.entries[e];
    BlochVector s = initial;
    for (int i = 0; i < gate.dim(); ++i)
      s.s(i) *= static_cast<double>(commutator_sign(gate.n, i, entry.j));
    s.s = gate.m * s.s;
    for (int i = 0; i < gate.dim(); ++i)
      s.s(i) *= static_cast<double>(commutator_sign(gate.n, i, entry.i));
    means[e] = s.s(observable);
  }

  constexpr long kChunk = 65536;
  const std::size_t n_chunks = static_cast<std::size_t>((shots + kChunk - 1) / kChunk);
  std::vector<double> chunk_sum(n_chunks, 0.0), chunk_sq(n_chunks, 0.0);
  run_indexed(n_chunks, threads, [&](std::size_t ch) {
    RngStream rng = derive_rng(seed, {kTagShot, ch});
    const long lo = static_cast<long>(ch) * kChunk;
    const long hi = std::min(shots, lo + kChunk);
    double acc = 0.0, acc2 = 0.0;
    for (long s = lo; s < hi; ++s) {
      const std::size_t e = rng.categorical(plan.cdf);
      const double y = plan.entries[e].weight * rng.pm_one(means[e]);
      acc += y;
      acc2 += y * y;
    }
    chunk_sum[ch] = acc;
    chunk_sq[ch] = acc2;
  });

  double total = 0.0, total_sq = 0.0;
  for (std::size_t ch = 0; ch < n_chunks; ++ch) {
    total += chunk_sum[ch];
    total_sq += chunk_sq[ch];
  }
  const double mean = total / static_cast<double>(shots);
  const double var = std::max(total_sq / static_cast<double>(shots) - mean * mean, 0.0);
  return ShapedEstimate{mean, std::sqrt(var / static_cast<double>(shots)), shots};
}

double enumerate_shaped_expectation(const Ptm& gate, const QuasiProbMatrix& q,
                                    const BlochVector& initial, int observable) {
  detail::check_same_n(gate.n, q.n, "enumerate_shaped_expectation");
  const int dim = gate.dim();
  double acc = 0.0;
  Eigen::VectorXd s(dim);
  for (int j = 0; j < dim; ++j) {
    bool col_used = false;
    for (int i = 0; i < dim; ++i) col_used |= q.q(i, j) != 0.0;
    if (!col_used) continue;
    for (int k = 0; k < dim; ++k)
      s(k) = initial.s(k) * static_cast<double>(commutator_sign(gate.n, k, j));
    const Eigen::VectorXd mid = gate.m * s;
    for (int i = 0; i < dim; ++i) {
      if (q.q(i, j) == 0.0) continue;
      acc += q.q(i, j) * mid(observable) *
             static_cast<double>(commutator_sign(gate.n, observable, i));
    }
  }
  return acc;
}

double empirical_delta(const Ptm& gate, const SpamModel& spam, const TwirlScheme& scheme,
                       const BlochVector& initial, int observable, int depth, int n_samples,
                       std::uint64_t seed) {
  if (n_samples < 2) throw ValidationError("empirical_delta needs at least 2 samples");
  const std::optional<int> prep = scheme.state_prep_twirl ? std::optional<int>(observable)
                                                          : std::nullopt;
  const BlochVector prepared = prepared_state(initial, spam, prep);
  std::vector<double> mus(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    RngStream rng = derive_rng(seed, {kTagDelta, static_cast<std::uint64_t>(s)});
    const std::vector<int> twirls = sample_twirl_sequence(scheme, depth, rng);
    mus[s] = exact_circuit_expectation(gate, twirls, prepared, spam, observable);
  }
  double mean = 0.0;
  for (double m : mus) mean += m;
  mean /= n_samples;
  double ss = 0.0;
  for (double m : mus) ss += (m - mean) * (m - mean);
  return std::sqrt(ss / (n_samples - 1));
}

}  // namespace ps
