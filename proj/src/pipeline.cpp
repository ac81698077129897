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

#include "paulishape/pipeline.hpp"

#include <ctime>
#include <fstream>
#include <set>

#include "paulishape/analysis.hpp"
#include "paulishape/learning.hpp"

namespace ps {

namespace {

using nlohmann::json;

void require_schema(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("schema_version")) throw ConfigError("missing required key 'schema_version'");
  const int v = j.at("schema_version").get<int>();
  if (v != 1) throw ConfigError("unsupported schema_version " + std::to_string(v));
}

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + ctx);
}

std::filesystem::path resolve(const RunContext& ctx, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : ctx.base_dir / path;
}

NoiseSpec parse_noise(const json& j) {
  require_keys(j, {"kind", "theta", "epsilon", "p", "ptm"}, "noise");
  return noise_spec_from_json(j);
}

SpamModel parse_spam(const json& j) {
  require_keys(j, {"n", "prep_scale", "readout"}, "spam");
  if (j.contains("readout"))
    require_keys(j.at("readout"), {"kind", "p01", "p10", "matrix"}, "spam.readout");
  return spam_from_json(j);
}

double theta_of(const json& config, const NoiseSpec& noise) {
  if (config.contains("theta")) return config.at("theta").get<double>();
  if (const auto* o = std::get_if<OverRotation>(&noise)) return o->theta;
  if (const auto* l = std::get_if<LindbladExample>(&noise)) return l->theta;
  if (const auto* a = std::get_if<PauliNoiseAfter>(&noise)) return a->theta;
  if (const auto* b = std::get_if<PauliNoiseBefore>(&noise)) return b->theta;
  throw ConfigError("'theta' is required when the gate has no nominal angle");
}

struct GateSource {
  Ptm gate;
  double theta = 0.0;
  bool from_learned = false;
  LearnedPtm learned;
  std::vector<std::string> warnings;
};

GateSource parse_gate(const json& config, const json& gate_json, const RunContext& ctx) {
  require_keys(gate_json, {"kind", "path", "noise"}, "gate");
  GateSource src;
  const std::string kind = gate_json.at("kind").get<std::string>();
  if (kind == "learned") {
    const auto path = resolve(ctx, gate_json.at("path").get<std::string>());
    const json learned_json = load_json_file(path);
    src.learned = learned_from_json(learned_json);
    src.from_learned = true;
    src.theta = config.contains("theta") ? config.at("theta").get<double>()
                                         : src.learned.theta_nominal;
    src.gate = assemble_learned_ptm(src.learned, &src.warnings);
  } else if (kind == "noise") {
    const NoiseSpec noise = parse_noise(gate_json.at("noise"));
    src.gate = build_gate_ptm(noise);
    src.theta = theta_of(config, noise);
  } else {
    throw ConfigError("unknown gate kind '" + kind + "'");
  }
  return src;
}

void write_curves_csv(const std::filesystem::path& path, const std::vector<LabeledCurve>& curves) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "scheme,observable,d,mu_hat,stderr,n_tot\n";
  for (const auto& curve : curves)
    for (const auto& rec : curve.records)
      out << curve.scheme << "," << pauli_label(2, curve.observable) << "," << rec.d << ","
          << rec.mu_hat << "," << rec.stderr_ << "," << rec.n_tot << "\n";
}

json curves_to_json(const std::vector<LabeledCurve>& curves) {
  json out = json::array();
  for (const auto& curve : curves) {
    json records = json::array();
    for (const auto& rec : curve.records)
      records.push_back(
          {{"d", rec.d}, {"mu_hat", rec.mu_hat}, {"stderr", rec.stderr_}, {"n_tot", rec.n_tot}});
    out.push_back({{"scheme", curve.scheme},
                   {"experiment", curve.experiment},
                   {"observable", pauli_label(2, curve.observable)},
                   {"records", std::move(records)}});
  }
  return out;
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

std::string now_iso8601() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int run_learn(const json& config, const RunContext& ctx) {
  require_schema(config);
  require_keys(config, {"schema_version", "noise", "spam", "theta", "learn"}, "learn config");
  const NoiseSpec noise = parse_noise(config.at("noise"));
  const Ptm gate = build_gate_ptm(noise);
  const SpamModel spam = config.contains("spam") ? parse_spam(config.at("spam")) : ideal_spam(2);
  const double theta = theta_of(config, noise);

  LearnKnobs knobs;
  knobs.seed = ctx.seed;
  knobs.threads = ctx.threads;
  if (config.contains("learn")) {
    const json& l = config.at("learn");
    require_keys(l,
                 {"exp_depths", "cos_depth_max", "ctb_depths", "n_circuits", "shots_per_circuit",
                  "type4_tolerance"},
                 "learn block");
    if (l.contains("exp_depths")) knobs.exp_depths = l.at("exp_depths").get<std::vector<int>>();
    if (l.contains("cos_depth_max")) {
      const int dmax = l.at("cos_depth_max").get<int>();
      knobs.cos_depths.clear();
      for (int d = 0; d <= dmax; ++d) knobs.cos_depths.push_back(d);
    }
    if (l.contains("ctb_depths")) knobs.ctb_depths = l.at("ctb_depths").get<std::vector<int>>();
    if (l.contains("n_circuits")) knobs.n_circuits = l.at("n_circuits").get<int>();
    if (l.contains("shots_per_circuit"))
      knobs.shots_per_circuit = l.at("shots_per_circuit").get<int>();
    if (l.contains("type4_tolerance")) knobs.type4_tol = l.at("type4_tolerance").get<double>();
  }

  const LearningRun run = run_full_learning(gate, spam, knobs, theta);

  std::vector<std::string> warnings;
  const Ptm assembled = assemble_learned_ptm(run.learned, &warnings);

  json out = learned_to_json(run.learned);
  out["schema_version"] = 1;
  out["generated_at"] = now_iso8601();
  out["seed"] = ctx.seed;
  out["assembled_ptm"] = ptm_to_json(assembled);
  out["warnings"] = warnings;
  out["all_converged"] = run.learned.all_converged();

  std::filesystem::create_directories(ctx.out_dir);
  write_json_file(ctx.out_dir / "learned.json", out);
  write_curves_csv(ctx.out_dir / "curves.csv", run.curves);
  write_json_file(ctx.out_dir / "curves.json",
                  {{"schema_version", 1}, {"curves", curves_to_json(run.curves)}});
  write_ptm_csv(assembled, (ctx.out_dir / "learned_ptm.csv").string());
  return run.learned.all_converged() ? 0 : 2;
}

int run_shape(const json& config, const RunContext& ctx) {
  require_schema(config);
  require_keys(config, {"schema_version", "gate", "theta", "target", "zero_threshold"},
               "shape config");
  GateSource src = parse_gate(config, config.at("gate"), ctx);
  const double zero_threshold = config.value("zero_threshold", 1e-10);

  const json& target = config.at("target");
  require_keys(target, {"mode", "optimize_free", "alpha", "epsilon"}, "target");
  const std::string mode = target.at("mode").get<std::string>();

  json out;
  out["schema_version"] = 1;
  out["generated_at"] = now_iso8601();
  out["theta"] = src.theta;
  out["target"] = mode;

  if (src.from_learned && src.learned.type4) {
    for (const auto& b : *src.learned.type4)
      src.warnings.push_back("type-4 block (" + std::to_string(b.i) + "," + std::to_string(b.j) +
                             ") set to 0; CP-feasible |t| <= " + std::to_string(b.t_symmetric) +
                             " (symmetric) / " + std::to_string(b.t_antisymmetric) +
                             " (antisymmetric)");
  }

  ShapingPlan plan;
  if (mode == "cancel") {
    const Ptm ideal = rzz_ptm(src.theta);
    const bool optimize = target.value("optimize_free", true);
    QuasiProbMatrix q;
    if (src.from_learned || !optimize) {
      // For a learned gate the free entries sit exactly where the channel
      // was not (and cannot be) characterized; a nonzero fill would couple
      // the plan to the unknown true values, so they stay at zero.
      q = quasi_probs(characteristic_matrix(ideal, src.gate, FreeFill::zero(), zero_threshold));
      out["free_fill_x"] = 0.0;
    } else {
      FreeFillOptimum opt = optimize_block_free_fill(ideal, src.gate, zero_threshold);
      q = std::move(opt.q);
      out["free_fill_x"] = opt.x_star;
    }
    plan = make_plan(q);
  } else if (mode == "amplify") {
    const double alpha = target.at("alpha").get<double>();
    double epsilon;
    if (target.contains("epsilon")) {
      epsilon = target.at("epsilon").get<double>();
    } else if (const json& gj = config.at("gate");
               gj.at("kind") == "noise" && gj.at("noise").at("kind") == "lindblad_example") {
      epsilon = gj.at("noise").at("epsilon").get<double>();
    } else {
      throw ConfigError("amplify target requires 'epsilon'");
    }
    std::array<std::pair<double, double>, 4> pairs;
    for (int b = 0; b < 4; ++b) pairs[b] = {src.gate.m(2 * b, 2 * b), src.gate.m(2 * b + 1, 2 * b + 1)};
    AmplificationPlan amp = approx_amplification(pairs, alpha, epsilon);
    out["alpha"] = alpha;
    out["epsilon"] = epsilon;
    json etas = json::array();
    for (double e : amp.eta) etas.push_back(e);
    out["eta"] = std::move(etas);
    plan = make_plan(amp.q);
  } else {
    throw ConfigError("unknown target mode '" + mode + "' (expected cancel or amplify)");
  }

  json plan_json = plan_to_json(plan);
  for (auto it = plan_json.begin(); it != plan_json.end(); ++it) out[it.key()] = it.value();
  out["warnings"] = src.warnings;

  std::filesystem::create_directories(ctx.out_dir);
  write_json_file(ctx.out_dir / "plan.json", out);
  return 0;
}

int run_simulate(const json& config, const RunContext& ctx) {
  require_schema(config);
  require_keys(config, {"schema_version", "gate", "plan", "observable", "initial", "shots", "theta"},
               "simulate config");
  const GateSource src = parse_gate(config, config.at("gate"), ctx);

  const json& plan_json = config.at("plan");
  require_keys(plan_json, {"kind", "path"}, "plan");
  ShapingPlan plan;
  const std::string plan_kind = plan_json.at("kind").get<std::string>();
  if (plan_kind == "file") {
    plan = plan_from_json(load_json_file(resolve(ctx, plan_json.at("path").get<std::string>())));
  } else if (plan_kind == "identity") {
    plan = identity_plan(2);
  } else {
    throw ConfigError("unknown plan kind '" + plan_kind + "'");
  }

  const PauliIndex obs = pauli_from_label(config.at("observable").get<std::string>());
  if (obs.n != 2) throw ConfigError("observable must be a 2-qubit Pauli label");

  const json& init = config.at("initial");
  require_keys(init, {"kind", "pauli", "sign", "s", "n"}, "initial");
  BlochVector rho;
  const std::string init_kind = init.at("kind").get<std::string>();
  if (init_kind == "eigenstate") {
    rho = pauli_eigenstate(pauli_from_label(init.at("pauli").get<std::string>()),
                           init.value("sign", 1));
  } else if (init_kind == "bloch") {
    rho = bloch_from_json(init);
  } else {
    throw ConfigError("unknown initial-state kind '" + init_kind + "'");
  }

  const long shots = config.at("shots").get<long>();
  const ShapedEstimate est =
      estimate_shaped_expectation(src.gate, plan, rho, obs.index, shots, ctx.seed, ctx.threads);

  const BlochVector ideal_state = apply(rzz_ptm(src.theta), rho);
  const double ideal = ideal_state.s(obs.index);
  const double bias = est.estimate - ideal;

  json out = {{"schema_version", 1},
              {"generated_at", now_iso8601()},
              {"observable", pauli_label(2, obs.index)},
              {"shots", shots},
              {"estimate", est.estimate},
              {"stderr", est.stderr_},
              {"ideal", ideal},
              {"bias", bias},
              {"bias_sigmas", est.stderr_ > 0 ? bias / est.stderr_ : 0.0},
              {"gamma", plan.gamma}};
  std::filesystem::create_directories(ctx.out_dir);
  write_json_file(ctx.out_dir / "estimate.json", out);
  return 0;
}

namespace {

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
}

}  // namespace

int run_analyze(const json& config, const RunContext& ctx) {
  require_schema(config);
  require_keys(config, {"schema_version", "analyses"}, "analyze config");
  json summary = {{"schema_version", 1}, {"generated_at", now_iso8601()}};
  std::filesystem::create_directories(ctx.out_dir);

  if (!config.contains("analyses")) {
    write_json_file(ctx.out_dir / "analyze.json", summary);
    return 0;
  }

  for (const json& a : config.at("analyses")) {
    const std::string name = a.at("name").get<std::string>();
    if (name == "g-of-x") {
      require_keys(a, {"name", "x_min", "x_max", "steps"}, name);
      const double lo = a.value("x_min", 0.05), hi = a.value("x_max", 8.0);
      const int steps = a.value("steps", 160);
      std::vector<std::vector<double>> rows;
      for (int k = 0; k <= steps; ++k) {
        const double x = lo + (hi - lo) * k / steps;
        rows.push_back({x, g_of_x(x)});
      }
      write_csv(ctx.out_dir / "g_of_x.csv", "x,g", rows);
      const FisherOptimum opt = fisher_max_exp(1.0, 0.99);
      summary[name] = {{"x_star", opt.x_star}, {"g_star", opt.g_star}};
    } else if (name == "delta-mcb") {
      require_keys(a, {"name", "theta", "depths"}, name);
      const double theta = a.at("theta").get<double>();
      std::vector<std::vector<double>> rows;
      for (int d : a.at("depths").get<std::vector<int>>())
        rows.push_back({static_cast<double>(d),
                        predict_delta(TwirlKind::FullTwirlEach, true, theta, d, 1.0, 0.0)});
      write_csv(ctx.out_dir / "delta_mcb.csv", "d,delta", rows);
      summary[name] = {{"theta", theta}};
    } else if (name == "gamma-example1") {
      require_keys(a, {"name", "theta", "epsilon", "x_min", "x_max", "steps"}, name);
      const double theta = a.at("theta").get<double>();
      const double eps = a.at("epsilon").get<double>();
      const double lo = a.value("x_min", -2.0), hi = a.value("x_max", 2.0);
      const int steps = a.value("steps", 81);
      std::vector<std::vector<double>> rows;
      for (int k = 0; k <= steps; ++k) {
        const double x = lo + (hi - lo) * k / steps;
        rows.push_back({x, gamma_example1(theta, eps, x)});
      }
      write_csv(ctx.out_dir / "gamma_example1.csv", "x,gamma", rows);
      const GammaMinimum m = minimize_gamma_example1(theta, eps);
      summary[name] = {{"x_star", m.x_star}, {"gamma_star", m.gamma_star}};
    } else if (name == "gamma-example2") {
      require_keys(a, {"name", "epsilon", "x_min", "x_max", "steps"}, name);
      const double eps = a.at("epsilon").get<double>();
      const double lo = a.value("x_min", -30.0), hi = a.value("x_max", 30.0);
      const int steps = a.value("steps", 121);
      std::vector<std::vector<double>> rows;
      for (int k = 0; k <= steps; ++k) {
        const double x = lo + (hi - lo) * k / steps;
        rows.push_back({x, gamma_example2(eps, x), gamma_example2_limit(x)});
      }
      write_csv(ctx.out_dir / "gamma_example2.csv", "x,gamma,gamma_limit", rows);
      summary[name] = {{"gamma_at_0", gamma_example2(eps, 0.0)}};
    } else if (name == "fisher-exp") {
      require_keys(a, {"name", "A", "r", "d_max"}, name);
      const double A = a.value("A", 1.0);
      const double r = a.at("r").get<double>();
      const int dmax = a.value("d_max", 200);
      std::vector<std::vector<double>> rows;
      for (int d = 1; d <= dmax; ++d) rows.push_back({static_cast<double>(d), fisher_exp(A, r, d)});
      write_csv(ctx.out_dir / "fisher_exp.csv", "d,info", rows);
      const FisherOptimum opt = fisher_max_exp(A, r);
      summary[name] = {{"d_star", opt.d_star}, {"info_max", opt.info_max}};
    } else {
      throw ConfigError("unknown analysis name '" + name + "'");
    }
  }
  write_json_file(ctx.out_dir / "analyze.json", summary);
  return 0;
}

}  // namespace ps
