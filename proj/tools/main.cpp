//
// Copyright 2026 The peerrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "peerrel/bounds.hpp"
#include "peerrel/error.hpp"
#include "peerrel/instance.hpp"
#include "peerrel/oracle.hpp"
#include "peerrel/project.hpp"
#include "peerrel/simlab.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump() << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw peerrel::InvalidInputError("cannot write " + out_path);
    out << j.dump(2) << '\n';
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw peerrel::InvalidInputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw peerrel::InvalidInputError("malformed JSON in " + path + ": " +
                                     e.what());
  }
}

peerrel::WeightDistribution parse_distribution(const json& j) {
  peerrel::WeightDistribution d;
  const std::string rule = j.value("rule", "fixed");
  if (rule == "fixed") {
    d.rule = peerrel::WeightDistribution::Rule::kFixedBeta;
    d.a = j.at("a").get<double>();
    d.b = j.at("b").get<double>();
  } else if (rule == "per_paper") {
    d.rule = peerrel::WeightDistribution::Rule::kPerPaperBeta;
  } else if (rule == "per_edge") {
    d.rule = peerrel::WeightDistribution::Rule::kPerEdgeBeta;
  } else {
    throw peerrel::InvalidInputError("unknown weight rule: " + rule);
  }
  return d;
}

peerrel::NoiseMechanism parse_mechanism(const json& j) {
  peerrel::NoiseMechanism mech;
  const std::string kind = j.value("kind", "laplace");
  if (kind == "laplace") {
    mech.kind = peerrel::NoiseKind::kLaplace;
  } else if (kind == "gaussian") {
    mech.kind = peerrel::NoiseKind::kGaussian;
  } else if (kind == "none") {
    mech.kind = peerrel::NoiseKind::kNone;
    return mech;
  } else {
    throw peerrel::InvalidInputError("unknown mechanism kind: " + kind);
  }
  if (j.contains("scale")) {
    mech.scale = j.at("scale").get<double>();
  } else if (j.contains("variance")) {
    const double var = j.at("variance").get<double>();
    mech.scale = mech.kind == peerrel::NoiseKind::kLaplace
                     ? peerrel::laplace_scale_for_variance(var)
                     : std::sqrt(var);
  } else {
    throw peerrel::InvalidInputError("mechanism needs scale or variance");
  }
  return mech;
}

peerrel::ExperimentConfig parse_experiment_config(const json& j) {
  peerrel::ExperimentConfig cfg;
  try {
    cfg.n_values = j.at("n_values").get<std::vector<int>>();
    cfg.ell = j.value("ell", 2);
    cfg.k = j.value("k", 2);
    if (!j.contains("distributions") || !j.at("distributions").is_array() ||
        j.at("distributions").empty()) {
      throw peerrel::InvalidInputError("config needs a distributions array");
    }
    for (const json& dj : j.at("distributions")) {
      cfg.distributions.push_back(parse_distribution(dj));
    }
    if (j.contains("mechanism")) cfg.mechanism = parse_mechanism(j.at("mechanism"));
    cfg.trials = j.value("trials", 1);
    if (j.contains("baseline_box")) {
      const auto box = j.at("baseline_box").get<std::vector<double>>();
      if (box.size() != 2) {
        throw peerrel::InvalidInputError("baseline_box must be [lo, hi]");
      }
      cfg.box_lo = box[0];
      cfg.box_hi = box[1];
    }
    if (j.contains("solver")) {
      cfg.solver.tolerance = j.at("solver").value("tolerance", 1e-12);
      cfg.solver.max_iterations =
          j.at("solver").value("max_iterations", 1000000);
    }
    cfg.tuple_cap = j.value("tuple_cap", peerrel::kDefaultTupleCap);
    cfg.threads = j.value("threads", 0);
    cfg.base_seed = j.value("base_seed", 0ULL);
  } catch (const json::exception& e) {
    throw peerrel::InvalidInputError(std::string("malformed config: ") +
                                     e.what());
  }
  return cfg;
}

json bounds_to_json(const peerrel::BoundsVector& b, int n) {
  json j;
  j["L"] = b.L;
  j["U"] = b.U;
  j["n"] = n;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{
      "peerrel: accuracy-preserving post-processing of privacy-perturbed "
      "review score histograms using public per-paper data"};
  app.require_subcommand(1);

  // bounds
  std::string bounds_input;
  std::string bounds_output;
  std::uint64_t bounds_cap = peerrel::kDefaultTupleCap;
  CLI::App* cmd_bounds = app.add_subcommand(
      "bounds", "per-rank bounds on the sorted mean-weight vector");
  cmd_bounds->add_option("public", bounds_input, "public weights CSV")
      ->required();
  cmd_bounds->add_option("--cap", bounds_cap, "tuple enumeration cap");
  cmd_bounds->add_option("-o,--output", bounds_output, "output JSON path");

  // release
  std::string release_public;
  std::string release_noisy;
  std::string release_output;
  std::uint64_t release_cap = peerrel::kDefaultTupleCap;
  double release_tol = 1e-9;
  int release_iters = 100000;
  std::optional<double> release_sum;
  CLI::App* cmd_release = app.add_subcommand(
      "release", "project a noisy vector onto the bound-derived polytope");
  cmd_release->add_option("public", release_public, "public weights CSV")
      ->required();
  cmd_release
      ->add_option("noisy", release_noisy, "JSON file with the noisy vector r")
      ->required();
  cmd_release->add_option("--sum", release_sum,
                          "released total (required for mixed loads)");
  cmd_release->add_option("--tolerance", release_tol, "solver tolerance");
  cmd_release->add_option("--max-iterations", release_iters,
                          "solver iteration cap");
  cmd_release->add_option("--cap", release_cap, "tuple enumeration cap");
  cmd_release->add_option("-o,--output", release_output, "output JSON path");

  // simulate
  std::string sim_config;
  std::string sim_output;
  std::string sim_per_trial;
  std::string sim_dump_dir;
  std::uint64_t sim_seed = 0;
  int sim_threads = -1;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate", "run the release-method comparison on synthetic instances");
  cmd_sim->add_option("config", sim_config, "experiment config JSON")
      ->required();
  cmd_sim->add_option("--seed", sim_seed, "base seed (all randomness)")
      ->required();
  cmd_sim->add_option("-o,--output", sim_output, "aggregate results CSV path");
  cmd_sim->add_option("--per-trial", sim_per_trial, "per-trial scores CSV path");
  cmd_sim->add_option("--dump-dir", sim_dump_dir,
                      "directory for per-trial instance dumps");
  cmd_sim->add_option("--threads", sim_threads, "worker threads (0 = auto)");

  // oracle
  std::string oracle_input;
  std::string oracle_output;
  int oracle_max_n = 6;
  int oracle_max_load = 3;
  CLI::App* cmd_oracle = app.add_subcommand(
      "oracle", "exhaustive desk-scale ground truth and soundness check");
  cmd_oracle->add_option("public", oracle_input, "public weights CSV")
      ->required();
  cmd_oracle->add_option("--max-n", oracle_max_n, "reviewer-count cap");
  cmd_oracle->add_option("--max-load", oracle_max_load, "reviewer-load cap");
  cmd_oracle->add_option("-o,--output", oracle_output, "output JSON path");

  // prop1
  std::string prop1_output;
  std::uint64_t prop1_samples = 0;
  std::uint64_t prop1_seed = 0;
  CLI::App* cmd_prop1 = app.add_subcommand(
      "prop1",
      "expected errors of nearest-candidate snapping vs raw noise on the "
      "five-point counterexample");
  cmd_prop1->add_option("--samples", prop1_samples,
                        "Monte Carlo sample count (0 = closed form only)");
  cmd_prop1->add_option("--seed", prop1_seed, "Monte Carlo seed");
  cmd_prop1->add_option("-o,--output", prop1_output, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (*cmd_bounds) {
    const peerrel::PublicWeights pw =
        peerrel::read_public_csv_file(bounds_input);
    const peerrel::BoundsVector b = peerrel::compute_bounds(pw, bounds_cap);
    emit(bounds_to_json(b, pw.n), bounds_output);
  } else if (*cmd_release) {
    const peerrel::PublicWeights pw =
        peerrel::read_public_csv_file(release_public);
    const json noisy = load_json(release_noisy);
    if (!noisy.contains("r")) {
      throw peerrel::InvalidInputError("noisy JSON must contain field 'r'");
    }
    const std::vector<double> r = noisy.at("r").get<std::vector<double>>();
    const double target =
        release_sum ? *release_sum : peerrel::public_weight_sum(pw);
    const peerrel::BoundsVector b = peerrel::compute_bounds(pw, release_cap);
    peerrel::ProjectionProblem prob;
    prob.r = r;
    prob.L = b.L;
    prob.U = b.U;
    prob.target_sum = target;
    prob.tolerance = release_tol;
    prob.max_iterations = release_iters;
    const std::vector<double> t = peerrel::project_intersection(prob);
    json out;
    out["t"] = t;
    out["n"] = pw.n;
    emit(out, release_output);
  } else if (*cmd_sim) {
    peerrel::ExperimentConfig cfg =
        parse_experiment_config(load_json(sim_config));
    cfg.base_seed = sim_seed;
    if (sim_threads >= 0) cfg.threads = sim_threads;
    std::ofstream results_file;
    std::ofstream per_trial_file;
    peerrel::ExperimentSinks sinks;
    if (!sim_output.empty()) {
      results_file.open(sim_output);
      if (!results_file) {
        throw peerrel::InvalidInputError("cannot write " + sim_output);
      }
      sinks.results_csv = &results_file;
    } else {
      sinks.results_csv = &std::cout;
    }
    if (!sim_per_trial.empty()) {
      per_trial_file.open(sim_per_trial);
      if (!per_trial_file) {
        throw peerrel::InvalidInputError("cannot write " + sim_per_trial);
      }
      sinks.per_trial_csv = &per_trial_file;
    }
    sinks.dump_dir = sim_dump_dir;
    peerrel::run_experiment(cfg, sinks);
  } else if (*cmd_oracle) {
    const peerrel::PublicWeights pw =
        peerrel::read_public_csv_file(oracle_input);
    peerrel::OracleCaps caps;
    caps.max_n = oracle_max_n;
    caps.max_load = oracle_max_load;
    const peerrel::ThetaSet theta = peerrel::enumerate_theta(pw, caps);
    const peerrel::BoundsVector b = peerrel::compute_bounds(pw);
    int violations = 0;
    for (const auto& vec : theta.vectors) {
      for (std::size_t i = 0; i < vec.size(); ++i) {
        if (vec[i] < b.L[i] - 1e-12 || vec[i] > b.U[i] + 1e-12) ++violations;
      }
    }
    json out;
    out["n"] = pw.n;
    out["theta_count"] = theta.vectors.size();
    if (theta.vectors.size() <= 50) out["theta"] = theta.vectors;
    out["L"] = b.L;
    out["U"] = b.U;
    out["violations"] = violations;
    out["sound"] = violations == 0;
    emit(out, oracle_output);
  } else if (*cmd_prop1) {
    const peerrel::Prop1Result res =
        peerrel::prop1_expected_errors(prop1_samples, prop1_seed);
    json out;
    out["noisy"] = res.closed_noisy;
    out["projected"] = res.closed_projected;
    if (prop1_samples > 0) {
      out["mc_noisy"] = res.mc_noisy;
      out["mc_projected"] = res.mc_projected;
      out["samples"] = res.samples;
    }
    emit(out, prop1_output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const peerrel::CapExceededError& e) {
    std::cerr << "error: enumeration cap exceeded: " << e.what() << '\n';
    return 1;
  } catch (const peerrel::ConvergenceError& e) {
    std::cerr << "error: solver failed: " << e.what() << '\n';
    return 2;
  } catch (const peerrel::InvalidInputError& e) {
    std::cerr << "error: invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
