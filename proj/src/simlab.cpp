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

#include "peerrel/simlab.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "peerrel/core.hpp"
#include "peerrel/error.hpp"
#include "peerrel/project.hpp"
#include "peerrel/random.hpp"

namespace peerrel {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string WeightDistribution::label() const {
  switch (rule) {
    case Rule::kFixedBeta:
      return "beta(" + trim_number(a) + "," + trim_number(b) + ")";
    case Rule::kPerPaperBeta:
      return "beta(c,i)";
    case Rule::kPerEdgeBeta:
      return "beta(i,j)";
  }
  return "?";
}

WeightSampler WeightDistribution::sampler() const {
  switch (rule) {
    case Rule::kFixedBeta: {
      const double pa = a;
      const double pb = b;
      return [pa, pb](const EdgeContext&, RandomStream& rng) {
        return rng.beta(pa, pb);
      };
    }
    case Rule::kPerPaperBeta:
      return [](const EdgeContext& e, RandomStream& rng) {
        return rng.beta(e.slot + 1.0, e.paper + 1.0);
      };
    case Rule::kPerEdgeBeta:
      return [](const EdgeContext& e, RandomStream& rng) {
        return rng.beta(e.paper + 1.0, e.reviewer + 1.0);
      };
  }
  throw InvalidInputError("unknown weight rule");
}

TrialArtifacts run_trial_full(const ExperimentConfig& cfg, int n,
                              int trial_index, std::size_t dist_index) {
  if (cfg.distributions.empty()) {
    throw InvalidInputError("experiment needs at least one distribution");
  }
  if (cfg.ell <= 0 || cfg.k <= 0 || n <= 0) {
    throw InvalidInputError("loads and reviewer count must be positive");
  }
  if ((static_cast<long long>(n) * cfg.ell) % cfg.k != 0) {
    throw InvalidInputError("n*ell must be divisible by k");
  }
  const int m = static_cast<int>(static_cast<long long>(n) * cfg.ell / cfg.k);
  const WeightDistribution& dist = cfg.distributions.at(dist_index);

  TrialArtifacts art;
  art.trial_seed = seed_combine({cfg.base_seed, static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(trial_index)});
  const std::uint64_t assignment_seed = seed_combine({art.trial_seed, 1});
  const std::uint64_t noise_seed = seed_combine({art.trial_seed, 2});

  art.assignment =
      sample_assignment(n, m, cfg.ell, cfg.k, dist.sampler(), assignment_seed);
  const MeanWeightVector theta = sorted_mean_weights(art.assignment);
  art.theta_star = theta.entries;
  art.public_weights = public_view(art.assignment);
  art.noisy = noisy_release(theta, cfg.mechanism, noise_seed);
  art.target_sum = public_weight_sum(art.public_weights);

  auto t0 = std::chrono::steady_clock::now();
  const BoundsVector bounds = compute_bounds(art.public_weights, cfg.tuple_cap);
  art.result.ms_bounds = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  ProjectionProblem prob;
  prob.r = art.noisy;
  prob.L = bounds.L;
  prob.U = bounds.U;
  prob.target_sum = art.target_sum;
  prob.tolerance = cfg.solver.tolerance;
  prob.max_iterations = cfg.solver.max_iterations;
  art.released_ours = project_intersection(prob);
  art.released_baseline =
      project_baseline(art.noisy, cfg.box_lo, cfg.box_hi, art.target_sum,
                       cfg.solver.tolerance, cfg.solver.max_iterations);
  art.result.ms_project = elapsed_ms(t0);

  art.result.sse_noisy = sse(art.noisy, art.theta_star);
  art.result.sse_baseline = sse(art.released_baseline, art.theta_star);
  art.result.sse_ours = sse(art.released_ours, art.theta_star);
  double width = 0.0;
  for (std::size_t i = 0; i < bounds.L.size(); ++i) {
    width += bounds.U[i] - bounds.L[i];
  }
  art.result.bound_width = width / static_cast<double>(bounds.L.size());
  return art;
}

TrialResult run_trial(const ExperimentConfig& cfg, int n, int trial_index,
                      std::size_t dist_index) {
  return run_trial_full(cfg, n, trial_index, dist_index).result;
}

namespace {

void dump_trial(const std::string& dir, int n, std::size_t dist_index,
                int trial, const TrialArtifacts& art) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string prefix = dir + "/n" + std::to_string(n) + "_d" +
                             std::to_string(dist_index) + "_t" +
                             std::to_string(trial);
  {
    std::ofstream out(prefix + "_public.csv");
    write_public_csv(art.public_weights, out);
  }
  {
    std::ofstream out(prefix + "_assignment.csv");
    write_assignment_csv(art.assignment, out);
  }
  {
    nlohmann::json j;
    j["n"] = n;
    j["theta"] = art.theta_star;
    j["r"] = art.noisy;
    j["sum"] = art.target_sum;
    j["seed"] = art.trial_seed;
    std::ofstream out(prefix + "_vectors.json");
    out << j.dump(2) << '\n';
  }
}

struct Moments {
  double mean = 0.0;
  double sem = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  const double count = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= count;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sem = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  return m;
}

}  // namespace

void write_results_header(std::ostream& out) {
  out << "n,dist_label,trials,mean_noisy,sem_noisy,mean_baseline,sem_baseline,"
         "mean_ours,sem_ours,mean_bound_width,wall_ms\n";
}

void write_results_row(std::ostream& out, const AggregateRow& row) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%d,%s,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.6g\n",
                row.n, row.dist_label.c_str(), row.trials, row.mean_noisy,
                row.sem_noisy, row.mean_baseline, row.sem_baseline,
                row.mean_ours, row.sem_ours, row.mean_bound_width, row.wall_ms);
  out << buf;
  out.flush();
}

std::vector<AggregateRow> run_experiment(const ExperimentConfig& cfg,
                                         const ExperimentSinks& sinks) {
  if (cfg.trials < 1) throw InvalidInputError("trials must be >= 1");
  if (cfg.n_values.empty()) throw InvalidInputError("no reviewer counts given");
  if (sinks.results_csv) write_results_header(*sinks.results_csv);
  if (sinks.per_trial_csv) {
    *sinks.per_trial_csv << "n,trial,sse_noisy,sse_baseline,sse_ours\n";
  }

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  std::vector<AggregateRow> rows;
  for (std::size_t d = 0; d < cfg.distributions.size(); ++d) {
    for (int n : cfg.n_values) {
      const auto started = std::chrono::steady_clock::now();
      std::vector<TrialArtifacts> artifacts(cfg.trials);
      std::vector<std::string> failures(cfg.trials);
      std::atomic<int> next{0};
      auto worker = [&]() {
        for (;;) {
          const int t = next.fetch_add(1);
          if (t >= cfg.trials) return;
          try {
            artifacts[t] = run_trial_full(cfg, n, t, d);
          } catch (const std::exception& e) {
            failures[t] = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      const int spawn = std::min(threads, cfg.trials);
      pool.reserve(spawn);
      for (int w = 0; w < spawn; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();

      // Deterministic fold over trial index order.
      for (int t = 0; t < cfg.trials; ++t) {
        if (failures[t].empty()) continue;
        if (sinks.results_csv) {
          AggregateRow marker;
          marker.n = n;
          marker.dist_label = cfg.distributions[d].label() +
                              " ERROR(trial " + std::to_string(t) +
                              "): " + failures[t];
          marker.trials = t;
          marker.mean_noisy = marker.sem_noisy = marker.mean_baseline =
              marker.sem_baseline = marker.mean_ours = marker.sem_ours =
                  marker.mean_bound_width = std::nan("");
          write_results_row(*sinks.results_csv, marker);
        }
        throw ConvergenceError("trial " + std::to_string(t) + " at n=" +
                               std::to_string(n) + " failed: " + failures[t]);
      }

      std::vector<double> noisy(cfg.trials);
      std::vector<double> baseline(cfg.trials);
      std::vector<double> ours(cfg.trials);
      std::vector<double> widths(cfg.trials);
      for (int t = 0; t < cfg.trials; ++t) {
        const TrialResult& res = artifacts[t].result;
        noisy[t] = res.sse_noisy;
        baseline[t] = res.sse_baseline;
        ours[t] = res.sse_ours;
        widths[t] = res.bound_width;
        if (sinks.per_trial_csv) {
          char buf[160];
          std::snprintf(buf, sizeof(buf), "%d,%d,%.10g,%.10g,%.10g\n", n, t,
                        res.sse_noisy, res.sse_baseline, res.sse_ours);
          *sinks.per_trial_csv << buf;
        }
        if (!sinks.dump_dir.empty()) {
          dump_trial(sinks.dump_dir, n, d, t, artifacts[t]);
        }
      }
      if (sinks.per_trial_csv) sinks.per_trial_csv->flush();

      AggregateRow row;
      row.n = n;
      row.dist_label = cfg.distributions[d].label();
      row.trials = cfg.trials;
      const Moments mn = moments(noisy);
      const Moments mb = moments(baseline);
      const Moments mo = moments(ours);
      row.mean_noisy = mn.mean;
      row.sem_noisy = mn.sem;
      row.mean_baseline = mb.mean;
      row.sem_baseline = mb.sem;
      row.mean_ours = mo.mean;
      row.sem_ours = mo.sem;
      row.mean_bound_width = moments(widths).mean;
      row.wall_ms = elapsed_ms(started);
      if (sinks.results_csv) write_results_row(*sinks.results_csv, row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string trial_result_fingerprint(const TrialResult& t) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g|%.17g|%.17g|%.17g", t.sse_noisy,
                t.sse_baseline, t.sse_ours, t.bound_width);
  return buf;
}

}  // namespace peerrel
