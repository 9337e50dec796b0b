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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "peerrel/bounds.hpp"
#include "peerrel/instance.hpp"
#include "peerrel/privacy.hpp"

namespace peerrel {

/// How edge weights are drawn. The fixed rule uses beta(a, b) for every
/// edge; the per-paper rule draws the c-th weight of paper i from
/// beta(c, i); the per-edge rule draws the weight of (paper i,
/// reviewer j) from beta(i, j). Indices are 1-based in the parameters.
struct WeightDistribution {
  enum class Rule { kFixedBeta, kPerPaperBeta, kPerEdgeBeta };
  Rule rule = Rule::kFixedBeta;
  double a = 1.0;
  double b = 1.0;

  std::string label() const;
  WeightSampler sampler() const;
};

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 1000000;
};

/// One experiment: a grid of reviewer counts times weight distributions,
/// a fixed number of trials per cell.
struct ExperimentConfig {
  std::vector<int> n_values;
  int ell = 2;
  int k = 2;
  std::vector<WeightDistribution> distributions;
  NoiseMechanism mechanism{NoiseKind::kLaplace, 1.0};
  int trials = 1;
  std::uint64_t base_seed = 0;
  double box_lo = 0.0;  ///< baseline box, matching the weight range
  double box_hi = 1.0;
  SolverOptions solver;
  std::uint64_t tuple_cap = kDefaultTupleCap;
  int threads = 0;  ///< 0 = hardware concurrency
};

/// One trial's scores for the three release methods, plus diagnostics.
struct TrialResult {
  double sse_noisy = 0.0;
  double sse_baseline = 0.0;
  double sse_ours = 0.0;
  double bound_width = 0.0;  ///< mean of U - L
  double ms_bounds = 0.0;
  double ms_project = 0.0;
};

/// Everything a trial produced; used for dumps and reproduction.
struct TrialArtifacts {
  TrialResult result;
  PublicWeights public_weights;
  Assignment assignment;
  std::vector<double> theta_star;
  std::vector<double> noisy;
  std::vector<double> released_ours;
  std::vector<double> released_baseline;
  double target_sum = 0.0;
  std::uint64_t trial_seed = 0;
};

/// One trial: sample an instance (seed derived from base_seed, n and the
/// trial index), add noise, release via all three methods, score each
/// against the true sorted mean-weight vector.
TrialResult run_trial(const ExperimentConfig& cfg, int n, int trial_index,
                      std::size_t dist_index = 0);

TrialArtifacts run_trial_full(const ExperimentConfig& cfg, int n,
                              int trial_index, std::size_t dist_index = 0);

struct AggregateRow {
  int n = 0;
  std::string dist_label;
  int trials = 0;
  double mean_noisy = 0.0;
  double sem_noisy = 0.0;
  double mean_baseline = 0.0;
  double sem_baseline = 0.0;
  double mean_ours = 0.0;
  double sem_ours = 0.0;
  double mean_bound_width = 0.0;
  double wall_ms = 0.0;
};

/// Optional outputs, written incrementally so partial results survive a
/// failing cell (a marker row records the error before it propagates).
struct ExperimentSinks {
  std::ostream* results_csv = nullptr;
  std::ostream* per_trial_csv = nullptr;
  std::string dump_dir;  ///< when nonempty, per-trial instance dumps
};

/// Runs the full grid. Trials within a cell run concurrently on derived
/// seeds; aggregation folds in trial order, so results are independent
/// of scheduling.
std::vector<AggregateRow> run_experiment(const ExperimentConfig& cfg,
                                         const ExperimentSinks& sinks = {});

void write_results_header(std::ostream& out);
void write_results_row(std::ostream& out, const AggregateRow& row);

/// Canonical string for the deterministic fields of a TrialResult
/// (timings excluded); used by reproducibility checks.
std::string trial_result_fingerprint(const TrialResult& t);

}  // namespace peerrel
