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

// Independent brute-force reference implementations used only by tests.
// Nothing here shares code with the library paths it checks.

#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "peerrel/bounds.hpp"
#include "peerrel/instance.hpp"

namespace peerrel::testsupport {

/// Longest chain lengths found by explicit enumeration of every simple
/// index-monotone path; exponential, intended for |omega| <= 12.
ChainTable brute_force_chains(const TupleList& omega);

/// Exact projection onto the nondecreasing cone by exhaustive search
/// over all 2^(n-1) consecutive-block partitions (the optimum is a
/// monotone block-means vector).
std::vector<double> isotonic_by_block_search(const std::vector<double>& v);

/// Exact solution of min ||t - r||^2 subject to L <= t <= U,
/// sum(t) = S, t nondecreasing, by enumerating active sets and solving
/// each equality-constrained system. Intended for n <= 5.
std::vector<double> qp_active_set_oracle(const std::vector<double>& r,
                                         const std::vector<double>& L,
                                         const std::vector<double>& U,
                                         double S);

/// Dense one-dimensional sweep for the n = 2 case of the same problem.
std::vector<double> qp_grid_oracle_n2(const std::vector<double>& r,
                                      const std::vector<double>& L,
                                      const std::vector<double>& U, double S,
                                      int steps = 2000001);

/// All realizable sorted mean-weight vectors, enumerated by a strategy
/// unrelated to the library's: rows are processed in order and each
/// row's entries are mapped injectively onto reviewers with remaining
/// capacity. Intended for instances with at most ~10 matrix entries.
std::set<std::vector<double>> theta_by_reviewer_maps(const PublicWeights& pw);

/// Assignment with i.i.d. weights from the 5-value grid
/// {0, 0.25, 0.5, 0.75, 1} (ties on purpose).
Assignment grid_weight_assignment(int n, int m, int ell, int k,
                                  std::uint64_t seed);

/// Random instance with reviewer loads mixed over {1, 2} (both present)
/// and grid weights; retries until a simple graph exists.
Assignment mixed_load_assignment(int n, std::uint64_t seed);

/// Feasible random projection problem: bounds grown around a random
/// monotone interior point, so the feasible set is never empty.
struct RandomProblem {
  std::vector<double> r;
  std::vector<double> L;
  std::vector<double> U;
  double S = 0.0;
  std::vector<double> interior;  ///< a feasible point by construction
};
RandomProblem random_feasible_problem(int n, std::uint64_t seed);

}  // namespace peerrel::testsupport
