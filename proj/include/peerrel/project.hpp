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

#include <span>
#include <vector>

#include "peerrel/bounds.hpp"
#include "peerrel/instance.hpp"

namespace peerrel {

/// Euclidean projection of a noisy vector onto the release polytope
/// { L <= t <= U, sum(t) = target_sum, t nondecreasing }.
struct ProjectionProblem {
  std::vector<double> r;  ///< noisy vector
  std::vector<double> L;
  std::vector<double> U;
  double target_sum = 0.0;
  double tolerance = 1e-9;     ///< per-constraint feasibility tolerance
  int max_iterations = 100000;
};

/// Euclidean projection onto the nondecreasing cone (pool adjacent
/// violators). Preserves the coordinate sum.
std::vector<double> isotonic_project(std::span<const double> v);

/// Projection onto the intersection of box, monotone cone and sum
/// hyperplane by Dykstra's corrected alternating projections. Throws
/// ConvergenceError when the feasible set is empty or the iteration
/// budget runs out.
std::vector<double> project_intersection(const ProjectionProblem& p);

/// The flat-box variant: every coordinate shares [box_lo, box_hi].
std::vector<double> project_baseline(std::span<const double> r, double box_lo,
                                     double box_hi, double target_sum,
                                     double tolerance = 1e-9,
                                     int max_iterations = 100000);

/// Closest candidate by Euclidean distance; ties go to the
/// lexicographically smallest candidate.
std::vector<double> nearest_in_finite_set(
    std::span<const double> r,
    const std::vector<std::vector<double>>& candidates);

/// The released total implied by the public data under uniform loads:
/// (1/ell) * sum of all weights. Throws on mixed loads, where the total
/// is not a function of the public view and must be supplied explicitly.
double public_weight_sum(const PublicWeights& pw);

}  // namespace peerrel
