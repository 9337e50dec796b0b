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
#include <span>
#include <vector>

#include "peerrel/instance.hpp"

namespace peerrel {

/// Exhaustive ground truth at desk scale: every sorted mean-weight
/// vector some valid assignment can realize from the public data.
struct ThetaSet {
  std::vector<std::vector<double>> vectors;  ///< deduplicated, lex-sorted
};

/// Hard size limits for the exhaustive enumeration. Exceeding a cap is
/// an error, never a silent truncation.
struct OracleCaps {
  int max_n = 6;
  int max_load = 3;
};

/// Backtracking over all partitions of the weight matrix entries into
/// per-reviewer groups drawn from distinct rows, with symmetric branches
/// (interchangeable reviewers, equal-valued entries within a row)
/// visited once.
ThetaSet enumerate_theta(const PublicWeights& pw, const OracleCaps& caps = {});

/// Euclidean projection onto the convex hull of the enumerated vectors,
/// via projected gradient on the simplex of vertex coefficients.
std::vector<double> hull_project(std::span<const double> r,
                                 const ThetaSet& theta,
                                 double tolerance = 1e-9);

/// The one-dimensional counterexample where snapping the noised value to
/// the nearest realizable value hurts: truth 0, candidates
/// {-4,-2,0,2,4}, unit-scale Laplace noise.
struct Prop1Result {
  double closed_noisy = 0.0;      ///< E[eta^2] = 2
  double closed_projected = 0.0;  ///< 4e^-1 + 12e^-3
  double mc_noisy = 0.0;
  double mc_projected = 0.0;
  std::uint64_t samples = 0;
};

/// Closed forms always; Monte Carlo estimates when samples > 0.
Prop1Result prop1_expected_errors(std::uint64_t mc_samples = 0,
                                  std::uint64_t seed = 0);

/// Monte Carlo error of nearest-candidate snapping for an arbitrary
/// 1-d candidate set around truth 0 under Laplace(scale) noise.
double nearest_snap_mc_error(const std::vector<double>& candidates,
                             double scale, std::uint64_t samples,
                             std::uint64_t seed);

}  // namespace peerrel
