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

namespace peerrel {

struct Assignment;

using Score = double;
using Weight = double;

/// How raw review scores become the weights whose per-reviewer means get
/// released.
enum class TransformMode {
  kIdentity,                ///< w = s
  kMiscalibration,          ///< w = s minus the mean of the co-reviewers' scores
  kSubjectivityNormalized,  ///< w = externally normalized score
  kSubjectivityGap,         ///< w = s minus its normalized score
};

/// Per-reviewer mean weights. `sorted` marks a nondecreasing ordering.
struct MeanWeightVector {
  std::vector<double> entries;
  bool sorted = false;
};

/// Transforms each paper's score list into its weight list, preserving
/// positions. Subjectivity modes require `normalized_scores` with the
/// same shape; miscalibration requires at least two scores per paper.
std::vector<std::vector<Weight>> apply_weight_transform(
    const std::vector<std::vector<Score>>& scores_by_paper, TransformMode mode,
    const std::vector<std::vector<Score>>* normalized_scores = nullptr);

/// Mean weight per reviewer (sum of a reviewer's edge weights over their
/// load), sorted nondecreasing. Throws if any reviewer has no reviews.
MeanWeightVector sorted_mean_weights(const Assignment& assignment);

/// Sum of squared differences Σ (theta_i - t_i)^2.
double sse(std::span<const double> t, std::span<const double> theta);

}  // namespace peerrel
