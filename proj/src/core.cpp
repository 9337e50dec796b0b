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

#include "peerrel/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peerrel/error.hpp"
#include "peerrel/instance.hpp"

namespace peerrel {

namespace {

void check_finite(const std::vector<std::vector<double>>& lists,
                  const char* what) {
  for (const auto& list : lists) {
    for (double v : list) {
      if (!std::isfinite(v)) {
        throw InvalidInputError(std::string("non-finite ") + what);
      }
    }
  }
}

}  // namespace

std::vector<std::vector<Weight>> apply_weight_transform(
    const std::vector<std::vector<Score>>& scores_by_paper, TransformMode mode,
    const std::vector<std::vector<Score>>* normalized_scores) {
  check_finite(scores_by_paper, "score");
  const bool needs_normalized = mode == TransformMode::kSubjectivityNormalized ||
                                mode == TransformMode::kSubjectivityGap;
  if (needs_normalized) {
    if (normalized_scores == nullptr) {
      throw InvalidInputError("subjectivity transform requires normalized scores");
    }
    if (normalized_scores->size() != scores_by_paper.size()) {
      throw InvalidInputError("normalized score table shape mismatch");
    }
    for (std::size_t i = 0; i < scores_by_paper.size(); ++i) {
      if ((*normalized_scores)[i].size() != scores_by_paper[i].size()) {
        throw InvalidInputError("normalized score table shape mismatch in paper " +
                                std::to_string(i));
      }
    }
    check_finite(*normalized_scores, "normalized score");
  }

  std::vector<std::vector<Weight>> weights(scores_by_paper.size());
  for (std::size_t i = 0; i < scores_by_paper.size(); ++i) {
    const auto& s = scores_by_paper[i];
    auto& w = weights[i];
    w.resize(s.size());
    switch (mode) {
      case TransformMode::kIdentity:
        w = s;
        break;
      case TransformMode::kMiscalibration: {
        const int k = static_cast<int>(s.size());
        if (k < 2) {
          throw InvalidInputError(
              "miscalibration needs at least 2 reviews per paper; paper " +
              std::to_string(i) + " has " + std::to_string(k));
        }
        double total = 0.0;
        for (double v : s) total += v;
        for (int t = 0; t < k; ++t) w[t] = s[t] - (total - s[t]) / (k - 1);
        break;
      }
      case TransformMode::kSubjectivityNormalized:
        w = (*normalized_scores)[i];
        break;
      case TransformMode::kSubjectivityGap:
        for (std::size_t t = 0; t < s.size(); ++t) {
          w[t] = s[t] - (*normalized_scores)[i][t];
        }
        break;
    }
  }
  return weights;
}

MeanWeightVector sorted_mean_weights(const Assignment& assignment) {
  if (assignment.n <= 0) throw InvalidInputError("no reviewers");
  std::vector<double> sums(assignment.n, 0.0);
  std::vector<int> degrees(assignment.n, 0);
  for (const AssignmentEdge& e : assignment.edges) {
    if (e.reviewer < 0 || e.reviewer >= assignment.n) {
      throw InvalidInputError("reviewer index out of range");
    }
    sums[e.reviewer] += e.weight;
    degrees[e.reviewer] += 1;
  }
  MeanWeightVector out;
  out.entries.resize(assignment.n);
  for (int j = 0; j < assignment.n; ++j) {
    if (degrees[j] == 0) {
      throw InvalidInputError("reviewer " + std::to_string(j) +
                              " has no reviews");
    }
    out.entries[j] = sums[j] / degrees[j];
  }
  std::sort(out.entries.begin(), out.entries.end());
  out.sorted = true;
  return out;
}

double sse(std::span<const double> t, std::span<const double> theta) {
  if (t.size() != theta.size()) {
    throw InvalidInputError("vector length mismatch: " +
                            std::to_string(t.size()) + " vs " +
                            std::to_string(theta.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = theta[i] - t[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace peerrel
