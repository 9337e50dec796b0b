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
#include <functional>
#include <iosfwd>
#include <vector>

#include "peerrel/random.hpp"

namespace peerrel {

/// One review: reviewer `reviewer` gave paper `paper` the given weight.
struct AssignmentEdge {
  int paper = 0;
  int reviewer = 0;
  double weight = 0.0;
};

/// Private reviewer-paper graph with edge weights. Only the simulation
/// side and the brute-force oracles ever see this; the release pipeline
/// consumes PublicWeights.
struct Assignment {
  int n = 0;  ///< reviewer count
  int m = 0;  ///< paper count
  std::vector<AssignmentEdge> edges;
};

/// The public view: per-paper weight multisets (rows of the matrix X)
/// and the multiset of reviewer loads. Reviewer identities are gone.
struct PublicWeights {
  int n = 0;                          ///< reviewer count
  std::vector<std::vector<double>> rows;  ///< rows[i] = paper i's weights
  std::vector<int> reviewer_loads;    ///< one load per reviewer
};

/// Identifies one edge while weights are being sampled. `slot` is the
/// 0-based position of this review among the paper's reviews.
struct EdgeContext {
  int paper = 0;
  int reviewer = 0;
  int slot = 0;
};

using WeightSampler = std::function<double(const EdgeContext&, RandomStream&)>;

/// Uniform random assignment with uniform loads: every reviewer reviews
/// `ell` papers, every paper receives `k` reviews, no duplicate pairs.
/// Sampled by matching degree stubs uniformly and rejecting whole draws
/// that contain a duplicate (paper, reviewer) pair, which is exactly
/// uniform over simple biregular graphs. Deterministic given the seed.
Assignment sample_assignment(int n, int m, int ell, int k,
                             const WeightSampler& weight_sampler,
                             std::uint64_t seed);

/// General form: explicit per-reviewer and per-paper load sequences.
Assignment sample_assignment_with_loads(const std::vector<int>& reviewer_loads,
                                        const std::vector<int>& paper_loads,
                                        const WeightSampler& weight_sampler,
                                        std::uint64_t seed);

/// Drops reviewer identities: per-paper weight multisets (each row sorted
/// ascending so serialized instances are reproducible) plus the multiset
/// of reviewer loads.
PublicWeights public_view(const Assignment& assignment);

/// Throws InvalidInputError unless the load identity Σk_i = Σℓ_j holds,
/// every reviewer load is in [1, m], and every paper load is in [1, n].
void validate_instance(const PublicWeights& pw);

/// True when every reviewer load equals every other (single value ℓ).
bool uniform_loads(const PublicWeights& pw);

// --- serialization -------------------------------------------------------

// Public weights CSV: a `# n=<n> loads=<l1,l2,...>` header line followed
// by one comma-separated row of weights per paper.
void write_public_csv(const PublicWeights& pw, std::ostream& out);
PublicWeights read_public_csv(std::istream& in);
PublicWeights read_public_csv_file(const std::string& path);

// Assignment CSV (simulation only): header `paper,reviewer,weight`.
void write_assignment_csv(const Assignment& a, std::ostream& out);
Assignment read_assignment_csv(std::istream& in);

}  // namespace peerrel
