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

#include "peerrel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "peerrel/detail/linalg.hpp"
#include "peerrel/error.hpp"
#include "peerrel/random.hpp"

namespace peerrel {

namespace {

struct Entry {
  int row;
  int col;
  double value;
  int prev_equal;  // flat id of the nearest earlier equal value in this row
};

// Exhaustive partition of the matrix entries into per-reviewer groups.
// Reviewers with equal loads are interchangeable and equal-valued entries
// within a row are interchangeable, so each group is anchored at the
// globally lowest unused entry and entries of an equal-value run must be
// consumed in column order; both rules prune symmetric branches without
// losing any realizable mean vector.
class ThetaEnumerator {
 public:
  explicit ThetaEnumerator(const PublicWeights& pw) {
    for (int r = 0; r < static_cast<int>(pw.rows.size()); ++r) {
      const auto& row = pw.rows[r];
      for (int c = 0; c < static_cast<int>(row.size()); ++c) {
        int prev = -1;
        for (int c2 = c - 1; c2 >= 0; --c2) {
          if (row[c2] == row[c]) {
            prev = static_cast<int>(entries_.size()) - (c - c2);
            break;
          }
        }
        entries_.push_back({r, c, row[c], prev});
      }
    }
    used_.assign(entries_.size(), false);
    for (int l : pw.reviewer_loads) load_counts_[l] += 1;
  }

  std::set<std::vector<double>> run() {
    std::vector<int> group;
    recurse(0, group);
    return std::move(results_);
  }

 private:
  bool usable(int id) const {
    return !used_[id] &&
           (entries_[id].prev_equal < 0 || used_[entries_[id].prev_equal]);
  }

  void recurse(int scan_from, std::vector<int>& group) {
    int lowest = -1;
    for (int id = scan_from; id < static_cast<int>(entries_.size()); ++id) {
      if (!used_[id]) {
        lowest = id;
        break;
      }
    }
    if (lowest < 0) {
      std::vector<double> vec = means_;
      std::sort(vec.begin(), vec.end());
      results_.insert(std::move(vec));
      return;
    }
    for (auto& [load, count] : load_counts_) {
      if (count == 0) continue;
      count -= 1;
      used_[lowest] = true;
      group.assign(1, lowest);
      extend_group(lowest + 1, load - 1, entries_[lowest].value, lowest, group);
      used_[lowest] = false;
      count += 1;
    }
  }

  void extend_group(int from, int remaining, double sum, int anchor,
                    std::vector<int>& group) {
    if (remaining == 0) {
      means_.push_back(sum / static_cast<double>(group.size()));
      std::vector<int> next_group;
      recurse(anchor + 1, next_group);
      means_.pop_back();
      return;
    }
    for (int id = from; id < static_cast<int>(entries_.size()); ++id) {
      if (!usable(id)) continue;
      bool row_clash = false;
      for (int g : group) {
        if (entries_[g].row == entries_[id].row) {
          row_clash = true;
          break;
        }
      }
      if (row_clash) continue;
      used_[id] = true;
      group.push_back(id);
      extend_group(id + 1, remaining - 1, sum + entries_[id].value, anchor,
                   group);
      group.pop_back();
      used_[id] = false;
    }
  }

  std::vector<Entry> entries_;
  std::vector<bool> used_;
  std::map<int, int> load_counts_;
  std::vector<double> means_;
  std::set<std::vector<double>> results_;
};

}  // namespace

ThetaSet enumerate_theta(const PublicWeights& pw, const OracleCaps& caps) {
  validate_instance(pw);
  if (pw.n > caps.max_n) {
    throw CapExceededError("oracle cap exceeded: n=" + std::to_string(pw.n) +
                           " > " + std::to_string(caps.max_n));
  }
  for (int l : pw.reviewer_loads) {
    if (l > caps.max_load) {
      throw CapExceededError("oracle cap exceeded: load " + std::to_string(l) +
                             " > " + std::to_string(caps.max_load));
    }
  }
  ThetaEnumerator enumerator(pw);
  auto result = enumerator.run();
  if (result.empty()) {
    throw InvalidInputError("public data admits no valid assignment");
  }
  ThetaSet theta;
  theta.vectors.assign(result.begin(), result.end());
  return theta;
}

std::vector<double> hull_project(std::span<const double> r,
                                 const ThetaSet& theta, double tolerance) {
  const std::size_t p = theta.vectors.size();
  if (p == 0) throw InvalidInputError("empty vertex set");
  const std::size_t n = r.size();
  for (const auto& v : theta.vectors) {
    if (v.size() != n) throw InvalidInputError("vertex length mismatch");
  }
  if (p == 1) return theta.vectors.front();

  // Wolfe's min-norm-point algorithm on the shifted vertices q_i = v_i - r:
  // the projection of r onto the hull is r plus the min-norm point of
  // conv{q_i}. Terminates on an optimality gap below numerical noise, far
  // inside the requested tolerance; the iterate is an explicit convex
  // combination throughout.
  std::vector<std::vector<double>> q(p, std::vector<double>(n));
  double max_norm2 = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double norm2 = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      q[i][c] = theta.vectors[i][c] - r[c];
      norm2 += q[i][c] * q[i][c];
    }
    max_norm2 = std::max(max_norm2, norm2);
  }
  const double gap_eps =
      std::max(1e-12 * (1.0 + max_norm2), 1e-6 * tolerance * tolerance);

  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += a[c] * b[c];
    return s;
  };

  std::size_t start = 0;
  double start_norm = dot(q[0], q[0]);
  for (std::size_t i = 1; i < p; ++i) {
    const double norm2 = dot(q[i], q[i]);
    if (norm2 < start_norm) {
      start_norm = norm2;
      start = i;
    }
  }
  std::vector<std::size_t> corral{start};
  std::vector<double> lambda{1.0};
  std::vector<double> x = q[start];
  bool stalled = false;

  const int max_major = 100000;
  for (int major = 0; major < max_major && !stalled; ++major) {
    // Most negative direction: vertex minimizing <x, q_j>.
    std::size_t best = 0;
    double best_dot = HUGE_VAL;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = dot(x, q[j]);
      if (d < best_dot) {
        best_dot = d;
        best = j;
      }
    }
    const double x_norm2 = dot(x, x);
    if (best_dot >= x_norm2 - gap_eps) break;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
    corral.push_back(best);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      // Affine minimizer over the corral: KKT system in the barycentric
      // coordinates with the sum-to-one multiplier.
      const std::size_t s = corral.size();
      std::vector<double> A((s + 1) * (s + 1), 0.0);
      std::vector<double> b(s + 1, 0.0);
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
          A[i * (s + 1) + j] = 2.0 * dot(q[corral[i]], q[corral[j]]);
        }
        A[i * (s + 1) + s] = 1.0;
        A[s * (s + 1) + i] = 1.0;
      }
      b[s] = 1.0;
      std::vector<double> mu = b;
      if (!detail::solve_linear_system(A, mu, s + 1)) {
        // Affinely dependent corral: settle for the current iterate.
        corral.pop_back();
        lambda.pop_back();
        stalled = true;
        break;
      }
      mu.resize(s);

      bool interior = true;
      for (double m : mu) {
        if (m <= 1e-12) {
          interior = false;
          break;
        }
      }
      if (interior) {
        lambda = mu;
        break;
      }
      double theta_step = 1.0;
      for (std::size_t i = 0; i < s; ++i) {
        if (mu[i] <= 1e-12 && lambda[i] > mu[i]) {
          theta_step = std::min(theta_step, lambda[i] / (lambda[i] - mu[i]));
        }
      }
      for (std::size_t i = 0; i < s; ++i) {
        lambda[i] += theta_step * (mu[i] - lambda[i]);
      }
      for (std::size_t i = corral.size(); i-- > 0;) {
        if (lambda[i] <= 1e-12) {
          corral.erase(corral.begin() + i);
          lambda.erase(lambda.begin() + i);
        }
      }
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
    }

    x.assign(n, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i) {
      for (std::size_t c = 0; c < n; ++c) x[c] += lambda[i] * q[corral[i]][c];
    }
  }

  std::vector<double> out(n);
  for (std::size_t c = 0; c < n; ++c) out[c] = x[c] + r[c];
  return out;
}

Prop1Result prop1_expected_errors(std::uint64_t mc_samples,
                                  std::uint64_t seed) {
  Prop1Result out;
  // Noise pdf 0.5 e^{-|x|}; E[x^2] = 2. Snapping to {-4,-2,0,2,4} gives
  // squared error 4 on 1 < |x| < 3 and 16 on |x| > 3:
  //   16 e^{-3} + 4 (e^{-1} - e^{-3}) = 4 e^{-1} + 12 e^{-3}.
  out.closed_noisy = 2.0;
  out.closed_projected = 4.0 * std::exp(-1.0) + 12.0 * std::exp(-3.0);
  out.samples = mc_samples;
  if (mc_samples > 0) {
    out.mc_noisy = 0.0;
    RandomStream rng(seed);
    const std::vector<double> candidates = {-4.0, -2.0, 0.0, 2.0, 4.0};
    double acc_noisy = 0.0;
    double acc_proj = 0.0;
    for (std::uint64_t s = 0; s < mc_samples; ++s) {
      const double x = rng.laplace(1.0);
      acc_noisy += x * x;
      double best = candidates.front();
      double best_dist = std::fabs(x - best);
      for (double c : candidates) {
        const double d = std::fabs(x - c);
        if (d < best_dist) {
          best_dist = d;
          best = c;
        }
      }
      acc_proj += best * best;
    }
    out.mc_noisy = acc_noisy / static_cast<double>(mc_samples);
    out.mc_projected = acc_proj / static_cast<double>(mc_samples);
  }
  return out;
}

double nearest_snap_mc_error(const std::vector<double>& candidates,
                             double scale, std::uint64_t samples,
                             std::uint64_t seed) {
  if (candidates.empty()) throw InvalidInputError("empty candidate set");
  if (samples == 0) throw InvalidInputError("need at least one sample");
  RandomStream rng(seed);
  double acc = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double x = rng.laplace(scale);
    double best = candidates.front();
    double best_dist = std::fabs(x - best);
    for (double c : candidates) {
      const double d = std::fabs(x - c);
      if (d < best_dist) {
        best_dist = d;
        best = c;
      }
    }
    acc += best * best;
  }
  return acc / static_cast<double>(samples);
}

}  // namespace peerrel
