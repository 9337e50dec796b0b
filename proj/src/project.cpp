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

#include "peerrel/project.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peerrel/error.hpp"

namespace peerrel {

std::vector<double> isotonic_project(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInputError("non-finite input");
  }
  // Pool adjacent violators with a block stack; each block carries its
  // sum so means recompute exactly from merged sums.
  struct Block {
    double sum;
    int count;
    double mean;
  };
  std::vector<Block> blocks;
  blocks.reserve(v.size());
  for (double x : v) {
    Block b{x, 1, x};
    while (!blocks.empty() && blocks.back().mean > b.mean) {
      b.sum += blocks.back().sum;
      b.count += blocks.back().count;
      b.mean = b.sum / b.count;
      blocks.pop_back();
    }
    blocks.push_back(b);
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const Block& b : blocks) {
    out.insert(out.end(), b.count, b.mean);
  }
  return out;
}

namespace {

double sum_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// The box+monotone set is nonempty iff the running maxima of L stay
// below the running minima (from the right) of U; the reachable sums
// then form exactly the interval between those two envelopes' totals.
void check_feasible(const ProjectionProblem& p) {
  const std::size_t n = p.r.size();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  double run = -HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) {
    run = std::max(run, p.L[i]);
    lo[i] = run;
  }
  run = HUGE_VAL;
  for (std::size_t i = n; i-- > 0;) {
    run = std::min(run, p.U[i]);
    hi[i] = run;
  }
  double scale = std::fabs(p.target_sum);
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::fabs(p.L[i]), std::fabs(p.U[i])});
  }
  const double slack = std::max(p.tolerance, 1e-12 * (scale + 1.0) * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i] + slack) {
      throw ConvergenceError("infeasible bounds at index " + std::to_string(i));
    }
  }
  const double min_sum = sum_of(lo);
  const double max_sum = sum_of(hi);
  if (p.target_sum < min_sum - slack || p.target_sum > max_sum + slack) {
    throw ConvergenceError("target sum " + std::to_string(p.target_sum) +
                           " outside reachable range [" +
                           std::to_string(min_sum) + ", " +
                           std::to_string(max_sum) + "]");
  }
}

}  // namespace

std::vector<double> project_intersection(const ProjectionProblem& p) {
  const std::size_t n = p.r.size();
  if (n == 0) throw InvalidInputError("empty problem");
  if (p.L.size() != n || p.U.size() != n) {
    throw InvalidInputError("bounds length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(p.r[i]) || !std::isfinite(p.L[i]) ||
        !std::isfinite(p.U[i])) {
      throw InvalidInputError("non-finite problem data");
    }
    if (p.L[i] > p.U[i]) {
      throw ConvergenceError("empty box: L > U at index " + std::to_string(i));
    }
  }
  if (!std::isfinite(p.target_sum)) throw InvalidInputError("non-finite sum");
  if (p.tolerance <= 0.0) throw InvalidInputError("tolerance must be positive");
  if (p.max_iterations <= 0) {
    throw InvalidInputError("max_iterations must be positive");
  }
  check_feasible(p);

  // Dykstra over three sets: box, monotone cone, sum hyperplane. Each
  // sub-projection is closed form; the hyperplane comes last so the
  // returned iterate meets the sum exactly, and a uniform shift keeps
  // monotonicity intact. The stop threshold is a quarter of the
  // feasibility tolerance so residual box violations stay within it.
  std::vector<double> x = p.r;
  std::vector<double> q_box(n, 0.0);
  std::vector<double> q_cone(n, 0.0);
  std::vector<double> q_sum(n, 0.0);
  std::vector<double> work(n);
  const double stop = 0.25 * p.tolerance;

  for (int iter = 0; iter < p.max_iterations; ++iter) {
    double step = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
      const double z = x[i] + q_box[i];
      const double y = std::clamp(z, p.L[i], p.U[i]);
      q_box[i] = z - y;
      step = std::max(step, std::fabs(y - x[i]));
      x[i] = y;
    }

    for (std::size_t i = 0; i < n; ++i) work[i] = x[i] + q_cone[i];
    std::vector<double> y = isotonic_project(work);
    for (std::size_t i = 0; i < n; ++i) {
      q_cone[i] = work[i] - y[i];
      step = std::max(step, std::fabs(y[i] - x[i]));
      x[i] = y[i];
    }

    for (std::size_t i = 0; i < n; ++i) work[i] = x[i] + q_sum[i];
    const double shift = (p.target_sum - sum_of(work)) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double yi = work[i] + shift;
      q_sum[i] = work[i] - yi;
      step = std::max(step, std::fabs(yi - x[i]));
      x[i] = yi;
    }

    if (step < stop) return x;
  }
  throw ConvergenceError("projection did not converge within " +
                         std::to_string(p.max_iterations) + " iterations");
}

std::vector<double> project_baseline(std::span<const double> r, double box_lo,
                                     double box_hi, double target_sum,
                                     double tolerance, int max_iterations) {
  if (box_lo > box_hi) throw InvalidInputError("box_lo exceeds box_hi");
  ProjectionProblem p;
  p.r.assign(r.begin(), r.end());
  p.L.assign(r.size(), box_lo);
  p.U.assign(r.size(), box_hi);
  p.target_sum = target_sum;
  p.tolerance = tolerance;
  p.max_iterations = max_iterations;
  return project_intersection(p);
}

std::vector<double> nearest_in_finite_set(
    std::span<const double> r,
    const std::vector<std::vector<double>>& candidates) {
  if (candidates.empty()) throw InvalidInputError("empty candidate set");
  const std::vector<double>* best = nullptr;
  double best_dist = HUGE_VAL;
  for (const auto& c : candidates) {
    if (c.size() != r.size()) {
      throw InvalidInputError("candidate length mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double diff = c[i] - r[i];
      d += diff * diff;
    }
    if (d < best_dist ||
        (d == best_dist && best != nullptr &&
         std::lexicographical_compare(c.begin(), c.end(), best->begin(),
                                      best->end()))) {
      best_dist = d;
      best = &c;
    }
  }
  return *best;
}

double public_weight_sum(const PublicWeights& pw) {
  validate_instance(pw);
  if (!uniform_loads(pw)) {
    throw InvalidInputError(
        "released total is not determined by public data under mixed "
        "reviewer loads; supply it explicitly");
  }
  const int ell = pw.reviewer_loads.front();
  double total = 0.0;
  for (const auto& row : pw.rows) {
    for (double w : row) total += w;
  }
  return total / static_cast<double>(ell);
}

}  // namespace peerrel
