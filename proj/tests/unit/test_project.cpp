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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "peerrel/core.hpp"
#include "peerrel/error.hpp"
#include "peerrel/random.hpp"

using namespace peerrel;

TEST_CASE("isotonic projection leaves monotone input alone") {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  CHECK(isotonic_project(v) == v);
}

TEST_CASE("isotonic projection pools violating blocks") {
  const std::vector<double> a = {2.0, 1.0};
  CHECK(isotonic_project(a) == std::vector<double>{1.5, 1.5});
  const std::vector<double> b = {3.0, 1.0, 2.0};
  CHECK(isotonic_project(b) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("pooled projections agree with a coarse grid search") {
  // One-block pooling of (2,1): search t1 <= t2 on a fine grid.
  double best_obj = HUGE_VAL;
  std::vector<double> best(2);
  for (int i = 0; i <= 3000; ++i) {
    for (int j = i; j <= 3000; ++j) {
      const double t1 = i * 1e-3;
      const double t2 = j * 1e-3;
      const double obj = (t1 - 2.0) * (t1 - 2.0) + (t2 - 1.0) * (t2 - 1.0);
      if (obj < best_obj) {
        best_obj = obj;
        best = {t1, t2};
      }
    }
  }
  const auto got = isotonic_project(std::vector<double>{2.0, 1.0});
  CHECK(std::fabs(got[0] - best[0]) < 2e-3);
  CHECK(std::fabs(got[1] - best[1]) < 2e-3);
}

TEST_CASE("isotonic projection matches exhaustive block search") {
  RandomStream rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(4));
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-5.0, 5.0);
    const auto fast = isotonic_project(v);
    const auto brute = testsupport::isotonic_by_block_search(v);
    REQUIRE(fast.size() == brute.size());
    for (int i = 0; i < n; ++i) {
      CHECK(fast[i] == doctest::Approx(brute[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("isotonic projection preserves the coordinate sum") {
  RandomStream rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(12));
    std::vector<double> v(n);
    double sum_in = 0.0;
    for (double& x : v) {
      x = rng.uniform(-4.0, 4.0);
      sum_in += x;
    }
    const auto out = isotonic_project(v);
    double sum_out = 0.0;
    for (double x : out) sum_out += x;
    CHECK(std::fabs(sum_out - sum_in) < 1e-12 * (1.0 + std::fabs(sum_in)) * n);
    for (std::size_t i = 1; i < out.size(); ++i) CHECK(out[i - 1] <= out[i]);
    // Idempotence.
    CHECK(isotonic_project(out) == out);
  }
}

namespace {

ProjectionProblem worked_singleton(const std::vector<double>& r) {
  ProjectionProblem p;
  p.r = r;
  p.L = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  p.U = p.L;
  p.target_sum = 2.0;
  return p;
}

double max_violation(const std::vector<double>& t, const ProjectionProblem& p) {
  double v = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    v = std::max(v, p.L[i] - t[i]);
    v = std::max(v, t[i] - p.U[i]);
    if (i + 1 < t.size()) v = std::max(v, t[i] - t[i + 1]);
  }
  return v;
}

}  // namespace

TEST_CASE("a singleton polytope forces its point") {
  RandomStream rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> r(4);
    for (double& x : r) x = rng.uniform(-5.0, 5.0);
    const auto t = project_intersection(worked_singleton(r));
    CHECK(std::fabs(t[0] - 0.0) < 1e-7);
    CHECK(std::fabs(t[1] - 1.0 / 3.0) < 1e-7);
    CHECK(std::fabs(t[2] - 2.0 / 3.0) < 1e-7);
    CHECK(std::fabs(t[3] - 1.0) < 1e-7);
  }
}

TEST_CASE("feasible points project to themselves") {
  ProjectionProblem p;
  p.r = {0.2, 0.4, 0.9};
  p.L = {0.0, 0.0, 0.0};
  p.U = {1.0, 1.0, 1.0};
  p.target_sum = 0.2 + 0.4 + 0.9;
  const auto t = project_intersection(p);
  for (int i = 0; i < 3; ++i) CHECK(t[i] == doctest::Approx(p.r[i]).epsilon(1e-9));
}

TEST_CASE("monotonicity binds the two-point example") {
  ProjectionProblem p;
  p.r = {0.9, 0.3};
  p.L = {0.0, 0.0};
  p.U = {1.0, 1.0};
  p.target_sum = 1.0;
  const auto t = project_intersection(p);
  CHECK(t[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(t[1] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("projection output is feasible within tolerance") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rp = testsupport::random_feasible_problem(5, seed);
    ProjectionProblem p;
    p.r = rp.r;
    p.L = rp.L;
    p.U = rp.U;
    p.target_sum = rp.S;
    const auto t = project_intersection(p);
    CHECK(max_violation(t, p) <= p.tolerance);
    double total = 0.0;
    for (double x : t) total += x;
    CHECK(std::fabs(total - p.target_sum) <=
          p.tolerance * static_cast<double>(t.size()));
  }
}

TEST_CASE("projection never moves away from feasible points") {
  // Non-expansiveness relative to the interior point the problem was
  // built around.
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    RandomStream rng(seed);
    const int n = 2 + static_cast<int>(rng.uniform_below(5));
    auto rp = testsupport::random_feasible_problem(n, seed);
    ProjectionProblem p;
    p.r = rp.r;
    p.L = rp.L;
    p.U = rp.U;
    p.target_sum = rp.S;
    const auto t = project_intersection(p);
    CHECK(sse(t, rp.interior) <= sse(p.r, rp.interior) + 1e-9);
  }
}

TEST_CASE("projection agrees with the exact active-set oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    auto rp = testsupport::random_feasible_problem(n, 5000 + seed);
    ProjectionProblem p;
    p.r = rp.r;
    p.L = rp.L;
    p.U = rp.U;
    p.target_sum = rp.S;
    p.tolerance = 1e-10;
    const auto t = project_intersection(p);
    const auto oracle = testsupport::qp_active_set_oracle(rp.r, rp.L, rp.U, rp.S);
    for (int i = 0; i < n; ++i) {
      CHECK(t[i] == doctest::Approx(oracle[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("active-set oracle agrees with a dense grid sweep at n = 2") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rp = testsupport::random_feasible_problem(2, 900 + seed);
    const auto kkt = testsupport::qp_active_set_oracle(rp.r, rp.L, rp.U, rp.S);
    const auto grid = testsupport::qp_grid_oracle_n2(rp.r, rp.L, rp.U, rp.S);
    CHECK(std::fabs(kkt[0] - grid[0]) < 1e-5);
    CHECK(std::fabs(kkt[1] - grid[1]) < 1e-5);
  }
}

TEST_CASE("infeasible problems are reported") {
  ProjectionProblem bad_box;
  bad_box.r = {0.0, 0.0};
  bad_box.L = {1.0, 0.0};
  bad_box.U = {0.5, 1.0};  // L > U at index 0
  bad_box.target_sum = 1.0;
  CHECK_THROWS_AS(project_intersection(bad_box), ConvergenceError);

  ProjectionProblem bad_sum;
  bad_sum.r = {0.0, 0.0};
  bad_sum.L = {0.0, 0.0};
  bad_sum.U = {1.0, 1.0};
  bad_sum.target_sum = 5.0;  // outside [0, 2]
  CHECK_THROWS_AS(project_intersection(bad_sum), ConvergenceError);

  ProjectionProblem crossing;
  crossing.r = {0.0, 0.0};
  crossing.L = {0.9, 0.0};
  crossing.U = {1.0, 0.2};  // monotone + box admits no point
  crossing.target_sum = 1.0;
  CHECK_THROWS_AS(project_intersection(crossing), ConvergenceError);

  ProjectionProblem nan_input;
  nan_input.r = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  nan_input.L = {0.0, 0.0};
  nan_input.U = {1.0, 1.0};
  nan_input.target_sum = 1.0;
  CHECK_THROWS_AS(project_intersection(nan_input), InvalidInputError);
}

TEST_CASE("baseline box projection") {
  const std::vector<double> feasible = {0.2, 0.3, 0.5};
  const auto same = project_baseline(feasible, 0.0, 1.0, 1.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(same[i] == doctest::Approx(feasible[i]).epsilon(1e-9));
  }
  const std::vector<double> big = {2.0, 2.0};
  const auto t = project_baseline(big, 0.0, 1.0, 1.0);
  CHECK(t[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(t[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK_THROWS_AS(project_baseline(big, 1.0, 0.0, 1.0), InvalidInputError);
}

TEST_CASE("nearest candidate selection and tie-breaks") {
  const std::vector<std::vector<double>> grid = {
      {-4.0}, {-2.0}, {0.0}, {2.0}, {4.0}};
  CHECK(nearest_in_finite_set(std::vector<double>{2.9}, grid) ==
        std::vector<double>{2.0});
  CHECK(nearest_in_finite_set(std::vector<double>{-2.0}, grid) ==
        std::vector<double>{-2.0});
  const std::vector<std::vector<double>> two = {{0.0}, {2.0}};
  CHECK(nearest_in_finite_set(std::vector<double>{1.0}, two) ==
        std::vector<double>{0.0});
  CHECK_THROWS_AS(nearest_in_finite_set(std::vector<double>{1.0}, {}),
                  InvalidInputError);
  const std::vector<std::vector<double>> wrong = {{1.0, 2.0}};
  CHECK_THROWS_AS(nearest_in_finite_set(std::vector<double>{1.0}, wrong),
                  InvalidInputError);
}

TEST_CASE("public total under uniform loads, error under mixed loads") {
  PublicWeights pw;
  pw.n = 4;
  pw.reviewer_loads = {3, 3, 3, 3};
  pw.rows = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {1, 2, 3}};
  CHECK(public_weight_sum(pw) == doctest::Approx(2.0));
  PublicWeights mixed;
  mixed.n = 2;
  mixed.reviewer_loads = {1, 2};
  mixed.rows = {{1.0, 1.0}, {1.0}};
  CHECK_THROWS_AS(public_weight_sum(mixed), InvalidInputError);
}
