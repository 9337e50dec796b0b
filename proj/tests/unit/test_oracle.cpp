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

#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "peerrel/bounds.hpp"
#include "peerrel/core.hpp"
#include "peerrel/error.hpp"
#include "peerrel/privacy.hpp"
#include "peerrel/project.hpp"
#include "peerrel/random.hpp"

using namespace peerrel;

namespace {

PublicWeights worked_example() {
  PublicWeights pw;
  pw.n = 4;
  pw.reviewer_loads = {3, 3, 3, 3};
  pw.rows = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {1, 2, 3}};
  return pw;
}

}  // namespace

TEST_CASE("the worked instance admits exactly one vector") {
  const ThetaSet theta = enumerate_theta(worked_example());
  REQUIRE(theta.vectors.size() == 1);
  const auto& v = theta.vectors[0];
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(1.0 / 3.0));
  CHECK(v[2] == doctest::Approx(2.0 / 3.0));
  CHECK(v[3] == doctest::Approx(1.0));
}

TEST_CASE("load one admits only the sorted weight vector") {
  PublicWeights pw;
  pw.n = 3;
  pw.reviewer_loads = {1, 1, 1};
  pw.rows = {{5}, {1}, {3}};
  const ThetaSet theta = enumerate_theta(pw);
  REQUIRE(theta.vectors.size() == 1);
  CHECK(theta.vectors[0] == std::vector<double>{1, 3, 5});
}

TEST_CASE("the two-by-two instance with rows {0,1} has two vectors") {
  PublicWeights pw;
  pw.n = 2;
  pw.reviewer_loads = {2, 2};
  pw.rows = {{0, 1}, {0, 1}};
  const ThetaSet theta = enumerate_theta(pw);
  REQUIRE(theta.vectors.size() == 2);
  CHECK(theta.vectors[0] == std::vector<double>{0.0, 1.0});
  CHECK(theta.vectors[1] == std::vector<double>{0.5, 0.5});
}

TEST_CASE("enumeration agrees with an independent reviewer-map strategy") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Assignment a = testsupport::grid_weight_assignment(
        3 + static_cast<int>(seed % 2), 3 + static_cast<int>(seed % 2), 2, 2,
        seed);
    const PublicWeights pw = public_view(a);
    const ThetaSet theta = enumerate_theta(pw);
    const std::set<std::vector<double>> expect =
        testsupport::theta_by_reviewer_maps(pw);
    const std::set<std::vector<double>> got(theta.vectors.begin(),
                                            theta.vectors.end());
    CHECK(got == expect);
  }
}

TEST_CASE("mixed-load enumeration agrees with the reviewer-map strategy") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Assignment a = testsupport::mixed_load_assignment(3, seed);
    const PublicWeights pw = public_view(a);
    const ThetaSet theta = enumerate_theta(pw);
    const std::set<std::vector<double>> expect =
        testsupport::theta_by_reviewer_maps(pw);
    const std::set<std::vector<double>> got(theta.vectors.begin(),
                                            theta.vectors.end());
    CHECK(got == expect);
  }
}

TEST_CASE("the true vector always appears in the enumeration") {
  for (std::uint64_t seed = 50; seed < 62; ++seed) {
    const Assignment a = testsupport::grid_weight_assignment(4, 4, 2, 2, seed);
    const PublicWeights pw = public_view(a);
    const ThetaSet theta = enumerate_theta(pw);
    const auto truth = sorted_mean_weights(a);
    bool found = false;
    for (const auto& v : theta.vectors) {
      bool same = true;
      for (std::size_t i = 0; i < v.size() && same; ++i) {
        same = std::fabs(v[i] - truth.entries[i]) < 1e-12;
      }
      found = found || same;
    }
    CHECK(found);
  }
}

TEST_CASE("caps are hard errors") {
  PublicWeights pw = worked_example();
  OracleCaps caps;
  caps.max_n = 3;
  CHECK_THROWS_AS(enumerate_theta(pw, caps), CapExceededError);
  caps.max_n = 6;
  caps.max_load = 2;
  CHECK_THROWS_AS(enumerate_theta(pw, caps), CapExceededError);
}

TEST_CASE("unrealizable public data is an explicit error") {
  PublicWeights pw;
  pw.n = 4;
  pw.reviewer_loads = {4, 4, 1, 1};
  pw.rows = {{0, 0, 0, 0}, {1, 1, 1, 1}, {2}, {3}};
  CHECK_THROWS_AS(enumerate_theta(pw), InvalidInputError);
}

TEST_CASE("hull projection fixes vertices and interior points") {
  ThetaSet theta;
  theta.vectors = {{0.0, 1.0}, {0.5, 0.5}};
  const auto vertex = hull_project(std::vector<double>{0.0, 1.0}, theta);
  CHECK(vertex[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(vertex[1] == doctest::Approx(1.0).epsilon(1e-9));

  // Midpoint of the segment stays put.
  const auto mid = hull_project(std::vector<double>{0.25, 0.75}, theta);
  CHECK(mid[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(mid[1] == doctest::Approx(0.75).epsilon(1e-9));

  // The origin clamps to the closer endpoint of the segment.
  const auto clamped = hull_project(std::vector<double>{0.0, 0.0}, theta);
  CHECK(clamped[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(clamped[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("hull projection is non-expansive toward every member") {
  RandomStream rng(404);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Assignment a = testsupport::grid_weight_assignment(4, 4, 2, 2, seed);
    const PublicWeights pw = public_view(a);
    const ThetaSet theta = enumerate_theta(pw);
    std::vector<double> r(4);
    for (double& x : r) x = rng.uniform(-2.0, 3.0);
    const auto t = hull_project(r, theta);
    for (const auto& member : theta.vectors) {
      CHECK(sse(t, member) <= sse(r, member) + 1e-9);
    }
  }
}

TEST_CASE("refining a polytope projection through the hull never hurts") {
  RandomStream rng(808);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Assignment a = testsupport::grid_weight_assignment(4, 4, 2, 2, seed);
    const PublicWeights pw = public_view(a);
    const ThetaSet theta = enumerate_theta(pw);
    const BoundsVector b = compute_bounds(pw);
    const auto truth = sorted_mean_weights(a);
    const auto r =
        noisy_release(truth, {NoiseKind::kLaplace, 1.0}, seed_combine({seed}));
    ProjectionProblem prob;
    prob.r = r;
    prob.L = b.L;
    prob.U = b.U;
    prob.target_sum = public_weight_sum(pw);
    const auto t = project_intersection(prob);
    const auto refined = hull_project(t, theta);
    for (const auto& member : theta.vectors) {
      CHECK(sse(refined, member) <= sse(t, member) + 1e-9);
    }
  }
}

TEST_CASE("closed-form expected errors of the five-point counterexample") {
  const Prop1Result res = prop1_expected_errors();
  CHECK(res.closed_noisy == 2.0);
  CHECK(res.closed_projected ==
        doctest::Approx(4.0 * std::exp(-1.0) + 12.0 * std::exp(-3.0))
            .epsilon(1e-15));
  // Snapping strictly increases the expected error here.
  CHECK(res.closed_projected > res.closed_noisy);
  CHECK(res.closed_projected == doctest::Approx(2.06896).epsilon(5e-5));
}

TEST_CASE("Monte Carlo agrees with the closed forms") {
  const Prop1Result res = prop1_expected_errors(1000000, 2026);
  CHECK(res.mc_noisy == doctest::Approx(res.closed_noisy).epsilon(0.01));
  CHECK(res.mc_projected == doctest::Approx(res.closed_projected).epsilon(0.01));
  // Deterministic under the seed.
  const Prop1Result again = prop1_expected_errors(1000000, 2026);
  CHECK(res.mc_noisy == again.mc_noisy);
  CHECK(res.mc_projected == again.mc_projected);
}

TEST_CASE("snapping onto the truth alone is error-free") {
  CHECK(nearest_snap_mc_error({0.0}, 1.0, 100000, 7) == 0.0);
}
