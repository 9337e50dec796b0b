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

#include "peerrel/random.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using peerrel::RandomStream;

TEST_CASE("identical seeds give identical streams") {
  RandomStream a(12345);
  RandomStream b(12345);
  for (int i = 0; i < 50; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RandomStream c(12345);
  RandomStream d(54321);
  bool all_equal = true;
  for (int i = 0; i < 8; ++i) {
    all_equal = all_equal && (c.next_u64() == d.next_u64());
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("uniform01 stays strictly inside the unit interval") {
  RandomStream rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("uniform_below is in range and roughly uniform") {
  RandomStream rng(11);
  std::vector<int> counts(8, 0);
  const int draws = 400000;
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.uniform_below(8);
    REQUIRE(v < 8);
    counts[v] += 1;
  }
  for (int c : counts) {
    CHECK(c > draws / 8 * 0.95);
    CHECK(c < draws / 8 * 1.05);
  }
}

TEST_CASE("laplace draws match the target mean and variance") {
  RandomStream rng(2024);
  const int draws = 1000000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.laplace(1.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  // Standard error of the mean is sqrt(2/N).
  CHECK(std::fabs(mean) < 5.0 * std::sqrt(2.0 / draws));
  CHECK(var > 1.98);
  CHECK(var < 2.02);
}

TEST_CASE("normal draws match the target moments") {
  RandomStream rng(99);
  const int draws = 1000000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  CHECK(std::fabs(mean) < 5.0 / std::sqrt(static_cast<double>(draws)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("inverse normal CDF hits known quantiles") {
  CHECK(peerrel::inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(peerrel::inverse_normal_cdf(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(peerrel::inverse_normal_cdf(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-9));
  CHECK(peerrel::inverse_normal_cdf(1e-10) ==
        doctest::Approx(-6.361340902404056).epsilon(1e-8));
}

TEST_CASE("beta draws land in [0,1] with the right mean") {
  RandomStream rng(31);
  const int draws = 200000;
  double sum51 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.beta(5.0, 1.0);
    REQUIRE(x >= 0.0);
    REQUIRE(x <= 1.0);
    sum51 += x;
  }
  CHECK(sum51 / draws == doctest::Approx(5.0 / 6.0).epsilon(0.01));

  double sum_half = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.beta(0.5, 0.5);
    REQUIRE(x >= 0.0);
    REQUIRE(x <= 1.0);
    sum_half += x;
  }
  CHECK(sum_half / draws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("seed_combine separates nearby keys") {
  const auto a = peerrel::seed_combine({1, 2, 3});
  const auto b = peerrel::seed_combine({1, 2, 4});
  const auto c = peerrel::seed_combine({1, 3, 2});
  CHECK(a != b);
  CHECK(a != c);
  CHECK(b != c);
  CHECK(a == peerrel::seed_combine({1, 2, 3}));
}
