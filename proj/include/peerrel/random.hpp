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
#include <initializer_list>
#include <random>
#include <vector>

namespace peerrel {

// Deterministic random stream. mt19937_64 is fully specified by the
// standard, and every derived draw below (bounded ints, uniforms,
// inverse-CDF transforms) is implemented here rather than delegated to
// std distributions, whose output is implementation-defined. Identical
// seeds therefore give bit-identical sequences on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double strictly inside (0, 1); 53 significant bits.
  double uniform01();

  /// Unbiased uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi);

  /// Standard normal via inverse CDF (one uniform per draw).
  double normal();

  /// Zero-mean Laplace with the given scale b (variance 2b²),
  /// via inverse CDF from one uniform draw.
  double laplace(double scale);

  /// Gamma(shape, 1), shape > 0.
  double gamma(double shape);

  /// Beta(a, b), a > 0, b > 0.
  double beta(double a, double b);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Stable seed derivation: mixes the parts with a SplitMix64-style
/// finalizer so that (base, n, trial) triples map to well-separated
/// streams. Pure function of its inputs.
std::uint64_t seed_combine(std::initializer_list<std::uint64_t> parts);

/// Inverse standard-normal CDF, accurate to ~1 ulp over (0, 1).
double inverse_normal_cdf(double p);

}  // namespace peerrel
