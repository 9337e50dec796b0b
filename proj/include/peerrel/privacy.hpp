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
#include <vector>

#include "peerrel/core.hpp"

namespace peerrel {

enum class NoiseKind { kNone, kLaplace, kGaussian };

/// Additive perturbation mechanism. `scale` is the Laplace scale b
/// (variance 2b²) or the Gaussian standard deviation; ignored for kNone.
struct NoiseMechanism {
  NoiseKind kind = NoiseKind::kNone;
  double scale = 0.0;
};

/// Laplace scale b achieving the requested variance (var = 2b²).
double laplace_scale_for_variance(double variance);

/// r_i = theta*_i + eta_i with eta i.i.d. from the mechanism. The input
/// must be sorted and finite; the output need not be sorted. Identical
/// seeds give bit-identical output.
std::vector<double> noisy_release(const MeanWeightVector& theta_star,
                                  const NoiseMechanism& mech,
                                  std::uint64_t seed);

}  // namespace peerrel
