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

#include "peerrel/privacy.hpp"

#include <cmath>

#include "peerrel/error.hpp"
#include "peerrel/random.hpp"

namespace peerrel {

double laplace_scale_for_variance(double variance) {
  if (variance < 0.0) throw InvalidInputError("variance must be nonnegative");
  return std::sqrt(variance / 2.0);
}

std::vector<double> noisy_release(const MeanWeightVector& theta_star,
                                  const NoiseMechanism& mech,
                                  std::uint64_t seed) {
  if (!theta_star.sorted) {
    throw InvalidInputError("noisy_release expects a sorted mean-weight vector");
  }
  for (double v : theta_star.entries) {
    if (!std::isfinite(v)) throw InvalidInputError("non-finite input entry");
  }
  if (mech.scale < 0.0) throw InvalidInputError("noise scale must be nonnegative");

  std::vector<double> r = theta_star.entries;
  if (mech.kind == NoiseKind::kNone || mech.scale == 0.0) return r;

  RandomStream rng(seed);
  for (double& v : r) {
    switch (mech.kind) {
      case NoiseKind::kLaplace:
        v += rng.laplace(mech.scale);
        break;
      case NoiseKind::kGaussian:
        v += mech.scale * rng.normal();
        break;
      case NoiseKind::kNone:
        break;
    }
  }
  return r;
}

}  // namespace peerrel
