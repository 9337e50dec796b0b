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

#include <cmath>
#include <cstddef>
#include <vector>

namespace peerrel::detail {

/// Solves the dense system A x = b in place (A row-major, n x n) with
/// partial pivoting. Returns false when a pivot is negligible relative
/// to the matrix scale; A and b are clobbered either way. On success b
/// holds the solution.
inline bool solve_linear_system(std::vector<double>& A, std::vector<double>& b,
                                std::size_t n) {
  double scale = 0.0;
  for (double v : A) scale = std::max(scale, std::fabs(v));
  const double tiny = 1e-12 * (scale + 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(A[row * n + col]) > std::fabs(A[pivot * n + col])) {
        pivot = row;
      }
    }
    if (std::fabs(A[pivot * n + col]) < tiny) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(A[pivot * n + c], A[col * n + c]);
      }
      std::swap(b[pivot], b[col]);
    }
    const double inv = 1.0 / A[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = A[row * n + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[row * n + c] -= f * A[col * n + c];
      b[row] -= f * b[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    double acc = b[col];
    for (std::size_t c = col + 1; c < n; ++c) acc -= A[col * n + c] * b[c];
    b[col] = acc / A[col * n + col];
  }
  return true;
}

}  // namespace peerrel::detail
