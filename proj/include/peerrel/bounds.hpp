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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "peerrel/instance.hpp"

namespace peerrel {

// Per-rank bounds on the sorted mean-weight vector, derived from the
// public per-paper weight multisets alone.
//
// A candidate review set for one reviewer is a tuple of load-many
// entries of the public weight matrix taken from pairwise-distinct
// papers. All such tuples, sorted by mean, form the list Omega. Two
// tuples are compatible when they share no matrix entry; scanning Omega
// while marking entries and checking chain-length and row-occupancy
// criteria yields a lower and an upper bound for every rank.

/// One cell of the public weight matrix: paper row, position within row.
struct EntryRef {
  std::int32_t row = 0;
  std::int32_t col = 0;
  friend constexpr auto operator<=>(const EntryRef&, const EntryRef&) = default;
};

/// Immutable view of one tuple inside a TupleList.
struct TupleView {
  std::span<const EntryRef> entries;  ///< sorted by (row, col)
  double mean = 0.0;
  std::size_t index = 0;  ///< position in the sorted list
};

/// All candidate tuples, sorted by mean; ties broken by lexicographic
/// comparison of the sorted entry lists so the order is deterministic.
class TupleList {
 public:
  std::size_t size() const { return means_.size(); }
  bool empty() const { return means_.empty(); }

  TupleView operator[](std::size_t i) const {
    return {std::span<const EntryRef>(pool_.data() + offsets_[i],
                                      offsets_[i + 1] - offsets_[i]),
            means_[i], i};
  }

  /// Flat id of an entry; ids enumerate the matrix row by row.
  int entry_id(EntryRef e) const { return row_offsets_[e.row] + e.col; }
  int total_entries() const { return row_offsets_.back(); }
  int row_count() const { return static_cast<int>(row_offsets_.size()) - 1; }
  int row_size(int row) const {
    return row_offsets_[row + 1] - row_offsets_[row];
  }

 private:
  friend TupleList enumerate_tuples(const PublicWeights&, std::uint64_t);

  std::vector<EntryRef> pool_;          // tuple entries, back to back
  std::vector<std::uint64_t> offsets_;  // size() + 1 boundaries into pool_
  std::vector<double> means_;
  std::vector<int> row_offsets_;        // flat entry ids per matrix row
};

/// Lengths of the longest strictly index-decreasing (left) and
/// index-increasing (right) compatible chains starting at each tuple.
/// A lone tuple has length 1.
struct ChainTable {
  std::vector<int> left;
  std::vector<int> right;
};

/// Per-rank bounds: L and U are nondecreasing and bracket every sorted
/// mean-weight vector consistent with the public data.
struct BoundsVector {
  std::vector<double> L;
  std::vector<double> U;
};

inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

/// Number of tuples enumerate_tuples would produce, without building them.
std::uint64_t count_tuples(const PublicWeights& pw);

/// Every multiset of `load` entries from pairwise-distinct rows, for each
/// distinct load among the reviewer loads. Throws CapExceededError when
/// the count exceeds `tuple_cap`.
TupleList enumerate_tuples(const PublicWeights& pw,
                           std::uint64_t tuple_cap = kDefaultTupleCap);

/// True iff the tuples reference no common matrix entry. Entries from
/// the same row at different positions do not conflict.
bool tuples_compatible(const TupleView& a, const TupleView& b);

/// Chain lengths for every tuple, by dynamic programming over the sorted
/// list: left[v] = 1 + max left[u] over compatible u at lower index
/// (and symmetrically for right).
ChainTable chain_lengths(const TupleList& omega);

/// Forward marking scan producing the n lower bounds.
std::vector<double> lower_bounds(const PublicWeights& pw,
                                 const TupleList& omega,
                                 const ChainTable& chains);

/// Backward marking scan producing the n upper bounds.
std::vector<double> upper_bounds(const PublicWeights& pw,
                                 const TupleList& omega,
                                 const ChainTable& chains);

/// Full pipeline: validate, enumerate, chain DP, both scans.
BoundsVector compute_bounds(const PublicWeights& pw,
                            std::uint64_t tuple_cap = kDefaultTupleCap);

}  // namespace peerrel
