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

#include "peerrel/bounds.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <string>

#include "peerrel/error.hpp"

namespace peerrel {

namespace {

std::vector<int> distinct_loads(const PublicWeights& pw) {
  std::set<int> loads(pw.reviewer_loads.begin(), pw.reviewer_loads.end());
  return {loads.begin(), loads.end()};
}

// Whether any simple bipartite graph realizes the load sequences. The
// weights put no further structural constraint, so this is the exact
// feasibility test (Gale-Ryser) for the public data.
bool loads_realizable(const PublicWeights& pw) {
  std::vector<long long> r(pw.reviewer_loads.begin(), pw.reviewer_loads.end());
  std::sort(r.begin(), r.end(), std::greater<>());
  std::vector<long long> k;
  k.reserve(pw.rows.size());
  for (const auto& row : pw.rows) k.push_back(static_cast<long long>(row.size()));
  long long lhs = 0;
  for (std::size_t t = 1; t <= r.size(); ++t) {
    lhs += r[t - 1];
    long long rhs = 0;
    for (long long ki : k) rhs += std::min<long long>(ki, static_cast<long long>(t));
    if (lhs > rhs) return false;
  }
  return true;
}

}  // namespace

std::uint64_t count_tuples(const PublicWeights& pw) {
  const std::size_t m = pw.rows.size();
  unsigned __int128 total = 0;
  for (int load : distinct_loads(pw)) {
    // f[t] = sum over t-subsets of rows of the product of row sizes.
    std::vector<unsigned __int128> f(load + 1, 0);
    f[0] = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const unsigned __int128 k = pw.rows[i].size();
      for (int t = std::min<int>(load, static_cast<int>(i) + 1); t >= 1; --t) {
        f[t] += f[t - 1] * k;
      }
    }
    total += f[load];
    if (total > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

TupleList enumerate_tuples(const PublicWeights& pw, std::uint64_t tuple_cap) {
  validate_instance(pw);
  const std::uint64_t count = count_tuples(pw);
  if (count > tuple_cap) {
    throw CapExceededError("tuple count " + std::to_string(count) +
                           " exceeds cap " + std::to_string(tuple_cap));
  }

  TupleList out;
  const int m = static_cast<int>(pw.rows.size());
  out.row_offsets_.resize(m + 1, 0);
  for (int i = 0; i < m; ++i) {
    out.row_offsets_[i + 1] =
        out.row_offsets_[i] + static_cast<int>(pw.rows[i].size());
  }

  out.offsets_.reserve(count + 1);
  out.offsets_.push_back(0);
  out.means_.reserve(count);

  std::vector<EntryRef> stack;
  double sum = 0.0;
  // Rows are visited in ascending order and positions in ascending order,
  // so every emitted tuple is already sorted by (row, col) and its mean
  // is accumulated in that canonical order.
  auto recurse = [&](auto&& self, int row_start, int remaining) -> void {
    if (remaining == 0) {
      out.pool_.insert(out.pool_.end(), stack.begin(), stack.end());
      out.offsets_.push_back(out.pool_.size());
      out.means_.push_back(sum / static_cast<double>(stack.size()));
      return;
    }
    for (int row = row_start; row <= m - remaining; ++row) {
      const auto& values = pw.rows[row];
      for (int col = 0; col < static_cast<int>(values.size()); ++col) {
        stack.push_back({row, col});
        sum += values[col];
        self(self, row + 1, remaining - 1);
        sum -= values[col];
        stack.pop_back();
      }
    }
  };
  for (int load : distinct_loads(pw)) recurse(recurse, 0, load);

  // Sort by mean; ties by lexicographic comparison of the entry lists.
  const std::size_t total = out.means_.size();
  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  auto entries_of = [&](std::uint32_t t) {
    return std::span<const EntryRef>(out.pool_.data() + out.offsets_[t],
                                     out.offsets_[t + 1] - out.offsets_[t]);
  };
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (out.means_[a] != out.means_[b]) return out.means_[a] < out.means_[b];
    const auto ea = entries_of(a);
    const auto eb = entries_of(b);
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(),
                                        eb.end());
  });

  TupleList sorted;
  sorted.row_offsets_ = out.row_offsets_;
  sorted.pool_.reserve(out.pool_.size());
  sorted.offsets_.reserve(total + 1);
  sorted.offsets_.push_back(0);
  sorted.means_.reserve(total);
  for (std::uint32_t t : order) {
    const auto e = entries_of(t);
    sorted.pool_.insert(sorted.pool_.end(), e.begin(), e.end());
    sorted.offsets_.push_back(sorted.pool_.size());
    sorted.means_.push_back(out.means_[t]);
  }
  return sorted;
}

bool tuples_compatible(const TupleView& a, const TupleView& b) {
  // Merge walk over the two sorted entry lists.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i] == b.entries[j]) return false;
    if (a.entries[i] < b.entries[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

namespace {

// Occupancy bitsets: for each matrix entry, the set of tuples containing
// it, as bits over Omega. Compatibility of (u, v) is then a bit test, and
// the chain DP scans prefixes without materializing the graph.
class Occupancy {
 public:
  Occupancy(const TupleList& omega)
      : words_((omega.size() + 63) / 64),
        bits_(static_cast<std::size_t>(omega.total_entries()) * words_, 0) {
    for (std::size_t v = 0; v < omega.size(); ++v) {
      for (const EntryRef& e : omega[v].entries) {
        bits_[static_cast<std::size_t>(omega.entry_id(e)) * words_ + v / 64] |=
            1ULL << (v % 64);
      }
    }
  }

  std::size_t words() const { return words_; }

  const std::uint64_t* row(int entry_id) const {
    return bits_.data() + static_cast<std::size_t>(entry_id) * words_;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

ChainTable chain_lengths(const TupleList& omega) {
  const std::size_t total = omega.size();
  ChainTable table;
  table.left.assign(total, 1);
  table.right.assign(total, 1);
  if (total == 0) return table;

  const Occupancy occ(omega);
  const std::size_t words = occ.words();
  std::vector<std::uint64_t> conflict(words);

  // Left pass. A running prefix maximum usually resolves the DP in O(1);
  // when the argmax tuple conflicts, fall back to a masked prefix scan.
  {
    int best_val = 0;
    std::size_t best_idx = 0;
    for (std::size_t v = 0; v < total; ++v) {
      const TupleView tv = omega[v];
      if (v > 0) {
        if (tuples_compatible(omega[best_idx], tv)) {
          table.left[v] = best_val + 1;
        } else {
          const std::size_t last_word = v / 64;
          std::fill(conflict.begin(), conflict.begin() + last_word + 1, 0);
          for (const EntryRef& e : tv.entries) {
            const std::uint64_t* row = occ.row(omega.entry_id(e));
            for (std::size_t w = 0; w <= last_word; ++w) conflict[w] |= row[w];
          }
          int best = 0;
          for (std::size_t w = 0; w <= last_word; ++w) {
            std::uint64_t cand = ~conflict[w];
            if (w == last_word) {
              const unsigned r = static_cast<unsigned>(v % 64);
              cand &= (r == 0) ? 0ULL : (~0ULL >> (64 - r));
            }
            while (cand) {
              const std::size_t u = w * 64 + std::countr_zero(cand);
              cand &= cand - 1;
              if (table.left[u] > best) best = table.left[u];
            }
          }
          table.left[v] = best + 1;
        }
      }
      if (table.left[v] > best_val) {
        best_val = table.left[v];
        best_idx = v;
      }
    }
  }

  // Right pass, mirrored.
  {
    int best_val = 0;
    std::size_t best_idx = 0;
    for (std::size_t v = total; v-- > 0;) {
      const TupleView tv = omega[v];
      if (v + 1 < total) {
        if (tuples_compatible(omega[best_idx], tv)) {
          table.right[v] = best_val + 1;
        } else {
          const std::size_t first_word = v / 64;
          const std::size_t end_word = (total + 63) / 64;
          std::fill(conflict.begin() + first_word, conflict.begin() + end_word,
                    0);
          for (const EntryRef& e : tv.entries) {
            const std::uint64_t* row = occ.row(omega.entry_id(e));
            for (std::size_t w = first_word; w < end_word; ++w) {
              conflict[w] |= row[w];
            }
          }
          int best = 0;
          for (std::size_t w = first_word; w < end_word; ++w) {
            std::uint64_t cand = ~conflict[w];
            if (w == first_word) {
              const unsigned r = static_cast<unsigned>(v % 64);
              cand &= (r == 63) ? 0ULL : (~0ULL << (r + 1));
            }
            if (w == end_word - 1 && total % 64 != 0) {
              cand &= ~0ULL >> (64 - total % 64);
            }
            while (cand) {
              const std::size_t u = w * 64 + std::countr_zero(cand);
              cand &= cand - 1;
              if (table.right[u] > best) best = table.right[u];
            }
          }
          table.right[v] = best + 1;
        }
      }
      if (table.right[v] > best_val) {
        best_val = table.right[v];
        best_idx = v;
      }
    }
  }
  return table;
}

namespace {

// Marking state shared by the two scans: per-entry marks (idempotent),
// per-row unmarked counters, and a count histogram so the maximum
// unmarked count over rows updates in O(1) per fresh mark.
class MarkState {
 public:
  explicit MarkState(const TupleList& omega)
      : marked_(omega.total_entries(), 0),
        unmarked_(omega.row_count()),
        hist_(0) {
    int max_count = 0;
    for (int r = 0; r < omega.row_count(); ++r) {
      unmarked_[r] = omega.row_size(r);
      max_count = std::max(max_count, unmarked_[r]);
    }
    hist_.assign(max_count + 1, 0);
    for (int c : unmarked_) hist_[c] += 1;
    max_unmarked_ = max_count;
  }

  void mark(int entry_id, int row) {
    if (marked_[entry_id]) return;
    marked_[entry_id] = 1;
    hist_[unmarked_[row]] -= 1;
    unmarked_[row] -= 1;
    hist_[unmarked_[row]] += 1;
    while (max_unmarked_ > 0 && hist_[max_unmarked_] == 0) --max_unmarked_;
  }

  int max_unmarked() const { return max_unmarked_; }

 private:
  std::vector<char> marked_;
  std::vector<int> unmarked_;
  std::vector<int> hist_;
  int max_unmarked_ = 0;
};

void check_consistent(const PublicWeights& pw, const TupleList& omega,
                      const ChainTable& chains) {
  if (omega.size() != chains.left.size() ||
      omega.size() != chains.right.size()) {
    throw InvalidInputError("chain table does not match tuple list");
  }
  if (omega.row_count() != static_cast<int>(pw.rows.size())) {
    throw InvalidInputError("tuple list does not match public weights");
  }
}

}  // namespace

std::vector<double> lower_bounds(const PublicWeights& pw,
                                 const TupleList& omega,
                                 const ChainTable& chains) {
  check_consistent(pw, omega, chains);
  const int n = pw.n;
  MarkState state(omega);
  std::vector<double> lower;
  lower.reserve(n);
  int rank = 1;
  for (std::size_t v = 0; v < omega.size() && rank <= n; ++v) {
    const TupleView tv = omega[v];
    for (const EntryRef& e : tv.entries) state.mark(omega.entry_id(e), e.row);
    if (chains.left[v] >= rank && state.max_unmarked() <= n - rank) {
      lower.push_back(tv.mean);
      ++rank;
    }
  }
  if (rank <= n) {
    throw InvalidInputError(
        "public data admits no valid assignment: lower-bound scan exhausted at rank " +
        std::to_string(rank));
  }
  return lower;
}

std::vector<double> upper_bounds(const PublicWeights& pw,
                                 const TupleList& omega,
                                 const ChainTable& chains) {
  check_consistent(pw, omega, chains);
  const int n = pw.n;
  MarkState state(omega);
  std::vector<double> upper(n, 0.0);
  int rank = n;
  for (std::size_t v = omega.size(); v-- > 0 && rank >= 1;) {
    const TupleView tv = omega[v];
    for (const EntryRef& e : tv.entries) state.mark(omega.entry_id(e), e.row);
    if (chains.right[v] >= n - rank + 1 && state.max_unmarked() <= rank - 1) {
      upper[rank - 1] = tv.mean;
      --rank;
    }
  }
  if (rank >= 1) {
    throw InvalidInputError(
        "public data admits no valid assignment: upper-bound scan exhausted at rank " +
        std::to_string(rank));
  }
  return upper;
}

BoundsVector compute_bounds(const PublicWeights& pw, std::uint64_t tuple_cap) {
  validate_instance(pw);
  if (!loads_realizable(pw)) {
    throw InvalidInputError(
        "public data admits no valid assignment: load sequences are not "
        "realizable by any simple bipartite graph");
  }
  const TupleList omega = enumerate_tuples(pw, tuple_cap);
  const ChainTable chains = chain_lengths(omega);
  BoundsVector out;
  out.L = lower_bounds(pw, omega, chains);
  out.U = upper_bounds(pw, omega, chains);
  return out;
}

}  // namespace peerrel
