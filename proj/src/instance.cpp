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

#include "peerrel/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "peerrel/error.hpp"

namespace peerrel {

namespace {

constexpr int kMaxRejectionAttempts = 100000;

void check_positive_loads(const std::vector<int>& loads, const char* what) {
  for (int l : loads) {
    if (l <= 0) {
      throw InvalidInputError(std::string(what) + " loads must be positive");
    }
  }
}

}  // namespace

Assignment sample_assignment_with_loads(const std::vector<int>& reviewer_loads,
                                        const std::vector<int>& paper_loads,
                                        const WeightSampler& weight_sampler,
                                        std::uint64_t seed) {
  const int n = static_cast<int>(reviewer_loads.size());
  const int m = static_cast<int>(paper_loads.size());
  if (n == 0 || m == 0) throw InvalidInputError("empty instance");
  check_positive_loads(reviewer_loads, "reviewer");
  check_positive_loads(paper_loads, "paper");
  const long long total_r =
      std::accumulate(reviewer_loads.begin(), reviewer_loads.end(), 0LL);
  const long long total_p =
      std::accumulate(paper_loads.begin(), paper_loads.end(), 0LL);
  if (total_r != total_p) {
    throw InvalidInputError("load identity violated: sum of reviewer loads " +
                            std::to_string(total_r) +
                            " != sum of paper loads " + std::to_string(total_p));
  }
  for (int l : reviewer_loads) {
    if (l > m) throw InvalidInputError("reviewer load exceeds paper count");
  }
  for (int k : paper_loads) {
    if (k > n) throw InvalidInputError("paper load exceeds reviewer count");
  }

  // Degree stubs: paper stubs in fixed order, reviewer stubs shuffled;
  // the i-th pair becomes an edge. A draw with any duplicate
  // (paper, reviewer) pair is rejected wholesale.
  std::vector<int> paper_stubs;
  paper_stubs.reserve(static_cast<std::size_t>(total_p));
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < paper_loads[i]; ++c) paper_stubs.push_back(i);
  }
  std::vector<int> reviewer_stubs;
  reviewer_stubs.reserve(static_cast<std::size_t>(total_r));
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < reviewer_loads[j]; ++c) reviewer_stubs.push_back(j);
  }

  RandomStream rng(seed);
  for (int attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    rng.shuffle(reviewer_stubs);
    bool simple = true;
    std::unordered_set<long long> seen;
    seen.reserve(paper_stubs.size() * 2);
    for (std::size_t t = 0; t < paper_stubs.size() && simple; ++t) {
      const long long key =
          static_cast<long long>(paper_stubs[t]) * (n + 1LL) + reviewer_stubs[t];
      simple = seen.insert(key).second;
    }
    if (!simple) continue;

    Assignment a;
    a.n = n;
    a.m = m;
    a.edges.reserve(paper_stubs.size());
    for (std::size_t t = 0; t < paper_stubs.size(); ++t) {
      a.edges.push_back({paper_stubs[t], reviewer_stubs[t], 0.0});
    }
    // Canonical edge order, then weights: sampling order is a pure
    // function of the structure, so results reproduce across platforms.
    std::sort(a.edges.begin(), a.edges.end(),
              [](const AssignmentEdge& x, const AssignmentEdge& y) {
                return x.paper != y.paper ? x.paper < y.paper
                                          : x.reviewer < y.reviewer;
              });
    int slot = 0;
    int current_paper = -1;
    for (AssignmentEdge& e : a.edges) {
      slot = (e.paper == current_paper) ? slot + 1 : 0;
      current_paper = e.paper;
      e.weight = weight_sampler({e.paper, e.reviewer, slot}, rng);
      if (!std::isfinite(e.weight)) {
        throw InvalidInputError("weight sampler produced a non-finite value");
      }
    }
    return a;
  }
  throw InvalidInputError(
      "assignment sampling failed: no simple graph found within attempt cap");
}

Assignment sample_assignment(int n, int m, int ell, int k,
                             const WeightSampler& weight_sampler,
                             std::uint64_t seed) {
  if (n <= 0 || m <= 0 || ell <= 0 || k <= 0) {
    throw InvalidInputError("instance dimensions must be positive");
  }
  if (static_cast<long long>(n) * ell != static_cast<long long>(m) * k) {
    throw InvalidInputError("infeasible loads: n*ell != m*k");
  }
  return sample_assignment_with_loads(std::vector<int>(n, ell),
                                      std::vector<int>(m, k), weight_sampler,
                                      seed);
}

PublicWeights public_view(const Assignment& assignment) {
  PublicWeights pw;
  pw.n = assignment.n;
  pw.rows.assign(assignment.m, {});
  pw.reviewer_loads.assign(assignment.n, 0);
  for (const AssignmentEdge& e : assignment.edges) {
    if (e.paper < 0 || e.paper >= assignment.m || e.reviewer < 0 ||
        e.reviewer >= assignment.n) {
      throw InvalidInputError("edge index out of range");
    }
    pw.rows[e.paper].push_back(e.weight);
    pw.reviewer_loads[e.reviewer] += 1;
  }
  for (auto& row : pw.rows) std::sort(row.begin(), row.end());
  return pw;
}

void validate_instance(const PublicWeights& pw) {
  if (pw.n <= 0) throw InvalidInputError("reviewer count must be positive");
  if (static_cast<int>(pw.reviewer_loads.size()) != pw.n) {
    throw InvalidInputError("reviewer load list does not match n");
  }
  long long total_r = 0;
  for (int l : pw.reviewer_loads) {
    if (l < 1 || l > static_cast<int>(pw.rows.size())) {
      throw InvalidInputError("impossible reviewer load " + std::to_string(l));
    }
    total_r += l;
  }
  long long total_p = 0;
  for (const auto& row : pw.rows) {
    const int k = static_cast<int>(row.size());
    if (k < 1 || k > pw.n) {
      throw InvalidInputError("impossible paper load " + std::to_string(k));
    }
    for (double w : row) {
      if (!std::isfinite(w)) throw InvalidInputError("non-finite weight");
    }
    total_p += k;
  }
  if (total_r != total_p) {
    throw InvalidInputError("load identity violated: " + std::to_string(total_r) +
                            " reviewer slots vs " + std::to_string(total_p) +
                            " paper slots");
  }
}

bool uniform_loads(const PublicWeights& pw) {
  for (int l : pw.reviewer_loads) {
    if (l != pw.reviewer_loads.front()) return false;
  }
  return !pw.reviewer_loads.empty();
}

// --- serialization -------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInputError("malformed number '" + s + "' on line " +
                            std::to_string(line_no));
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

void write_public_csv(const PublicWeights& pw, std::ostream& out) {
  out << "# n=" << pw.n << " loads=";
  for (std::size_t j = 0; j < pw.reviewer_loads.size(); ++j) {
    if (j) out << ',';
    out << pw.reviewer_loads[j];
  }
  out << '\n';
  for (const auto& row : pw.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
}

PublicWeights read_public_csv(std::istream& in) {
  PublicWeights pw;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line[0] == '#') {
      std::size_t npos = line.find("n=");
      std::size_t lpos = line.find("loads=");
      if (npos == std::string::npos || lpos == std::string::npos) {
        throw InvalidInputError("malformed header on line " +
                                std::to_string(line_no));
      }
      pw.n = static_cast<int>(
          parse_double(line.substr(npos + 2, line.find(' ', npos) - npos - 2),
                       line_no));
      for (const std::string& tok : split_csv(line.substr(lpos + 6))) {
        pw.reviewer_loads.push_back(
            static_cast<int>(parse_double(tok, line_no)));
      }
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const std::string& tok : split_csv(line)) {
      row.push_back(parse_double(tok, line_no));
    }
    if (row.empty()) {
      throw InvalidInputError("empty row on line " + std::to_string(line_no));
    }
    pw.rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw InvalidInputError("public weights file lacks the '# n=... loads=...' header");
  }
  validate_instance(pw);
  return pw;
}

PublicWeights read_public_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  return read_public_csv(in);
}

void write_assignment_csv(const Assignment& a, std::ostream& out) {
  out << "paper,reviewer,weight\n";
  for (const AssignmentEdge& e : a.edges) {
    out << e.paper << ',' << e.reviewer << ',' << format_double(e.weight)
        << '\n';
  }
}

Assignment read_assignment_csv(std::istream& in) {
  Assignment a;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("paper", 0) == 0) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw InvalidInputError("expected paper,reviewer,weight on line " +
                              std::to_string(line_no));
    }
    AssignmentEdge e;
    e.paper = static_cast<int>(parse_double(fields[0], line_no));
    e.reviewer = static_cast<int>(parse_double(fields[1], line_no));
    e.weight = parse_double(fields[2], line_no);
    a.edges.push_back(e);
    a.m = std::max(a.m, e.paper + 1);
    a.n = std::max(a.n, e.reviewer + 1);
  }
  return a;
}

}  // namespace peerrel
