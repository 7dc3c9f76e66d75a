// Copyright 2026 The blockrepair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference line differ for tests: exhaustive edit-cost recursion with
// memoization, taking keep > delete > insert among optimal choices.

#ifndef BLOCKREPAIR_TESTS_DIFF_ORACLE_HPP_
#define BLOCKREPAIR_TESTS_DIFF_ORACLE_HPP_

#include <map>
#include <random>
#include <string>
#include <vector>

namespace blockrepair::testing {

struct OracleHunk {
  int buggy_start;
  std::vector<std::string> deleted;
  std::vector<std::string> inserted;
  bool operator==(const OracleHunk&) const = default;
};

class OracleDiff {
 public:
  OracleDiff(const std::vector<std::string>& a, const std::vector<std::string>& b)
      : a_(a), b_(b) {}

  std::vector<OracleHunk> Hunks() {
    std::vector<OracleHunk> out;
    std::size_t i = 0, j = 0;
    OracleHunk* open = nullptr;
    while (i < a_.size() || j < b_.size()) {
      const int c = Cost(i, j);
      if (i < a_.size() && j < b_.size() && a_[i] == b_[j] &&
          Cost(i + 1, j + 1) == c) {
        open = nullptr;
        ++i;
        ++j;
        continue;
      }
      if (!open) {
        out.push_back({static_cast<int>(i) + 1, {}, {}});
        open = &out.back();
      }
      if (i < a_.size() && 1 + Cost(i + 1, j) == c) {
        open->deleted.push_back(a_[i++]);
      } else {
        open->inserted.push_back(b_[j++]);
      }
    }
    return out;
  }

  int Cost(std::size_t i, std::size_t j) {
    if (i == a_.size()) return static_cast<int>(b_.size() - j);
    if (j == b_.size()) return static_cast<int>(a_.size() - i);
    auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int best = 1 + std::min(Cost(i + 1, j), Cost(i, j + 1));
    if (a_[i] == b_[j]) best = std::min(best, Cost(i + 1, j + 1));
    memo_[key] = best;
    return best;
  }

 private:
  const std::vector<std::string>& a_;
  const std::vector<std::string>& b_;
  std::map<std::pair<std::size_t, std::size_t>, int> memo_;
};

// Random file over a small line alphabet, and a randomly edited copy.
inline std::vector<std::string> RandomLines(std::mt19937_64& rng, int max_lines) {
  static const char* kLines[] = {"a = 1;", "b = 2;", "c();", "", "}", "x++;"};
  std::uniform_int_distribution<int> len(0, max_lines);
  std::uniform_int_distribution<int> pick(0, 5);
  std::vector<std::string> out(static_cast<std::size_t>(len(rng)));
  for (auto& l : out) l = kLines[pick(rng)];
  return out;
}

inline std::vector<std::string> RandomEdit(std::mt19937_64& rng,
                                           const std::vector<std::string>& in,
                                           int max_lines) {
  static const char* kNew[] = {"y = 3;", "a = 1;", "d(x);", ""};
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> word(0, 3);
  std::vector<std::string> out;
  for (const auto& l : in) {
    const int r = pick(rng);
    if (r == 0) continue;                       // delete
    if (r == 1) out.push_back(kNew[word(rng)]); // insert before
    out.push_back(r == 2 ? kNew[word(rng)] : l);  // replace or keep
  }
  if (pick(rng) < 2) out.push_back(kNew[word(rng)]);
  if (static_cast<int>(out.size()) > max_lines) out.resize(static_cast<std::size_t>(max_lines));
  return out;
}

}  // namespace blockrepair::testing

#endif  // BLOCKREPAIR_TESTS_DIFF_ORACLE_HPP_
