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

#include "blockrepair/similarity.hpp"

#include <algorithm>

#include "blockrepair/model.hpp"

namespace blockrepair {

double MultisetDice(std::vector<std::string> a, std::vector<std::string> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(a.size() + b.size());
}

std::vector<std::string> Ngrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw InvariantError("ngram_n must be >= 1");
  std::vector<std::string> out;
  if (tokens.empty()) return out;
  const auto width = static_cast<std::size_t>(n);
  const std::size_t count = tokens.size() < width ? 1 : tokens.size() - width + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string gram;
    for (std::size_t k = i; k < std::min(i + width, tokens.size()); ++k) {
      if (k > i) gram += '\x1f';
      gram += tokens[k];
    }
    out.push_back(std::move(gram));
  }
  return out;
}

double NgramSimilarity(std::span<const std::string> a,
                       std::span<const std::string> b, int n) {
  return MultisetDice(Ngrams(a, n), Ngrams(b, n));
}

}  // namespace blockrepair
