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

#ifndef BLOCKREPAIR_SIMILARITY_HPP_
#define BLOCKREPAIR_SIMILARITY_HPP_

#include <span>
#include <string>
#include <vector>

namespace blockrepair {

// 2 |A ∩ B| / (|A| + |B|) over multisets; 1.0 when both are empty.
double MultisetDice(std::vector<std::string> a, std::vector<std::string> b);

// Length-n token windows. A non-empty sequence shorter than n yields itself
// as its single gram; an empty sequence yields none.
std::vector<std::string> Ngrams(std::span<const std::string> tokens, int n);

// Dice coefficient over the n-gram multisets of two token sequences.
double NgramSimilarity(std::span<const std::string> a,
                       std::span<const std::string> b, int n);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_SIMILARITY_HPP_
