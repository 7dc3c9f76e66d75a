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

// Tree edit scripts between two GenericTrees.
//
// Matching runs in three phases: greedy top-down matching of isomorphic
// subtrees (largest height first), bottom-up matching of inner nodes that
// share enough matched descendants, and a recovery pass that aligns the
// remaining children of matched pairs. The script is then generated against
// a working copy of the source tree by a breadth-first walk of the target
// (insert / update / move, children aligned with an LCS) followed by a
// post-order sweep of deletions.
//
// Addressing: both trees are hung under a virtual root whose id is
// EditScript::kVirtualRoot. Source nodes keep their GenericTree ids;
// inserted nodes receive fresh ids source.size(), source.size() + 1, ... in
// script order. Positions are child indices in the working tree, taken
// after the moved node has been detached.

#ifndef BLOCKREPAIR_TREEDIFF_HPP_
#define BLOCKREPAIR_TREEDIFF_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "blockrepair/syntax.hpp"

namespace blockrepair {

enum class ActionKind { kInsert, kDelete, kUpdate, kMove };

std::string_view ActionKindName(ActionKind kind);

struct EditAction {
  ActionKind kind = ActionKind::kInsert;
  std::string node_kind;
  std::string value;      // insert/delete/move: node value; update: old value
  std::string new_value;  // update only
  int node = -1;
  int parent = -1;        // insert/move destination
  int position = -1;      // insert/move destination index
};

struct EditScript {
  static constexpr int kVirtualRoot = -1;
  std::vector<EditAction> actions;

  std::size_t size() const { return actions.size(); }
  bool empty() const { return actions.empty(); }
};

EditScript ComputeEditScript(const GenericTree& source,
                             const GenericTree& target);

// (alpha * kind_dice + beta * label_dice) / (alpha + beta), where kind_dice
// compares the multisets of action kinds and label_dice the multisets of
// (action kind, node kind) pairs. Two empty scripts are identical (1.0).
// Throws InvariantError when alpha + beta is not positive.
double ActionSimilarity(const EditScript& a, const EditScript& b, double alpha,
                        double beta);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_TREEDIFF_HPP_
