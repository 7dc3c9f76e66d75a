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

// Buggy blocks: every chunk of a bug, each wrapped in its surrounding
// context lines, bound into a single delimited sequence for the generator.
//
// Wire format. A block is a sequence of '\n'-terminated lines. Marker lines
// consist of exactly one marker string:
//
//   <#PRE#>     starts a segment's leading context
//   <#BODY#>    starts the chunk body (the anchor of an omission chunk)
//   <#POST#>    starts the trailing context
//   <#CHUNK#>   separates consecutive segments
//
// A model input block repeats PRE/BODY/POST once per chunk, with CHUNK lines
// between segments. A label (and a generator output) is the list of chunk
// bodies joined by CHUNK lines; an output segment may also echo the full
// PRE/BODY/POST form, in which case only its BODY part is kept. Marker
// strings may not occur anywhere inside subject source lines.

#ifndef BLOCKREPAIR_BLOCKER_HPP_
#define BLOCKREPAIR_BLOCKER_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blockrepair/model.hpp"
#include "blockrepair/syntax.hpp"

namespace blockrepair {

inline constexpr std::string_view kPreMarker = "<#PRE#>";
inline constexpr std::string_view kBodyMarker = "<#BODY#>";
inline constexpr std::string_view kPostMarker = "<#POST#>";
inline constexpr std::string_view kChunkSeparator = "<#CHUNK#>";

using Lines = std::vector<std::string>;

struct BlockSegment {
  Lines pre_context;
  Lines body;
  Lines post_context;
};

struct BuggyBlock {
  std::string block_id;
  std::vector<BlockSegment> segments;
  int token_count = 0;

  std::string Serialize() const;
};

class UnbuildableBlockError : public Error {
 public:
  UnbuildableBlockError(const std::string& what, int chunk_id)
      : Error(what), chunk_id_(chunk_id) {}
  int chunk_id() const { return chunk_id_; }

 private:
  int chunk_id_;
};

class MalformedOutputError : public Error {
 public:
  using Error::Error;
};

// True if the line contains one of the reserved marker strings.
bool ContainsMarker(std::string_view line);

// Tokens of a block: subject tokens of every line plus one per marker line.
int CountBlockTokens(const BuggyBlock& block, const SubjectLanguage& lang);

struct BlockOptions {
  int context_width = 3;
  int token_budget = 512;
  bool no_buggy_contexts = false;
};

// Throws UnbuildableBlockError when the bodies alone exceed the budget, and
// Error when a source line contains a marker.
BuggyBlock BuildBlock(std::string block_id, std::span<const BuggyChunk> chunks,
                      const std::filesystem::path& project,
                      const BlockOptions& options, const SubjectLanguage& lang);

std::string SerializeLabel(std::span<const Lines> bodies);

// Inverse of SerializeLabel. Throws MalformedOutputError when the separator
// count is not expected_chunks - 1 or a marker is misplaced.
std::vector<Lines> SplitBlockOutput(std::string_view text, int expected_chunks);

// Declared methods and fields and the calls between indexed methods, found
// by walking Class / Method / Field / Call / MethodCall nodes of every
// source file of the project.
IngredientIndex BuildIngredientIndex(const std::filesystem::path& project,
                                     const SubjectLanguage& lang);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_BLOCKER_HPP_
