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

// Buggy-chunk extraction from (buggy, fixed) file pairs, fault-spec loading
// for repair runs under known buggy locations, and location counting.

#ifndef BLOCKREPAIR_DIFFCHUNK_HPP_
#define BLOCKREPAIR_DIFFCHUNK_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "blockrepair/model.hpp"
#include "blockrepair/syntax.hpp"

namespace blockrepair {

// One change group of a line diff. Buggy lines [buggy_start, buggy_start +
// deleted.size()) are replaced by `inserted`; fixed_start is where the
// inserted lines begin in the fixed file. Both starts are 1-based.
struct LineHunk {
  int buggy_start = 1;
  int fixed_start = 1;
  std::vector<std::string> deleted;
  std::vector<std::string> inserted;
};

// Minimal line diff grouped into hunks. Among all minimal diffs the one
// chosen keeps the earliest possible matches: walking both files from the
// top, a common line is kept whenever keeping it stays optimal, otherwise a
// buggy line is deleted whenever that stays optimal, otherwise a fixed line
// is inserted. Change runs separated by more than merge_distance unchanged
// lines are distinct hunks.
std::vector<LineHunk> DiffLines(const std::vector<std::string>& buggy,
                                const std::vector<std::string>& fixed,
                                int merge_distance = 0);

// Chunks of the buggy side, numbered from 0 in file order.
std::vector<BuggyChunk> ExtractChunks(const SourceText& buggy,
                                      const SourceText& fixed,
                                      const SubjectLanguage& lang,
                                      int merge_distance = 0);

// Applies hunks produced by DiffLines(buggy, ...) to buggy.
std::vector<std::string> ReplayHunks(const std::vector<std::string>& buggy,
                                     const std::vector<LineHunk>& hunks);

// Replaces the chunk's lines of `file` with `replacement`; an omission
// chunk inserts before its anchor line. Throws Error if the range does not
// fit the file.
std::vector<std::string> SpliceChunk(const std::vector<std::string>& file,
                                     const BuggyChunk& chunk,
                                     const std::vector<std::string>& replacement);

// Deleted lines that are not blank, comment-only or null statements; an
// omission chunk counts 1.
int CountEffectiveLocations(const BuggyChunk& chunk,
                            const SubjectLanguage& lang);

struct FaultEntry {
  std::string file;
  int start_line = 1;
  int end_line = 0;
};

struct FaultSpec {
  std::string bug_id;
  std::vector<FaultEntry> entries;
};

FaultSpec ReadFaultSpec(const std::filesystem::path& path);
FaultSpec ParseFaultSpec(const std::string& json_text);
std::string FaultSpecToJson(const FaultSpec& spec);

// Reads the referenced lines from the project. Throws Error naming the
// entry on a missing file or an out-of-range line.
std::vector<BuggyChunk> LoadFaultSpec(const FaultSpec& spec,
                                      const std::filesystem::path& project,
                                      const SubjectLanguage& lang);

SourceText ReadSource(const std::filesystem::path& path,
                      const std::string& origin);
void WriteSource(const std::filesystem::path& path, const SourceText& text);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_DIFFCHUNK_HPP_
