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

// Test-based validation of combined patches. Every patch is applied to a
// private copy of the subject project, built, tested, and compared with the
// developer fix:
//
//   build fails              -> Filtered
//   build ok, tests fail     -> CO
//   tests ok, not reference  -> PL
//   matches the reference    -> CR
//
// A deadline hit in any stage yields Timeout; a patch that cannot be
// spliced in, or a command that cannot be spawned, yields ApplyError.

#ifndef BLOCKREPAIR_VALIDATOR_HPP_
#define BLOCKREPAIR_VALIDATOR_HPP_

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockrepair/model.hpp"
#include "blockrepair/optimizer.hpp"
#include "blockrepair/process.hpp"
#include "blockrepair/syntax.hpp"

namespace blockrepair {

// Project configuration, read from <root>/project.json:
//
//   {"module_id": "Calc",
//    "build": ["${TOOL}", "lang", "check", "."],
//    "test":  ["${TOOL}", "lang", "test", "."],
//    "reference_fix": ["    x = 1;\n", "..."],        // one text per chunk
//    "accepted_fixes": [["...", "..."]]}              // vetted alternatives
//
// Commands run inside the patched copy; ${PROJECT} expands to its path and
// further variables are supplied by the caller.
struct SubjectProject {
  std::filesystem::path root;
  std::string module_id;
  std::vector<std::string> build_command;
  std::vector<std::string> test_command;
  std::optional<std::vector<Lines>> reference_fix;
  std::vector<std::vector<Lines>> accepted_fixes;
};

SubjectProject LoadSubjectProject(const std::filesystem::path& root);

// Throws InvariantError unless both commands are set and every fix covers
// `chunk_count` chunks.
void CheckSubjectProject(const SubjectProject& project, int chunk_count);

class ApplyError : public Error {
 public:
  using Error::Error;
};

// Replaces each chunk of `chunks` with the fragment of the same chunk_id,
// later chunks of a file first. Throws ApplyError when a file's current
// lines no longer match a chunk's deleted_lines.
std::map<std::string, SourceText> SpliceFiles(
    const std::filesystem::path& root, std::span<const BuggyChunk> chunks,
    const std::vector<Lines>& replacements);

// Copies root to dest and writes the patched files there. The original
// project is not touched.
void ApplyPatch(const std::filesystem::path& root,
                std::span<const BuggyChunk> chunks, const CombinedPatch& patch,
                const std::filesystem::path& dest);

struct ValidationContext {
  const SubjectProject* project = nullptr;
  std::span<const BuggyChunk> chunks;
  const SubjectLanguage* lang = nullptr;
  std::map<std::string, std::string> vars;  // extra ${NAME} substitutions
  std::filesystem::path log_dir;
};

// Builds and tests an already patched copy and applies the CR oracle.
Verdict ValidatePatch(const std::filesystem::path& patched,
                      const ValidationContext& ctx,
                      const std::string& log_stem, Clock::time_point deadline,
                      const std::atomic<bool>* cancel = nullptr);

struct PatchVerdict {
  std::int64_t emit_index = 0;
  double aggregate_score = 0.0;
  std::vector<int> ranks;  // model_rank of each fragment, chunk order
  Verdict verdict;
};

struct RunOptions {
  int jobs = 1;
  std::filesystem::path work_dir;  // per-patch copies live here
  bool keep_work = false;
};

struct BugRun {
  Tier best_verdict = Tier::kFiltered;
  std::int64_t patches_examined = 0;
  std::int64_t correct_emit_index = 0;
  std::vector<PatchVerdict> verdicts;  // by emit_index
};

// Validates combinations in emit order until the first CR, the end of the
// stream, or the deadline. With jobs > 1 patches are validated
// concurrently; the outcome is identical to a serial run because results
// are merged by emit_index and nothing after the first CR is kept.
BugRun RunBug(Combiner& stream, const ValidationContext& ctx,
              const RunOptions& options, Clock::time_point deadline);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_VALIDATOR_HPP_
