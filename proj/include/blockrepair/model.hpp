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

// Shared vocabulary of the repair pipeline: source texts, buggy chunks,
// candidate fragments, combined patches, verdicts and campaign settings.
// Every value here is immutable once built and safe to share between
// worker threads.

#ifndef BLOCKREPAIR_MODEL_HPP_
#define BLOCKREPAIR_MODEL_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blockrepair {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invariant violation detected while constructing a domain value.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A text file as an ordered list of lines. Lines are 1-based in every API
// that takes a line number. The newline convention is '\n'; a missing final
// newline is remembered so the text round-trips byte-exactly.
struct SourceText {
  std::string origin;
  std::vector<std::string> lines;
  bool trailing_newline = true;

  static SourceText FromString(std::string_view text, std::string origin = {});
  std::string ToString() const;

  std::size_t line_count() const { return lines.size(); }
  // 1-based accessor; throws InvariantError when out of range.
  const std::string& line(int number) const;
};

// A maximal group of buggy lines in one file. An omission chunk (a fault
// fixed purely by insertion) has end_line == start_line - 1 and an empty
// deleted_lines; start_line is then the anchor the fix is inserted before.
struct BuggyChunk {
  int chunk_id = 0;
  std::string file;
  int start_line = 1;
  int end_line = 0;
  std::vector<std::string> deleted_lines;
  int effective_locations = 0;

  bool is_omission() const { return end_line == start_line - 1; }
  int length() const { return end_line - start_line + 1; }
};

// Throws InvariantError unless each chunk is well formed and the list is
// sorted by (file, start_line) with no overlapping ranges.
void CheckChunks(std::span<const BuggyChunk> chunks);

struct MethodEntry {
  std::string name;
  std::string signature;
  std::string file;
  bool operator==(const MethodEntry&) const = default;
};

struct FieldEntry {
  std::string name;
  std::string type_name;
  std::string file;
  bool operator==(const FieldEntry&) const = default;
};

struct CallRelation {
  std::string caller;
  std::string callee;
  bool operator==(const CallRelation&) const = default;
};

// Project-level repair material: declared methods and fields plus the
// caller -> callee relation between indexed methods.
struct IngredientIndex {
  std::vector<MethodEntry> methods;
  std::vector<FieldEntry> fields;
  std::vector<CallRelation> relations;
  // Files that failed to parse; their entries are missing from the index.
  std::vector<std::string> parse_failures;

  bool empty() const {
    return methods.empty() && fields.empty() && relations.empty();
  }
};

// One generated replacement for one chunk.
struct CandidateFragment {
  int chunk_id = 0;
  std::vector<std::string> replacement_lines;
  int model_rank = 1;         // 1-based beam rank
  double model_score = 0.0;   // generator log-probability-like value
  double opt_score = 0.0;     // [0, 1], assigned by the optimizer
};

// One fragment per chunk, ordered by chunk_id.
struct CombinedPatch {
  std::vector<CandidateFragment> fragments;
  double aggregate_score = 0.0;
  std::int64_t emit_index = 0;  // 1-based
};

enum class Tier {
  kFiltered,
  kApplyError,
  kTimeout,
  kCompiledOnly,
  kPlausible,
  kCorrect,
};

std::string_view TierName(Tier tier);
Tier TierFromName(std::string_view name);

// Funnel level: 0 for Filtered/ApplyError/Timeout, 1 CO, 2 PL, 3 CR.
int FunnelLevel(Tier tier);

struct Verdict {
  Tier tier = Tier::kFiltered;
  std::string detail;
};

// Total order used when picking the best verdict of a bug. Funnel level
// decides first; inside the bottom level Timeout > ApplyError > Filtered so
// the most informative failure is reported.
bool VerdictLess(Tier a, Tier b);
Tier BestOf(Tier a, Tier b);

enum class BugType { kType1, kType2, kType3 };

std::string_view BugTypeName(BugType type);

struct BugRecord {
  std::string bug_id;
  std::string module_id;
  int chunk_count = 0;
  int location_count = 0;
  BugType bug_type = BugType::kType1;
  Tier best_verdict = Tier::kFiltered;
  std::int64_t patches_examined = 0;
  // Emit index of the first correct patch, 0 when none was found.
  std::int64_t correct_emit_index = 0;
  // Per-tier counts of the combined patches validated for this bug.
  std::int64_t compiled_patches = 0;
  std::int64_t plausible_patches = 0;
  std::int64_t correct_patches = 0;
  std::string error;
};

struct CampaignConfig {
  double alpha = 0.5;
  double beta = 0.5;
  double p = 0.5;
  int ngram_n = 3;
  std::int64_t mc = 10000;
  int beam_size = 500;
  int token_budget = 512;
  int context_width = 3;
  double timeout_seconds = 19800.0;  // 5.5 h per module
  bool no_patch_optimization = false;
  bool no_buggy_contexts = false;
  std::vector<std::string> excluded_module_ids;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Returns cfg unchanged when every field is in range, otherwise throws
// InvariantError naming the offending field.
const CampaignConfig& ValidateConfig(const CampaignConfig& cfg);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_MODEL_HPP_
