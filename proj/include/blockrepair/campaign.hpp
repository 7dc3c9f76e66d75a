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

// Multi-bug repair campaigns: bug-type classification, range statistics,
// the per-bug pipeline (fault spec -> block -> generation -> filter/rank ->
// combination -> validation) and the campaign report.
//
// Results layout:
//
//   <results>/report.json
//   <results>/summary.txt
//   <results>/<bug_id>/block.txt          serialized buggy block
//   <results>/<bug_id>/candidates.jsonl   generator outputs
//   <results>/<bug_id>/combined.jsonl     validated combinations
//   <results>/<bug_id>/verdicts.jsonl     one verdict per combination
//   <results>/<bug_id>/logs/              build and test output

#ifndef BLOCKREPAIR_CAMPAIGN_HPP_
#define BLOCKREPAIR_CAMPAIGN_HPP_

#include <array>
#include <chrono>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockrepair/model.hpp"
#include "blockrepair/syntax.hpp"

namespace blockrepair {

// Type1: one chunk, one location; Type2: one chunk, several locations;
// Type3: several chunks. Throws InvariantError on a zero count.
BugType ClassifyBug(int chunk_count, int location_count);

// Hardest type present (Type3 > Type2 > Type1). Throws on an empty list.
BugType AggregateModuleType(std::span<const BugType> types);

inline constexpr std::array<const char*, 6> kLocationBuckets = {
    "1", "2", "3", "4", "5-9", ">=10"};
// Index into kLocationBuckets. Throws on a count below 1.
int LocationBucket(int location_count);

struct RangeHistograms {
  std::map<int, std::int64_t> by_chunks;
  std::array<std::int64_t, 6> by_locations{};
};

// Histograms over the CR records only.
RangeHistograms RangeStats(std::span<const BugRecord> records);

// Published per-bug results: CSV with header
//   bug_id,chunk_count,location_count,verdict
// The module is the bug_id up to its last '-'. Throws Error naming the
// offending line.
std::vector<BugRecord> ParseResultsCsv(std::istream& in);
std::vector<BugRecord> ReadResultsCsv(const std::filesystem::path& path);

// Campaign configuration file: a JSON object whose keys are the
// CampaignConfig field names. Missing keys keep their defaults; unknown
// keys are rejected.
CampaignConfig ConfigFromJson(const std::string& json_text,
                              CampaignConfig base = {});
CampaignConfig ReadConfig(const std::filesystem::path& path);
std::string ConfigToJson(const CampaignConfig& cfg);

struct BugSpec {
  std::string bug_id;
  std::filesystem::path project;     // contains project.json
  std::filesystem::path faults;      // fault-spec JSON
  std::optional<std::filesystem::path> hints;       // mock generator plants
  std::optional<std::filesystem::path> candidates;  // pre-generated outputs
};

// {"bugs": [{"bug_id": "...", "project": "dir", "faults": "f.json",
//            "hints": "h.json"}]}; paths are relative to the manifest.
std::vector<BugSpec> ReadManifest(const std::filesystem::path& path);

struct GeneratorChoice {
  // Empty command: the mock generator, or BugSpec::candidates when set.
  std::vector<std::string> command;
};

struct CampaignOptions {
  std::filesystem::path results_dir;
  std::map<std::string, std::string> vars;  // ${NAME} values for commands
  GeneratorChoice generator;
  bool keep_work = false;
};

struct FunnelCounts {
  std::int64_t co = 0;  // cumulative: CO or better
  std::int64_t pl = 0;
  std::int64_t cr = 0;
};

struct RepairReport {
  CampaignConfig config;
  std::vector<BugRecord> bugs;
  std::vector<std::string> excluded;
  FunnelCounts bug_totals;    // bugs by best verdict
  FunnelCounts patch_totals;  // validated combined patches
  std::map<BugType, std::pair<std::int64_t, std::int64_t>> by_type;  // bugs, CR
  RangeHistograms histograms;
};

// Tallies totals and histograms from report.bugs.
void Summarize(RepairReport& report);

// Runs one bug end to end. Failures are recorded in BugRecord::error.
BugRecord RepairBug(const BugSpec& bug, const CampaignConfig& cfg,
                    const CampaignOptions& options, const SubjectLanguage& lang,
                    std::chrono::steady_clock::time_point deadline);

// Validates cfg, runs every bug whose module is not excluded, and writes
// report.json and summary.txt into options.results_dir. Each module gets
// cfg.timeout_seconds of wall time shared by its bugs.
RepairReport RunCampaign(const CampaignConfig& cfg, std::span<const BugSpec> bugs,
                         const CampaignOptions& options,
                         const SubjectLanguage& lang);

// Deterministic JSON (no timestamps or paths).
std::string ReportToJson(const RepairReport& report);
std::string SummaryTable(const RepairReport& report);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_CAMPAIGN_HPP_
