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

// blockrepair command-line front end.
//
//   blockrepair extract  --buggy F1 --fixed F2
//   blockrepair repair   --project DIR --faults SPEC --config CFG [...]
//   blockrepair campaign --manifest FILE --config CFG [...]
//   blockrepair stats    RESULTS.csv
//   blockrepair lang check|test DIR
//
// Exit status: 0 success, 1 negative outcome (repair below PL, failing
// check or tests), 2 usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "blockrepair/campaign.hpp"
#include "blockrepair/diffchunk.hpp"
#include "blockrepair/interp.hpp"
#include "blockrepair/minilang.hpp"

namespace fs = std::filesystem;
using namespace blockrepair;

namespace {

constexpr int kUsage = 2;

struct RunFlags {
  std::string config;
  std::string results;
  std::string candidates;
  std::string generator;
  std::string hints;
  bool no_patch_optimization = false;
  bool no_buggy_contexts = false;
  bool keep_work = false;
  std::optional<std::int64_t> mc;
  std::optional<int> beam;
  std::optional<double> timeout;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

void AddRunFlags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "Campaign configuration (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--results", f.results,
                  "Results directory (default: $BLOCKREPAIR_RESULTS or ./results)");
  cmd->add_flag("--no-patch-optimization", f.no_patch_optimization,
                "Rank by model order only");
  cmd->add_flag("--no-buggy-contexts", f.no_buggy_contexts,
                "Build blocks without context lines");
  cmd->add_option("--mc", f.mc, "Cap on combined patches")->check(CLI::PositiveNumber);
  cmd->add_option("--beam", f.beam, "Generator beam size")->check(CLI::PositiveNumber);
  cmd->add_option("--timeout", f.timeout, "Seconds of wall time per module")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.seed, "Generator seed");
  cmd->add_option("--jobs", f.jobs, "Concurrent validations")->check(CLI::PositiveNumber);
  cmd->add_option("--generator", f.generator,
                  "External generator, run by /bin/sh -c with ${REQUEST}, ${OUTPUT}, "
                  "${BEAM} and ${BLOCK_ID} substituted");
  cmd->add_flag("--keep-work", f.keep_work, "Keep per-patch project copies");
}

CampaignConfig MergeConfig(const RunFlags& f) {
  CampaignConfig cfg = ReadConfig(f.config);
  if (f.no_patch_optimization) cfg.no_patch_optimization = true;
  if (f.no_buggy_contexts) cfg.no_buggy_contexts = true;
  if (f.mc) cfg.mc = *f.mc;
  if (f.beam) cfg.beam_size = *f.beam;
  if (f.timeout) cfg.timeout_seconds = *f.timeout;
  if (f.seed) cfg.seed = *f.seed;
  if (f.jobs) cfg.jobs = *f.jobs;
  return ValidateConfig(cfg);
}

fs::path ResultsDir(const RunFlags& f) {
  if (!f.results.empty()) return f.results;
  if (const char* env = std::getenv("BLOCKREPAIR_RESULTS"); env && *env) return env;
  return "results";
}

CampaignOptions Options(const RunFlags& f, const char* argv0) {
  CampaignOptions opt;
  opt.results_dir = ResultsDir(f);
  std::error_code ec;
  fs::path self = fs::read_symlink("/proc/self/exe", ec);
  opt.vars["TOOL"] = ec ? fs::absolute(argv0).string() : self.string();
  if (!f.generator.empty()) opt.generator.command = {"/bin/sh", "-c", f.generator};
  opt.keep_work = f.keep_work;
  return opt;
}

int Extract(const std::string& buggy, const std::string& fixed, int merge) {
  SourceText a, b;
  try {
    a = ReadSource(buggy, fs::path(buggy).filename().string());
    b = ReadSource(fixed, fs::path(fixed).filename().string());
  } catch (const Error& e) {
    std::cerr << "extract: " << e.what() << "\n";
    return kUsage;
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const BuggyChunk& c : ExtractChunks(a, b, DefaultLanguage(), merge)) {
    out.push_back({{"chunk_id", c.chunk_id},
                   {"file", c.file},
                   {"start_line", c.start_line},
                   {"end_line", c.end_line},
                   {"deleted_lines", c.deleted_lines},
                   {"effective_locations", c.effective_locations}});
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int Stats(const std::string& csv) {
  std::vector<BugRecord> records;
  try {
    records = ReadResultsCsv(csv);
  } catch (const Error& e) {
    std::cerr << "stats: " << csv << ": " << e.what() << "\n";
    return kUsage;
  }
  RepairReport report;
  report.bugs = records;
  Summarize(report);
  std::cout << "CR bugs by chunk count\n";
  for (const auto& [k, v] : report.histograms.by_chunks) {
    std::cout << "  " << k << ": " << v << "\n";
  }
  std::cout << "CR bugs by location count\n";
  for (std::size_t i = 0; i < kLocationBuckets.size(); ++i) {
    std::cout << "  " << kLocationBuckets[i] << ": " << report.histograms.by_locations[i]
              << "\n";
  }
  std::cout << "CR bugs by type\n";
  for (const auto& [type, counts] : report.by_type) {
    std::cout << "  " << BugTypeName(type) << ": " << counts.second << "\n";
  }
  std::cout << "  Total: " << report.bug_totals.cr << "\n";
  std::map<std::string, std::vector<BugType>> modules;
  for (const BugRecord& r : records) {
    if (r.best_verdict == Tier::kCorrect) modules[r.module_id].push_back(r.bug_type);
  }
  std::cout << "CR bugs by module\n";
  for (const auto& [module, types] : modules) {
    std::cout << "  " << module << ": " << types.size() << " (hardest "
              << BugTypeName(AggregateModuleType(types)) << ")\n";
  }
  return 0;
}

int Lang(bool run_tests, const std::string& dir, bool verbose) {
  std::vector<std::string> errors;
  const auto program = interp::LoadProgram(dir, errors);
  for (const auto& d : interp::CheckProgram(program)) errors.push_back(d);
  for (const auto& e : errors) std::cerr << e << "\n";
  if (!errors.empty()) return 1;
  if (!run_tests) return 0;
  int failed = 0;
  const auto outcomes = interp::RunTests(program);
  for (const auto& o : outcomes) {
    if (!o.passed) {
      ++failed;
      std::cout << "FAIL " << o.name << ": " << o.message << "\n";
    } else if (verbose) {
      std::cout << "ok   " << o.name << "\n";
    }
  }
  std::cout << outcomes.size() - static_cast<std::size_t>(failed) << "/" << outcomes.size()
            << " tests passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-chunk program repair with buggy blocks and patch optimization"};
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract", "Print the buggy chunks of a file pair as JSON");
  std::string buggy, fixed;
  int merge = 0;
  extract->add_option("--buggy", buggy, "Buggy version")->required();
  extract->add_option("--fixed", fixed, "Fixed version")->required();
  extract->add_option("--merge-distance", merge, "Unchanged lines allowed inside a chunk")
      ->check(CLI::NonNegativeNumber);

  auto* repair = app.add_subcommand("repair", "Repair one bug");
  RunFlags repair_flags;
  std::string project, faults;
  repair->add_option("--project", project, "Subject project directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  repair->add_option("--faults", faults, "Fault spec (JSON)")->required()->check(CLI::ExistingFile);
  AddRunFlags(repair, repair_flags);
  auto* cand = repair->add_option("--candidates", repair_flags.candidates,
                                  "Pre-generated candidates (JSONL)")
                   ->check(CLI::ExistingFile);
  repair->add_option("--hints", repair_flags.hints, "Mock generator hints (JSON)")
      ->check(CLI::ExistingFile);
  cand->excludes(repair->get_option("--generator"));

  auto* campaign = app.add_subcommand("campaign", "Repair every bug of a manifest");
  RunFlags campaign_flags;
  std::string manifest;
  campaign->add_option("--manifest", manifest, "Corpus manifest (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  AddRunFlags(campaign, campaign_flags);

  auto* stats = app.add_subcommand("stats", "Range statistics of a per-bug results CSV");
  std::string csv;
  stats->add_option("csv", csv, "bug_id,chunk_count,location_count,verdict")->required();

  auto* lang = app.add_subcommand("lang", "Bundled subject language tools");
  lang->require_subcommand(1);
  std::string lang_dir;
  bool verbose = false;
  auto* check = lang->add_subcommand("check", "Parse and statically check a program");
  check->add_option("dir", lang_dir, "Program directory")->required()->check(CLI::ExistingDirectory);
  auto* test = lang->add_subcommand("test", "Run the test classes of a program");
  test->add_option("dir", lang_dir, "Program directory")->required()->check(CLI::ExistingDirectory);
  test->add_flag("-v,--verbose", verbose, "List passing tests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*extract) return Extract(buggy, fixed, merge);
    if (*stats) return Stats(csv);
    if (*check) return Lang(false, lang_dir, verbose);
    if (*test) return Lang(true, lang_dir, verbose);
    if (*repair) {
      const CampaignConfig cfg = MergeConfig(repair_flags);
      BugSpec bug;
      bug.bug_id = ReadFaultSpec(faults).bug_id;
      if (bug.bug_id.empty()) bug.bug_id = fs::path(project).filename().string();
      bug.project = project;
      bug.faults = faults;
      if (!repair_flags.hints.empty()) bug.hints = repair_flags.hints;
      if (!repair_flags.candidates.empty()) bug.candidates = repair_flags.candidates;
      const RepairReport report =
          RunCampaign(cfg, std::span(&bug, 1), Options(repair_flags, argv[0]), DefaultLanguage());
      std::cout << SummaryTable(report);
      if (report.bugs.empty()) return 1;
      return FunnelLevel(report.bugs[0].best_verdict) >= 2 ? 0 : 1;
    }
    if (*campaign) {
      const CampaignConfig cfg = MergeConfig(campaign_flags);
      const auto bugs = ReadManifest(manifest);
      const RepairReport report =
          RunCampaign(cfg, bugs, Options(campaign_flags, argv[0]), DefaultLanguage());
      std::cout << SummaryTable(report);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
