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

#include "blockrepair/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "blockrepair/blocker.hpp"
#include "blockrepair/diffchunk.hpp"
#include "blockrepair/genbridge.hpp"
#include "blockrepair/optimizer.hpp"
#include "blockrepair/validator.hpp"

namespace blockrepair {
namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string ModuleOf(const std::string& bug_id) {
  const auto dash = bug_id.rfind('-');
  return dash == std::string::npos ? bug_id : bug_id.substr(0, dash);
}

int ParseCount(const std::string& field, const std::string& name, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size() || v < 1) {
    throw Error("line " + std::to_string(line) + ": " + name +
                " must be a positive integer, got '" + field + "'");
  }
  return v;
}

std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Everything after generation: split, filter, rank, combine, validate.
void OptimizeAndValidate(const CampaignConfig& cfg,
                         const CampaignOptions& options, const SubjectLanguage& lang,
                         const SubjectProject& project,
                         const std::vector<BuggyChunk>& chunks,
                         const GeneratorResponse& response, const fs::path& out,
                         Clock::time_point deadline, BugRecord& rec) {
  CollectedFragments collected = CollectFragments(response, chunks);
  std::vector<ChunkPool> pools;
  const RankOptions rank{cfg.p, cfg.ngram_n, cfg.no_patch_optimization};
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const SourceText file = ReadSource(project.root / chunks[i].file, chunks[i].file);
    auto kept = FilterCandidates(collected.pools[i].fragments, chunks[i], file, lang);
    pools.push_back({chunks[i].chunk_id, RankCandidates(std::move(kept), chunks[i], file,
                                                        rank, lang)});
  }
  Combiner combiner(std::move(pools), cfg.mc);

  ValidationContext ctx{&project, chunks, &lang, options.vars, out / "logs"};
  const BugRun run = RunBug(combiner, ctx,
                            {cfg.jobs, out / "work", options.keep_work}, deadline);
  if (!options.keep_work) {
    std::error_code ec;
    fs::remove_all(out / "work", ec);
  }

  std::string combined, verdicts;
  for (const PatchVerdict& pv : run.verdicts) {
    ordered_json c = {{"emit_index", pv.emit_index},
                      {"aggregate_score", pv.aggregate_score},
                      {"ranks", pv.ranks}};
    combined += c.dump() + "\n";
    ordered_json v = {{"emit_index", pv.emit_index},
                      {"verdict", TierName(pv.verdict.tier)},
                      {"detail", pv.verdict.detail}};
    verdicts += v.dump() + "\n";
    const int level = FunnelLevel(pv.verdict.tier);
    rec.compiled_patches += level >= 1;
    rec.plausible_patches += level >= 2;
    rec.correct_patches += level >= 3;
  }
  WriteText(out / "combined.jsonl", combined);
  WriteText(out / "verdicts.jsonl", verdicts);
  rec.best_verdict = run.best_verdict;
  rec.patches_examined = run.patches_examined;
  rec.correct_emit_index = run.correct_emit_index;
}

}  // namespace

BugType ClassifyBug(int chunk_count, int location_count) {
  if (chunk_count < 1) throw InvariantError("chunk_count must be >= 1");
  if (location_count < 1) throw InvariantError("location_count must be >= 1");
  if (chunk_count >= 2) return BugType::kType3;
  return location_count == 1 ? BugType::kType1 : BugType::kType2;
}

BugType AggregateModuleType(std::span<const BugType> types) {
  if (types.empty()) throw InvariantError("no bug types to aggregate");
  return *std::max_element(types.begin(), types.end());
}

int LocationBucket(int location_count) {
  if (location_count < 1) throw InvariantError("location_count must be >= 1");
  if (location_count <= 4) return location_count - 1;
  return location_count <= 9 ? 4 : 5;
}

RangeHistograms RangeStats(std::span<const BugRecord> records) {
  RangeHistograms h;
  for (const BugRecord& r : records) {
    if (r.best_verdict != Tier::kCorrect) continue;
    ++h.by_chunks[r.chunk_count];
    ++h.by_locations[static_cast<std::size_t>(LocationBucket(r.location_count))];
  }
  return h;
}

std::vector<BugRecord> ParseResultsCsv(std::istream& in) {
  std::vector<BugRecord> out;
  std::string line;
  int line_no = 0;
  bool header = false;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(Trim(f));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (!header) {
      if (fields != std::vector<std::string>{"bug_id", "chunk_count", "location_count",
                                             "verdict"}) {
        throw Error("line " + std::to_string(line_no) +
                    ": expected header bug_id,chunk_count,location_count,verdict");
      }
      header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw Error("line " + std::to_string(line_no) + ": expected 4 fields, found " +
                  std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw Error("line " + std::to_string(line_no) + ": empty bug_id");
    if (!seen.insert(fields[0]).second) {
      throw Error("line " + std::to_string(line_no) + ": duplicate bug_id " + fields[0]);
    }
    BugRecord r;
    r.bug_id = fields[0];
    r.module_id = ModuleOf(r.bug_id);
    r.chunk_count = ParseCount(fields[1], "chunk_count", line_no);
    r.location_count = ParseCount(fields[2], "location_count", line_no);
    try {
      r.best_verdict = TierFromName(fields[3]);
    } catch (const InvariantError& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
    r.bug_type = ClassifyBug(r.chunk_count, r.location_count);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BugRecord> ReadResultsCsv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return ParseResultsCsv(in);
}

CampaignConfig ConfigFromJson(const std::string& json_text, CampaignConfig cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "alpha") cfg.alpha = value.get<double>();
      else if (key == "beta") cfg.beta = value.get<double>();
      else if (key == "p") cfg.p = value.get<double>();
      else if (key == "ngram_n") cfg.ngram_n = value.get<int>();
      else if (key == "mc") cfg.mc = value.get<std::int64_t>();
      else if (key == "beam_size") cfg.beam_size = value.get<int>();
      else if (key == "token_budget") cfg.token_budget = value.get<int>();
      else if (key == "context_width") cfg.context_width = value.get<int>();
      else if (key == "timeout_seconds") cfg.timeout_seconds = value.get<double>();
      else if (key == "no_patch_optimization") cfg.no_patch_optimization = value.get<bool>();
      else if (key == "no_buggy_contexts") cfg.no_buggy_contexts = value.get<bool>();
      else if (key == "excluded_module_ids")
        cfg.excluded_module_ids = value.get<std::vector<std::string>>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "jobs") cfg.jobs = value.get<int>();
      else throw Error("config: unknown key \"" + key + "\"");
    } catch (const json::exception& e) {
      throw Error("config: bad value for \"" + key + "\": " + e.what());
    }
  }
  return cfg;
}

CampaignConfig ReadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ConfigFromJson(ss.str());
}

std::string ConfigToJson(const CampaignConfig& cfg) {
  ordered_json j = {{"alpha", cfg.alpha},
                    {"beta", cfg.beta},
                    {"p", cfg.p},
                    {"ngram_n", cfg.ngram_n},
                    {"mc", cfg.mc},
                    {"beam_size", cfg.beam_size},
                    {"token_budget", cfg.token_budget},
                    {"context_width", cfg.context_width},
                    {"timeout_seconds", cfg.timeout_seconds},
                    {"no_patch_optimization", cfg.no_patch_optimization},
                    {"no_buggy_contexts", cfg.no_buggy_contexts},
                    {"excluded_module_ids", cfg.excluded_module_ids},
                    {"seed", cfg.seed},
                    {"jobs", cfg.jobs}};
  return j.dump(2);
}

std::vector<BugSpec> ReadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  std::vector<BugSpec> bugs;
  for (const json& b : j.at("bugs")) {
    BugSpec spec;
    spec.bug_id = b.at("bug_id").get<std::string>();
    spec.project = base / b.at("project").get<std::string>();
    spec.faults = base / b.at("faults").get<std::string>();
    if (b.contains("hints")) spec.hints = base / b["hints"].get<std::string>();
    if (b.contains("candidates")) spec.candidates = base / b["candidates"].get<std::string>();
    bugs.push_back(std::move(spec));
  }
  return bugs;
}

BugRecord RepairBug(const BugSpec& bug, const CampaignConfig& cfg,
                    const CampaignOptions& options, const SubjectLanguage& lang,
                    Clock::time_point deadline) {
  BugRecord rec;
  rec.bug_id = bug.bug_id;
  const fs::path out = options.results_dir / bug.bug_id;
  try {
    fs::create_directories(out / "logs");
    const SubjectProject project = LoadSubjectProject(bug.project);
    rec.module_id = project.module_id;
    const std::vector<BuggyChunk> chunks =
        LoadFaultSpec(ReadFaultSpec(bug.faults), bug.project, lang);
    if (chunks.empty()) throw Error("fault spec lists no chunks");
    CheckSubjectProject(project, static_cast<int>(chunks.size()));
    rec.chunk_count = static_cast<int>(chunks.size());
    for (const BuggyChunk& c : chunks) rec.location_count += c.effective_locations;
    rec.bug_type = ClassifyBug(rec.chunk_count, std::max(1, rec.location_count));

    const BuggyBlock block = BuildBlock(
        bug.bug_id, chunks, bug.project,
        {cfg.context_width, cfg.token_budget, cfg.no_buggy_contexts}, lang);
    WriteText(out / "block.txt", block.Serialize());
    const IngredientIndex ingredients = BuildIngredientIndex(bug.project, lang);
    const GeneratorRequest request{bug.bug_id, block.Serialize(),
                                   static_cast<int>(chunks.size()), cfg.beam_size,
                                   &ingredients};

    GeneratorResponse response;
    if (!options.generator.command.empty()) {
      response = RunExternalGenerator(options.generator.command, request,
                                      out / "generator", deadline);
    } else if (bug.candidates) {
      response = ReadCandidates(*bug.candidates);
      if (static_cast<int>(response.outputs.size()) > cfg.beam_size) {
        response.outputs.resize(static_cast<std::size_t>(cfg.beam_size));
      }
    } else {
      const MockHints hints = bug.hints ? ReadMockHints(*bug.hints) : MockHints{};
      response = GenerateMock(request, block, hints, cfg.seed, lang);
    }
    WriteCandidates(out / "candidates.jsonl", response);

    OptimizeAndValidate(cfg, options, lang, project, chunks, response, out,
                        deadline, rec);
  } catch (const NoCandidatesError& e) {
    rec.best_verdict = Tier::kFiltered;
    rec.error = e.what();
  } catch (const Error& e) {
    rec.error = e.what();
  } catch (const fs::filesystem_error& e) {
    rec.error = e.what();
  }
  if (rec.patches_examined == 0 && rec.best_verdict == Tier::kFiltered &&
      Clock::now() >= deadline) {
    rec.best_verdict = Tier::kTimeout;
  }
  return rec;
}

void Summarize(RepairReport& report) {
  report.bug_totals = {};
  report.patch_totals = {};
  report.by_type.clear();
  for (BugType t : {BugType::kType1, BugType::kType2, BugType::kType3}) {
    report.by_type[t] = {0, 0};
  }
  for (const BugRecord& r : report.bugs) {
    const int level = FunnelLevel(r.best_verdict);
    report.bug_totals.co += level >= 1;
    report.bug_totals.pl += level >= 2;
    report.bug_totals.cr += level >= 3;
    report.patch_totals.co += r.compiled_patches;
    report.patch_totals.pl += r.plausible_patches;
    report.patch_totals.cr += r.correct_patches;
    if (r.chunk_count >= 1) {
      auto& [bugs, cr] = report.by_type[r.bug_type];
      ++bugs;
      cr += level >= 3;
    }
  }
  report.histograms = RangeStats(report.bugs);
}

RepairReport RunCampaign(const CampaignConfig& cfg, std::span<const BugSpec> bugs,
                         const CampaignOptions& options, const SubjectLanguage& lang) {
  ValidateConfig(cfg);
  fs::create_directories(options.results_dir);
  RepairReport report;
  report.config = cfg;
  const std::set<std::string> excluded(cfg.excluded_module_ids.begin(),
                                       cfg.excluded_module_ids.end());
  const auto budget = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(cfg.timeout_seconds));
  std::map<std::string, Clock::time_point> module_deadline;
  for (const BugSpec& bug : bugs) {
    std::string module;
    try {
      module = LoadSubjectProject(bug.project).module_id;
    } catch (const Error&) {
      // RepairBug records the error.
    }
    if (excluded.contains(bug.bug_id) || (!module.empty() && excluded.contains(module))) {
      report.excluded.push_back(bug.bug_id);
      continue;
    }
    const auto [it, fresh] = module_deadline.emplace(module, Clock::time_point{});
    if (fresh) it->second = Clock::now() + budget;
    report.bugs.push_back(RepairBug(bug, cfg, options, lang, it->second));
  }
  Summarize(report);
  WriteText(options.results_dir / "report.json", ReportToJson(report));
  WriteText(options.results_dir / "summary.txt", SummaryTable(report));
  return report;
}

std::string ReportToJson(const RepairReport& report) {
  ordered_json j;
  j["config"] = ordered_json::parse(ConfigToJson(report.config));
  ordered_json bugs = ordered_json::array();
  for (const BugRecord& r : report.bugs) {
    bugs.push_back({{"bug_id", r.bug_id},
                    {"module_id", r.module_id},
                    {"chunk_count", r.chunk_count},
                    {"location_count", r.location_count},
                    {"bug_type", BugTypeName(r.bug_type)},
                    {"best_verdict", TierName(r.best_verdict)},
                    {"patches_examined", r.patches_examined},
                    {"correct_emit_index", r.correct_emit_index},
                    {"compiled_patches", r.compiled_patches},
                    {"plausible_patches", r.plausible_patches},
                    {"correct_patches", r.correct_patches},
                    {"error", r.error}});
  }
  j["bugs"] = bugs;
  j["excluded"] = report.excluded;
  j["totals"] = {{"bugs", report.bugs.size()},
                 {"CO", report.bug_totals.co},
                 {"PL", report.bug_totals.pl},
                 {"CR", report.bug_totals.cr}};
  j["combined_patches"] = {{"CO", report.patch_totals.co},
                           {"PL", report.patch_totals.pl},
                           {"CR", report.patch_totals.cr}};
  ordered_json types;
  for (const auto& [type, counts] : report.by_type) {
    types[std::string(BugTypeName(type))] = {{"bugs", counts.first}, {"CR", counts.second}};
  }
  j["by_type"] = types;
  ordered_json chunks = ordered_json::object();
  for (const auto& [k, v] : report.histograms.by_chunks) chunks[std::to_string(k)] = v;
  ordered_json locations;
  for (std::size_t i = 0; i < kLocationBuckets.size(); ++i) {
    locations[kLocationBuckets[i]] = report.histograms.by_locations[i];
  }
  j["histograms"] = {{"chunks", chunks}, {"locations", locations}};
  return j.dump(2) + "\n";
}

std::string SummaryTable(const RepairReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-10s %-6s %6s %5s %-10s %9s %8s\n", "bug",
                "module", "type", "chunks", "locs", "verdict", "examined", "first_cr");
  out += buf;
  for (const BugRecord& r : report.bugs) {
    std::snprintf(buf, sizeof buf, "%-16s %-10s %-6s %6d %5d %-10s %9lld %8lld\n",
                  r.bug_id.c_str(), r.module_id.c_str(),
                  std::string(BugTypeName(r.bug_type)).c_str(), r.chunk_count,
                  r.location_count, std::string(TierName(r.best_verdict)).c_str(),
                  static_cast<long long>(r.patches_examined),
                  static_cast<long long>(r.correct_emit_index));
    out += buf;
    if (!r.error.empty()) out += "  error: " + r.error + "\n";
  }
  std::snprintf(buf, sizeof buf, "\nbugs %zu  CO %lld  PL %lld  CR %lld\n",
                report.bugs.size(), static_cast<long long>(report.bug_totals.co),
                static_cast<long long>(report.bug_totals.pl),
                static_cast<long long>(report.bug_totals.cr));
  out += buf;
  std::snprintf(buf, sizeof buf, "combined patches  CO %lld  PL %lld  CR %lld\n",
                static_cast<long long>(report.patch_totals.co),
                static_cast<long long>(report.patch_totals.pl),
                static_cast<long long>(report.patch_totals.cr));
  out += buf;
  for (const auto& [type, counts] : report.by_type) {
    std::snprintf(buf, sizeof buf, "%s  CR %lld / %lld\n",
                  std::string(BugTypeName(type)).c_str(),
                  static_cast<long long>(counts.second),
                  static_cast<long long>(counts.first));
    out += buf;
  }
  out += "CR by chunks:";
  for (const auto& [k, v] : report.histograms.by_chunks) {
    out += " " + std::to_string(k) + ":" + std::to_string(v);
  }
  out += "\nCR by locations:";
  for (std::size_t i = 0; i < kLocationBuckets.size(); ++i) {
    out += std::string(" ") + kLocationBuckets[i] + ":" +
           std::to_string(report.histograms.by_locations[i]);
  }
  out += "\n";
  if (!report.excluded.empty()) {
    out += "excluded:";
    for (const auto& id : report.excluded) out += " " + id;
    out += "\n";
  }
  return out;
}

}  // namespace blockrepair
