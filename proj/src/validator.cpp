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

#include "blockrepair/validator.hpp"

#include <fstream>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "blockrepair/diffchunk.hpp"

namespace blockrepair {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<Lines> FixFromJson(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error("project.json: " + what + " must be an array");
  std::vector<Lines> out;
  for (const json& t : j) {
    if (!t.is_string()) throw Error("project.json: " + what + " entries must be strings");
    out.push_back(SourceText::FromString(t.get<std::string>()).lines);
  }
  return out;
}

std::vector<std::string> Argv(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error("project.json: \"" + key + "\" must be an array of strings");
  }
  return j[key].get<std::vector<std::string>>();
}

bool SameFiles(const std::map<std::string, SourceText>& expected,
               const fs::path& patched, const SubjectLanguage& lang) {
  for (const auto& [file, text] : expected) {
    SourceText actual;
    try {
      actual = ReadSource(patched / file, file);
    } catch (const Error&) {
      return false;
    }
    if (!TreesEqualNormalized(actual, text, lang)) return false;
  }
  return true;
}

}  // namespace

SubjectProject LoadSubjectProject(const fs::path& root) {
  const fs::path path = root / "project.json";
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  SubjectProject p;
  p.root = root;
  p.module_id = j.value("module_id", "");
  p.build_command = Argv(j, "build");
  p.test_command = Argv(j, "test");
  if (j.contains("reference_fix")) p.reference_fix = FixFromJson(j["reference_fix"], "reference_fix");
  for (const json& alt : j.value("accepted_fixes", json::array())) {
    p.accepted_fixes.push_back(FixFromJson(alt, "accepted_fixes"));
  }
  return p;
}

void CheckSubjectProject(const SubjectProject& project, int chunk_count) {
  if (project.build_command.empty()) throw InvariantError("build command is empty");
  if (project.test_command.empty()) throw InvariantError("test command is empty");
  auto check = [&](const std::vector<Lines>& fix, const char* what) {
    if (static_cast<int>(fix.size()) != chunk_count) {
      throw InvariantError(std::string(what) + " has " + std::to_string(fix.size()) +
                           " chunk texts for " + std::to_string(chunk_count) + " chunks");
    }
  };
  if (project.reference_fix) check(*project.reference_fix, "reference_fix");
  for (const auto& alt : project.accepted_fixes) check(alt, "accepted fix");
}

std::map<std::string, SourceText> SpliceFiles(const fs::path& root,
                                              std::span<const BuggyChunk> chunks,
                                              const std::vector<Lines>& replacements) {
  if (replacements.size() != chunks.size()) {
    throw ApplyError("patch has " + std::to_string(replacements.size()) +
                     " fragments for " + std::to_string(chunks.size()) + " chunks");
  }
  std::map<std::string, SourceText> files;
  for (const BuggyChunk& c : chunks) {
    if (!files.contains(c.file)) files.emplace(c.file, ReadSource(root / c.file, c.file));
  }
  // Later chunks first so earlier line numbers stay valid.
  for (std::size_t i = chunks.size(); i-- > 0;) {
    const BuggyChunk& c = chunks[i];
    SourceText& text = files.at(c.file);
    const int size = static_cast<int>(text.line_count());
    if (c.end_line > size ||
        !std::equal(c.deleted_lines.begin(), c.deleted_lines.end(),
                    text.lines.begin() + (c.start_line - 1))) {
      throw ApplyError("chunk " + std::to_string(c.chunk_id) + ": " + c.file +
                       " no longer matches lines " + std::to_string(c.start_line) + "-" +
                       std::to_string(c.end_line));
    }
    text.lines = SpliceChunk(text.lines, c, replacements[i]);
  }
  return files;
}

void ApplyPatch(const fs::path& root, std::span<const BuggyChunk> chunks,
                const CombinedPatch& patch, const fs::path& dest) {
  std::vector<Lines> replacements;
  for (const BuggyChunk& c : chunks) {
    const CandidateFragment* found = nullptr;
    for (const CandidateFragment& f : patch.fragments) {
      if (f.chunk_id == c.chunk_id) found = &f;
    }
    if (found == nullptr) {
      throw ApplyError("patch has no fragment for chunk " + std::to_string(c.chunk_id));
    }
    replacements.push_back(found->replacement_lines);
  }
  auto files = SpliceFiles(root, chunks, replacements);
  fs::remove_all(dest);
  fs::create_directories(dest.parent_path());
  fs::copy(root, dest, fs::copy_options::recursive);
  for (const auto& [file, text] : files) WriteSource(dest / file, text);
}

Verdict ValidatePatch(const fs::path& patched, const ValidationContext& ctx, const std::string& log_stem,
                      Clock::time_point deadline, const std::atomic<bool>* cancel) {
  auto vars = ctx.vars;
  vars["PROJECT"] = fs::absolute(patched).string();
  auto stage = [&](const std::vector<std::string>& argv, const char* name,
                   Tier fail_tier) -> std::optional<Verdict> {
    const fs::path log = ctx.log_dir / (log_stem + "." + name + ".log");
    const CommandResult r =
        RunCommand(SubstituteArgs(argv, vars), patched, log, deadline, cancel);
    switch (r.status) {
      case CommandResult::Status::kSpawnFailed:
        return Verdict{Tier::kApplyError, std::string(name) + ": " + r.diagnostic};
      case CommandResult::Status::kTimedOut:
      case CommandResult::Status::kCancelled:
        return Verdict{Tier::kTimeout, std::string(name) + " interrupted"};
      case CommandResult::Status::kExited:
        break;
    }
    if (r.exit_code != 0) {
      return Verdict{fail_tier, std::string(name) + " exited with status " +
                                    std::to_string(r.exit_code)};
    }
    return std::nullopt;
  };
  if (auto v = stage(ctx.project->build_command, "build", Tier::kFiltered)) return *v;
  if (auto v = stage(ctx.project->test_command, "test", Tier::kCompiledOnly)) return *v;

  std::vector<const std::vector<Lines>*> oracles;
  if (ctx.project->reference_fix) oracles.push_back(&*ctx.project->reference_fix);
  for (const auto& alt : ctx.project->accepted_fixes) oracles.push_back(&alt);
  for (std::size_t i = 0; i < oracles.size(); ++i) {
    const auto expected = SpliceFiles(ctx.project->root, ctx.chunks, *oracles[i]);
    if (SameFiles(expected, patched, *ctx.lang)) {
      return {Tier::kCorrect, i == 0 || !ctx.project->reference_fix
                                  ? "matches the reference fix"
                                  : "matches accepted fix " + std::to_string(i)};
    }
  }
  return {Tier::kPlausible, "tests pass; differs from the reference fix"};
}

BugRun RunBug(Combiner& stream, const ValidationContext& ctx,
              const RunOptions& options, Clock::time_point deadline) {
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
  std::mutex mu;
  std::int64_t first_cr = kNone;
  bool exhausted = false;
  bool deadline_hit = false;
  std::map<std::int64_t, PatchVerdict> results;
  std::map<std::int64_t, std::atomic<bool>*> active;

  auto worker = [&] {
    std::atomic<bool> cancel{false};
    for (;;) {
      std::optional<CombinedPatch> patch;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (exhausted || first_cr != kNone) return;
        if (Clock::now() >= deadline) {
          deadline_hit = true;
          return;
        }
        patch = stream.Next();
        if (!patch) {
          exhausted = true;
          return;
        }
        cancel.store(false);
        active[patch->emit_index] = &cancel;
      }
      PatchVerdict pv;
      pv.emit_index = patch->emit_index;
      pv.aggregate_score = patch->aggregate_score;
      for (const auto& f : patch->fragments) pv.ranks.push_back(f.model_rank);
      const std::string stem = std::to_string(patch->emit_index);
      const fs::path dest = options.work_dir / stem;
      try {
        ApplyPatch(ctx.project->root, ctx.chunks, *patch, dest);
        pv.verdict = ValidatePatch(dest, ctx, stem, deadline, &cancel);
      } catch (const Error& e) {
        pv.verdict = {Tier::kApplyError, e.what()};
      } catch (const fs::filesystem_error& e) {
        pv.verdict = {Tier::kApplyError, e.what()};
      }
      if (!options.keep_work) {
        std::error_code ec;
        fs::remove_all(dest, ec);
      }
      std::lock_guard<std::mutex> lock(mu);
      active.erase(pv.emit_index);
      if (pv.emit_index > first_cr) continue;  // late result, discarded
      if (pv.verdict.tier == Tier::kTimeout && Clock::now() >= deadline) {
        deadline_hit = true;
      }
      if (pv.verdict.tier == Tier::kCorrect) {
        first_cr = pv.emit_index;
        for (auto& [index, flag] : active) {
          if (index > first_cr) flag->store(true);
        }
      }
      results.emplace(pv.emit_index, std::move(pv));
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  BugRun run;
  for (auto& [index, pv] : results) {
    if (index > first_cr) break;
    run.best_verdict = BestOf(run.best_verdict, pv.verdict.tier);
    if (pv.verdict.tier != Tier::kTimeout) ++run.patches_examined;
    run.verdicts.push_back(std::move(pv));
  }
  if (first_cr != kNone) {
    run.correct_emit_index = first_cr;
  } else if (deadline_hit) {
    run.best_verdict = BestOf(run.best_verdict, Tier::kTimeout);
  }
  return run;
}

}  // namespace blockrepair
