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

#include <gtest/gtest.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include "blockrepair/diffchunk.hpp"
#include "blockrepair/minilang.hpp"

namespace blockrepair {
namespace {

namespace fs = std::filesystem;

const char* const kSource =
    "class A {\n"
    "  int f(int x) {\n"
    "    x = x + 1;\n"
    "    return x;\n"
    "  }\n"
    "  int g(int y) {\n"
    "    return y;\n"
    "  }\n"
    "  int k = 0;\n"
    "}\n";

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Put(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

BuggyChunk Chunk(int id, int start, int end, std::vector<std::string> deleted) {
  BuggyChunk c;
  c.chunk_id = id;
  c.file = "A.mj";
  c.start_line = start;
  c.end_line = end;
  c.deleted_lines = std::move(deleted);
  c.effective_locations =
      c.deleted_lines.empty() ? 1 : static_cast<int>(c.deleted_lines.size());
  return c;
}

CandidateFragment Frag(int chunk, std::vector<std::string> lines, int rank, double opt) {
  CandidateFragment f;
  f.chunk_id = chunk;
  f.replacement_lines = std::move(lines);
  f.model_rank = rank;
  f.opt_score = opt;
  return f;
}

class ValidatorTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("validator_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "project");
    fs::create_directories(dir_ / "logs");
    Put(dir_ / "project" / "A.mj", kSource);
    project_.root = dir_ / "project";
    project_.module_id = "A";
    // A fragment mentioning "bad" does not build; tests look for x + 2.
    project_.build_command = {"sh", "-c", "! grep -q bad A.mj"};
    project_.test_command = {"sh", "-c", "grep -Eq 'x ?\\+ ?2' \"$0\"",
                             "${PROJECT}/A.mj"};
    project_.reference_fix = std::vector<Lines>{{"    x = x + 2;"}};
    chunks_ = {Chunk(0, 3, 3, {"    x = x + 1;"})};
  }
  void TearDown() override { fs::remove_all(dir_); }

  ValidationContext Context() {
    return {&project_, chunks_, &DefaultLanguage(), {}, dir_ / "logs"};
  }

  Verdict Validate(std::vector<std::string> replacement,
                   Clock::time_point deadline = Clock::now() + std::chrono::seconds(30)) {
    CombinedPatch patch;
    patch.fragments.push_back(Frag(0, std::move(replacement), 1, 1.0));
    const fs::path dest = dir_ / "work" / std::to_string(++count_);
    ApplyPatch(project_.root, chunks_, patch, dest);
    return ValidatePatch(dest, Context(), std::to_string(count_), deadline);
  }

  ChunkPool TierPool() {
    return {0,
            {Frag(0, {"    x = bad;"}, 1, 0.9), Frag(0, {"    x = x + 3;"}, 2, 0.8),
             Frag(0, {"    x = (x + 2) * 1;"}, 3, 0.7), Frag(0, {"    x = x + 2;"}, 4, 0.6),
             Frag(0, {"    x = x+2;"}, 5, 0.5)}};
  }

  fs::path dir_;
  SubjectProject project_;
  std::vector<BuggyChunk> chunks_;
  int count_ = 0;
};

TEST_F(ValidatorTest, SplicesLaterChunksFirst) {
  const std::vector<BuggyChunk> chunks = {
      Chunk(0, 3, 3, {"    x = x + 1;"}), Chunk(1, 7, 6, {}),
      Chunk(2, 9, 9, {"  int k = 0;"})};
  const auto files = SpliceFiles(project_.root, chunks,
                                 {{"    x = x + 2;", "    x = x * 3;"},
                                  {"    y = y + 1;"},
                                  {"  int k = 5;"}});
  ASSERT_EQ(files.size(), 1u);
  EXPECT_EQ(files.at("A.mj").ToString(),
            "class A {\n"
            "  int f(int x) {\n"
            "    x = x + 2;\n"
            "    x = x * 3;\n"
            "    return x;\n"
            "  }\n"
            "  int g(int y) {\n"
            "    y = y + 1;\n"
            "    return y;\n"
            "  }\n"
            "  int k = 5;\n"
            "}\n");
}

TEST_F(ValidatorTest, ApplyLeavesOriginalAndReverses) {
  const std::vector<BuggyChunk> chunks = {Chunk(0, 3, 3, {"    x = x + 1;"}),
                                          Chunk(1, 9, 9, {"  int k = 0;"})};
  CombinedPatch patch;
  patch.fragments = {Frag(0, {}, 1, 1.0), Frag(1, {"  int k = 7;", "  int j = 1;"}, 1, 1.0)};
  const fs::path dest = dir_ / "patched";
  ApplyPatch(project_.root, chunks, patch, dest);
  EXPECT_EQ(Slurp(project_.root / "A.mj"), kSource);
  const std::string patched = Slurp(dest / "A.mj");
  EXPECT_NE(patched, kSource);

  // Un-apply with the inverse chunks, written in patched coordinates.
  const std::vector<BuggyChunk> inverse = {
      Chunk(0, 3, 2, {}), Chunk(1, 8, 9, {"  int k = 7;", "  int j = 1;"})};
  const auto back = ExtractChunks(SourceText::FromString(patched, "A.mj"),
                                  SourceText::FromString(kSource, "A.mj"),
                                  DefaultLanguage());
  ASSERT_EQ(back.size(), inverse.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].start_line, inverse[i].start_line);
    EXPECT_EQ(back[i].end_line, inverse[i].end_line);
    EXPECT_EQ(back[i].deleted_lines, inverse[i].deleted_lines);
  }
  const auto restored =
      SpliceFiles(dest, inverse, {{"    x = x + 1;"}, {"  int k = 0;"}});
  EXPECT_EQ(restored.at("A.mj").ToString(), kSource);
}

TEST_F(ValidatorTest, DriftIsApplyError) {
  std::string drifted = kSource;
  drifted.replace(drifted.find("x + 1"), 5, "x - 1");
  Put(project_.root / "A.mj", drifted);
  CombinedPatch patch;
  patch.fragments = {Frag(0, {"    x = x + 2;"}, 1, 1.0)};
  EXPECT_THROW(ApplyPatch(project_.root, chunks_, patch, dir_ / "p"), ApplyError);
  patch.fragments = {Frag(3, {"x"}, 1, 1.0)};
  Put(project_.root / "A.mj", kSource);
  EXPECT_THROW(ApplyPatch(project_.root, chunks_, patch, dir_ / "p"), ApplyError);
}

TEST_F(ValidatorTest, VerdictTiers) {
  EXPECT_EQ(Validate({"    x = bad;"}).tier, Tier::kFiltered);
  EXPECT_EQ(Validate({"    x = x + 3;"}).tier, Tier::kCompiledOnly);
  EXPECT_EQ(Validate({"    x = (x + 2) * 1;"}).tier, Tier::kPlausible);
  EXPECT_EQ(Validate({"    x = x + 2;"}).tier, Tier::kCorrect);
  // Layout and comments do not matter to the structural comparison.
  EXPECT_EQ(Validate({"    x = x+2;  // fixed"}).tier, Tier::kCorrect);
  EXPECT_TRUE(fs::exists(dir_ / "logs" / "1.build.log"));
  EXPECT_TRUE(fs::exists(dir_ / "logs" / "2.test.log"));
}

TEST_F(ValidatorTest, AcceptedFixIsCorrect) {
  project_.accepted_fixes.push_back({{"    x = (x + 2) * 1;"}});
  const Verdict v = Validate({"    x = (x + 2) * 1;"});
  EXPECT_EQ(v.tier, Tier::kCorrect);
  EXPECT_EQ(v.detail, "matches accepted fix 1");
}

TEST_F(ValidatorTest, SpawnFailureAndTimeout) {
  project_.build_command = {"/nonexistent/compiler"};
  EXPECT_EQ(Validate({"    x = x + 2;"}).tier, Tier::kApplyError);

  project_.build_command = {"sleep", "10"};
  const auto start = Clock::now();
  EXPECT_EQ(Validate({"    x = x + 2;"}, Clock::now() + std::chrono::milliseconds(200)).tier,
            Tier::kTimeout);
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(5));
}

TEST_F(ValidatorTest, CancelledCommand) {
  std::atomic<bool> cancel{true};
  const CommandResult r = RunCommand({"sleep", "10"}, dir_, dir_ / "c.log",
                                     Clock::now() + std::chrono::seconds(30), &cancel);
  EXPECT_EQ(r.status, CommandResult::Status::kCancelled);
}

TEST_F(ValidatorTest, StopsAtFirstCorrect) {
  Combiner stream({TierPool()}, 100);
  const BugRun run = RunBug(stream, Context(), {1, dir_ / "work", false},
                            Clock::now() + std::chrono::seconds(60));
  ASSERT_EQ(run.verdicts.size(), 4u);
  EXPECT_EQ(run.verdicts[0].verdict.tier, Tier::kFiltered);
  EXPECT_EQ(run.verdicts[1].verdict.tier, Tier::kCompiledOnly);
  EXPECT_EQ(run.verdicts[2].verdict.tier, Tier::kPlausible);
  EXPECT_EQ(run.verdicts[3].verdict.tier, Tier::kCorrect);
  EXPECT_EQ(run.correct_emit_index, 4);
  EXPECT_EQ(run.patches_examined, 4);
  EXPECT_EQ(run.best_verdict, Tier::kCorrect);
  EXPECT_FALSE(fs::exists(dir_ / "work" / "1"));
}

TEST_F(ValidatorTest, DeadlineAlreadyPassed) {
  Combiner stream({TierPool()}, 100);
  const BugRun run = RunBug(stream, Context(), {2, dir_ / "work", false},
                            Clock::now() - std::chrono::seconds(1));
  EXPECT_EQ(run.patches_examined, 0);
  EXPECT_TRUE(run.verdicts.empty());
  EXPECT_EQ(run.best_verdict, Tier::kTimeout);
}

TEST_F(ValidatorTest, ParallelRunMatchesSerial) {
  chunks_ = {Chunk(0, 3, 3, {"    x = x + 1;"}), Chunk(1, 9, 9, {"  int k = 0;"})};
  project_.reference_fix = std::vector<Lines>{{"    x = x + 2;"}, {"  int k = 4;"}};
  project_.test_command = {"sh", "-c", "grep -q 'x + 2' A.mj && grep -q 'k = 4' A.mj"};
  auto pools = [] {
    ChunkPool a{0, {}};
    ChunkPool b{1, {}};
    for (int i = 0; i < 6; ++i) {
      a.fragments.push_back(
          Frag(0, {i == 4 ? "    x = x + 2;" : "    x = x + " + std::to_string(10 + i) + ";"},
               i + 1, 1.0 - 0.1 * i));
      b.fragments.push_back(
          Frag(1, {i == 3 ? "  int k = 4;" : "  int k = " + std::to_string(20 + i) + ";"},
               i + 1, 1.0 - 0.1 * i));
    }
    return std::vector<ChunkPool>{a, b};
  };
  auto run = [&](int jobs) {
    Combiner stream(pools(), 1000);
    return RunBug(stream, Context(), {jobs, dir_ / ("work" + std::to_string(jobs)), false},
                  Clock::now() + std::chrono::seconds(120));
  };
  const BugRun serial = run(1);
  const BugRun parallel = run(4);
  ASSERT_GT(serial.correct_emit_index, 1);
  EXPECT_EQ(serial.correct_emit_index, parallel.correct_emit_index);
  ASSERT_EQ(serial.verdicts.size(), parallel.verdicts.size());
  for (std::size_t i = 0; i < serial.verdicts.size(); ++i) {
    EXPECT_EQ(serial.verdicts[i].emit_index, parallel.verdicts[i].emit_index);
    EXPECT_EQ(serial.verdicts[i].ranks, parallel.verdicts[i].ranks);
    EXPECT_EQ(serial.verdicts[i].verdict.tier, parallel.verdicts[i].verdict.tier);
  }
}

TEST_F(ValidatorTest, ProjectJsonRoundTrip) {
  Put(project_.root / "project.json",
      R"({"module_id": "M", "build": ["true"], "test": ["true"],
          "reference_fix": ["    x = x + 2;\n"],
          "accepted_fixes": [["    x = 2 + x;"]]})");
  const SubjectProject p = LoadSubjectProject(project_.root);
  EXPECT_EQ(p.module_id, "M");
  ASSERT_TRUE(p.reference_fix);
  EXPECT_EQ((*p.reference_fix)[0], Lines{"    x = x + 2;"});
  ASSERT_EQ(p.accepted_fixes.size(), 1u);
  EXPECT_NO_THROW(CheckSubjectProject(p, 1));
  EXPECT_THROW(CheckSubjectProject(p, 2), InvariantError);
  Put(project_.root / "project.json", R"({"build": "make", "test": ["true"]})");
  EXPECT_THROW(LoadSubjectProject(project_.root), Error);
}

}  // namespace
}  // namespace blockrepair
