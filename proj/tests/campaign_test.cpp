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

#include <gtest/gtest.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include "blockrepair/blocker.hpp"
#include "blockrepair/genbridge.hpp"
#include "blockrepair/minilang.hpp"

namespace blockrepair {
namespace {

namespace fs = std::filesystem;

// Independent restatement of the type rules.
BugType OracleType(int chunks, int locations) {
  if (chunks >= 2) return BugType::kType3;
  return locations >= 2 ? BugType::kType2 : BugType::kType1;
}

int OracleBucket(int locations) {
  if (locations >= 10) return 5;
  if (locations >= 5) return 4;
  return locations - 1;
}

TEST(ClassifyTest, Table) {
  struct Case {
    int chunks, locations;
    BugType type;
  };
  const Case cases[] = {
      {1, 1, BugType::kType1},  {1, 2, BugType::kType2},  {1, 3, BugType::kType2},
      {1, 4, BugType::kType2},  {1, 5, BugType::kType2},  {1, 9, BugType::kType2},
      {1, 10, BugType::kType2}, {1, 13, BugType::kType2}, {1, 40, BugType::kType2},
      {2, 2, BugType::kType3},  {2, 3, BugType::kType3},  {2, 5, BugType::kType3},
      {2, 12, BugType::kType3}, {3, 3, BugType::kType3},  {3, 4, BugType::kType3},
      {3, 9, BugType::kType3},  {4, 4, BugType::kType3},  {5, 11, BugType::kType3},
      {8, 20, BugType::kType3}, {13, 13, BugType::kType3},
  };
  for (const Case& c : cases) {
    EXPECT_EQ(ClassifyBug(c.chunks, c.locations), c.type) << c.chunks << "/" << c.locations;
  }
  for (int ch = 1; ch <= 6; ++ch) {
    for (int loc = ch; loc <= 30; ++loc) {
      EXPECT_EQ(ClassifyBug(ch, loc), OracleType(ch, loc));
    }
  }
  EXPECT_THROW(ClassifyBug(0, 1), InvariantError);
  EXPECT_THROW(ClassifyBug(1, 0), InvariantError);
}

TEST(ClassifyTest, Buckets) {
  for (int loc = 1; loc <= 100; ++loc) EXPECT_EQ(LocationBucket(loc), OracleBucket(loc));
  EXPECT_STREQ(kLocationBuckets[static_cast<std::size_t>(LocationBucket(7))], "5-9");
  EXPECT_THROW(LocationBucket(0), InvariantError);
}

TEST(ClassifyTest, ModuleTypeIsHardest) {
  const std::vector<BugType> mixed = {BugType::kType1, BugType::kType3, BugType::kType2};
  EXPECT_EQ(AggregateModuleType(mixed), BugType::kType3);
  const std::vector<BugType> easy = {BugType::kType1, BugType::kType1};
  EXPECT_EQ(AggregateModuleType(easy), BugType::kType1);
  EXPECT_THROW(AggregateModuleType(std::vector<BugType>{}), Error);
}

TEST(ResultsCsvTest, ParsesAndDerivesModules) {
  std::istringstream in(
      "bug_id,chunk_count,location_count,verdict\n"
      "Chart-1,1,1,CR\n"
      "\n"
      "Closure-13,3,3,CR\n"
      "Foo-Bar-2,1,2,PL\n");
  const auto records = ParseResultsCsv(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].module_id, "Chart");
  EXPECT_EQ(records[1].module_id, "Closure");
  EXPECT_EQ(records[1].bug_type, BugType::kType3);
  EXPECT_EQ(records[2].module_id, "Foo-Bar");
  EXPECT_EQ(records[2].best_verdict, Tier::kPlausible);

  const auto stats = RangeStats(records);
  EXPECT_EQ(stats.by_chunks.at(1), 1);
  EXPECT_EQ(stats.by_chunks.at(3), 1);
  EXPECT_FALSE(stats.by_chunks.contains(2));
  EXPECT_EQ(stats.by_locations[0], 1);
  EXPECT_EQ(stats.by_locations[2], 1);
  EXPECT_EQ(stats.by_locations[1], 0);  // the PL record is not counted
}

TEST(ResultsCsvTest, ErrorsNameTheLine) {
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      ParseResultsCsv(in);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string header = "bug_id,chunk_count,location_count,verdict\n";
  EXPECT_EQ(error_of("id,chunks\n").rfind("line 1:", 0), 0u);
  EXPECT_EQ(error_of(header + "A-1,1,1,CR\nA-1,1,1,CR\n").rfind("line 3: duplicate", 0), 0u);
  EXPECT_EQ(error_of(header + "A-1,x,1,CR\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(error_of(header + "A-1,1,1\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(error_of(header + "\nA-1,1,1,WIN\n").rfind("line 3:", 0), 0u);
  EXPECT_EQ(error_of(header + "A-1,0,1,CR\n").rfind("line 2:", 0), 0u);
}

TEST(ConfigTest, RoundTripAndValidation) {
  CampaignConfig cfg;
  cfg.p = 0.25;
  cfg.mc = 77;
  cfg.excluded_module_ids = {"Lang"};
  cfg.no_buggy_contexts = true;
  const CampaignConfig back = ConfigFromJson(ConfigToJson(cfg));
  EXPECT_EQ(back.p, 0.25);
  EXPECT_EQ(back.mc, 77);
  EXPECT_EQ(back.excluded_module_ids, std::vector<std::string>{"Lang"});
  EXPECT_TRUE(back.no_buggy_contexts);
  EXPECT_EQ(ConfigToJson(back), ConfigToJson(cfg));

  EXPECT_THROW(ConfigFromJson(R"({"beam": 5})"), Error);
  EXPECT_THROW(ConfigFromJson(R"({"mc": "many"})"), Error);
  EXPECT_THROW(ConfigFromJson("[1]"), Error);
  for (const char* bad : {R"({"p": 1.5})", R"({"mc": 0})", R"({"beam_size": 0})",
                          R"({"alpha": 0, "beta": 0})", R"({"timeout_seconds": -1})",
                          R"({"jobs": 0})"}) {
    EXPECT_THROW(ValidateConfig(ConfigFromJson(bad)), InvariantError) << bad;
  }
  EXPECT_NO_THROW(ValidateConfig(CampaignConfig{}));
}

class CampaignTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("campaign_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    MakeBug("Toy-1", "Toy");
    MakeBug("Toy-2", "Toy");
    MakeBug("Other-1", "Other");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void Put(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
  }

  void MakeBug(const std::string& id, const std::string& module) {
    const fs::path root = dir_ / id;
    Put(root / "project" / "A.mj",
        "class A {\n  int f(int x) {\n    x = x + 1;\n    return x;\n  }\n}\n");
    Put(root / "project" / "project.json",
        R"({"module_id": ")" + module + R"(",
            "build": ["sh", "-c", "! grep -q bad A.mj"],
            "test": ["sh", "-c", "grep -q 'x + 2' A.mj"],
            "reference_fix": ["    x = x + 2;"]})");
    Put(root / "faults.json",
        R"({"bug_id": ")" + id + R"(", "entries": [{"file": "A.mj", "start_line": 3, "end_line": 3}]})");
    GeneratorResponse r;
    r.block_id = id;
    int rank = 0;
    for (const char* body : {"    x = bad;", "    x = x + 3;", "    x = x + 2;"}) {
      const std::vector<Lines> bodies = {{body}};
      r.outputs.push_back({++rank, -0.1 * rank, SerializeLabel(bodies)});
    }
    WriteCandidates(root / "candidates.jsonl", r);
    BugSpec spec;
    spec.bug_id = id;
    spec.project = root / "project";
    spec.faults = root / "faults.json";
    spec.candidates = root / "candidates.jsonl";
    bugs_.push_back(spec);
  }

  CampaignOptions Options(const std::string& name) {
    CampaignOptions o;
    o.results_dir = dir_ / name;
    return o;
  }

  std::string Slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  fs::path dir_;
  std::vector<BugSpec> bugs_;
};

TEST_F(CampaignTest, EmptyCampaign) {
  const RepairReport report =
      RunCampaign(CampaignConfig{}, {}, Options("empty"), DefaultLanguage());
  EXPECT_TRUE(report.bugs.empty());
  EXPECT_EQ(report.bug_totals.cr, 0);
  EXPECT_EQ(report.patch_totals.co, 0);
  EXPECT_TRUE(fs::exists(dir_ / "empty" / "report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "empty" / "summary.txt"));
}

TEST_F(CampaignTest, RepairsFromCandidatesFile) {
  const RepairReport report =
      RunCampaign(CampaignConfig{}, bugs_, Options("run"), DefaultLanguage());
  ASSERT_EQ(report.bugs.size(), 3u);
  for (const BugRecord& r : report.bugs) {
    EXPECT_EQ(r.best_verdict, Tier::kCorrect) << r.error;
    EXPECT_EQ(r.bug_type, BugType::kType1);
  }
  EXPECT_EQ(report.bug_totals.cr, 3);
  EXPECT_EQ(report.bug_totals.pl, 3);
  EXPECT_EQ(report.by_type.at(BugType::kType1).first, 3);
  EXPECT_EQ(report.by_type.at(BugType::kType1).second, 3);
  const fs::path bug = dir_ / "run" / "Toy-1";
  for (const char* f : {"block.txt", "candidates.jsonl", "combined.jsonl", "verdicts.jsonl"}) {
    EXPECT_TRUE(fs::exists(bug / f)) << f;
  }
  EXPECT_FALSE(fs::exists(bug / "work"));
  EXPECT_EQ(Slurp(bug / "verdicts.jsonl").find("\"verdict\":\"Filtered\""), 16u);
}

TEST_F(CampaignTest, ExclusionsMatchModuleOrBug) {
  CampaignConfig cfg;
  cfg.excluded_module_ids = {"Toy", "Other-1"};
  const RepairReport report = RunCampaign(cfg, bugs_, Options("ex"), DefaultLanguage());
  EXPECT_TRUE(report.bugs.empty());
  EXPECT_EQ(report.excluded, (std::vector<std::string>{"Toy-1", "Toy-2", "Other-1"}));
}

TEST_F(CampaignTest, ExhaustedBudgetIsTimeout) {
  CampaignConfig cfg;
  cfg.timeout_seconds = 0.0;
  const RepairReport report = RunCampaign(cfg, bugs_, Options("late"), DefaultLanguage());
  for (const BugRecord& r : report.bugs) {
    EXPECT_EQ(r.best_verdict, Tier::kTimeout);
    EXPECT_EQ(r.patches_examined, 0);
  }
}

TEST_F(CampaignTest, ReportIsDeterministic) {
  CampaignConfig cfg;
  RunCampaign(cfg, bugs_, Options("a"), DefaultLanguage());
  cfg.jobs = 3;
  RunCampaign(cfg, bugs_, Options("b"), DefaultLanguage());
  const std::string a = Slurp(dir_ / "a" / "report.json");
  std::string b = Slurp(dir_ / "b" / "report.json");
  // Only the recorded job count may differ.
  const auto at = b.find("\"jobs\": 3");
  ASSERT_NE(at, std::string::npos);
  b.replace(at, 9, "\"jobs\": 1");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find(dir_.string()), std::string::npos);
}

TEST_F(CampaignTest, BrokenBugIsRecordedNotFatal) {
  fs::remove(bugs_[0].faults);
  const RepairReport report =
      RunCampaign(CampaignConfig{}, bugs_, Options("broken"), DefaultLanguage());
  ASSERT_EQ(report.bugs.size(), 3u);
  EXPECT_FALSE(report.bugs[0].error.empty());
  EXPECT_EQ(report.bugs[1].best_verdict, Tier::kCorrect);
}

}  // namespace
}  // namespace blockrepair
