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


#include "blockrepair/minilang.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "blockrepair/interp.hpp"

namespace blockrepair {
namespace {

namespace fs = std::filesystem;

const MiniJava& Lang() { return DefaultLanguage(); }

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> SampleFiles() {
  std::vector<fs::path> out;
  for (const char* root : {BLOCKREPAIR_CORPUS, BLOCKREPAIR_FIXTURES}) {
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.path().extension() == ".mj" && e.path().filename() != "Broken.mj") {
        out.push_back(e.path());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Parses(std::string_view text) {
  try {
    Lang().Parse(text);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

TEST(MiniJavaTest, SampleFilesParse) {
  const auto files = SampleFiles();
  ASSERT_GE(files.size(), 20u);
  for (const fs::path& p : files) {
    EXPECT_TRUE(Parses(Slurp(p))) << p;
  }
}

TEST(MiniJavaTest, NormalizeIsIdempotentAndKeepsParsability) {
  std::mt19937_64 rng(5);
  for (const fs::path& p : SampleFiles()) {
    const std::string text = Slurp(p);
    std::vector<std::string> variants = {text};
    // Token-level damage: drop, duplicate or swap single characters.
    for (int i = 0; i < 20; ++i) {
      std::string v = text;
      const std::size_t at = rng() % v.size();
      switch (rng() % 3) {
        case 0: v.erase(at, 1); break;
        case 1: v.insert(at, 1, v[at]); break;
        default: std::swap(v[at], v[(at + 1) % v.size()]); break;
      }
      variants.push_back(v);
    }
    for (const std::string& v : variants) {
      const std::string once = Lang().Normalize(v);
      EXPECT_EQ(Lang().Normalize(once), once) << p;
      EXPECT_EQ(Parses(once), Parses(v)) << p << "\n" << v;
    }
  }
}

TEST(MiniJavaTest, NormalizeIgnoresLayoutAndComments) {
  const std::string a = "class A {\n  int f() {\n    return 1 + 2; // sum\n  }\n}\n";
  const std::string b = "class A { int f() { return 1+2; } }";
  EXPECT_EQ(Lang().Normalize(a), Lang().Normalize(b));
  EXPECT_TRUE(TreesEqualNormalized(SourceText::FromString(a), SourceText::FromString(b),
                                   Lang()));
}

TEST(MiniJavaTest, MalformedInputsReportALine) {
  const std::pair<const char*, int> cases[] = {
      {"class A {\n  int f() {\n    return 1\n  }\n}\n", 4},
      {"class A {\n  int f( {\n  }\n}\n", 2},
      {"class A {\n  int f() {\n    x = ;\n  }\n}\n", 3},
      {"class A {\n  int f() {\n    if (x {\n    }\n  }\n}\n", 3},
      {"class A {\n", 1},
      {"int f() { return 1; }\n", 1},
      {"class A {\n  int f() {\n    return 1;\n  }\n}\n}\n", 6},
      {"class A {\n  int f() {\n    for (;;\n  }\n}\n", 4},
  };
  for (const auto& [text, line] : cases) {
    try {
      Lang().Parse(text);
      ADD_FAILURE() << "parsed: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
    }
  }
}

TEST(MiniJavaTest, Tokens) {
  const auto tokens = Lang().Tokenize("x += \"a b\"; // done\ny = 12 >= 3;");
  std::vector<std::string> texts;
  for (const Token& t : tokens) texts.push_back(t.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"x", "+=", "\"a b\"", ";", "// done", "y",
                                             "=", "12", ">=", "3", ";"}));
  EXPECT_EQ(tokens[2].kind, TokenKind::kString);
  EXPECT_EQ(tokens[4].kind, TokenKind::kComment);
  EXPECT_EQ(tokens[5].line, 2);
  EXPECT_EQ(CodeTokens(Lang(), "a c // b").size(), 2u);
}

TEST(MiniJavaTest, LineClassifiers) {
  EXPECT_TRUE(Lang().IsCommentLine("   // note"));
  EXPECT_FALSE(Lang().IsCommentLine("x = 1; // note"));
  EXPECT_TRUE(Lang().IsNullLocation("    ;"));
  EXPECT_TRUE(Lang().IsNullLocation("while (x > 0);"));
  EXPECT_FALSE(Lang().IsNullLocation("x = 1;"));
  EXPECT_FALSE(Lang().IsNullLocation("}"));
}

std::vector<interp::ProgramFile> Program(const std::string& text) {
  return {{"P.mj", Lang().Parse(text)}};
}

TEST(InterpTest, CheckerReportsNamesAndArity) {
  EXPECT_TRUE(interp::CheckProgram(Program(
      "class A {\n  int f(int x) {\n    return x + 1;\n  }\n}\n")).empty());
  EXPECT_FALSE(interp::CheckProgram(Program(
      "class A {\n  int f(int x) {\n    return y;\n  }\n}\n")).empty());
  EXPECT_FALSE(interp::CheckProgram(Program(
      "class A {\n  int f(int x) {\n    return f(1, 2);\n  }\n}\n")).empty());
  EXPECT_FALSE(interp::CheckProgram(Program(
      "class A {\n  void f() {\n    return 1;\n  }\n}\n")).empty());
  EXPECT_FALSE(interp::CheckProgram(Program(
      "class A {\n  int f() {\n    return B.g();\n  }\n}\n")).empty());
}

TEST(InterpTest, RunsTests) {
  const auto results = interp::RunTests(Program(
      "class Box {\n"
      "  int n = 0;\n"
      "  void bump() {\n    n++;\n  }\n"
      "  int get() {\n    return n;\n  }\n"
      "}\n"
      "class BoxTest {\n"
      "  void testOnce() {\n    Box.bump();\n    assertEquals(1, Box.get());\n  }\n"
      "  void testFresh() {\n    Box.bump();\n    assertEquals(1, Box.get());\n  }\n"
      "  void testFails() {\n    assertTrue(Box.get() > 0);\n  }\n"
      "  void testLoop() {\n    while (true) {\n    }\n  }\n"
      "  void testDiv() {\n    int z = 0;\n    print(1 / z);\n  }\n"
      "  void testStrings() {\n"
      "    String s = \"ab\" + 3;\n"
      "    assertEquals(\"ab3\", s);\n"
      "    assertEquals(3, s.length());\n"
      "    assertEquals(\"b\", s.substring(1, 2));\n"
      "    assertEquals(Math.max(2, 7), 7);\n"
      "  }\n"
      "  void helper(int x) {\n  }\n"
      "}\n"));
  std::map<std::string, bool> passed;
  for (const auto& r : results) passed[r.name] = r.passed;
  EXPECT_EQ(passed.size(), 6u);
  EXPECT_TRUE(passed.at("BoxTest.testOnce"));
  EXPECT_TRUE(passed.at("BoxTest.testFresh"));  // fields reset between tests
  EXPECT_FALSE(passed.at("BoxTest.testFails"));
  EXPECT_FALSE(passed.at("BoxTest.testLoop"));  // step limit
  EXPECT_FALSE(passed.at("BoxTest.testDiv"));
  EXPECT_TRUE(passed.at("BoxTest.testStrings"));
}

TEST(InterpTest, CorpusSeparatesBuggyFromFixed) {
  // Every buggy mini-corpus project checks cleanly and fails a test.
  int projects = 0;
  for (const auto& e : fs::directory_iterator(fs::path(BLOCKREPAIR_CORPUS) / "bugs")) {
    std::vector<std::string> errors;
    const auto files = interp::LoadProgram(e.path() / "project", errors);
    EXPECT_TRUE(errors.empty()) << e.path();
    EXPECT_TRUE(interp::CheckProgram(files).empty()) << e.path();
    const auto results = interp::RunTests(files);
    EXPECT_FALSE(results.empty());
    EXPECT_TRUE(std::any_of(results.begin(), results.end(),
                            [](const auto& r) { return !r.passed; }))
        << e.path();
    ++projects;
  }
  EXPECT_EQ(projects, 10);
}

}  // namespace
}  // namespace blockrepair
