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

// Static checker and tree-walking test runner for MiniJava programs. The
// mini-corpus uses `blockrepair lang check` as its build step and
// `blockrepair lang test` as its test step.

#ifndef BLOCKREPAIR_INTERP_HPP_
#define BLOCKREPAIR_INTERP_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "blockrepair/syntax.hpp"

namespace blockrepair::interp {

struct ProgramFile {
  std::string path;
  GenericTree tree;
};

// Parses every *.mj file below root (sorted by path). Parse errors are
// reported through `errors` and the file is skipped.
std::vector<ProgramFile> LoadProgram(const std::filesystem::path& root,
                                     std::vector<std::string>& errors);

// Name resolution and arity checks. Returns diagnostics; empty means the
// program "compiles".
std::vector<std::string> CheckProgram(const std::vector<ProgramFile>& files);

struct TestOutcome {
  std::string name;  // Class.method
  bool passed = false;
  std::string message;
};

struct RunLimits {
  std::int64_t max_steps = 2'000'000;
  int max_depth = 400;
};

// Runs every zero-argument method named test* of every class whose name
// ends in "Test". Class fields are re-initialized before each test.
std::vector<TestOutcome> RunTests(const std::vector<ProgramFile>& files,
                                  const RunLimits& limits = {});

}  // namespace blockrepair::interp

#endif  // BLOCKREPAIR_INTERP_HPP_
