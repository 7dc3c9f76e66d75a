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

// Child-process execution with a wall-clock deadline. Output goes to a log
// file; the child runs in its own process group so that a timeout or a
// cancellation kills everything it started.

#ifndef BLOCKREPAIR_PROCESS_HPP_
#define BLOCKREPAIR_PROCESS_HPP_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace blockrepair {

using Clock = std::chrono::steady_clock;

struct CommandResult {
  enum class Status { kExited, kTimedOut, kCancelled, kSpawnFailed };
  Status status = Status::kSpawnFailed;
  int exit_code = -1;        // valid for kExited; 128 + signal if killed
  std::string diagnostic;    // spawn error text
  bool ok() const { return status == Status::kExited && exit_code == 0; }
};

// Runs argv[0] (looked up in PATH) inside cwd with stdout and stderr
// appended to log_path. The child is killed at `deadline` or as soon as
// *cancel becomes true.
CommandResult RunCommand(const std::vector<std::string>& argv,
                         const std::filesystem::path& cwd,
                         const std::filesystem::path& log_path,
                         Clock::time_point deadline,
                         const std::atomic<bool>* cancel = nullptr);

// Replaces ${NAME} occurrences in every argument. Unknown names are left
// untouched.
std::vector<std::string> SubstituteArgs(
    const std::vector<std::string>& argv,
    const std::map<std::string, std::string>& vars);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_PROCESS_HPP_
