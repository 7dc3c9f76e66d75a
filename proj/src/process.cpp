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

#include "blockrepair/process.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstring>
#include <thread>

extern char** environ;

namespace blockrepair {

namespace {

class SpawnAttrs {
 public:
  SpawnAttrs() {
    posix_spawn_file_actions_init(&actions_);
    posix_spawnattr_init(&attr_);
  }
  ~SpawnAttrs() {
    posix_spawn_file_actions_destroy(&actions_);
    posix_spawnattr_destroy(&attr_);
  }
  posix_spawn_file_actions_t actions_;
  posix_spawnattr_t attr_;
};

int DecodeStatus(int status) {
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

}  // namespace

CommandResult RunCommand(const std::vector<std::string>& argv,
                         const std::filesystem::path& cwd,
                         const std::filesystem::path& log_path,
                         Clock::time_point deadline,
                         const std::atomic<bool>* cancel) {
  CommandResult result;
  if (argv.empty()) {
    result.diagnostic = "empty command";
    return result;
  }
  if (Clock::now() >= deadline) {
    result.status = CommandResult::Status::kTimedOut;
    return result;
  }
  std::error_code ec;
  std::filesystem::create_directories(log_path.parent_path(), ec);

  SpawnAttrs sa;
  posix_spawn_file_actions_addopen(&sa.actions_, STDIN_FILENO, "/dev/null",
                                   O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&sa.actions_, STDOUT_FILENO,
                                   log_path.c_str(),
                                   O_WRONLY | O_CREAT | O_APPEND, 0644);
  posix_spawn_file_actions_adddup2(&sa.actions_, STDOUT_FILENO, STDERR_FILENO);
  posix_spawn_file_actions_addchdir_np(&sa.actions_, cwd.c_str());
  posix_spawnattr_setflags(&sa.attr_, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&sa.attr_, 0);

  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  pid_t pid = 0;
  const int rc =
      posix_spawnp(&pid, args[0], &sa.actions_, &sa.attr_, args.data(), environ);
  if (rc != 0) {
    result.diagnostic = "cannot spawn '" + argv[0] + "' in " + cwd.string() +
                        ": " + std::strerror(rc);
    return result;
  }

  auto pause = std::chrono::microseconds(200);
  for (;;) {
    int status = 0;
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      result.status = CommandResult::Status::kExited;
      result.exit_code = DecodeStatus(status);
      return result;
    }
    const bool cancelled = cancel != nullptr && cancel->load();
    if (cancelled || Clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      result.status = cancelled ? CommandResult::Status::kCancelled
                                : CommandResult::Status::kTimedOut;
      result.exit_code = DecodeStatus(status);
      return result;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(10'000));
  }
}

std::vector<std::string> SubstituteArgs(
    const std::vector<std::string>& argv,
    const std::map<std::string, std::string>& vars) {
  std::vector<std::string> out;
  out.reserve(argv.size());
  for (std::string arg : argv) {
    for (const auto& [name, value] : vars) {
      const std::string key = "${" + name + "}";
      for (std::size_t pos = arg.find(key); pos != std::string::npos;
           pos = arg.find(key, pos + value.size())) {
        arg.replace(pos, key.size(), value);
      }
    }
    out.push_back(std::move(arg));
  }
  return out;
}

}  // namespace blockrepair
