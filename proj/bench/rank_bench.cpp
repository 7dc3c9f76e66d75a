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


// Times the similarity prior over a synthetic candidate pool: OpenMP kernel
// versus the serial reference, and checks that both agree.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockrepair/minilang.hpp"
#include "blockrepair/optimizer.hpp"

namespace br = blockrepair;

namespace {

br::SourceText MakeFile(int methods) {
  std::string text = "class Bench {\n";
  for (int m = 0; m < methods; ++m) {
    const std::string i = std::to_string(m);
    text += "  int f" + i + "(int x, int y) {\n";
    text += "    int s = x * " + i + " + y;\n";
    text += "    for (int k = 0; k < y; k++) {\n";
    text += "      s = s + k * x - " + i + ";\n";
    text += "    }\n";
    text += "    return s;\n";
    text += "  }\n";
  }
  return br::SourceText::FromString(text + "}\n", "Bench.mj");
}

std::vector<br::CandidateFragment> MakePool(const br::BuggyChunk& chunk, int count,
                                            std::uint64_t seed) {
  static const char* const kStatements[] = {
      "      s = s + k * x - 1;", "      s = s - k * y + 2;", "      s = s + k;",
      "      y = y - 1;",         "      s = s * 2;",         "      x = x + s;"};
  std::mt19937_64 rng(seed);
  std::vector<br::CandidateFragment> pool;
  for (int r = 1; r <= count; ++r) {
    br::CandidateFragment f;
    f.chunk_id = chunk.chunk_id;
    f.model_rank = r;
    f.model_score = -0.01 * r;
    f.replacement_lines = chunk.deleted_lines;
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      auto& lines = f.replacement_lines;
      const std::size_t at = rng() % (lines.size() + 1);
      lines.insert(lines.begin() + static_cast<long>(at), kStatements[rng() % 6]);
    }
    pool.push_back(std::move(f));
  }
  return pool;
}

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"similarity prior benchmark"};
  int methods = 40;
  int candidates = 500;
  int reps = 3;
  std::uint64_t seed = 1;
  app.add_option("--methods", methods, "methods in the synthetic file")->check(CLI::PositiveNumber);
  app.add_option("--candidates", candidates, "pool size")->check(CLI::PositiveNumber);
  app.add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "pool seed");
  CLI11_PARSE(app, argc, argv);

  const br::SourceText file = MakeFile(methods);
  br::BuggyChunk chunk;
  chunk.file = "Bench.mj";
  chunk.start_line = 2 + 7 * (methods / 2) + 3;  // loop body of the middle method
  chunk.end_line = chunk.start_line;
  chunk.deleted_lines = {file.lines[static_cast<std::size_t>(chunk.start_line - 1)]};
  chunk.effective_locations = 1;
  const auto pool = MakePool(chunk, candidates, seed);
  const auto& lang = br::DefaultLanguage();

  double serial = 1e300, parallel = 1e300;
  std::vector<double> a, b;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    a = br::SimilarityScoresSerial(pool, chunk, file, 3, lang);
    auto t1 = std::chrono::steady_clock::now();
    b = br::SimilarityScores(pool, chunk, file, 3, lang);
    auto t2 = std::chrono::steady_clock::now();
    serial = std::min(serial, Seconds(t1 - t0));
    parallel = std::min(parallel, Seconds(t2 - t1));
  }
  const bool same = a == b;
  std::printf("file_lines=%zu candidates=%d threads=%d\n", file.line_count(), candidates,
              omp_get_max_threads());
  std::printf("serial   %.4f s\n", serial);
  std::printf("openmp   %.4f s\n", parallel);
  std::printf("speedup  %.2fx\n", serial / parallel);
  std::printf("scores %s\n", same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
