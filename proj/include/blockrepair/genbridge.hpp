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

// Generator contract. A generator receives a serialized buggy block and
// returns up to beam_size outputs, each a label-format text (one body per
// chunk, joined by the chunk separator) with a model score.
//
// Candidate files are JSON Lines, one output per line:
//
//   {"block_id": "B-1", "rank": 1, "model_score": -0.12, "text": "..."}
//
// Ranks run 1, 2, 3, ... in file order and scores never increase.

#ifndef BLOCKREPAIR_GENBRIDGE_HPP_
#define BLOCKREPAIR_GENBRIDGE_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "blockrepair/blocker.hpp"
#include "blockrepair/model.hpp"
#include "blockrepair/process.hpp"

namespace blockrepair {

struct GeneratorRequest {
  std::string block_id;
  std::string block_text;
  int chunk_count = 1;
  int beam_size = 500;
  // Optional repair material; never part of the block text itself.
  const IngredientIndex* ingredients = nullptr;
};

struct GeneratorOutput {
  int rank = 1;
  double model_score = 0.0;
  std::string text;
  bool operator==(const GeneratorOutput&) const = default;
};

struct GeneratorResponse {
  std::string block_id;
  std::vector<GeneratorOutput> outputs;
  bool operator==(const GeneratorResponse&) const = default;
};

class CandidateFormatError : public Error {
 public:
  CandidateFormatError(const std::string& what, int line)
      : Error("candidates line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Throws CandidateFormatError (line = 1-based output position) unless ranks
// are 1..n in order and scores are finite and non-increasing.
void CheckResponse(const GeneratorResponse& response);

GeneratorResponse ParseCandidates(std::istream& in);
GeneratorResponse ReadCandidates(const std::filesystem::path& path);
std::string CandidatesToJsonl(const GeneratorResponse& response);
void WriteCandidates(const std::filesystem::path& path,
                     const GeneratorResponse& response);

// A planted output of the mock generator. `fragments` has one entry per
// chunk; a missing entry is filled with a mutation of the buggy body.
struct MockPlant {
  int rank = 1;
  std::vector<std::optional<Lines>> fragments;
  // The plant is only produced when the block's context lines contain this
  // text, modelling fixes that depend on seeing the surrounding code.
  std::string needs_context;
  // Emit a structurally broken output (a separator is dropped).
  bool malformed = false;
};

struct MockHints {
  std::vector<MockPlant> plants;
};

// {"plants": [{"rank": 2, "fragments": ["a = 1;\n", null],
//              "needs_context": "...", "malformed": false}]}
MockHints ParseMockHints(const std::string& json_text);
MockHints ReadMockHints(const std::filesystem::path& path);

// Deterministic stand-in for a trained model: outputs are token-level
// mutations of the chunk bodies (identifier substitution, literal and
// operator changes, statement drops and duplications) with hinted plants
// at their ranks. Outputs are pairwise distinct and scores strictly
// decrease with rank.
GeneratorResponse GenerateMock(const GeneratorRequest& request,
                               const BuggyBlock& block, const MockHints& hints,
                               std::uint64_t seed, const SubjectLanguage& lang);

// Spawns `argv` after substituting ${REQUEST} (a JSON request file written
// into workdir), ${OUTPUT} (the candidates file to produce), ${BEAM} and
// ${BLOCK_ID}, then reads the candidates file.
GeneratorResponse RunExternalGenerator(const std::vector<std::string>& argv,
                                       const GeneratorRequest& request,
                                       const std::filesystem::path& workdir,
                                       Clock::time_point deadline);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_GENBRIDGE_HPP_
