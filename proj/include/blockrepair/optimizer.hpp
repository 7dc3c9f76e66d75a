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

// Patch optimization: per-chunk filtering and ranking of generated
// fragments, then best-first combination of one fragment per chunk.
//
// Ranking score of a fragment f of chunk c:
//
//   opt(f) = p * norm_model(f) + (1 - p) * sim(f)
//   sim(f) = 0.5 / (1 + |edit_script(buggy file, file with f spliced in)|)
//          + 0.5 * ngram_dice(tokens(c.body), tokens(f), n)
//
// norm_model is the model score min-max normalized over the surviving pool
// (1 when the pool has a single score value). Ties go to the lower
// model_rank.

#ifndef BLOCKREPAIR_OPTIMIZER_HPP_
#define BLOCKREPAIR_OPTIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <vector>

#include "blockrepair/blocker.hpp"
#include "blockrepair/genbridge.hpp"
#include "blockrepair/model.hpp"
#include "blockrepair/syntax.hpp"

namespace blockrepair {

struct ChunkPool {
  int chunk_id = 0;
  std::vector<CandidateFragment> fragments;
};

struct CollectedFragments {
  std::vector<ChunkPool> pools;  // one per chunk, in chunk order
  int malformed_outputs = 0;
};

// Splits every generator output into per-chunk fragments. Outputs that do
// not split into exactly chunks.size() parts are counted, not kept.
CollectedFragments CollectFragments(const GeneratorResponse& response,
                                    std::span<const BuggyChunk> chunks);

// Keeps fragments whose splice into `file` parses after normalization,
// that are not a normalized duplicate of a lower-ranked fragment, and that
// differ from the buggy body after normalization. Order is preserved.
std::vector<CandidateFragment> FilterCandidates(
    const std::vector<CandidateFragment>& fragments, const BuggyChunk& chunk,
    const SourceText& file, const SubjectLanguage& lang);

struct RankOptions {
  double p = 0.5;
  int ngram_n = 3;
  bool no_patch_optimization = false;
};

// The similarity prior of each fragment; index-aligned with `fragments`.
// The OpenMP kernel and the serial reference return identical values.
std::vector<double> SimilarityScores(
    std::span<const CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, int ngram_n, const SubjectLanguage& lang);
std::vector<double> SimilarityScoresSerial(
    std::span<const CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, int ngram_n, const SubjectLanguage& lang);

// Sets opt_score and sorts by (opt_score desc, model_rank asc).
std::vector<CandidateFragment> RankCandidates(
    std::vector<CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, const RankOptions& options,
    const SubjectLanguage& lang);
std::vector<CandidateFragment> RankCandidatesSerial(
    std::vector<CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, const RankOptions& options,
    const SubjectLanguage& lang);

class NoCandidatesError : public Error {
 public:
  explicit NoCandidatesError(int chunk_id)
      : Error("no surviving candidates for chunk " + std::to_string(chunk_id)),
        chunk_id_(chunk_id) {}
  int chunk_id() const { return chunk_id_; }

 private:
  int chunk_id_;
};

// Streams combinations of one fragment per chunk in order of aggregate
// score (descending; sums taken in chunk order), ties broken by the
// lexicographically smaller tuple of pool positions. Stops after
// min(product of pool sizes, mc) emissions.
class Combiner {
 public:
  // Pools must already be ranked. Throws NoCandidatesError for an empty
  // pool and InvariantError for mc < 1.
  Combiner(std::vector<ChunkPool> pools, std::int64_t mc);

  std::optional<CombinedPatch> Next();

  std::int64_t emitted() const { return emitted_; }
  // min(product of pool sizes, mc).
  std::int64_t limit() const { return limit_; }

 private:
  struct Entry {
    double score;
    std::vector<int> index;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.score != b.score) return a.score < b.score;
      return a.index > b.index;
    }
  };

  double Score(const std::vector<int>& index) const;
  void Push(std::vector<int> index);

  std::vector<ChunkPool> pools_;
  std::int64_t emitted_ = 0;
  std::int64_t limit_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Worse> frontier_;
  std::set<std::vector<int>> visited_;
};

}  // namespace blockrepair

#endif  // BLOCKREPAIR_OPTIMIZER_HPP_
