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

#include "blockrepair/optimizer.hpp"

#include <algorithm>
#include <map>

#include "blockrepair/diffchunk.hpp"
#include "blockrepair/similarity.hpp"
#include "blockrepair/treediff.hpp"

namespace blockrepair {

namespace {

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

bool ParsesAfterNormalize(const std::vector<std::string>& lines,
                          const SubjectLanguage& lang) {
  try {
    lang.Parse(lang.Normalize(JoinLines(lines)));
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

// Shared per-fragment state: the buggy file tree and body tokens.
struct SimilarityBasis {
  std::optional<GenericTree> buggy_tree;
  std::vector<std::string> buggy_tokens;
};

SimilarityBasis MakeBasis(const BuggyChunk& chunk, const SourceText& file,
                          const SubjectLanguage& lang) {
  SimilarityBasis basis;
  try {
    basis.buggy_tree = lang.Parse(lang.Normalize(JoinLines(file.lines)));
  } catch (const ParseError&) {
    // A buggy file that does not parse leaves only the n-gram term.
  }
  basis.buggy_tokens = CodeTokens(lang, JoinLines(chunk.deleted_lines));
  return basis;
}

double FragmentSimilarity(const SimilarityBasis& basis,
                          const CandidateFragment& f, const BuggyChunk& chunk,
                          const SourceText& file, int ngram_n,
                          const SubjectLanguage& lang) {
  double conservatism = 0.0;
  if (basis.buggy_tree) {
    try {
      const GenericTree patched = lang.Parse(lang.Normalize(
          JoinLines(SpliceChunk(file.lines, chunk, f.replacement_lines))));
      const EditScript script = ComputeEditScript(*basis.buggy_tree, patched);
      conservatism = 1.0 / (1.0 + static_cast<double>(script.size()));
    } catch (const ParseError&) {
    }
  }
  const auto tokens = CodeTokens(lang, JoinLines(f.replacement_lines));
  return 0.5 * conservatism +
         0.5 * NgramSimilarity(basis.buggy_tokens, tokens, ngram_n);
}

std::vector<CandidateFragment> RankWith(
    std::vector<CandidateFragment> fragments, const RankOptions& options,
    const std::vector<double>& sim) {
  if (options.p < 0.0 || options.p > 1.0) {
    throw InvariantError("p must lie in [0, 1]");
  }
  if (fragments.empty()) return fragments;
  double lo = fragments[0].model_score, hi = fragments[0].model_score;
  for (const auto& f : fragments) {
    lo = std::min(lo, f.model_score);
    hi = std::max(hi, f.model_score);
  }
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const double norm =
        hi > lo ? (fragments[i].model_score - lo) / (hi - lo) : 1.0;
    fragments[i].opt_score =
        options.no_patch_optimization
            ? norm
            : options.p * norm + (1.0 - options.p) * sim[i];
  }
  if (options.no_patch_optimization) {
    std::stable_sort(fragments.begin(), fragments.end(),
                     [](const auto& a, const auto& b) {
                       return a.model_rank < b.model_rank;
                     });
  } else {
    std::stable_sort(fragments.begin(), fragments.end(),
                     [](const auto& a, const auto& b) {
                       if (a.opt_score != b.opt_score) return a.opt_score > b.opt_score;
                       return a.model_rank < b.model_rank;
                     });
  }
  return fragments;
}

}  // namespace

CollectedFragments CollectFragments(const GeneratorResponse& response,
                                    std::span<const BuggyChunk> chunks) {
  CollectedFragments out;
  for (const BuggyChunk& c : chunks) out.pools.push_back({c.chunk_id, {}});
  const int k = static_cast<int>(chunks.size());
  for (const GeneratorOutput& o : response.outputs) {
    std::vector<Lines> parts;
    try {
      parts = SplitBlockOutput(o.text, k);
    } catch (const MalformedOutputError&) {
      ++out.malformed_outputs;
      continue;
    }
    for (int j = 0; j < k; ++j) {
      CandidateFragment f;
      f.chunk_id = chunks[static_cast<std::size_t>(j)].chunk_id;
      f.replacement_lines = std::move(parts[static_cast<std::size_t>(j)]);
      f.model_rank = o.rank;
      f.model_score = o.model_score;
      out.pools[static_cast<std::size_t>(j)].fragments.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<CandidateFragment> FilterCandidates(
    const std::vector<CandidateFragment>& fragments, const BuggyChunk& chunk,
    const SourceText& file, const SubjectLanguage& lang) {
  const std::string buggy_norm = lang.Normalize(JoinLines(chunk.deleted_lines));
  std::vector<char> keep(fragments.size(), 0);
  std::vector<std::string> norm(fragments.size());
  // Lowest rank per normalized text among fragments passing the parse gate.
  std::map<std::string, std::size_t> best;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const CandidateFragment& f = fragments[i];
    if (!ParsesAfterNormalize(SpliceChunk(file.lines, chunk, f.replacement_lines),
                              lang)) {
      continue;
    }
    norm[i] = lang.Normalize(JoinLines(f.replacement_lines));
    if (norm[i] == buggy_norm) continue;
    auto [it, inserted] = best.emplace(norm[i], i);
    if (!inserted && f.model_rank < fragments[it->second].model_rank) it->second = i;
  }
  for (const auto& [text, i] : best) keep[i] = 1;
  std::vector<CandidateFragment> out;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    if (keep[i]) out.push_back(fragments[i]);
  }
  return out;
}

std::vector<double> SimilarityScores(
    std::span<const CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, int ngram_n, const SubjectLanguage& lang) {
  const SimilarityBasis basis = MakeBasis(chunk, file, lang);
  std::vector<double> sim(fragments.size());
  const long n = static_cast<long>(fragments.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    sim[static_cast<std::size_t>(i)] = FragmentSimilarity(
        basis, fragments[static_cast<std::size_t>(i)], chunk, file, ngram_n, lang);
  }
  return sim;
}

std::vector<double> SimilarityScoresSerial(
    std::span<const CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, int ngram_n, const SubjectLanguage& lang) {
  const SimilarityBasis basis = MakeBasis(chunk, file, lang);
  std::vector<double> sim;
  sim.reserve(fragments.size());
  for (const CandidateFragment& f : fragments) {
    sim.push_back(FragmentSimilarity(basis, f, chunk, file, ngram_n, lang));
  }
  return sim;
}

std::vector<CandidateFragment> RankCandidates(
    std::vector<CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, const RankOptions& options,
    const SubjectLanguage& lang) {
  std::vector<double> sim;
  if (!options.no_patch_optimization) {
    sim = SimilarityScores(fragments, chunk, file, options.ngram_n, lang);
  }
  return RankWith(std::move(fragments), options, sim);
}

std::vector<CandidateFragment> RankCandidatesSerial(
    std::vector<CandidateFragment> fragments, const BuggyChunk& chunk,
    const SourceText& file, const RankOptions& options,
    const SubjectLanguage& lang) {
  std::vector<double> sim;
  if (!options.no_patch_optimization) {
    sim = SimilarityScoresSerial(fragments, chunk, file, options.ngram_n, lang);
  }
  return RankWith(std::move(fragments), options, sim);
}

Combiner::Combiner(std::vector<ChunkPool> pools, std::int64_t mc)
    : pools_(std::move(pools)) {
  if (mc < 1) throw InvariantError("MC must be >= 1");
  if (pools_.empty()) throw Error("cannot combine zero chunks");
  limit_ = mc;
  std::int64_t product = 1;
  for (const ChunkPool& p : pools_) {
    if (p.fragments.empty()) throw NoCandidatesError(p.chunk_id);
    const auto size = static_cast<std::int64_t>(p.fragments.size());
    product = product > mc / size ? mc + 1 : product * size;
  }
  limit_ = std::min(product, mc);
  Push(std::vector<int>(pools_.size(), 0));
}

double Combiner::Score(const std::vector<int>& index) const {
  double s = 0.0;
  for (std::size_t c = 0; c < pools_.size(); ++c) {
    s += pools_[c].fragments[static_cast<std::size_t>(index[c])].opt_score;
  }
  return s;
}

void Combiner::Push(std::vector<int> index) {
  if (!visited_.insert(index).second) return;
  const double s = Score(index);
  frontier_.push({s, std::move(index)});
}

std::optional<CombinedPatch> Combiner::Next() {
  if (emitted_ >= limit_ || frontier_.empty()) return std::nullopt;
  Entry top = frontier_.top();
  frontier_.pop();
  for (std::size_t c = 0; c < pools_.size(); ++c) {
    if (static_cast<std::size_t>(top.index[c]) + 1 < pools_[c].fragments.size()) {
      std::vector<int> next = top.index;
      ++next[c];
      Push(std::move(next));
    }
  }
  CombinedPatch patch;
  for (std::size_t c = 0; c < pools_.size(); ++c) {
    patch.fragments.push_back(pools_[c].fragments[static_cast<std::size_t>(top.index[c])]);
  }
  patch.aggregate_score = top.score;
  patch.emit_index = ++emitted_;
  return patch;
}

}  // namespace blockrepair
