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

#include "blockrepair/model.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace blockrepair {

SourceText SourceText::FromString(std::string_view text, std::string origin) {
  SourceText out;
  out.origin = std::move(origin);
  out.trailing_newline = text.empty() || text.back() == '\n';
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      out.lines.emplace_back(text.substr(pos));
      break;
    }
    out.lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

std::string SourceText::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += lines[i];
    if (i + 1 < lines.size() || trailing_newline) out += '\n';
  }
  return out;
}

const std::string& SourceText::line(int number) const {
  if (number < 1 || static_cast<std::size_t>(number) > lines.size()) {
    throw InvariantError("line " + std::to_string(number) +
                         " out of range in " + origin);
  }
  return lines[static_cast<std::size_t>(number - 1)];
}

void CheckChunks(std::span<const BuggyChunk> chunks) {
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const BuggyChunk& c = chunks[i];
    const std::string where = "chunk " + std::to_string(c.chunk_id);
    if (c.start_line < 1) throw InvariantError(where + ": start_line < 1");
    if (c.end_line < c.start_line - 1) {
      throw InvariantError(where + ": end_line < start_line - 1");
    }
    if (c.effective_locations < 0) {
      throw InvariantError(where + ": negative effective_locations");
    }
    if (static_cast<int>(c.deleted_lines.size()) != c.length()) {
      throw InvariantError(where + ": deleted_lines does not match range");
    }
    if (c.is_omission() && c.effective_locations != 1) {
      throw InvariantError(where + ": omission chunk must count 1 location");
    }
    if (i == 0) continue;
    const BuggyChunk& prev = chunks[i - 1];
    if (prev.file > c.file ||
        (prev.file == c.file && prev.start_line > c.start_line)) {
      throw InvariantError(where + ": chunks not sorted by (file, line)");
    }
    // An omission anchor at line L occupies the gap before L, so it may
    // share a start with nothing else and must follow earlier ranges.
    if (prev.file == c.file) {
      const bool overlap = prev.is_omission()
                               ? c.start_line < prev.start_line ||
                                     (c.start_line == prev.start_line &&
                                      c.is_omission())
                               : c.start_line <= prev.end_line;
      if (overlap) throw InvariantError(where + ": overlaps previous chunk");
    }
  }
}

namespace {
constexpr std::array<std::string_view, 6> kTierNames = {
    "Filtered", "ApplyError", "Timeout", "CO", "PL", "CR"};
}

std::string_view TierName(Tier tier) {
  return kTierNames[static_cast<std::size_t>(tier)];
}

Tier TierFromName(std::string_view name) {
  for (std::size_t i = 0; i < kTierNames.size(); ++i) {
    if (kTierNames[i] == name) return static_cast<Tier>(i);
  }
  throw InvariantError("unknown verdict '" + std::string(name) + "'");
}

int FunnelLevel(Tier tier) {
  switch (tier) {
    case Tier::kCompiledOnly: return 1;
    case Tier::kPlausible: return 2;
    case Tier::kCorrect: return 3;
    default: return 0;
  }
}

bool VerdictLess(Tier a, Tier b) {
  if (FunnelLevel(a) != FunnelLevel(b)) return FunnelLevel(a) < FunnelLevel(b);
  return static_cast<int>(a) < static_cast<int>(b);
}

Tier BestOf(Tier a, Tier b) { return VerdictLess(a, b) ? b : a; }

std::string_view BugTypeName(BugType type) {
  switch (type) {
    case BugType::kType1: return "Type1";
    case BugType::kType2: return "Type2";
    case BugType::kType3: return "Type3";
  }
  return "?";
}

const CampaignConfig& ValidateConfig(const CampaignConfig& cfg) {
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvariantError(std::string(name) + " must lie in [0, 1]");
    }
  };
  unit(cfg.alpha, "alpha");
  unit(cfg.beta, "beta");
  unit(cfg.p, "p");
  if (!(cfg.alpha + cfg.beta > 0.0)) throw InvariantError("alpha + beta must be > 0");
  if (cfg.mc < 1) throw InvariantError("mc must be >= 1");
  if (cfg.ngram_n < 1) throw InvariantError("ngram_n must be >= 1");
  if (cfg.beam_size < 1) throw InvariantError("beam_size must be >= 1");
  if (cfg.token_budget < 1) throw InvariantError("token_budget must be >= 1");
  if (cfg.context_width < 0) {
    throw InvariantError("context_width must be >= 0");
  }
  if (!(cfg.timeout_seconds >= 0.0) || std::isinf(cfg.timeout_seconds)) {
    throw InvariantError("timeout_seconds must be finite and >= 0");
  }
  if (cfg.jobs < 1) throw InvariantError("jobs must be >= 1");
  return cfg;
}

}  // namespace blockrepair
