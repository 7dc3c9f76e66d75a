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

#include "blockrepair/diffchunk.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace blockrepair {
namespace fs = std::filesystem;

namespace {

enum class Op { kKeep, kDelete, kInsert };

// Edit operations of the canonical minimal diff. Common prefixes are kept
// directly; the remainder is resolved on a suffix-LCS table.
std::vector<Op> DiffOps(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<Op> ops;
  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ops.push_back(Op::kKeep);
    ++prefix;
  }
  const std::size_t n = a.size() - prefix;
  const std::size_t m = b.size() - prefix;
  const std::size_t stride = m + 1;
  std::vector<int> lcs((n + 1) * stride, 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& {
    return lcs[i * stride + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = a[prefix + i] == b[prefix + j]
                     ? at(i + 1, j + 1) + 1
                     : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[prefix + i] == b[prefix + j] &&
        at(i, j) == at(i + 1, j + 1) + 1) {
      ops.push_back(Op::kKeep);
      ++i;
      ++j;
    } else if (i < n && (j == m || at(i + 1, j) >= at(i, j + 1))) {
      ops.push_back(Op::kDelete);
      ++i;
    } else {
      ops.push_back(Op::kInsert);
      ++j;
    }
  }
  return ops;
}

}  // namespace

std::vector<LineHunk> DiffLines(const std::vector<std::string>& buggy,
                                const std::vector<std::string>& fixed,
                                int merge_distance) {
  const std::vector<Op> ops = DiffOps(buggy, fixed);
  std::vector<LineHunk> hunks;
  std::size_t ai = 0;
  std::size_t bi = 0;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k] == Op::kKeep) {
      ++ai;
      ++bi;
      ++k;
      continue;
    }
    LineHunk hunk;
    hunk.buggy_start = static_cast<int>(ai) + 1;
    hunk.fixed_start = static_cast<int>(bi) + 1;
    for (;;) {
      while (k < ops.size() && ops[k] != Op::kKeep) {
        if (ops[k] == Op::kDelete) {
          hunk.deleted.push_back(buggy[ai++]);
        } else {
          hunk.inserted.push_back(fixed[bi++]);
        }
        ++k;
      }
      // Absorb a short run of kept lines when another change follows it.
      std::size_t run = 0;
      while (k + run < ops.size() && ops[k + run] == Op::kKeep) ++run;
      if (run == 0 || k + run == ops.size() ||
          run > static_cast<std::size_t>(std::max(merge_distance, 0))) {
        break;
      }
      for (std::size_t r = 0; r < run; ++r) {
        hunk.deleted.push_back(buggy[ai++]);
        hunk.inserted.push_back(fixed[bi++]);
      }
      k += run;
    }
    hunks.push_back(std::move(hunk));
  }
  return hunks;
}

std::vector<std::string> ReplayHunks(const std::vector<std::string>& buggy,
                                     const std::vector<LineHunk>& hunks) {
  std::vector<std::string> out = buggy;
  for (auto it = hunks.rbegin(); it != hunks.rend(); ++it) {
    auto first = out.begin() + (it->buggy_start - 1);
    first = out.erase(first, first + static_cast<std::ptrdiff_t>(it->deleted.size()));
    out.insert(first, it->inserted.begin(), it->inserted.end());
  }
  return out;
}

std::vector<std::string> SpliceChunk(const std::vector<std::string>& file,
                                     const BuggyChunk& chunk,
                                     const std::vector<std::string>& replacement) {
  const int size = static_cast<int>(file.size());
  if (chunk.start_line < 1 || chunk.end_line > size ||
      chunk.end_line < chunk.start_line - 1) {
    throw Error("chunk " + std::to_string(chunk.chunk_id) + " range " +
                std::to_string(chunk.start_line) + "-" + std::to_string(chunk.end_line) +
                " does not fit " + chunk.file + " (" + std::to_string(size) + " lines)");
  }
  std::vector<std::string> out;
  out.reserve(file.size() + replacement.size());
  out.insert(out.end(), file.begin(), file.begin() + (chunk.start_line - 1));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), file.begin() + chunk.end_line, file.end());
  return out;
}

int CountEffectiveLocations(const BuggyChunk& chunk,
                            const SubjectLanguage& lang) {
  if (chunk.is_omission()) return 1;
  int count = 0;
  for (const std::string& line : chunk.deleted_lines) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (lang.IsCommentLine(line) || lang.IsNullLocation(line)) continue;
    ++count;
  }
  return count;
}

std::vector<BuggyChunk> ExtractChunks(const SourceText& buggy,
                                      const SourceText& fixed,
                                      const SubjectLanguage& lang,
                                      int merge_distance) {
  std::vector<BuggyChunk> chunks;
  for (LineHunk& h : DiffLines(buggy.lines, fixed.lines, merge_distance)) {
    BuggyChunk c;
    c.chunk_id = static_cast<int>(chunks.size());
    c.file = buggy.origin;
    c.start_line = h.buggy_start;
    c.end_line = h.buggy_start + static_cast<int>(h.deleted.size()) - 1;
    c.deleted_lines = std::move(h.deleted);
    c.effective_locations = CountEffectiveLocations(c, lang);
    chunks.push_back(std::move(c));
  }
  return chunks;
}

FaultSpec ParseFaultSpec(const std::string& json_text) {
  FaultSpec spec;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    spec.bug_id = doc.at("bug_id").get<std::string>();
    for (const auto& e : doc.at("entries")) {
      spec.entries.push_back({e.at("file").get<std::string>(),
                              e.at("start_line").get<int>(),
                              e.at("end_line").get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed fault spec: ") + e.what());
  }
  return spec;
}

FaultSpec ReadFaultSpec(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read fault spec " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseFaultSpec(buf.str());
}

std::string FaultSpecToJson(const FaultSpec& spec) {
  nlohmann::json doc;
  doc["bug_id"] = spec.bug_id;
  doc["entries"] = nlohmann::json::array();
  for (const FaultEntry& e : spec.entries) {
    doc["entries"].push_back(
        {{"file", e.file}, {"start_line", e.start_line}, {"end_line", e.end_line}});
  }
  return doc.dump(2) + "\n";
}

SourceText ReadSource(const fs::path& path, const std::string& origin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return SourceText::FromString(buf.str(), origin);
}

void WriteSource(const fs::path& path, const SourceText& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text.ToString();
}

std::vector<BuggyChunk> LoadFaultSpec(const FaultSpec& spec,
                                      const fs::path& project,
                                      const SubjectLanguage& lang) {
  std::vector<FaultEntry> entries = spec.entries;
  std::stable_sort(entries.begin(), entries.end(),
                   [](const FaultEntry& x, const FaultEntry& y) {
                     if (x.file != y.file) return x.file < y.file;
                     // An omission anchored at L precedes a range starting at L.
                     if (x.start_line != y.start_line) return x.start_line < y.start_line;
                     return x.end_line < y.end_line;
                   });
  std::vector<BuggyChunk> chunks;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const FaultEntry& e = entries[i];
    const std::string where = "entry " + std::to_string(i) + " (" + e.file +
                              ", " + std::to_string(e.start_line) + ", " +
                              std::to_string(e.end_line) + ")";
    const fs::path file = project / e.file;
    if (!fs::is_regular_file(file)) throw Error(where + ": missing file");
    const SourceText text = ReadSource(file, e.file);
    const auto size = static_cast<int>(text.line_count());
    // An omission anchor may sit one past the last line (append at end).
    if (e.start_line < 1 || e.end_line < e.start_line - 1 ||
        e.end_line > size || e.start_line > size + 1) {
      throw Error(where + ": line range outside file of " +
                  std::to_string(size) + " lines");
    }
    BuggyChunk c;
    c.chunk_id = static_cast<int>(i);
    c.file = e.file;
    c.start_line = e.start_line;
    c.end_line = e.end_line;
    for (int l = e.start_line; l <= e.end_line; ++l) {
      c.deleted_lines.push_back(text.line(l));
    }
    c.effective_locations = CountEffectiveLocations(c, lang);
    chunks.push_back(std::move(c));
  }
  try {
    CheckChunks(chunks);
  } catch (const InvariantError& e) {
    throw Error("fault spec " + spec.bug_id + ": " + e.what());
  }
  return chunks;
}

}  // namespace blockrepair
