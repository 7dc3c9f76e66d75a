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

#include "blockrepair/blocker.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "blockrepair/diffchunk.hpp"

namespace blockrepair {
namespace fs = std::filesystem;

namespace {

void AppendLines(std::string& out, const Lines& lines) {
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
}

int LineTokens(const std::string& line, const SubjectLanguage& lang) {
  return static_cast<int>(lang.Tokenize(line).size());
}

}  // namespace

bool ContainsMarker(std::string_view line) {
  for (auto m : {kPreMarker, kBodyMarker, kPostMarker, kChunkSeparator}) {
    if (line.find(m) != std::string_view::npos) return true;
  }
  return false;
}

std::string BuggyBlock::Serialize() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) {
      out += kChunkSeparator;
      out += '\n';
    }
    const BlockSegment& s = segments[i];
    out += kPreMarker;
    out += '\n';
    AppendLines(out, s.pre_context);
    out += kBodyMarker;
    out += '\n';
    AppendLines(out, s.body);
    out += kPostMarker;
    out += '\n';
    AppendLines(out, s.post_context);
  }
  return out;
}

int CountBlockTokens(const BuggyBlock& block, const SubjectLanguage& lang) {
  int total = block.segments.empty()
                  ? 0
                  : static_cast<int>(block.segments.size()) - 1;  // separators
  for (const BlockSegment& s : block.segments) {
    total += 3;  // PRE, BODY, POST
    for (const Lines* part : {&s.pre_context, &s.body, &s.post_context}) {
      for (const std::string& l : *part) total += LineTokens(l, lang);
    }
  }
  return total;
}

BuggyBlock BuildBlock(std::string block_id, std::span<const BuggyChunk> chunks,
                      const fs::path& project, const BlockOptions& options,
                      const SubjectLanguage& lang) {
  if (chunks.empty()) throw Error("cannot build a block without chunks");
  CheckChunks(chunks);
  std::map<std::string, SourceText> files;
  auto file_of = [&](const std::string& name) -> const SourceText& {
    auto it = files.find(name);
    if (it == files.end()) {
      it = files.emplace(name, ReadSource(project / name, name)).first;
    }
    return it->second;
  };

  BuggyBlock block;
  block.block_id = std::move(block_id);
  // Per-line token counts, parallel to the segment line lists.
  struct Costs {
    std::vector<int> pre, post;
    int body = 0;
  };
  std::vector<Costs> costs;
  const int width = options.no_buggy_contexts ? 0 : options.context_width;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const BuggyChunk& c = chunks[i];
    const SourceText& text = file_of(c.file);
    const int size = static_cast<int>(text.line_count());
    int pre_lo = std::max(1, c.start_line - width);
    int post_hi = std::min(size, c.end_line + width);
    if (i > 0 && chunks[i - 1].file == c.file) {
      pre_lo = std::max(pre_lo, chunks[i - 1].end_line + 1);
    }
    if (i + 1 < chunks.size() && chunks[i + 1].file == c.file) {
      post_hi = std::min(post_hi, chunks[i + 1].start_line - 1);
    }
    BlockSegment seg;
    Costs cost;
    for (int l = pre_lo; l < c.start_line; ++l) {
      seg.pre_context.push_back(text.line(l));
      cost.pre.push_back(LineTokens(seg.pre_context.back(), lang));
    }
    seg.body = c.deleted_lines;
    for (const std::string& l : seg.body) cost.body += LineTokens(l, lang);
    for (int l = c.end_line + 1; l <= post_hi; ++l) {
      seg.post_context.push_back(text.line(l));
      cost.post.push_back(LineTokens(seg.post_context.back(), lang));
    }
    for (const Lines* part : {&seg.pre_context, &seg.body, &seg.post_context}) {
      for (const std::string& l : *part) {
        if (ContainsMarker(l)) {
          throw Error("chunk " + std::to_string(c.chunk_id) +
                      ": source line contains a reserved block marker");
        }
      }
    }
    block.segments.push_back(std::move(seg));
    costs.push_back(std::move(cost));
  }

  int total = CountBlockTokens(block, lang);
  // Drop the outermost context line of each side in turn, round-robin over
  // segments, until the block fits.
  const std::size_t sides = block.segments.size() * 2;
  std::size_t cursor = 0;
  std::size_t idle = 0;
  while (total > options.token_budget && idle < sides) {
    BlockSegment& seg = block.segments[cursor / 2];
    Costs& cost = costs[cursor / 2];
    const bool pre = cursor % 2 == 0;
    Lines& lines = pre ? seg.pre_context : seg.post_context;
    std::vector<int>& tok = pre ? cost.pre : cost.post;
    if (lines.empty()) {
      ++idle;
    } else {
      idle = 0;
      if (pre) {
        total -= tok.front();
        lines.erase(lines.begin());
        tok.erase(tok.begin());
      } else {
        total -= tok.back();
        lines.pop_back();
        tok.pop_back();
      }
    }
    cursor = (cursor + 1) % sides;
  }
  if (total > options.token_budget) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < costs.size(); ++i) {
      if (costs[i].body > costs[worst].body) worst = i;
    }
    throw UnbuildableBlockError(
        "chunk " + std::to_string(chunks[worst].chunk_id) + " body of " +
            std::to_string(costs[worst].body) + " tokens leaves the block at " +
            std::to_string(total) + " tokens, over the budget of " +
            std::to_string(options.token_budget),
        chunks[worst].chunk_id);
  }
  block.token_count = total;
  return block;
}

std::string SerializeLabel(std::span<const Lines> bodies) {
  std::string out;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (i > 0) {
      out += kChunkSeparator;
      out += '\n';
    }
    AppendLines(out, bodies[i]);
  }
  return out;
}

std::vector<Lines> SplitBlockOutput(std::string_view text, int expected_chunks) {
  if (expected_chunks < 1) throw Error("expected_chunks must be >= 1");
  const SourceText lines = SourceText::FromString(text);
  std::vector<Lines> groups(1);
  for (const std::string& l : lines.lines) {
    if (l == kChunkSeparator) {
      groups.emplace_back();
    } else {
      groups.back().push_back(l);
    }
  }
  if (static_cast<int>(groups.size()) != expected_chunks) {
    throw MalformedOutputError(
        "expected " + std::to_string(expected_chunks - 1) + " separator(s), found " +
        std::to_string(groups.size() - 1));
  }
  std::vector<Lines> out;
  out.reserve(groups.size());
  for (Lines& g : groups) {
    const auto body = std::find(g.begin(), g.end(), kBodyMarker);
    if (body == g.end()) {
      for (const std::string& l : g) {
        if (ContainsMarker(l)) throw MalformedOutputError("stray marker: " + l);
      }
      out.push_back(std::move(g));
      continue;
    }
    // Echoed segment: PRE? ... BODY ... POST? ...
    if (g.front() != kPreMarker && body != g.begin()) {
      throw MalformedOutputError("context before " + std::string(kBodyMarker) +
                                 " without " + std::string(kPreMarker));
    }
    const auto post = std::find(body + 1, g.end(), kPostMarker);
    Lines kept(body + 1, post);
    for (auto it = g.begin(); it != g.end(); ++it) {
      const bool structural = (it == g.begin() && *it == kPreMarker) ||
                              it == body || it == post;
      if (!structural && ContainsMarker(*it)) {
        throw MalformedOutputError("stray marker: " + *it);
      }
    }
    out.push_back(std::move(kept));
  }
  return out;
}

IngredientIndex BuildIngredientIndex(const fs::path& project,
                                     const SubjectLanguage& lang) {
  IngredientIndex index;
  std::vector<fs::path> paths;
  if (fs::is_directory(project)) {
    for (const auto& entry : fs::recursive_directory_iterator(project)) {
      if (entry.is_regular_file() &&
          entry.path().extension() == lang.file_extension()) {
        paths.push_back(entry.path());
      }
    }
  }
  std::sort(paths.begin(), paths.end());

  struct Parsed {
    std::string file;
    GenericTree tree;
  };
  std::vector<Parsed> parsed;
  for (const fs::path& p : paths) {
    const std::string rel = fs::relative(p, project).generic_string();
    try {
      parsed.push_back({rel, lang.Parse(ReadSource(p, rel).ToString())});
    } catch (const ParseError&) {
      index.parse_failures.push_back(rel);
    }
  }

  std::set<std::string> method_names;
  std::set<std::string> classes;
  std::set<std::tuple<std::string, std::string, std::string>> seen_methods;
  std::set<std::tuple<std::string, std::string, std::string>> seen_fields;
  for (const Parsed& f : parsed) {
    const GenericTree& t = f.tree;
    for (int cls : t.node(t.root()).children) {
      if (t.node(cls).kind != "Class") continue;
      const std::string& cname = t.node(cls).value;
      classes.insert(cname);
      for (int m : t.node(cls).children) {
        const auto& member = t.node(m);
        const std::string qualified = cname + "." + member.value;
        if (member.kind == "Field") {
          FieldEntry e{qualified, t.node(member.children[0]).value, f.file};
          if (seen_fields.emplace(e.name, e.type_name, e.file).second) {
            index.fields.push_back(std::move(e));
          }
        } else if (member.kind == "Method") {
          std::string sig = t.node(member.children[0]).value + " " +
                            member.value + "(";
          const auto& params = t.node(member.children[1]).children;
          for (std::size_t i = 0; i < params.size(); ++i) {
            if (i > 0) sig += ",";
            sig += t.node(t.node(params[i]).children[0]).value;
          }
          sig += ")";
          MethodEntry e{qualified, sig, f.file};
          if (seen_methods.emplace(e.name, e.signature, e.file).second) {
            method_names.insert(qualified);
            index.methods.push_back(std::move(e));
          }
        }
      }
    }
  }

  std::set<std::pair<std::string, std::string>> seen_rel;
  for (const Parsed& f : parsed) {
    const GenericTree& t = f.tree;
    for (int cls : t.node(t.root()).children) {
      if (t.node(cls).kind != "Class") continue;
      const std::string& cname = t.node(cls).value;
      for (int m : t.node(cls).children) {
        if (t.node(m).kind != "Method") continue;
        const std::string caller = cname + "." + t.node(m).value;
        std::function<void(int)> walk = [&](int id) {
          const auto& n = t.node(id);
          std::string callee;
          if (n.kind == "Call") {
            callee = cname + "." + n.value;
          } else if (n.kind == "MethodCall") {
            const auto& recv = t.node(n.children[0]);
            if (recv.kind == "Name" && classes.contains(recv.value)) {
              callee = recv.value + "." + n.value;
            }
          }
          if (!callee.empty() && method_names.contains(callee) &&
              seen_rel.emplace(caller, callee).second) {
            index.relations.push_back({caller, callee});
          }
          for (int c : n.children) walk(c);
        };
        walk(m);
      }
    }
  }
  return index;
}

}  // namespace blockrepair
