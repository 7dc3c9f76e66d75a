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

#include "blockrepair/genbridge.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace blockrepair {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Mix(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
  return a;
}

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Lines SplitText(const std::string& text) {
  return SourceText::FromString(text).lines;
}

GeneratorOutput ParseRecord(const std::string& line, int line_no,
                            std::string& block_id) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CandidateFormatError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!j.is_object()) throw CandidateFormatError("record is not an object", line_no);
  for (const char* key : {"block_id", "rank", "model_score", "text"}) {
    if (!j.contains(key)) {
      throw CandidateFormatError(std::string("missing field \"") + key + "\"", line_no);
    }
  }
  if (!j["block_id"].is_string() || !j["text"].is_string()) {
    throw CandidateFormatError("block_id and text must be strings", line_no);
  }
  if (!j["rank"].is_number_integer()) {
    throw CandidateFormatError("rank must be an integer", line_no);
  }
  if (!j["model_score"].is_number()) {
    throw CandidateFormatError("model_score must be a number", line_no);
  }
  const std::string id = j["block_id"].get<std::string>();
  if (block_id.empty()) {
    block_id = id;
  } else if (id != block_id) {
    throw CandidateFormatError("block_id '" + id + "' differs from '" + block_id + "'",
                               line_no);
  }
  return {j["rank"].get<int>(), j["model_score"].get<double>(),
          j["text"].get<std::string>()};
}

// --- mock generator -------------------------------------------------------

struct MutationContext {
  const SubjectLanguage& lang;
  std::vector<std::string> identifiers;  // sorted, unique
  std::mt19937_64 rng;

  std::size_t Pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
};

std::string FlipOperator(const std::string& op) {
  static const std::map<std::string, std::string> kFlips = {
      {"<", "<="},  {"<=", "<"},  {">", ">="},  {">=", ">"},
      {"==", "!="}, {"!=", "=="}, {"+", "-"},   {"-", "+"},
      {"&&", "||"}, {"||", "&&"}, {"*", "/"},   {"/", "*"},
      {"++", "--"}, {"--", "++"}, {"+=", "-="}, {"-=", "+="},
  };
  auto it = kFlips.find(op);
  return it == kFlips.end() ? std::string() : it->second;
}

std::string Indent(const Lines& body, const BlockSegment& seg) {
  const std::string* ref = nullptr;
  if (!body.empty()) ref = &body.front();
  else if (!seg.post_context.empty()) ref = &seg.post_context.front();
  else if (!seg.pre_context.empty()) ref = &seg.pre_context.back();
  if (ref == nullptr) return "";
  return ref->substr(0, ref->find_first_not_of(" \t") == std::string::npos
                            ? 0
                            : ref->find_first_not_of(" \t"));
}

// Rewrites one token of one line. Returns false when nothing applies.
bool MutateToken(Lines& body, MutationContext& ctx) {
  struct Site {
    std::size_t line;
    Token token;
    std::string replacement;
  };
  std::vector<Site> sites;
  for (std::size_t i = 0; i < body.size(); ++i) {
    for (const Token& t : ctx.lang.Tokenize(body[i])) {
      std::string rep;
      switch (t.kind) {
        case TokenKind::kIdentifier:
          if (ctx.identifiers.size() > 1) {
            do {
              rep = ctx.identifiers[ctx.Pick(ctx.identifiers.size())];
            } while (rep == t.text);
          }
          break;
        case TokenKind::kNumber: {
          long v = std::strtol(t.text.c_str(), nullptr, 10);
          const long choices[] = {v + 1, v - 1, 0, 1, 2 * v};
          rep = std::to_string(choices[ctx.Pick(5)]);
          if (rep == t.text) rep = std::to_string(v + 1);
          if (rep[0] == '-') rep = std::to_string(v + 1);
          break;
        }
        case TokenKind::kOperator:
          rep = FlipOperator(t.text);
          break;
        default:
          break;
      }
      if (!rep.empty()) sites.push_back({i, t, rep});
    }
  }
  if (sites.empty()) return false;
  const Site& s = sites[ctx.Pick(sites.size())];
  body[s.line].replace(s.token.offset, s.token.text.size(), s.replacement);
  return true;
}

std::string SynthesizeStatement(MutationContext& ctx, int salt) {
  const std::string a = ctx.identifiers.empty()
                            ? "tmp"
                            : ctx.identifiers[ctx.Pick(ctx.identifiers.size())];
  const std::string b = ctx.identifiers.empty()
                            ? "tmp"
                            : ctx.identifiers[ctx.Pick(ctx.identifiers.size())];
  const std::string num = std::to_string(salt);
  switch (ctx.Pick(4)) {
    case 0: return a + " = " + b + " + " + num + ";";
    case 1: return "if (" + a + " < " + num + ") { " + a + " = " + num + "; }";
    case 2: return a + "++;";
    default: return "if (" + a + " == " + b + ") { return " + a + "; }";
  }
}

Lines MutateBody(const BlockSegment& seg, MutationContext& ctx) {
  Lines body = seg.body;
  const int ops = 1 + static_cast<int>(ctx.Pick(3));
  const std::string indent = Indent(body, seg);
  for (int op = 0; op < ops; ++op) {
    const std::size_t choice = ctx.Pick(10);
    if (choice < 6 && MutateToken(body, ctx)) continue;
    if (choice == 6 && !body.empty()) {
      body.erase(body.begin() + static_cast<long>(ctx.Pick(body.size())));
    } else if (choice == 7 && !body.empty()) {
      const std::size_t i = ctx.Pick(body.size());
      body.insert(body.begin() + static_cast<long>(i), body[i]);
    } else {
      const std::size_t at = ctx.Pick(body.size() + 1);
      body.insert(body.begin() + static_cast<long>(at),
                  indent + SynthesizeStatement(ctx, static_cast<int>(ctx.Pick(10))));
    }
  }
  return body;
}

std::string BreakSeparators(const std::string& label, int chunks) {
  if (chunks == 1) return label + std::string(kChunkSeparator) + "\n";
  const std::string sep = std::string(kChunkSeparator) + "\n";
  std::string out = label;
  out.erase(out.find(sep), sep.size());
  return out;
}

}  // namespace

void CheckResponse(const GeneratorResponse& response) {
  for (std::size_t i = 0; i < response.outputs.size(); ++i) {
    const GeneratorOutput& o = response.outputs[i];
    const int pos = static_cast<int>(i) + 1;
    if (o.rank != pos) {
      throw CandidateFormatError("rank " + std::to_string(o.rank) +
                                     " out of sequence, expected " + std::to_string(pos),
                                 pos);
    }
    if (!std::isfinite(o.model_score)) {
      throw CandidateFormatError("model_score is not finite", pos);
    }
    if (i > 0 && o.model_score > response.outputs[i - 1].model_score) {
      throw CandidateFormatError("model_score increases over the previous record", pos);
    }
  }
}

GeneratorResponse ParseCandidates(std::istream& in) {
  GeneratorResponse response;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    GeneratorOutput out = ParseRecord(line, line_no, response.block_id);
    const int expected = static_cast<int>(response.outputs.size()) + 1;
    if (out.rank != expected) {
      throw CandidateFormatError("rank " + std::to_string(out.rank) +
                                     " out of sequence, expected " +
                                     std::to_string(expected),
                                 line_no);
    }
    if (!std::isfinite(out.model_score)) {
      throw CandidateFormatError("model_score is not finite", line_no);
    }
    if (!response.outputs.empty() &&
        out.model_score > response.outputs.back().model_score) {
      throw CandidateFormatError("model_score increases over the previous record",
                                 line_no);
    }
    response.outputs.push_back(std::move(out));
  }
  return response;
}

GeneratorResponse ReadCandidates(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read candidates file " + path.string());
  return ParseCandidates(in);
}

std::string CandidatesToJsonl(const GeneratorResponse& response) {
  CheckResponse(response);
  std::string out;
  for (const GeneratorOutput& o : response.outputs) {
    json j = {{"block_id", response.block_id},
              {"rank", o.rank},
              {"model_score", o.model_score},
              {"text", o.text}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

void WriteCandidates(const fs::path& path, const GeneratorResponse& response) {
  const std::string text = CandidatesToJsonl(response);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

MockHints ParseMockHints(const std::string& json_text) {
  MockHints hints;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("hints: invalid JSON: ") + e.what());
  }
  for (const json& p : j.value("plants", json::array())) {
    MockPlant plant;
    plant.rank = p.at("rank").get<int>();
    if (plant.rank < 1) throw Error("hints: plant rank must be >= 1");
    for (const json& f : p.at("fragments")) {
      if (f.is_null()) {
        plant.fragments.emplace_back();
      } else {
        plant.fragments.emplace_back(SplitText(f.get<std::string>()));
      }
    }
    plant.needs_context = p.value("needs_context", "");
    plant.malformed = p.value("malformed", false);
    hints.plants.push_back(std::move(plant));
  }
  return hints;
}

MockHints ReadMockHints(const fs::path& path) {
  return ParseMockHints(ReadAll(path));
}

GeneratorResponse GenerateMock(const GeneratorRequest& request,
                               const BuggyBlock& block, const MockHints& hints,
                               std::uint64_t seed, const SubjectLanguage& lang) {
  if (request.beam_size < 1) throw InvariantError("beam_size must be >= 1");
  const int chunks = static_cast<int>(block.segments.size());

  std::set<std::string> ids;
  std::string context;
  for (const BlockSegment& s : block.segments) {
    for (const Lines* part : {&s.pre_context, &s.body, &s.post_context}) {
      for (const std::string& l : *part) {
        for (const Token& t : lang.Tokenize(l)) {
          if (t.kind == TokenKind::kIdentifier) ids.insert(t.text);
        }
      }
    }
    for (const Lines* part : {&s.pre_context, &s.post_context}) {
      for (const std::string& l : *part) context += l + "\n";
    }
  }

  std::map<int, const MockPlant*> plants;
  for (const MockPlant& p : hints.plants) {
    if (p.rank > request.beam_size) continue;
    if (!p.needs_context.empty() && context.find(p.needs_context) == std::string::npos) {
      continue;
    }
    if (static_cast<int>(p.fragments.size()) != chunks) {
      throw Error("hints: plant at rank " + std::to_string(p.rank) + " has " +
                  std::to_string(p.fragments.size()) + " fragments for a " +
                  std::to_string(chunks) + "-chunk block");
    }
    plants.emplace(p.rank, &p);
  }

  const std::uint64_t base = Mix(seed, Fnv1a(block.block_id));
  MutationContext ctx{lang, {ids.begin(), ids.end()}, std::mt19937_64()};
  std::set<std::string> seen;
  GeneratorResponse response;
  response.block_id = request.block_id;

  auto mutated = [&](const MockPlant* plant) {
    std::vector<Lines> bodies;
    for (int c = 0; c < chunks; ++c) {
      const auto* given = plant ? &plant->fragments[static_cast<std::size_t>(c)] : nullptr;
      if (given != nullptr && given->has_value()) {
        bodies.push_back(**given);
      } else {
        bodies.push_back(MutateBody(block.segments[static_cast<std::size_t>(c)], ctx));
      }
    }
    return SerializeLabel(bodies);
  };

  for (int rank = 1; rank <= request.beam_size; ++rank) {
    ctx.rng.seed(Mix(base, static_cast<std::uint64_t>(rank)));
    auto plant = plants.find(rank);
    const MockPlant* p = plant == plants.end() ? nullptr : plant->second;
    std::string text;
    for (int attempt = 0;; ++attempt) {
      text = mutated(p);
      if (p != nullptr && p->malformed) text = BreakSeparators(text, chunks);
      if (!seen.contains(text)) break;
      if (attempt >= 32) {
        // Give up on randomness; a rank-tagged statement is always new.
        std::vector<Lines> bodies = SplitBlockOutput(mutated(p), chunks);
        bodies.back().push_back(Indent(bodies.back(), block.segments.back()) +
                                "int r" + std::to_string(rank) + " = " +
                                std::to_string(rank) + ";");
        text = SerializeLabel(bodies);
        break;
      }
    }
    seen.insert(text);
    response.outputs.push_back({rank, -0.01 * (rank - 1), std::move(text)});
  }
  return response;
}

GeneratorResponse RunExternalGenerator(const std::vector<std::string>& argv,
                                       const GeneratorRequest& request,
                                       const fs::path& workdir,
                                       Clock::time_point deadline) {
  fs::create_directories(workdir);
  const fs::path request_path = fs::absolute(workdir / "request.json");
  const fs::path output_path = fs::absolute(workdir / "generated.jsonl");
  json req = {{"block_id", request.block_id},
              {"block", request.block_text},
              {"chunk_count", request.chunk_count},
              {"beam_size", request.beam_size}};
  if (request.ingredients != nullptr) {
    json methods = json::array(), fields = json::array(), relations = json::array();
    for (const auto& m : request.ingredients->methods) {
      methods.push_back({m.name, m.signature, m.file});
    }
    for (const auto& f : request.ingredients->fields) {
      fields.push_back({f.name, f.type_name, f.file});
    }
    for (const auto& r : request.ingredients->relations) {
      relations.push_back({r.caller, r.callee});
    }
    req["ingredients"] = {{"methods", methods}, {"fields", fields}, {"relations", relations}};
  }
  std::ofstream(request_path) << req.dump(2) << '\n';
  fs::remove(output_path);

  const auto args = SubstituteArgs(argv, {{"REQUEST", request_path.string()},
                                          {"OUTPUT", output_path.string()},
                                          {"BEAM", std::to_string(request.beam_size)},
                                          {"BLOCK_ID", request.block_id}});
  const CommandResult r =
      RunCommand(args, workdir, workdir / "generator.log", deadline);
  switch (r.status) {
    case CommandResult::Status::kSpawnFailed:
      throw Error("generator: " + r.diagnostic);
    case CommandResult::Status::kTimedOut:
    case CommandResult::Status::kCancelled:
      throw Error("generator: deadline expired");
    case CommandResult::Status::kExited:
      break;
  }
  if (r.exit_code != 0) {
    throw Error("generator exited with status " + std::to_string(r.exit_code) +
                " (log: " + (workdir / "generator.log").string() + ")");
  }
  GeneratorResponse response = ReadCandidates(output_path);
  if (!response.outputs.empty() && response.block_id != request.block_id) {
    throw Error("generator answered for block '" + response.block_id +
                "' instead of '" + request.block_id + "'");
  }
  response.block_id = request.block_id;
  if (static_cast<int>(response.outputs.size()) > request.beam_size) {
    response.outputs.resize(static_cast<std::size_t>(request.beam_size));
  }
  return response;
}

}  // namespace blockrepair
