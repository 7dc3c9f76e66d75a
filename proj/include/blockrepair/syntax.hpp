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

// Language-neutral syntax services. A SubjectLanguage turns text into tokens
// and into a GenericTree; the repair pipeline only ever talks to this
// interface, so adding a subject language means implementing it once.

#ifndef BLOCKREPAIR_SYNTAX_HPP_
#define BLOCKREPAIR_SYNTAX_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "blockrepair/model.hpp"

namespace blockrepair {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kOperator,
  kPunct,
  kComment,
  kUnknown,
};

struct Token {
  TokenKind kind = TokenKind::kUnknown;
  std::string text;
  int line = 1;           // 1-based
  std::size_t offset = 0; // byte offset inside the tokenized text
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Ordered labelled tree stored as an arena. Node 0 is the root.
class GenericTree {
 public:
  struct Node {
    std::string kind;
    std::string value;
    int parent = -1;
    std::vector<int> children;
  };

  GenericTree() = default;
  GenericTree(std::string root_kind, std::string root_value = {});

  int AddChild(int parent, std::string kind, std::string value = {});

  int root() const { return 0; }
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  Node& mutable_node(int id) { return nodes_[static_cast<std::size_t>(id)]; }

  std::vector<int> PreOrder() const;
  std::vector<int> PostOrder() const;

  // Same shape, kinds and values; node ids are irrelevant.
  bool StructurallyEqual(const GenericTree& other) const;
  // (Kind:value child ...) rendering, mostly for test diagnostics.
  std::string ToSExpr() const;

 private:
  std::vector<Node> nodes_;
};

// Plug-in contract for a subject language.
class SubjectLanguage {
 public:
  virtual ~SubjectLanguage() = default;

  virtual std::string_view name() const = 0;
  // Source file extension including the dot, e.g. ".mj".
  virtual std::string_view file_extension() const = 0;

  // Never fails; characters outside the lexical space become kUnknown.
  // Comments are returned as kComment tokens.
  virtual std::vector<Token> Tokenize(std::string_view text) const = 0;
  // Parses a whole compilation unit. Throws ParseError.
  virtual GenericTree Parse(std::string_view text) const = 0;
  // Canonical layout. Idempotent, and Parse(Normalize(x)) succeeds iff
  // Parse(x) does.
  virtual std::string Normalize(std::string_view text) const = 0;
  virtual bool IsCommentLine(std::string_view line) const = 0;
  // True for a line that is a statement doing nothing: a lone ';' or a
  // loop/conditional header whose body is the empty statement.
  virtual bool IsNullLocation(std::string_view line) const = 0;
};

// Tokens that are not comments, as plain strings.
std::vector<std::string> CodeTokens(const SubjectLanguage& lang,
                                    std::string_view text);

// True iff both sides parse after normalization and the trees are
// structurally identical. Parse failure on either side yields false.
bool TreesEqualNormalized(const SourceText& a, const SourceText& b,
                          const SubjectLanguage& lang);

}  // namespace blockrepair

#endif  // BLOCKREPAIR_SYNTAX_HPP_
