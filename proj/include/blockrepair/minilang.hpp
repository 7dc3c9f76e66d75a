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

// MiniJava: the bundled demonstration subject language. A compilation unit
// is a list of classes; classes hold fields and methods; method bodies use
// assignments, calls, if/else, for, while, return, break, continue, throw,
// blocks and line comments. Files use the ".mj" extension.
//
// Tree node kinds produced by Parse:
//   Unit, Class:name, Field:name, Method:name, Params, Param:name, Type:t,
//   Block, If, For, ForInit, ForCond, ForUpdate, While, Return, Break,
//   Continue, Throw, Empty, LocalVar:name, ExprStmt, Assign:op, Binary:op,
//   Unary:op, Postfix:op, Call:name, MethodCall:name, Member:name, Index,
//   NewArray:type, Name:id, IntLit:v, StrLit:v, BoolLit:v, NullLit

#ifndef BLOCKREPAIR_MINILANG_HPP_
#define BLOCKREPAIR_MINILANG_HPP_

#include "blockrepair/syntax.hpp"

namespace blockrepair {

class MiniJava final : public SubjectLanguage {
 public:
  std::string_view name() const override { return "minijava"; }
  std::string_view file_extension() const override { return ".mj"; }

  std::vector<Token> Tokenize(std::string_view text) const override;
  GenericTree Parse(std::string_view text) const override;
  std::string Normalize(std::string_view text) const override;
  bool IsCommentLine(std::string_view line) const override;
  bool IsNullLocation(std::string_view line) const override;

  // Parses a bare statement sequence (root kind "Stmts"). Throws ParseError.
  GenericTree ParseStatements(std::string_view text) const;
};

// Shared instance; the language is stateless.
const MiniJava& DefaultLanguage();

}  // namespace blockrepair

#endif  // BLOCKREPAIR_MINILANG_HPP_
