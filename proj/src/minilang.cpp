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

#include "blockrepair/minilang.hpp"

#include <array>
#include <cctype>

namespace blockrepair {
namespace {

constexpr std::array<std::string_view, 13> kKeywords = {
    "class", "if",   "else", "for",   "while", "return", "break",
    "continue", "new", "true", "false", "null", "throw"};

constexpr std::array<std::string_view, 13> kTwoCharOps = {
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "%="};

bool IsKeyword(std::string_view s) {
  for (auto k : kKeywords) {
    if (k == s) return true;
  }
  return false;
}

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  GenericTree ParseUnit() {
    GenericTree tree("Unit");
    tree_ = &tree;
    while (!AtEnd()) ParseClass(tree.root());
    return tree;
  }

  GenericTree ParseStatementList() {
    GenericTree tree("Stmts");
    tree_ = &tree;
    while (!AtEnd()) ParseStatement(tree.root());
    return tree;
  }

 private:
  bool AtEnd() const { return pos_ >= toks_.size(); }
  const Token& Peek(std::size_t ahead = 0) const {
    static const Token kEof{TokenKind::kUnknown, "<eof>", 0, 0};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : kEof;
  }
  int Line() const {
    if (!AtEnd()) return Peek().line;
    return toks_.empty() ? 1 : toks_.back().line;
  }
  bool Is(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return pos_ + ahead < toks_.size() && t.kind != TokenKind::kString &&
           t.text == text;
  }
  bool IsIdent(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() &&
           Peek(ahead).kind == TokenKind::kIdentifier;
  }
  bool Accept(std::string_view text) {
    if (!Is(text)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(what + " near '" + Peek().text + "'", Line());
  }
  void Expect(std::string_view text) {
    if (!Accept(text)) Fail("expected '" + std::string(text) + "'");
  }
  std::string ExpectIdent() {
    if (!IsIdent()) Fail("expected identifier");
    return toks_[pos_++].text;
  }

  int Add(int parent, const char* kind, std::string value = {}) {
    return tree_->AddChild(parent, kind, std::move(value));
  }

  // A detached subtree is built under a scratch parent and re-parented when
  // the enclosing node is known; expressions need this because the operator
  // is only seen after the left operand.
  void Reparent(int node, int new_parent) {
    auto& n = tree_->mutable_node(node);
    auto& old_kids = tree_->mutable_node(n.parent).children;
    std::erase(old_kids, node);
    n.parent = new_parent;
    tree_->mutable_node(new_parent).children.push_back(node);
  }

  std::string ParseTypeName() {
    std::string type = ExpectIdent();
    if (Is("[") && Is("]", 1)) {
      pos_ += 2;
      type += "[]";
    }
    return type;
  }

  bool LooksLikeDeclaration() const {
    if (!IsIdent()) return false;
    if (IsIdent(1)) return true;
    return Is("[", 1) && Is("]", 2) && IsIdent(3);
  }

  void ParseClass(int parent) {
    Expect("class");
    int cls = Add(parent, "Class", ExpectIdent());
    Expect("{");
    while (!Accept("}")) {
      if (AtEnd()) Fail("unterminated class");
      ParseMember(cls);
    }
  }

  void ParseMember(int cls) {
    const std::string type = ParseTypeName();
    const std::string name = ExpectIdent();
    if (Accept("(")) {
      int method = Add(cls, "Method", name);
      Add(method, "Type", type);
      int params = Add(method, "Params");
      if (!Accept(")")) {
        do {
          std::string ptype = ParseTypeName();
          int param = Add(params, "Param", ExpectIdent());
          Add(param, "Type", ptype);
        } while (Accept(","));
        Expect(")");
      }
      ParseBlock(method);
      return;
    }
    int field = Add(cls, "Field", name);
    Add(field, "Type", type);
    if (Accept("=")) ParseExpr(field);
    Expect(";");
  }

  void ParseBlock(int parent) {
    Expect("{");
    int block = Add(parent, "Block");
    while (!Accept("}")) {
      if (AtEnd()) Fail("unterminated block");
      ParseStatement(block);
    }
  }

  // Declaration or expression, without the trailing ';'.
  void ParseSimple(int parent) {
    if (LooksLikeDeclaration()) {
      std::string type = ParseTypeName();
      int var = Add(parent, "LocalVar", ExpectIdent());
      Add(var, "Type", type);
      if (Accept("=")) ParseExpr(var);
      return;
    }
    int stmt = Add(parent, "ExprStmt");
    ParseExpr(stmt);
  }

  void ParseStatement(int parent) {
    if (Is("{")) {
      ParseBlock(parent);
    } else if (Accept(";")) {
      Add(parent, "Empty");
    } else if (Accept("if")) {
      int node = Add(parent, "If");
      Expect("(");
      ParseExpr(node);
      Expect(")");
      ParseStatement(node);
      if (Accept("else")) ParseStatement(node);
    } else if (Accept("while")) {
      int node = Add(parent, "While");
      Expect("(");
      ParseExpr(node);
      Expect(")");
      ParseStatement(node);
    } else if (Accept("for")) {
      int node = Add(parent, "For");
      Expect("(");
      int init = Add(node, "ForInit");
      if (!Is(";")) ParseSimple(init);
      Expect(";");
      int cond = Add(node, "ForCond");
      if (!Is(";")) ParseExpr(cond);
      Expect(";");
      int update = Add(node, "ForUpdate");
      if (!Is(")")) {
        do {
          int stmt = Add(update, "ExprStmt");
          ParseExpr(stmt);
        } while (Accept(","));
      }
      Expect(")");
      ParseStatement(node);
    } else if (Accept("return")) {
      int node = Add(parent, "Return");
      if (!Is(";")) ParseExpr(node);
      Expect(";");
    } else if (Accept("break")) {
      Add(parent, "Break");
      Expect(";");
    } else if (Accept("continue")) {
      Add(parent, "Continue");
      Expect(";");
    } else if (Accept("throw")) {
      int node = Add(parent, "Throw");
      ParseExpr(node);
      Expect(";");
    } else if (Is("else") || Is("}") || Is(")") || Is("class")) {
      Fail("unexpected token");
    } else {
      ParseSimple(parent);
      Expect(";");
    }
  }

  // Expressions -------------------------------------------------------------

  int ParseExpr(int parent) { return ParseAssign(parent); }

  int ParseAssign(int parent) {
    int lhs = ParseBinary(parent, 0);
    static constexpr std::array<std::string_view, 6> kAssignOps = {
        "=", "+=", "-=", "*=", "/=", "%="};
    for (auto op : kAssignOps) {
      if (Is(op)) {
        const std::string& k = tree_->node(lhs).kind;
        if (k != "Name" && k != "Member" && k != "Index") {
          Fail("invalid assignment target");
        }
        ++pos_;
        int node = Add(parent, "Assign", std::string(op));
        Reparent(lhs, node);
        ParseAssign(node);
        return node;
      }
    }
    return lhs;
  }

  static int Precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return -1;
  }

  int ParseBinary(int parent, int min_prec) {
    int lhs = ParseUnary(parent);
    for (;;) {
      if (AtEnd() || Peek().kind != TokenKind::kOperator) return lhs;
      const std::string op = Peek().text;
      const int prec = Precedence(op);
      if (prec < 0 || prec < min_prec) return lhs;
      ++pos_;
      int node = Add(parent, "Binary", op);
      Reparent(lhs, node);
      ParseBinary(node, prec + 1);
      lhs = node;
    }
  }

  int ParseUnary(int parent) {
    for (std::string_view op : {"!", "-", "++", "--"}) {
      if (Is(op) && Peek().kind == TokenKind::kOperator) {
        ++pos_;
        int node = Add(parent, "Unary", std::string(op));
        ParseUnary(node);
        return node;
      }
    }
    return ParsePostfix(parent);
  }

  int ParsePostfix(int parent) {
    int expr = ParsePrimary(parent);
    for (;;) {
      if (Accept(".")) {
        std::string member = ExpectIdent();
        if (Accept("(")) {
          int call = Add(parent, "MethodCall", member);
          Reparent(expr, call);
          ParseArgs(call);
          expr = call;
        } else {
          int node = Add(parent, "Member", member);
          Reparent(expr, node);
          expr = node;
        }
      } else if (Accept("[")) {
        int node = Add(parent, "Index");
        Reparent(expr, node);
        ParseExpr(node);
        Expect("]");
        expr = node;
      } else if (Is("++") || Is("--")) {
        int node = Add(parent, "Postfix", Peek().text);
        ++pos_;
        Reparent(expr, node);
        expr = node;
      } else {
        return expr;
      }
    }
  }

  void ParseArgs(int call) {
    if (Accept(")")) return;
    do {
      ParseExpr(call);
    } while (Accept(","));
    Expect(")");
  }

  int ParsePrimary(int parent) {
    if (AtEnd()) Fail("expected expression");
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kNumber:
        ++pos_;
        return Add(parent, "IntLit", t.text);
      case TokenKind::kString:
        ++pos_;
        return Add(parent, "StrLit", t.text);
      case TokenKind::kIdentifier: {
        std::string name = t.text;
        ++pos_;
        if (Accept("(")) {
          int call = Add(parent, "Call", name);
          ParseArgs(call);
          return call;
        }
        return Add(parent, "Name", name);
      }
      case TokenKind::kKeyword:
        if (t.text == "true" || t.text == "false") {
          ++pos_;
          return Add(parent, "BoolLit", t.text);
        }
        if (t.text == "null") {
          ++pos_;
          return Add(parent, "NullLit");
        }
        if (t.text == "new") {
          ++pos_;
          std::string elem = ExpectIdent();
          Expect("[");
          int node = Add(parent, "NewArray", elem);
          ParseExpr(node);
          Expect("]");
          return node;
        }
        break;
      case TokenKind::kPunct:
        if (t.text == "(") {
          ++pos_;
          int inner = ParseExpr(parent);
          Expect(")");
          return inner;
        }
        break;
      default:
        break;
    }
    Fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  GenericTree* tree_ = nullptr;
};

std::vector<Token> CodeOnly(std::vector<Token> tokens) {
  std::erase_if(tokens, [](const Token& t) {
    return t.kind == TokenKind::kComment;
  });
  return tokens;
}

void RejectUnknown(const std::vector<Token>& tokens) {
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kUnknown) {
      throw ParseError("unexpected character '" + t.text + "'", t.line);
    }
  }
}

bool IsNullStatement(const GenericTree& tree, int id) {
  const auto& n = tree.node(id);
  if (n.kind == "Empty") return true;
  if (n.kind == "While" || n.kind == "For") {
    return tree.node(n.children.back()).kind == "Empty";
  }
  if (n.kind == "If") {
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      if (tree.node(n.children[i]).kind != "Empty") return false;
    }
    return true;
  }
  return false;
}

}  // namespace

std::vector<Token> MiniJava::Tokenize(std::string_view text) const {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    Token tok;
    tok.line = line;
    tok.offset = start;
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      tok.kind = TokenKind::kComment;
    } else if (IsIdentStart(c)) {
      while (i < n && IsIdentChar(text[i])) ++i;
      tok.kind = IsKeyword(text.substr(start, i - start))
                     ? TokenKind::kKeyword
                     : TokenKind::kIdentifier;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      tok.kind = TokenKind::kNumber;
    } else if (c == '"') {
      ++i;
      bool closed = false;
      while (i < n && text[i] != '\n') {
        if (text[i] == '\\' && i + 1 < n && text[i + 1] != '\n') {
          i += 2;
          continue;
        }
        if (text[i++] == '"') {
          closed = true;
          break;
        }
      }
      tok.kind = closed ? TokenKind::kString : TokenKind::kUnknown;
    } else if (std::string_view("(){}[];,.").find(c) != std::string_view::npos) {
      ++i;
      tok.kind = TokenKind::kPunct;
    } else {
      tok.kind = TokenKind::kUnknown;
      if (i + 1 < n) {
        for (auto op : kTwoCharOps) {
          if (text.substr(i, 2) == op) {
            i += 2;
            tok.kind = TokenKind::kOperator;
            break;
          }
        }
      }
      if (tok.kind == TokenKind::kUnknown) {
        ++i;
        if (std::string_view("+-*/%<>=!").find(c) != std::string_view::npos) {
          tok.kind = TokenKind::kOperator;
        }
      }
    }
    tok.text = std::string(text.substr(start, i - start));
    out.push_back(std::move(tok));
  }
  return out;
}

GenericTree MiniJava::Parse(std::string_view text) const {
  std::vector<Token> tokens = CodeOnly(Tokenize(text));
  RejectUnknown(tokens);
  return Parser(std::move(tokens)).ParseUnit();
}

GenericTree MiniJava::ParseStatements(std::string_view text) const {
  std::vector<Token> tokens = CodeOnly(Tokenize(text));
  RejectUnknown(tokens);
  return Parser(std::move(tokens)).ParseStatementList();
}

std::string MiniJava::Normalize(std::string_view text) const {
  std::vector<Token> tokens = CodeOnly(Tokenize(text));
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kUnknown) return std::string(text);
  }
  std::string out;
  int depth = 0;
  int parens = 0;
  bool line_start = true;
  auto newline = [&] {
    if (!line_start) out += '\n';
    line_start = true;
  };
  for (const Token& t : tokens) {
    const bool punct = t.kind == TokenKind::kPunct;
    if (punct && t.text == "}") {
      newline();
      depth = depth > 0 ? depth - 1 : 0;
    }
    if (line_start) {
      out.append(static_cast<std::size_t>(depth) * 2, ' ');
      line_start = false;
    } else {
      out += ' ';
    }
    out += t.text;
    if (!punct) continue;
    if (t.text == "(") {
      ++parens;
    } else if (t.text == ")") {
      parens = parens > 0 ? parens - 1 : 0;
    } else if (t.text == "{") {
      ++depth;
      newline();
    } else if (t.text == "}") {
      newline();
    } else if (t.text == ";" && parens == 0) {
      newline();
    }
  }
  newline();
  return out;
}

bool MiniJava::IsCommentLine(std::string_view line) const {
  std::size_t i = line.find_first_not_of(" \t\r");
  return i != std::string_view::npos && line.substr(i, 2) == "//";
}

bool MiniJava::IsNullLocation(std::string_view line) const {
  try {
    GenericTree tree = ParseStatements(line);
    const auto& stmts = tree.node(tree.root()).children;
    if (stmts.empty()) return false;
    for (int s : stmts) {
      if (!IsNullStatement(tree, s)) return false;
    }
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

const MiniJava& DefaultLanguage() {
  static const MiniJava lang;
  return lang;
}

}  // namespace blockrepair
