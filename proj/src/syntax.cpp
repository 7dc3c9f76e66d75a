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

#include "blockrepair/syntax.hpp"

#include <functional>

namespace blockrepair {

GenericTree::GenericTree(std::string root_kind, std::string root_value) {
  nodes_.push_back(Node{std::move(root_kind), std::move(root_value), -1, {}});
}

int GenericTree::AddChild(int parent, std::string kind, std::string value) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{std::move(kind), std::move(value), parent, {}});
  nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
  return id;
}

std::vector<int> GenericTree::PreOrder() const {
  std::vector<int> out;
  if (nodes_.empty()) return out;
  out.reserve(nodes_.size());
  std::vector<int> stack{root()};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    out.push_back(id);
    const auto& kids = node(id).children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<int> GenericTree::PostOrder() const {
  std::vector<int> out;
  if (nodes_.empty()) return out;
  out.reserve(nodes_.size());
  // (node, next child index)
  std::vector<std::pair<int, std::size_t>> stack{{root(), 0}};
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& kids = node(id).children;
    if (next < kids.size()) {
      int child = kids[next++];
      stack.emplace_back(child, 0);
    } else {
      out.push_back(id);
      stack.pop_back();
    }
  }
  return out;
}

bool GenericTree::StructurallyEqual(const GenericTree& other) const {
  if (empty() || other.empty()) return empty() && other.empty();
  std::vector<std::pair<int, int>> stack{{root(), other.root()}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const Node& x = node(a);
    const Node& y = other.node(b);
    if (x.kind != y.kind || x.value != y.value ||
        x.children.size() != y.children.size()) {
      return false;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
      stack.emplace_back(x.children[i], y.children[i]);
    }
  }
  return true;
}

std::string GenericTree::ToSExpr() const {
  if (empty()) return "()";
  std::string out;
  std::function<void(int)> emit = [&](int id) {
    const Node& n = node(id);
    out += '(';
    out += n.kind;
    if (!n.value.empty()) {
      out += ':';
      out += n.value;
    }
    for (int c : n.children) {
      out += ' ';
      emit(c);
    }
    out += ')';
  };
  emit(root());
  return out;
}

std::vector<std::string> CodeTokens(const SubjectLanguage& lang,
                                    std::string_view text) {
  std::vector<std::string> out;
  for (Token& t : lang.Tokenize(text)) {
    if (t.kind != TokenKind::kComment) out.push_back(std::move(t.text));
  }
  return out;
}

bool TreesEqualNormalized(const SourceText& a, const SourceText& b,
                          const SubjectLanguage& lang) {
  try {
    GenericTree ta = lang.Parse(lang.Normalize(a.ToString()));
    GenericTree tb = lang.Parse(lang.Normalize(b.ToString()));
    return ta.StructurallyEqual(tb);
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace blockrepair
