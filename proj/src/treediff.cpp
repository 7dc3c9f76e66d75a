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

#include "blockrepair/treediff.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "blockrepair/similarity.hpp"

namespace blockrepair {
namespace {

constexpr int kMinTopDownHeight = 2;
constexpr double kMinBottomUpDice = 0.2;

std::uint64_t Mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// Per-tree tables used by the matcher.
struct TreeInfo {
  const GenericTree* tree;
  std::vector<int> height;
  std::vector<int> subtree_size;
  std::vector<int> pre_index;
  std::vector<int> preorder;
  std::vector<std::uint64_t> hash;

  explicit TreeInfo(const GenericTree& t) : tree(&t) {
    const std::size_t n = t.size();
    height.assign(n, 1);
    subtree_size.assign(n, 1);
    pre_index.assign(n, 0);
    hash.assign(n, 0);
    preorder = t.PreOrder();
    for (std::size_t i = 0; i < preorder.size(); ++i) {
      pre_index[static_cast<std::size_t>(preorder[i])] = static_cast<int>(i);
    }
    std::hash<std::string> hs;
    for (int id : t.PostOrder()) {
      const auto& node = t.node(id);
      auto u = static_cast<std::size_t>(id);
      std::uint64_t h = Mix(hs(node.kind), hs(node.value));
      for (int c : node.children) {
        auto cu = static_cast<std::size_t>(c);
        height[u] = std::max(height[u], height[cu] + 1);
        subtree_size[u] += subtree_size[cu];
        h = Mix(h, hash[cu]);
      }
      hash[u] = Mix(h, node.children.size());
    }
  }

  bool IsDescendant(int node, int ancestor) const {
    const int p = pre_index[static_cast<std::size_t>(node)];
    const int a = pre_index[static_cast<std::size_t>(ancestor)];
    return p > a && p < a + subtree_size[static_cast<std::size_t>(ancestor)];
  }
};

bool Isomorphic(const TreeInfo& a, int x, const TreeInfo& b, int y) {
  if (a.hash[static_cast<std::size_t>(x)] != b.hash[static_cast<std::size_t>(y)]) {
    return false;
  }
  std::vector<std::pair<int, int>> stack{{x, y}};
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    const auto& n = a.tree->node(p);
    const auto& m = b.tree->node(q);
    if (n.kind != m.kind || n.value != m.value ||
        n.children.size() != m.children.size()) {
      return false;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      stack.emplace_back(n.children[i], m.children[i]);
    }
  }
  return true;
}

class Mapping {
 public:
  Mapping(std::size_t n, std::size_t m) : src_(n, -1), dst_(m, -1) {}
  void Add(int a, int b) {
    src_[static_cast<std::size_t>(a)] = b;
    dst_[static_cast<std::size_t>(b)] = a;
  }
  int Dst(int a) const { return src_[static_cast<std::size_t>(a)]; }
  int Src(int b) const { return dst_[static_cast<std::size_t>(b)]; }
  bool HasSrc(int a) const { return Dst(a) >= 0; }
  bool HasDst(int b) const { return Src(b) >= 0; }

 private:
  std::vector<int> src_;
  std::vector<int> dst_;
};

void MatchSubtrees(const TreeInfo& a, int x, const TreeInfo& b, int y,
                   Mapping& m) {
  std::vector<std::pair<int, int>> stack{{x, y}};
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    m.Add(p, q);
    const auto& n = a.tree->node(p);
    const auto& o = b.tree->node(q);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      stack.emplace_back(n.children[i], o.children[i]);
    }
  }
}

// Generic LCS over index ranges, returns matched index pairs in order.
std::vector<std::pair<std::size_t, std::size_t>> Lcs(
    std::size_t n, std::size_t m,
    const std::function<bool(std::size_t, std::size_t)>& eq) {
  std::vector<std::vector<int>> len(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      len[i][j] = eq(i, j) ? len[i + 1][j + 1] + 1
                           : std::max(len[i + 1][j], len[i][j + 1]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (eq(i, j) && len[i][j] == len[i + 1][j + 1] + 1) {
      out.emplace_back(i++, j++);
    } else if (len[i + 1][j] >= len[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

void TopDown(const TreeInfo& a, const TreeInfo& b, Mapping& m) {
  // Bucket unmatched candidates by height, visit heights high to low.
  std::map<int, std::vector<int>, std::greater<>> ha;
  std::map<int, std::vector<int>, std::greater<>> hb;
  for (int id : a.preorder) ha[a.height[static_cast<std::size_t>(id)]].push_back(id);
  for (int id : b.preorder) hb[b.height[static_cast<std::size_t>(id)]].push_back(id);
  for (auto& [h, xs] : ha) {
    if (h < kMinTopDownHeight) break;
    auto it = hb.find(h);
    if (it == hb.end()) continue;
    // Group by hash so the pairing is linear in bucket size.
    std::unordered_map<std::uint64_t, std::vector<int>> by_hash;
    for (int y : it->second) {
      if (!m.HasDst(y)) by_hash[b.hash[static_cast<std::size_t>(y)]].push_back(y);
    }
    std::unordered_map<std::uint64_t, std::size_t> cursor;
    for (int x : xs) {
      if (m.HasSrc(x)) continue;
      auto found = by_hash.find(a.hash[static_cast<std::size_t>(x)]);
      if (found == by_hash.end()) continue;
      std::size_t& c = cursor[found->first];
      auto& ys = found->second;
      while (c < ys.size()) {
        int y = ys[c++];
        if (m.HasDst(y)) continue;
        if (Isomorphic(a, x, b, y)) {
          MatchSubtrees(a, x, b, y, m);
          break;
        }
      }
    }
  }
}

void BottomUp(const TreeInfo& a, const TreeInfo& b, Mapping& m) {
  const GenericTree& ta = *a.tree;
  const GenericTree& tb = *b.tree;
  for (int x : ta.PostOrder()) {
    if (m.HasSrc(x) || ta.node(x).children.empty()) continue;
    if (x == ta.root()) {
      if (!m.HasDst(tb.root()) && ta.node(x).kind == tb.node(tb.root()).kind) {
        m.Add(x, tb.root());
      }
      continue;
    }
    // Candidates: unmatched same-kind ancestors of partners of descendants.
    std::vector<int> candidates;
    std::unordered_set<int> seen;
    const int begin = a.pre_index[static_cast<std::size_t>(x)];
    const int end = begin + a.subtree_size[static_cast<std::size_t>(x)];
    for (int i = begin + 1; i < end; ++i) {
      int d = a.preorder[static_cast<std::size_t>(i)];
      if (!m.HasSrc(d)) continue;
      for (int y = tb.node(m.Dst(d)).parent; y >= 0; y = tb.node(y).parent) {
        if (!seen.insert(y).second) break;
        if (!m.HasDst(y) && tb.node(y).kind == ta.node(x).kind) {
          candidates.push_back(y);
        }
      }
    }
    int best = -1;
    double best_dice = kMinBottomUpDice;
    for (int y : candidates) {
      int common = 0;
      for (int i = begin + 1; i < end; ++i) {
        int d = a.preorder[static_cast<std::size_t>(i)];
        if (m.HasSrc(d) && b.IsDescendant(m.Dst(d), y)) ++common;
      }
      const double dice =
          2.0 * common /
          (a.subtree_size[static_cast<std::size_t>(x)] - 1 +
           b.subtree_size[static_cast<std::size_t>(y)] - 1);
      if (dice > best_dice ||
          (dice == best_dice && best >= 0 &&
           b.pre_index[static_cast<std::size_t>(y)] <
               b.pre_index[static_cast<std::size_t>(best)])) {
        best = y;
        best_dice = dice;
      }
    }
    if (best >= 0) m.Add(x, best);
  }
  if (!m.HasSrc(ta.root()) && !m.HasDst(tb.root()) &&
      ta.node(ta.root()).kind == tb.node(tb.root()).kind) {
    m.Add(ta.root(), tb.root());
  }
}

void Recover(const TreeInfo& a, const TreeInfo& b, Mapping& m) {
  const GenericTree& ta = *a.tree;
  const GenericTree& tb = *b.tree;
  for (int x : a.preorder) {
    if (!m.HasSrc(x)) continue;
    const int y = m.Dst(x);
    for (int pass = 0; pass < 3; ++pass) {
      std::vector<int> cx;
      std::vector<int> cy;
      for (int c : ta.node(x).children) {
        if (!m.HasSrc(c)) cx.push_back(c);
      }
      for (int c : tb.node(y).children) {
        if (!m.HasDst(c)) cy.push_back(c);
      }
      if (cx.empty() || cy.empty()) break;
      auto eq = [&](std::size_t i, std::size_t j) {
        const auto& p = ta.node(cx[i]);
        const auto& q = tb.node(cy[j]);
        if (p.kind != q.kind) return false;
        if (pass == 0) return Isomorphic(a, cx[i], b, cy[j]);
        if (pass == 1) return p.value == q.value;
        return true;
      };
      for (auto [i, j] : Lcs(cx.size(), cy.size(), eq)) {
        if (pass == 0) {
          MatchSubtrees(a, cx[i], b, cy[j], m);
        } else {
          m.Add(cx[i], cy[j]);
        }
      }
    }
  }
}

// Working copy of the source tree used while generating the script.
struct WorkNode {
  std::string kind;
  std::string value;
  int parent = EditScript::kVirtualRoot;
  std::vector<int> children;
};

class ScriptGenerator {
 public:
  ScriptGenerator(const GenericTree& src, const GenericTree& dst,
                  const Mapping& m)
      : dst_(dst), next_id_(static_cast<int>(src.size())) {
    constexpr int kRoot = EditScript::kVirtualRoot;
    work_[kRoot] = WorkNode{"<root>", {}, kRoot - 1, {}};
    if (!src.empty()) {
      for (int id : src.PreOrder()) {
        const auto& n = src.node(id);
        work_[id] = WorkNode{n.kind, n.value,
                             n.parent < 0 ? kRoot : n.parent, n.children};
      }
      work_[kRoot].children.push_back(src.root());
    }
    w2d_[kRoot] = kRoot;
    d2w_[kRoot] = kRoot;
    for (std::size_t i = 0; i < src.size(); ++i) {
      int d = m.Dst(static_cast<int>(i));
      if (d >= 0) {
        w2d_[static_cast<int>(i)] = d;
        d2w_[d] = static_cast<int>(i);
      }
    }
  }

  EditScript Run() {
    constexpr int kRoot = EditScript::kVirtualRoot;
    std::deque<int> queue;
    if (!dst_.empty()) queue.push_back(dst_.root());
    in_order_w_.insert(kRoot);
    in_order_d_.insert(kRoot);
    AlignChildren(kRoot, kRoot);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int c : dst_.node(x).children) queue.push_back(c);
      const auto& xn = dst_.node(x);
      const int y = DstParent(x);
      const int z = d2w_.at(y);
      int w;
      auto found = d2w_.find(x);
      if (found == d2w_.end()) {
        const int k = FindPos(x);
        w = next_id_++;
        work_[w] = WorkNode{xn.kind, xn.value, z, {}};
        auto& kids = work_[z].children;
        kids.insert(kids.begin() + k, w);
        w2d_[w] = x;
        d2w_[x] = w;
        Emit({ActionKind::kInsert, xn.kind, xn.value, {}, w, z, k});
      } else {
        w = found->second;
        WorkNode& wn = work_[w];
        if (wn.value != xn.value) {
          Emit({ActionKind::kUpdate, wn.kind, wn.value, xn.value, w, -1, -1});
          wn.value = xn.value;
        }
        if (wn.parent != z) {
          const int k = FindPos(x);
          Detach(w);
          Attach(w, z, k);
          Emit({ActionKind::kMove, wn.kind, wn.value, {}, w, z, k});
        }
      }
      in_order_w_.insert(w);
      in_order_d_.insert(x);
      AlignChildren(w, x);
    }
    // Deletions, children before parents.
    std::vector<int> post;
    std::function<void(int)> walk = [&](int id) {
      for (int c : work_[id].children) walk(c);
      post.push_back(id);
    };
    walk(kRoot);
    for (int id : post) {
      if (id == kRoot || w2d_.contains(id)) continue;
      const WorkNode& n = work_[id];
      Emit({ActionKind::kDelete, n.kind, n.value, {}, id, -1, -1});
      Detach(id);
    }
    return std::move(script_);
  }

 private:
  int DstParent(int x) const {
    const int p = dst_.node(x).parent;
    return p < 0 ? EditScript::kVirtualRoot : p;
  }

  const std::vector<int>& DstChildren(int x) const {
    if (x == EditScript::kVirtualRoot) return root_children_;
    return dst_.node(x).children;
  }

  void Emit(EditAction action) { script_.actions.push_back(std::move(action)); }

  void Detach(int w) {
    auto& kids = work_[work_[w].parent].children;
    kids.erase(std::find(kids.begin(), kids.end(), w));
  }

  void Attach(int w, int parent, int pos) {
    work_[w].parent = parent;
    auto& kids = work_[parent].children;
    kids.insert(kids.begin() + pos, w);
  }

  int IndexIn(int parent, int child) {
    const auto& kids = work_[parent].children;
    return static_cast<int>(std::find(kids.begin(), kids.end(), child) -
                            kids.begin());
  }

  int FindPos(int x) {
    const std::vector<int>& siblings = DstChildren(DstParent(x));
    for (int c : siblings) {
      if (in_order_d_.contains(c)) {
        if (c == x) return 0;
        break;
      }
    }
    const auto xpos = std::find(siblings.begin(), siblings.end(), x);
    int v = -2;
    for (auto it = xpos; it != siblings.begin();) {
      --it;
      if (in_order_d_.contains(*it)) {
        v = *it;
        break;
      }
    }
    if (v == -2) return 0;
    const int u = d2w_.at(v);
    return IndexIn(work_[u].parent, u) + 1;
  }

  void AlignChildren(int w, int x) {
    for (int c : work_[w].children) in_order_w_.erase(c);
    for (int c : DstChildren(x)) in_order_d_.erase(c);
    std::vector<int> s1;
    std::vector<int> s2;
    for (int c : work_[w].children) {
      auto it = w2d_.find(c);
      if (it != w2d_.end() && DstParent(it->second) == x) s1.push_back(c);
    }
    for (int c : DstChildren(x)) {
      auto it = d2w_.find(c);
      if (it != d2w_.end() && work_[it->second].parent == w) s2.push_back(c);
    }
    auto eq = [&](std::size_t i, std::size_t j) {
      return w2d_.at(s1[i]) == s2[j];
    };
    std::unordered_set<int> aligned;
    for (auto [i, j] : Lcs(s1.size(), s2.size(), eq)) {
      in_order_w_.insert(s1[i]);
      in_order_d_.insert(s2[j]);
      aligned.insert(s1[i]);
    }
    for (int b : s2) {
      const int a = d2w_.at(b);
      if (aligned.contains(a)) continue;
      int k = FindPos(b);
      const int old = IndexIn(w, a);
      if (old < k) --k;
      Detach(a);
      Attach(a, w, k);
      const WorkNode& an = work_[a];
      Emit({ActionKind::kMove, an.kind, an.value, {}, a, w, k});
      in_order_w_.insert(a);
      in_order_d_.insert(b);
    }
  }

  const GenericTree& dst_;
  std::vector<int> root_children_ =
      dst_.empty() ? std::vector<int>{} : std::vector<int>{dst_.root()};
  std::map<int, WorkNode> work_;
  std::unordered_map<int, int> w2d_;
  std::unordered_map<int, int> d2w_;
  std::unordered_set<int> in_order_w_;
  std::unordered_set<int> in_order_d_;
  int next_id_;
  EditScript script_;
};

}  // namespace

std::string_view ActionKindName(ActionKind kind) {
  switch (kind) {
    case ActionKind::kInsert: return "insert";
    case ActionKind::kDelete: return "delete";
    case ActionKind::kUpdate: return "update";
    case ActionKind::kMove: return "move";
  }
  return "?";
}

EditScript ComputeEditScript(const GenericTree& source,
                             const GenericTree& target) {
  Mapping m(source.size(), target.size());
  if (!source.empty() && !target.empty()) {
    TreeInfo a(source);
    TreeInfo b(target);
    TopDown(a, b, m);
    BottomUp(a, b, m);
    Recover(a, b, m);
  }
  return ScriptGenerator(source, target, m).Run();
}

double ActionSimilarity(const EditScript& a, const EditScript& b, double alpha,
                        double beta) {
  if (!(alpha + beta > 0.0) || alpha < 0.0 || beta < 0.0) {
    throw InvariantError("action similarity needs alpha + beta > 0");
  }
  std::vector<std::string> kinds_a;
  std::vector<std::string> kinds_b;
  std::vector<std::string> labels_a;
  std::vector<std::string> labels_b;
  for (const EditAction& act : a.actions) {
    kinds_a.emplace_back(ActionKindName(act.kind));
    labels_a.push_back(std::string(ActionKindName(act.kind)) + '\x1f' +
                       act.node_kind);
  }
  for (const EditAction& act : b.actions) {
    kinds_b.emplace_back(ActionKindName(act.kind));
    labels_b.push_back(std::string(ActionKindName(act.kind)) + '\x1f' +
                       act.node_kind);
  }
  const double kind_sim = MultisetDice(kinds_a, kinds_b);
  const double label_sim = MultisetDice(labels_a, labels_b);
  return (alpha * kind_sim + beta * label_sim) / (alpha + beta);
}

}  // namespace blockrepair
