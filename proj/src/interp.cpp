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

#include "blockrepair/interp.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>
#include <variant>

#include "blockrepair/minilang.hpp"

namespace blockrepair::interp {
namespace fs = std::filesystem;

namespace {

using Node = GenericTree::Node;

struct ClassInfo {
  std::string name;
  const GenericTree* tree = nullptr;
  int node = 0;
  std::map<std::string, int> fields;
  std::vector<int> field_order;
  std::map<std::string, int> methods;
};

using ClassTable = std::map<std::string, ClassInfo>;

const std::set<std::string, std::less<>> kBuiltinCalls = {
    "assert", "assertTrue", "assertFalse", "assertEquals", "print", "fail"};
const std::set<std::string, std::less<>> kStringMethods = {
    "length", "charAt", "equals", "substring", "indexOf"};
const std::set<std::string, std::less<>> kMathMethods = {"abs", "max", "min"};

int ParamCount(const GenericTree& tree, int method) {
  return static_cast<int>(tree.node(tree.node(method).children[1]).children.size());
}

ClassTable BuildClasses(const std::vector<ProgramFile>& files,
                        std::vector<std::string>* errors) {
  ClassTable table;
  for (const ProgramFile& f : files) {
    for (int cls : f.tree.node(f.tree.root()).children) {
      const Node& c = f.tree.node(cls);
      if (table.contains(c.value)) {
        if (errors) errors->push_back(f.path + ": duplicate class " + c.value);
        continue;
      }
      ClassInfo info{c.value, &f.tree, cls, {}, {}, {}};
      for (int m : c.children) {
        const Node& member = f.tree.node(m);
        auto& slot = member.kind == "Field" ? info.fields : info.methods;
        if (slot.contains(member.value) || (member.kind == "Field" &&
                                            info.methods.contains(member.value))) {
          if (errors) {
            errors->push_back(f.path + ": duplicate member " + c.value + "." +
                              member.value);
          }
          continue;
        }
        slot[member.value] = m;
        if (member.kind == "Field") info.field_order.push_back(m);
      }
      table.emplace(c.value, std::move(info));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Checker

class Checker {
 public:
  Checker(const ClassTable& classes, std::vector<std::string>& errors)
      : classes_(classes), errors_(errors) {}

  void CheckClass(const ClassInfo& cls, const std::string& path) {
    cls_ = &cls;
    tree_ = cls.tree;
    path_ = path;
    for (int fid : cls.field_order) {
      scopes_.assign(1, {});
      const Node& f = tree_->node(fid);
      if (f.children.size() > 1) Expr(f.children[1]);
    }
    for (const auto& [name, mid] : cls.methods) {
      const Node& m = tree_->node(mid);
      method_void_ = tree_->node(m.children[0]).value == "void";
      scopes_.assign(1, {});
      for (int p : tree_->node(m.children[1]).children) {
        Declare(tree_->node(p).value);
      }
      loops_ = 0;
      Stmt(m.children[2]);
    }
  }

 private:
  void Error(const std::string& what) {
    errors_.push_back(path_ + ": " + cls_->name + ": " + what);
  }

  bool IsLocal(const std::string& name) const {
    for (const auto& s : scopes_) {
      if (s.contains(name)) return true;
    }
    return false;
  }

  void Declare(const std::string& name) {
    if (IsLocal(name)) Error("variable '" + name + "' already defined");
    scopes_.back().insert(name);
  }

  bool IsClassRef(int id) const {
    const Node& n = tree_->node(id);
    return n.kind == "Name" && !IsLocal(n.value) &&
           !cls_->fields.contains(n.value) &&
           (classes_.contains(n.value) || n.value == "Math");
  }

  void Stmt(int id) {
    const Node& n = tree_->node(id);
    const std::string& k = n.kind;
    if (k == "Block") {
      scopes_.emplace_back();
      for (int c : n.children) Stmt(c);
      scopes_.pop_back();
    } else if (k == "LocalVar") {
      if (n.children.size() > 1) Expr(n.children[1]);
      Declare(n.value);
    } else if (k == "ExprStmt" || k == "Throw") {
      Expr(n.children[0]);
    } else if (k == "If") {
      Expr(n.children[0]);
      for (std::size_t i = 1; i < n.children.size(); ++i) Stmt(n.children[i]);
    } else if (k == "While") {
      Expr(n.children[0]);
      ++loops_;
      Stmt(n.children[1]);
      --loops_;
    } else if (k == "For") {
      scopes_.emplace_back();
      for (int c : tree_->node(n.children[0]).children) Stmt(c);
      for (int c : tree_->node(n.children[1]).children) Expr(c);
      for (int c : tree_->node(n.children[2]).children) Stmt(c);
      ++loops_;
      Stmt(n.children[3]);
      --loops_;
      scopes_.pop_back();
    } else if (k == "Return") {
      if (method_void_ && !n.children.empty()) Error("void method returns a value");
      if (!method_void_ && n.children.empty()) Error("missing return value");
      for (int c : n.children) Expr(c);
    } else if (k == "Break" || k == "Continue") {
      if (loops_ == 0) Error(k + " outside of loop");
    }
  }

  void CheckArity(const std::string& what, int expected, std::size_t got) {
    if (static_cast<std::size_t>(expected) != got) {
      Error(what + " expects " + std::to_string(expected) + " argument(s)");
    }
  }

  void Expr(int id) {
    const Node& n = tree_->node(id);
    const std::string& k = n.kind;
    if (k == "Name") {
      if (!IsLocal(n.value) && !cls_->fields.contains(n.value)) {
        Error("cannot find symbol '" + n.value + "'");
      }
      return;
    }
    if (k == "Call") {
      auto it = cls_->methods.find(n.value);
      if (it != cls_->methods.end()) {
        CheckArity(n.value, ParamCount(*tree_, it->second), n.children.size());
      } else if (!kBuiltinCalls.contains(n.value)) {
        Error("cannot find method '" + n.value + "'");
      }
      for (int c : n.children) Expr(c);
      return;
    }
    if (k == "MethodCall") {
      const int receiver = n.children[0];
      if (IsClassRef(receiver)) {
        const std::string& cname = tree_->node(receiver).value;
        if (cname == "Math") {
          if (!kMathMethods.contains(n.value)) Error("unknown Math." + n.value);
        } else {
          const ClassInfo& target = classes_.at(cname);
          auto it = target.methods.find(n.value);
          if (it == target.methods.end()) {
            Error("cannot find method '" + cname + "." + n.value + "'");
          } else {
            CheckArity(cname + "." + n.value,
                       ParamCount(*target.tree, it->second),
                       n.children.size() - 1);
          }
        }
      } else {
        Expr(receiver);
        if (!kStringMethods.contains(n.value)) {
          Error("unknown method '" + n.value + "'");
        }
      }
      for (std::size_t i = 1; i < n.children.size(); ++i) Expr(n.children[i]);
      return;
    }
    if (k == "Member") {
      const int receiver = n.children[0];
      if (IsClassRef(receiver)) {
        const std::string& cname = tree_->node(receiver).value;
        if (cname == "Math" || !classes_.at(cname).fields.contains(n.value)) {
          Error("cannot find field '" + cname + "." + n.value + "'");
        }
      } else {
        Expr(receiver);
        if (n.value != "length") Error("unknown member '" + n.value + "'");
      }
      return;
    }
    for (int c : n.children) Expr(c);
  }

  const ClassTable& classes_;
  std::vector<std::string>& errors_;
  const ClassInfo* cls_ = nullptr;
  const GenericTree* tree_ = nullptr;
  std::string path_;
  std::vector<std::set<std::string>> scopes_;
  bool method_void_ = false;
  int loops_ = 0;
};

// ---------------------------------------------------------------------------
// Interpreter

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<std::monostate, std::int64_t, bool, std::string,
               std::shared_ptr<Array>>
      v;

  bool is_null() const { return std::holds_alternative<std::monostate>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_str() const { return std::holds_alternative<std::string>(v); }
  bool is_array() const {
    return std::holds_alternative<std::shared_ptr<Array>>(v);
  }
};

struct Failure {
  std::string message;
};

std::string Show(const Value& v) {
  if (v.is_null()) return "null";
  if (v.is_int()) return std::to_string(std::get<std::int64_t>(v.v));
  if (v.is_bool()) return std::get<bool>(v.v) ? "true" : "false";
  if (v.is_str()) return std::get<std::string>(v.v);
  return "array[" + std::to_string(std::get<std::shared_ptr<Array>>(v.v)->size()) +
         "]";
}

bool Equal(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_array()) {
    return std::get<std::shared_ptr<Array>>(a.v) ==
           std::get<std::shared_ptr<Array>>(b.v);
  }
  return a.v == b.v;
}

std::string Unquote(const std::string& lit) {
  std::string out;
  for (std::size_t i = 1; i + 1 < lit.size(); ++i) {
    char c = lit[i];
    if (c == '\\' && i + 2 < lit.size()) {
      char e = lit[++i];
      out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
    } else {
      out += c;
    }
  }
  return out;
}

enum class Flow { kNormal, kBreak, kContinue, kReturn };

class Interpreter {
 public:
  Interpreter(const ClassTable& classes, const RunLimits& limits)
      : classes_(classes), limits_(limits) {}

  void InitGlobals() {
    globals_.clear();
    steps_ = 0;
    for (const auto& [name, cls] : classes_) {
      auto& slots = globals_[name];
      for (int fid : cls.field_order) {
        const Node& f = cls.tree->node(fid);
        slots[f.value] = DefaultFor(cls.tree->node(f.children[0]).value);
      }
    }
    for (const auto& [name, cls] : classes_) {
      for (int fid : cls.field_order) {
        const Node& f = cls.tree->node(fid);
        if (f.children.size() > 1) {
          Frame frame{&cls, {{}}};
          globals_[name][f.value] = Eval(f.children[1], frame);
        }
      }
    }
  }

  Value Invoke(const ClassInfo& cls, int method, std::vector<Value> args) {
    if (++depth_ > limits_.max_depth) throw Failure{"stack overflow"};
    const GenericTree& t = *cls.tree;
    const Node& m = t.node(method);
    Frame frame{&cls, {{}}};
    const auto& params = t.node(m.children[1]).children;
    for (std::size_t i = 0; i < params.size() && i < args.size(); ++i) {
      frame.scopes.back()[t.node(params[i]).value] = std::move(args[i]);
    }
    ret_ = Value{};
    Exec(m.children[2], frame);
    --depth_;
    return std::exchange(ret_, Value{});
  }

 private:
  struct Frame {
    const ClassInfo* cls;
    std::vector<std::unordered_map<std::string, Value>> scopes;
  };

  static Value DefaultFor(const std::string& type) {
    if (type == "int" || type == "long") return Value{std::int64_t{0}};
    if (type == "boolean") return Value{false};
    return Value{};
  }

  const GenericTree& T(const Frame& f) const { return *f.cls->tree; }

  void Tick() {
    if (++steps_ > limits_.max_steps) throw Failure{"step limit exceeded"};
  }

  Flow Exec(int id, Frame& f) {
    Tick();
    const Node& n = T(f).node(id);
    const std::string& k = n.kind;
    if (k == "Block") {
      f.scopes.emplace_back();
      Flow flow = Flow::kNormal;
      for (int c : n.children) {
        flow = Exec(c, f);
        if (flow != Flow::kNormal) break;
      }
      f.scopes.pop_back();
      return flow;
    }
    if (k == "LocalVar") {
      Value init = n.children.size() > 1
                       ? Eval(n.children[1], f)
                       : DefaultFor(T(f).node(n.children[0]).value);
      f.scopes.back()[n.value] = std::move(init);
      return Flow::kNormal;
    }
    if (k == "ExprStmt") {
      Eval(n.children[0], f);
      return Flow::kNormal;
    }
    if (k == "If") {
      if (Truth(Eval(n.children[0], f))) return Exec(n.children[1], f);
      if (n.children.size() > 2) return Exec(n.children[2], f);
      return Flow::kNormal;
    }
    if (k == "While") {
      while (Truth(Eval(n.children[0], f))) {
        Flow flow = Exec(n.children[1], f);
        if (flow == Flow::kBreak) break;
        if (flow == Flow::kReturn) return flow;
      }
      return Flow::kNormal;
    }
    if (k == "For") {
      const GenericTree& t = T(f);
      f.scopes.emplace_back();
      for (int c : t.node(n.children[0]).children) Exec(c, f);
      Flow result = Flow::kNormal;
      for (;;) {
        const auto& cond = t.node(n.children[1]).children;
        if (!cond.empty() && !Truth(Eval(cond[0], f))) break;
        Flow flow = Exec(n.children[3], f);
        if (flow == Flow::kBreak) break;
        if (flow == Flow::kReturn) {
          result = flow;
          break;
        }
        for (int c : t.node(n.children[2]).children) Exec(c, f);
      }
      f.scopes.pop_back();
      return result;
    }
    if (k == "Return") {
      ret_ = n.children.empty() ? Value{} : Eval(n.children[0], f);
      return Flow::kReturn;
    }
    if (k == "Break") return Flow::kBreak;
    if (k == "Continue") return Flow::kContinue;
    if (k == "Throw") throw Failure{"thrown: " + Show(Eval(n.children[0], f))};
    return Flow::kNormal;  // Empty
  }

  static bool Truth(const Value& v) {
    if (!v.is_bool()) throw Failure{"condition is not boolean"};
    return std::get<bool>(v.v);
  }

  static std::int64_t Int(const Value& v) {
    if (!v.is_int()) throw Failure{"expected int, got " + Show(v)};
    return std::get<std::int64_t>(v.v);
  }

  Value* FindLocal(Frame& f, const std::string& name) {
    for (auto it = f.scopes.rbegin(); it != f.scopes.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  bool IsClassRef(Frame& f, int id) {
    const Node& n = T(f).node(id);
    return n.kind == "Name" && !FindLocal(f, n.value) &&
           !f.cls->fields.contains(n.value) &&
           (classes_.contains(n.value) || n.value == "Math");
  }

  Value* Ref(int id, Frame& f) {
    const Node& n = T(f).node(id);
    if (n.kind == "Name") {
      if (Value* local = FindLocal(f, n.value)) return local;
      auto& slots = globals_[f.cls->name];
      auto it = slots.find(n.value);
      if (it == slots.end()) throw Failure{"unknown name " + n.value};
      return &it->second;
    }
    if (n.kind == "Member" && IsClassRef(f, n.children[0])) {
      auto& slots = globals_[T(f).node(n.children[0]).value];
      auto it = slots.find(n.value);
      if (it == slots.end()) throw Failure{"unknown field " + n.value};
      return &it->second;
    }
    if (n.kind == "Index") {
      Value arr = Eval(n.children[0], f);
      const std::int64_t i = Int(Eval(n.children[1], f));
      if (!arr.is_array()) throw Failure{"indexing a non-array"};
      auto& vec = *std::get<std::shared_ptr<Array>>(arr.v);
      if (i < 0 || static_cast<std::size_t>(i) >= vec.size()) {
        throw Failure{"index " + std::to_string(i) + " out of bounds"};
      }
      return &vec[static_cast<std::size_t>(i)];
    }
    throw Failure{"not assignable"};
  }

  Value Arith(const std::string& op, const Value& a, const Value& b) {
    if (op == "+" && (a.is_str() || b.is_str())) {
      return Value{Show(a) + Show(b)};
    }
    const std::int64_t x = Int(a);
    const std::int64_t y = Int(b);
    if (op == "+") return Value{x + y};
    if (op == "-") return Value{x - y};
    if (op == "*") return Value{x * y};
    if (y == 0) throw Failure{"division by zero"};
    if (op == "/") return Value{x / y};
    return Value{x % y};
  }

  Value Eval(int id, Frame& f) {
    const GenericTree& t = T(f);
    const Node& n = t.node(id);
    const std::string& k = n.kind;
    if (k == "IntLit") return Value{static_cast<std::int64_t>(std::stoll(n.value))};
    if (k == "StrLit") return Value{Unquote(n.value)};
    if (k == "BoolLit") return Value{n.value == "true"};
    if (k == "NullLit") return Value{};
    if (k == "Name") return *Ref(id, f);
    if (k == "Assign") {
      Value rhs = Eval(n.children[1], f);
      Value* slot = Ref(n.children[0], f);
      if (n.value == "=") {
        *slot = rhs;
      } else {
        *slot = Arith(n.value.substr(0, 1), *slot, rhs);
      }
      return *slot;
    }
    if (k == "Binary") {
      const std::string& op = n.value;
      if (op == "&&") {
        return Value{Truth(Eval(n.children[0], f)) &&
                     Truth(Eval(n.children[1], f))};
      }
      if (op == "||") {
        return Value{Truth(Eval(n.children[0], f)) ||
                     Truth(Eval(n.children[1], f))};
      }
      Value a = Eval(n.children[0], f);
      Value b = Eval(n.children[1], f);
      if (op == "==") return Value{Equal(a, b)};
      if (op == "!=") return Value{!Equal(a, b)};
      if (op == "<") return Value{Int(a) < Int(b)};
      if (op == ">") return Value{Int(a) > Int(b)};
      if (op == "<=") return Value{Int(a) <= Int(b)};
      if (op == ">=") return Value{Int(a) >= Int(b)};
      return Arith(op, a, b);
    }
    if (k == "Unary") {
      if (n.value == "!") return Value{!Truth(Eval(n.children[0], f))};
      if (n.value == "-") return Value{-Int(Eval(n.children[0], f))};
      Value* slot = Ref(n.children[0], f);
      *slot = Value{Int(*slot) + (n.value == "++" ? 1 : -1)};
      return *slot;
    }
    if (k == "Postfix") {
      Value* slot = Ref(n.children[0], f);
      Value old = *slot;
      *slot = Value{Int(old) + (n.value == "++" ? 1 : -1)};
      return old;
    }
    if (k == "Index") return *Ref(id, f);
    if (k == "NewArray") {
      const std::int64_t size = Int(Eval(n.children[0], f));
      if (size < 0 || size > 1'000'000) throw Failure{"bad array size"};
      return Value{std::make_shared<Array>(static_cast<std::size_t>(size),
                                           DefaultFor(n.value))};
    }
    if (k == "Member") {
      if (IsClassRef(f, n.children[0])) return *Ref(id, f);
      Value obj = Eval(n.children[0], f);
      if (n.value == "length") {
        if (obj.is_array()) {
          return Value{static_cast<std::int64_t>(
              std::get<std::shared_ptr<Array>>(obj.v)->size())};
        }
        if (obj.is_str()) {
          return Value{static_cast<std::int64_t>(std::get<std::string>(obj.v).size())};
        }
      }
      throw Failure{"bad member access ." + n.value + " on " + Show(obj)};
    }
    if (k == "Call") return CallUnqualified(n, f);
    if (k == "MethodCall") return CallMethod(n, f);
    throw Failure{"cannot evaluate " + k};
  }

  std::vector<Value> Args(const Node& n, Frame& f, std::size_t first) {
    std::vector<Value> args;
    for (std::size_t i = first; i < n.children.size(); ++i) {
      args.push_back(Eval(n.children[i], f));
    }
    return args;
  }

  Value CallUnqualified(const Node& n, Frame& f) {
    std::vector<Value> args = Args(n, f, 0);
    auto it = f.cls->methods.find(n.value);
    if (it != f.cls->methods.end()) {
      return Invoke(*f.cls, it->second, std::move(args));
    }
    const std::string& name = n.value;
    auto need = [&](std::size_t count) {
      if (args.size() != count) throw Failure{name + ": wrong argument count"};
    };
    if (name == "assert" || name == "assertTrue") {
      need(1);
      if (!Truth(args[0])) throw Failure{"assertion failed"};
    } else if (name == "assertFalse") {
      need(1);
      if (Truth(args[0])) throw Failure{"assertion failed"};
    } else if (name == "assertEquals") {
      need(2);
      if (!Equal(args[0], args[1])) {
        throw Failure{"expected " + Show(args[0]) + " but was " + Show(args[1])};
      }
    } else if (name == "fail") {
      throw Failure{args.empty() ? "fail" : Show(args[0])};
    } else if (name != "print") {
      throw Failure{"unknown method " + name};
    }
    return Value{};
  }

  Value CallMethod(const Node& n, Frame& f) {
    const int receiver = n.children[0];
    if (IsClassRef(f, receiver)) {
      const std::string& cname = T(f).node(receiver).value;
      std::vector<Value> args = Args(n, f, 1);
      if (cname == "Math") {
        if (n.value == "abs" && args.size() == 1) {
          return Value{std::abs(Int(args[0]))};
        }
        if (args.size() == 2) {
          const std::int64_t a = Int(args[0]);
          const std::int64_t b = Int(args[1]);
          if (n.value == "max") return Value{std::max(a, b)};
          if (n.value == "min") return Value{std::min(a, b)};
        }
        throw Failure{"bad Math call " + n.value};
      }
      const ClassInfo& target = classes_.at(cname);
      auto it = target.methods.find(n.value);
      if (it == target.methods.end()) throw Failure{"unknown method " + n.value};
      return Invoke(target, it->second, std::move(args));
    }
    Value obj = Eval(receiver, f);
    std::vector<Value> args = Args(n, f, 1);
    if (!obj.is_str()) throw Failure{"method call on " + Show(obj)};
    const std::string& s = std::get<std::string>(obj.v);
    const auto size = static_cast<std::int64_t>(s.size());
    if (n.value == "length" && args.empty()) return Value{size};
    if (n.value == "equals" && args.size() == 1) return Value{Equal(obj, args[0])};
    if (n.value == "charAt" && args.size() == 1) {
      const std::int64_t i = Int(args[0]);
      if (i < 0 || i >= size) throw Failure{"charAt out of bounds"};
      return Value{static_cast<std::int64_t>(s[static_cast<std::size_t>(i)])};
    }
    if (n.value == "substring" && args.size() == 2) {
      const std::int64_t a = Int(args[0]);
      const std::int64_t b = Int(args[1]);
      if (a < 0 || b > size || a > b) throw Failure{"substring out of bounds"};
      return Value{s.substr(static_cast<std::size_t>(a),
                            static_cast<std::size_t>(b - a))};
    }
    if (n.value == "indexOf" && args.size() == 1 && args[0].is_str()) {
      auto pos = s.find(std::get<std::string>(args[0].v));
      return Value{pos == std::string::npos ? std::int64_t{-1}
                                            : static_cast<std::int64_t>(pos)};
    }
    throw Failure{"bad string method " + n.value};
  }

  const ClassTable& classes_;
  RunLimits limits_;
  std::map<std::string, std::map<std::string, Value>> globals_;
  Value ret_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
};

}  // namespace

std::vector<ProgramFile> LoadProgram(const fs::path& root,
                                     std::vector<std::string>& errors) {
  std::vector<fs::path> paths;
  if (fs::is_regular_file(root)) {
    paths.push_back(root);
  } else {
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() &&
          entry.path().extension() == DefaultLanguage().file_extension()) {
        paths.push_back(entry.path());
      }
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<ProgramFile> out;
  for (const fs::path& p : paths) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string rel = fs::is_directory(root)
                                ? fs::relative(p, root).generic_string()
                                : p.filename().string();
    try {
      out.push_back({rel, DefaultLanguage().Parse(buf.str())});
    } catch (const ParseError& e) {
      errors.push_back(rel + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> CheckProgram(const std::vector<ProgramFile>& files) {
  std::vector<std::string> errors;
  ClassTable classes = BuildClasses(files, &errors);
  Checker checker(classes, errors);
  for (const ProgramFile& f : files) {
    for (int cls : f.tree.node(f.tree.root()).children) {
      auto it = classes.find(f.tree.node(cls).value);
      if (it != classes.end() && it->second.tree == &f.tree &&
          it->second.node == cls) {
        checker.CheckClass(it->second, f.path);
      }
    }
  }
  return errors;
}

std::vector<TestOutcome> RunTests(const std::vector<ProgramFile>& files,
                                  const RunLimits& limits) {
  ClassTable classes = BuildClasses(files, nullptr);
  std::vector<TestOutcome> out;
  for (const auto& [name, cls] : classes) {
    if (!name.ends_with("Test")) continue;
    for (int m : cls.tree->node(cls.node).children) {
      const Node& method = cls.tree->node(m);
      if (method.kind != "Method" || !method.value.starts_with("test") ||
          ParamCount(*cls.tree, m) != 0) {
        continue;
      }
      TestOutcome outcome{name + "." + method.value, true, {}};
      Interpreter vm(classes, limits);
      try {
        vm.InitGlobals();
        vm.Invoke(cls, m, {});
      } catch (const Failure& failure) {
        outcome.passed = false;
        outcome.message = failure.message;
      }
      out.push_back(std::move(outcome));
    }
  }
  return out;
}

}  // namespace blockrepair::interp
