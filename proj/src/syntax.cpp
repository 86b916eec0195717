//  Copyright 2026 The rescript-ifc Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "ifc/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifc {

struct SecType::Node {
  SecType a;  // Ref inner / Fun param
  SecType b;  // Fun result
  SecType c;  // Fun latent effect
};

SecType SecType::ref(SecType inner) {
  SecType t(Kind::Ref);
  t.node_ = std::make_shared<const Node>(Node{std::move(inner), {}, {}});
  return t;
}

SecType SecType::fun(SecType param, SecType result, SecType latent) {
  SecType t(Kind::Fun);
  t.node_ = std::make_shared<const Node>(Node{std::move(param), std::move(result), std::move(latent)});
  return t;
}

const SecType& SecType::inner() const {
  if (kind_ != Kind::Ref) throw std::logic_error("SecType::inner on non-reference type " + str());
  return node_->a;
}

const SecType& SecType::param() const {
  if (kind_ != Kind::Fun) throw std::logic_error("SecType::param on non-function type " + str());
  return node_->a;
}

const SecType& SecType::result() const {
  if (kind_ != Kind::Fun) throw std::logic_error("SecType::result on non-function type " + str());
  return node_->b;
}

const SecType& SecType::latent() const {
  if (kind_ != Kind::Fun) throw std::logic_error("SecType::latent on non-function type " + str());
  return node_->c;
}

int SecType::depth() const {
  switch (kind_) {
    case Kind::Ref:
      return 1 + inner().depth();
    case Kind::Fun:
      return 1 + std::max({param().depth(), result().depth(), latent().depth()});
    default:
      return 0;
  }
}

bool operator==(const SecType& a, const SecType& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.node_ == b.node_) return true;
  switch (a.kind_) {
    case SecType::Kind::Ref:
      return a.inner() == b.inner();
    case SecType::Kind::Fun:
      return a.param() == b.param() && a.result() == b.result() && a.latent() == b.latent();
    default:
      return true;
  }
}

std::string SecType::str() const {
  switch (kind_) {
    case Kind::Low:
      return "Low";
    case Kind::High:
      return "High";
    case Kind::Empty:
      return "()";
    case Kind::Ref:
      return "ref " + inner().str();
    case Kind::Fun:
      return "(" + param().str() + " -> " + result().str() + " @ " + latent().str() + ")";
  }
  return "?";
}

std::string type_source(const SecType& t) {
  switch (t.kind()) {
    case SecType::Kind::Low:
      return "low";
    case SecType::Kind::High:
      return "high";
    case SecType::Kind::Empty:
      return "()";
    case SecType::Kind::Ref:
      return "ref " + type_source(t.inner());
    case SecType::Kind::Fun:
      return "(" + type_source(t.param()) + " -> " + type_source(t.result()) + " @ " +
             type_source(t.latent()) + ")";
  }
  return "?";
}

bool well_formed(const SecType& t) {
  switch (t.kind()) {
    case SecType::Kind::Low:
    case SecType::Kind::High:
    case SecType::Kind::Empty:
      return true;
    case SecType::Kind::Ref:
      return t.inner().is_base();
    case SecType::Kind::Fun:
      return t.latent().is_level() && well_formed(t.param()) && well_formed(t.result());
  }
  return false;
}

const char* binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add:
      return "+";
    case BinOp::Sub:
      return "-";
    case BinOp::Mul:
      return "*";
    case BinOp::Div:
      return "/";
    case BinOp::Eq:
      return "==";
    case BinOp::Lt:
      return "<";
    case BinOp::Gt:
      return ">";
  }
  return "?";
}

namespace {

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

struct EqualVisitor {
  const Expr::Node& other;

  template <typename T>
  const T& rhs() const {
    return std::get<T>(other);
  }

  bool operator()(const ast::Num& n) const { return n.literal == rhs<ast::Num>().literal; }
  bool operator()(const ast::Bool& b) const { return b.value == rhs<ast::Bool>().value; }
  bool operator()(const ast::Unit&) const { return true; }
  bool operator()(const ast::Var& v) const { return v.name == rhs<ast::Var>().name; }
  bool operator()(const ast::App& a) const {
    const auto& o = rhs<ast::App>();
    return same(a.fn, o.fn) && same(a.arg, o.arg);
  }
  bool operator()(const ast::Func& f) const {
    const auto& o = rhs<ast::Func>();
    return f.param == o.param && f.annot == o.annot && same(f.body, o.body);
  }
  bool operator()(const ast::Seq& s) const {
    const auto& o = rhs<ast::Seq>();
    return same(s.first, o.first) && same(s.second, o.second);
  }
  bool operator()(const ast::Let& l) const {
    const auto& o = rhs<ast::Let>();
    return l.name == o.name && l.annot == o.annot && same(l.rhs, o.rhs);
  }
  bool operator()(const ast::Bop& b) const {
    const auto& o = rhs<ast::Bop>();
    return b.op == o.op && same(b.lhs, o.lhs) && same(b.rhs, o.rhs);
  }
  bool operator()(const ast::Ref& r) const { return same(r.inner, rhs<ast::Ref>().inner); }
  bool operator()(const ast::Assign& a) const {
    const auto& o = rhs<ast::Assign>();
    return a.name == o.name && same(a.rhs, o.rhs);
  }
  bool operator()(const ast::Deref& d) const { return d.name == rhs<ast::Deref>().name; }
  bool operator()(const ast::For& f) const {
    const auto& o = rhs<ast::For>();
    return f.var == o.var && same(f.from, o.from) && same(f.to, o.to) && same(f.body, o.body);
  }
  bool operator()(const ast::While& w) const {
    const auto& o = rhs<ast::While>();
    return same(w.cond, o.cond) && same(w.body, o.body);
  }
  bool operator()(const ast::If& i) const {
    const auto& o = rhs<ast::If>();
    return same(i.cond, o.cond) && same(i.then_branch, o.then_branch) &&
           same(i.else_branch, o.else_branch);
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.node.index() != b.node.index()) return false;
  return std::visit(EqualVisitor{b.node}, a.node);
}

const char* node_name(const Expr& e) {
  static constexpr const char* kNames[] = {"Num", "Bool",   "Unit",  "Var",   "App",
                                           "Func", "Seq",   "Let",   "Bop",   "Ref",
                                           "Assign", "Deref", "For", "While", "If"};
  return kNames[e.node.index()];
}

// ---------------------------------------------------------------------------
// Pretty printer
//
// Binding strength, loosest first. A child printed in a slot demanding a
// tighter level than its own gets parentheses.

namespace {

enum Level : int { kSeq = 0, kItem, kCmp, kAdd, kMul, kApp, kAtom };

Level level_of(const Expr& e) {
  if (const auto* n = e.as<ast::Num>()) return n->literal.starts_with('-') ? kApp : kAtom;
  if (e.is<ast::Seq>()) return kSeq;
  if (e.is<ast::Let>() || e.is<ast::Assign>() || e.is<ast::Func>() || e.is<ast::If>() ||
      e.is<ast::While>() || e.is<ast::For>()) {
    return kItem;
  }
  if (const auto* b = e.as<ast::Bop>()) {
    switch (b->op) {
      case BinOp::Eq:
      case BinOp::Lt:
      case BinOp::Gt:
        return kCmp;
      case BinOp::Add:
      case BinOp::Sub:
        return kAdd;
      case BinOp::Mul:
      case BinOp::Div:
        return kMul;
    }
  }
  if (e.is<ast::App>()) return kApp;
  return kAtom;
}

class Printer {
 public:
  explicit Printer(bool multiline) : multiline_(multiline) {}

  std::string top(const Expr& e) {
    if (multiline_) {
      print_seq(e, "\n");
    } else {
      print_seq(e, "; ");
    }
    return std::move(out_);
  }

 private:
  // Prints a right-nested Seq spine with `sep` between items.
  void print_seq(const Expr& e, const char* sep) {
    const Expr* cur = &e;
    while (const auto* s = cur->as<ast::Seq>()) {
      at(*s->first, kItem);
      out_ += sep;
      cur = s->second.get();
    }
    at(*cur, kItem);
  }

  void block(const Expr& e) {
    out_ += "{ ";
    print_seq(e, "; ");
    out_ += " }";
  }

  void at(const Expr& e, Level need) {
    if (level_of(e) < need) {
      out_ += "(";
      print_seq(e, "; ");
      out_ += ")";
    } else {
      print(e);
    }
  }

  void print(const Expr& e) {
    std::visit([this](const auto& n) { this->node(n); }, e.node);
  }

  void node(const ast::Num& n) { out_ += n.literal; }
  void node(const ast::Bool& b) { out_ += b.value ? "true" : "false"; }
  void node(const ast::Unit&) { out_ += "()"; }
  void node(const ast::Var& v) { out_ += v.name; }
  void node(const ast::App& a) {
    at(*a.fn, kApp);
    out_ += " ";
    at(*a.arg, kAtom);
  }
  void node(const ast::Func& f) {
    out_ += "(" + f.param + ": " + type_source(f.annot) + ") => ";
    if (f.body->is<ast::Seq>()) {
      block(*f.body);
    } else {
      at(*f.body, kItem);
    }
  }
  void node(const ast::Seq& s) {
    at(*s.first, kItem);
    out_ += "; ";
    at(*s.second, kSeq);
  }
  void node(const ast::Let& l) {
    out_ += "let " + l.name;
    if (l.annot) out_ += ": " + type_source(*l.annot);
    out_ += " = ";
    at(*l.rhs, kItem);
  }
  void node(const ast::Bop& b) {
    const Level self = level_of_op(b.op);
    if (self == kCmp) {
      at(*b.lhs, kAdd);
      out_ += std::string(" ") + binop_symbol(b.op) + " ";
      at(*b.rhs, kAdd);
    } else {
      at(*b.lhs, self);
      out_ += std::string(" ") + binop_symbol(b.op) + " ";
      at(*b.rhs, static_cast<Level>(self + 1));
    }
  }
  void node(const ast::Ref& r) {
    out_ += "ref(";
    print_seq(*r.inner, "; ");
    out_ += ")";
  }
  void node(const ast::Assign& a) {
    out_ += a.name + " := ";
    at(*a.rhs, kItem);
  }
  void node(const ast::Deref& d) { out_ += "!" + d.name; }
  void node(const ast::For& f) {
    out_ += "for " + f.var + " in ";
    at(*f.from, kCmp);
    out_ += " to ";
    at(*f.to, kCmp);
    out_ += " ";
    block(*f.body);
  }
  void node(const ast::While& w) {
    out_ += "while ";
    at(*w.cond, kCmp);
    out_ += " ";
    block(*w.body);
  }
  void node(const ast::If& i) {
    out_ += "if ";
    at(*i.cond, kCmp);
    out_ += " ";
    block(*i.then_branch);
    out_ += " else ";
    block(*i.else_branch);
  }

  static Level level_of_op(BinOp op) {
    switch (op) {
      case BinOp::Add:
      case BinOp::Sub:
        return kAdd;
      case BinOp::Mul:
      case BinOp::Div:
        return kMul;
      default:
        return kCmp;
    }
  }

  bool multiline_;
  std::string out_;
};

}  // namespace

std::string pretty(const Expr& e) { return Printer(true).top(e); }

std::string pretty_inline(const Expr& e) { return Printer(false).top(e); }

}  // namespace ifc
