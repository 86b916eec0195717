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

#include "ifc/interpreter.hpp"

#include <charconv>
#include <limits>

namespace ifc {

LocId Store::alloc(Value v) {
  const LocId id = next++;
  cells.insert_or_assign(id, std::move(v));
  return id;
}

const Value* Store::find(LocId id) const {
  auto it = cells.find(id);
  return it == cells.end() ? nullptr : &it->second;
}

const char* runtime_error_name(RuntimeErrorKind k) {
  switch (k) {
    case RuntimeErrorKind::UnboundVar: return "UnboundVar";
    case RuntimeErrorKind::NotAFunction: return "NotAFunction";
    case RuntimeErrorKind::NotABool: return "NotABool";
    case RuntimeErrorKind::NotAnInt: return "NotAnInt";
    case RuntimeErrorKind::NotALoc: return "NotALoc";
    case RuntimeErrorKind::DivByZero: return "DivByZero";
    case RuntimeErrorKind::ForBoundsInvalid: return "ForBoundsInvalid";
  }
  return "RuntimeError";
}

std::string value_str(const Value& v) {
  struct V {
    std::string operator()(const IntV& i) const { return std::to_string(i.n); }
    std::string operator()(const BoolV& b) const { return b.b ? "true" : "false"; }
    std::string operator()(const UnitV&) const { return "unit"; }
    std::string operator()(const LocV& l) const { return "ℓ" + std::to_string(l.id); }
    std::string operator()(const ClosV& c) const {
      return "<closure " + c->param + " => " + pretty_inline(*c->body) + ">";
    }
  };
  return std::visit(V{}, v);
}

std::string store_str(const Store& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [id, v] : s.cells) {
    out += (first ? "" : ", ") + std::string("ℓ") + std::to_string(id) + " ↦ " + value_str(v);
    first = false;
  }
  return out + "}";
}

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<IntV>(&a)) return x->n == std::get<IntV>(b).n;
  if (const auto* x = std::get_if<BoolV>(&a)) return x->b == std::get<BoolV>(b).b;
  if (is_unit(a)) return true;
  if (const auto* x = std::get_if<LocV>(&a)) return x->id == std::get<LocV>(b).id;
  const auto& ca = std::get<ClosV>(a);
  const auto& cb = std::get<ClosV>(b);
  if (ca == cb) return true;
  if (ca->param != cb->param || *ca->body != *cb->body) return false;
  if (ca->env == cb->env) return true;
  const Env& ea = *ca->env;
  const Env& eb = *cb->env;
  if (ea.size() != eb.size()) return false;
  for (auto ia = ea.begin(), ib = eb.begin(); ia != ea.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !same_value(ia->second, ib->second)) return false;
  }
  return true;
}

namespace {

using EnvPtr = std::shared_ptr<const Env>;

// Nested evaluation deeper than this is reported as fuel exhaustion. Only
// reachable from ill-typed programs run without the checker (e.g. a closure
// stored in a reference and re-entered through it).
constexpr int kMaxEvalDepth = 20000;

struct Abort {
  Outcome outcome;
};

class Evaluator {
 public:
  Evaluator(Store store, std::int64_t fuel,
            const std::function<void(const Expr&, const Env&, const Env&)>* observer)
      : store_(std::move(store)), fuel_(fuel), observer_(observer) {}

  Outcome run(const Expr& e, EnvPtr env) {
    try {
      Value v = ev(e, env);
      return Ok{std::move(v), State{*env, std::move(store_)}};
    } catch (Abort& a) {
      return std::move(a.outcome);
    }
  }

  Outcome run_closure(const Closure& c, const Value& arg) {
    try {
      auto benv = std::make_shared<Env>(*c.env);
      benv->insert_or_assign(c.param, arg);
      EnvPtr env = benv;
      Value v = ev(*c.body, env);
      return Ok{std::move(v), State{*env, std::move(store_)}};
    } catch (Abort& a) {
      return std::move(a.outcome);
    }
  }

 private:
  [[noreturn]] static void error(RuntimeErrorKind k, const Expr& e, std::string msg) {
    throw Abort{RuntimeFailure{k, e.pos, std::move(msg)}};
  }

  void tick() {
    if (fuel_ <= 0) throw Abort{FuelExhausted{}};
    --fuel_;
  }

  static std::int64_t as_int(const Value& v, const Expr& at, const char* what) {
    if (const auto* i = std::get_if<IntV>(&v)) return i->n;
    error(RuntimeErrorKind::NotAnInt, at, std::string(what) + " is " + value_str(v) + ", not an integer");
  }

  static bool as_bool(const Value& v, const Expr& at) {
    if (const auto* b = std::get_if<BoolV>(&v)) return b->b;
    error(RuntimeErrorKind::NotABool, at, "condition is " + value_str(v) + ", not a boolean");
  }

  static const Value& lookup(const Env& env, const std::string& x, const Expr& at) {
    auto it = env.find(x);
    if (it == env.end()) error(RuntimeErrorKind::UnboundVar, at, "unbound variable " + x);
    return it->second;
  }

  LocId location_of(const Env& env, const std::string& x, const Expr& at) {
    const Value& v = lookup(env, x, at);
    const auto* l = std::get_if<LocV>(&v);
    if (!l || !store_.find(l->id)) error(RuntimeErrorKind::NotALoc, at, x + " is " + value_str(v) + ", not a location");
    return l->id;
  }

  // Evaluates `e` from `env`; on return `env` holds the conclusion's
  // environment. Only Let and Seq change it.
  Value ev(const Expr& e, EnvPtr& env) {
    if (++depth_ > kMaxEvalDepth) throw Abort{FuelExhausted{}};
    tick();
    const EnvPtr in = env;
    Value v = std::visit([&](const auto& n) { return this->rule(e, env, n); }, e.node);
    if (observer_ && *observer_) (*observer_)(e, *in, *env);
    --depth_;
    return v;
  }

  // Evaluates a premise whose environment the conclusion discards.
  Value sub(const Expr& e, const EnvPtr& env) {
    EnvPtr scratch = env;
    return ev(e, scratch);
  }

  Value rule(const Expr& e, EnvPtr&, const ast::Num& n) {
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(n.literal.data(), n.literal.data() + n.literal.size(), v);
    if (ec != std::errc() || end != n.literal.data() + n.literal.size()) {
      error(RuntimeErrorKind::NotAnInt, e, "malformed literal " + n.literal);
    }
    return IntV{v};
  }

  Value rule(const Expr&, EnvPtr&, const ast::Bool& b) { return BoolV{b.value}; }
  Value rule(const Expr&, EnvPtr&, const ast::Unit&) { return UnitV{}; }
  Value rule(const Expr& e, EnvPtr& env, const ast::Var& x) { return lookup(*env, x.name, e); }

  Value rule(const Expr& e, EnvPtr& env, const ast::Bop& b) {
    const Value v1 = sub(*b.lhs, env);
    const Value v2 = sub(*b.rhs, env);
    if (b.op == BinOp::Eq) {
      if (is_bool(v1) && is_bool(v2)) return BoolV{std::get<BoolV>(v1).b == std::get<BoolV>(v2).b};
      if (is_unit(v1) && is_unit(v2)) return BoolV{true};
    }
    const std::int64_t a = as_int(v1, *b.lhs, "left operand");
    const std::int64_t c = as_int(v2, *b.rhs, "right operand");
    // Two's-complement wrap-around, computed without signed overflow.
    const auto ua = static_cast<std::uint64_t>(a);
    const auto uc = static_cast<std::uint64_t>(c);
    switch (b.op) {
      case BinOp::Add: return IntV{static_cast<std::int64_t>(ua + uc)};
      case BinOp::Sub: return IntV{static_cast<std::int64_t>(ua - uc)};
      case BinOp::Mul: return IntV{static_cast<std::int64_t>(ua * uc)};
      case BinOp::Div:
        if (c == 0) error(RuntimeErrorKind::DivByZero, e, "division by zero");
        if (a == std::numeric_limits<std::int64_t>::min() && c == -1) return IntV{a};
        return IntV{a / c};
      case BinOp::Eq: return BoolV{a == c};
      case BinOp::Lt: return BoolV{a < c};
      case BinOp::Gt: return BoolV{a > c};
    }
    return UnitV{};
  }

  Value rule(const Expr&, EnvPtr& env, const ast::Let& l) {
    Value v = sub(*l.rhs, env);
    auto next = std::make_shared<Env>(*env);
    next->insert_or_assign(l.name, std::move(v));
    env = std::move(next);
    return UnitV{};
  }

  Value rule(const Expr&, EnvPtr& env, const ast::If& i) {
    const bool c = as_bool(sub(*i.cond, env), *i.cond);
    return sub(c ? *i.then_branch : *i.else_branch, env);
  }

  // S-While-True re-enters the loop from the body's store; iterating is the
  // same derivation with one While application per round.
  Value rule(const Expr&, EnvPtr& env, const ast::While& w) {
    for (bool first = true;; first = false) {
      if (!first) tick();
      if (!as_bool(sub(*w.cond, env), *w.cond)) return UnitV{};
      sub(*w.body, env);
    }
  }

  // S-For-Rec recurses on `For x n m` with literal bounds before running the
  // body for the upper bound, so the bodies run in increasing order after
  // every nested header has been derived. Each nested header costs the For
  // application plus its two literals.
  Value rule(const Expr& e, EnvPtr& env, const ast::For& f) {
    const std::int64_t lo = as_int(sub(*f.from, env), *f.from, "lower bound");
    const std::int64_t hi = as_int(sub(*f.to, env), *f.to, "upper bound");
    if (lo > hi) {
      error(RuntimeErrorKind::ForBoundsInvalid, e,
            "for bounds " + std::to_string(lo) + " > " + std::to_string(hi));
    }
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    for (std::uint64_t k = 0; k < span; ++k) {
      tick();
      tick();
      tick();
    }
    for (std::uint64_t k = 0; k <= span; ++k) {
      auto benv = std::make_shared<Env>(*env);
      benv->insert_or_assign(f.var, IntV{static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + k)});
      EnvPtr scratch = std::move(benv);
      ev(*f.body, scratch);
    }
    return UnitV{};
  }

  Value rule(const Expr&, EnvPtr& env, const ast::Seq& s) {
    ev(*s.first, env);
    return ev(*s.second, env);
  }

  Value rule(const Expr&, EnvPtr& env, const ast::Func& f) {
    return ClosV{std::make_shared<const Closure>(Closure{f.body, f.param, env})};
  }

  Value rule(const Expr& e, EnvPtr& env, const ast::App& a) {
    const Value v1 = sub(*a.fn, env);
    const auto* c = std::get_if<ClosV>(&v1);
    if (!c) error(RuntimeErrorKind::NotAFunction, e, value_str(v1) + " is not a function");
    const Value v2 = sub(*a.arg, env);
    auto benv = std::make_shared<Env>(*(*c)->env);
    benv->insert_or_assign((*c)->param, v2);
    EnvPtr scratch = std::move(benv);
    return ev(*(*c)->body, scratch);
  }

  Value rule(const Expr&, EnvPtr& env, const ast::Ref& r) {
    Value v = sub(*r.inner, env);
    return LocV{store_.alloc(std::move(v))};
  }

  Value rule(const Expr& e, EnvPtr& env, const ast::Deref& d) {
    return *store_.find(location_of(*env, d.name, e));
  }

  Value rule(const Expr& e, EnvPtr& env, const ast::Assign& a) {
    Value v = sub(*a.rhs, env);
    store_.cells.insert_or_assign(location_of(*env, a.name, e), std::move(v));
    return UnitV{};
  }

  Store store_;
  std::int64_t fuel_;
  const std::function<void(const Expr&, const Env&, const Env&)>* observer_;
  int depth_ = 0;
};

}  // namespace

Outcome eval(const Expr& e, const Env& env, const Store& store, std::int64_t fuel) {
  return Evaluator(store, fuel, nullptr).run(e, std::make_shared<const Env>(env));
}

Outcome eval(const Expr& e, const Env& env, const Store& store, const EvalOptions& opts) {
  return Evaluator(store, opts.fuel, &opts.observer).run(e, std::make_shared<const Env>(env));
}

Outcome apply_closure(const Closure& c, const Value& arg, const Store& store, std::int64_t fuel) {
  return Evaluator(store, fuel, nullptr).run_closure(c, arg);
}

}  // namespace ifc
