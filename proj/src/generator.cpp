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

#include "ifc/generator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "ifc/equivalence.hpp"
#include "ifc/lattice.hpp"
#include "ifc/parser.hpp"

namespace ifc {

VKind kind_of_name(const std::string& name) {
  switch (name.empty() ? 'i' : name[0]) {
    case 'b': return VKind::Bool;
    case 'u': return VKind::Unit;
    case 'r':
    case 'c': return VKind::RefInt;
    case 'f': return VKind::Fun;
    default: return VKind::Int;
  }
}

const std::vector<std::pair<SecType, std::string>>& closure_templates() {
  const SecType L = SecType::low(), H = SecType::high(), E = SecType::empty();
  static const std::vector<std::pair<SecType, std::string>> kTemplates = {
      {SecType::fun(L, L, E), "(x: low) => x + 1"},
      {SecType::fun(L, L, L), "(x: low) => { let y = x; y }"},
      {SecType::fun(H, H, E), "(x: high) => x * 2"},
      {SecType::fun(H, H, H), "(x: high) => { let y = x; y }"},
      {SecType::fun(H, L, E), "(x: high) => 3"},
      {SecType::fun(L, H, H), "(x: low) => { let y: high = x; y }"},
  };
  return kTemplates;
}

TEnv gen_tenv(const GenConfig& cfg, Rng& rng) {
  TEnv env;
  const auto n = rng.range(0, std::max(0, cfg.max_bindings));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string idx = std::to_string(i);
    const SecType level = rng.chance(1, 2) ? SecType::low() : SecType::high();
    switch (rng.range(0, 9)) {
      case 0: case 1: case 2: case 3:
        env.emplace("i" + idx, level);
        break;
      case 4: case 5:
        env.emplace("b" + idx, level);
        break;
      case 6:
        env.emplace("u" + idx, level);
        break;
      case 7: case 8:
        env.emplace("r" + idx, SecType::ref(level));
        break;
      default:
        env.emplace("f" + idx, rng.pick(closure_templates()).first);
        break;
    }
  }
  return env;
}

namespace {

// -- AST shorthands ---------------------------------------------------------

ExprPtr num(std::int64_t v) { return make_expr(ast::Num{std::to_string(v)}); }
ExprPtr boolean(bool b) { return make_expr(ast::Bool{b}); }
ExprPtr var(const std::string& x) { return make_expr(ast::Var{x}); }
ExprPtr bop(BinOp op, ExprPtr a, ExprPtr b) { return make_expr(ast::Bop{op, std::move(a), std::move(b)}); }
ExprPtr seq(ExprPtr a, ExprPtr b) { return make_expr(ast::Seq{std::move(a), std::move(b)}); }
ExprPtr let(const std::string& x, std::optional<SecType> annot, ExprPtr rhs) {
  return make_expr(ast::Let{x, std::move(annot), std::move(rhs)});
}
ExprPtr assign(const std::string& x, ExprPtr rhs) { return make_expr(ast::Assign{x, std::move(rhs)}); }
ExprPtr deref(const std::string& x) { return make_expr(ast::Deref{x}); }
ExprPtr ref(ExprPtr e) { return make_expr(ast::Ref{std::move(e)}); }
ExprPtr app(ExprPtr f, ExprPtr a) { return make_expr(ast::App{std::move(f), std::move(a)}); }

ExprPtr seq_of(const std::vector<ExprPtr>& items) {
  if (items.empty()) return make_expr(ast::Unit{});
  ExprPtr acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = seq(items[i], acc);
  return acc;
}

// -- generation context -----------------------------------------------------

struct Scope {
  TEnv types;
  std::map<std::string, VKind> kinds;
  // Loop counters of enclosing counted loops; readable but never assigned or
  // aliased, so those loops terminate.
  std::set<std::string> frozen;

  std::vector<std::string> names(VKind k, const std::function<bool(const SecType&)>& ok) const {
    std::vector<std::string> out;
    for (const auto& [x, kind] : kinds) {
      if (kind != k || frozen.count(x)) continue;
      auto it = types.find(x);
      if (it != types.end() && ok(it->second)) out.push_back(x);
    }
    return out;
  }
};

// Level an expression is asked to have.
enum class Want { Low, Any, High };

bool fits(const SecType& t, Want w) {
  switch (w) {
    case Want::Low: return t.is_low();
    case Want::High: return t.is_high();
    case Want::Any: return t.is_base();
  }
  return false;
}

struct Built {
  ExprPtr expr;
  std::vector<std::pair<std::string, VKind>> binds;
};

constexpr int kStatementAttempts = 8;
constexpr int kProgramAttempts = 6;
constexpr int kMaxExprDepth = 3;

class Builder {
 public:
  Builder(const GenConfig& cfg, Rng& rng, GenStats& stats) : cfg_(cfg), rng_(rng), stats_(stats) {}

  ExprPtr program(const TEnv& tenv, const SecType& pc, GenTarget target) {
    for (int attempt = 0; attempt < kProgramAttempts; ++attempt) {
      Scope s;
      s.types = tenv;
      for (const auto& [x, t] : tenv) s.kinds[x] = kind_of_name(x);
      counter_ = 0;

      std::vector<ExprPtr> items;
      const auto n = rng_.range(1, 6);
      for (std::int64_t i = 0; i < n; ++i) {
        if (ExprPtr st = statement(s, pc, cfg_.max_depth)) items.push_back(st);
      }
      ExprPtr last = final_item(s, pc, target);
      if (last) items.push_back(last);
      if (items.empty()) continue;
      ExprPtr e = seq_of(items);

      CheckResult r = check(tenv, pc, *e, {false});
      if (r.ok() && (target == GenTarget::Any || low_result(r.judgment->type))) return e;
      ++stats_.program_retries;
    }
    ++stats_.fallbacks;
    return num(0);
  }

  static bool low_result(const SecType& t) {
    return t.is_low() || (t.is_ref() && t.inner().is_low()) || t.is_fun();
  }

 private:
  // Generated names never collide with gen_tenv's (prefix + index).
  std::string fresh(char prefix) { return std::string(1, prefix) + "n" + std::to_string(counter_++); }

  ExprPtr literal() { return num(rng_.range(cfg_.int_min, cfg_.int_max)); }

  // -- expressions ------------------------------------------------------------

  ExprPtr int_leaf(const Scope& s, Want w) {
    std::vector<std::function<ExprPtr()>> options;
    if (w != Want::High) options.push_back([&] { return literal(); });
    auto vars = s.names(VKind::Int, [w](const SecType& t) { return fits(t, w); });
    if (!vars.empty()) options.push_back([&, vars] { return var(rng_.pick(vars)); });
    auto refs = s.names(VKind::RefInt, [w](const SecType& t) { return t.is_ref() && fits(t.inner(), w); });
    for (const auto& c : s.frozen) {
      if (fits(s.types.at(c).inner(), w)) refs.push_back(c);
    }
    if (!refs.empty()) options.push_back([&, refs] { return deref(rng_.pick(refs)); });
    if (options.empty()) return nullptr;
    return rng_.pick(options)();
  }

  // Function variables whose application can produce `w` under pc.
  std::vector<std::string> callables(const Scope& s, const SecType& pc, Want w) const {
    return s.names(VKind::Fun, [&](const SecType& t) {
      return t.is_fun() && t.param().is_base() && fits(t.result(), w) && leq(pc, t.latent());
    });
  }

  ExprPtr int_expr(const Scope& s, const SecType& pc, int depth, Want w) {
    if (depth <= 0 || rng_.chance(2, 5)) {
      if (ExprPtr leaf = int_leaf(s, w)) return leaf;
      if (depth <= 0) return nullptr;
    }
    switch (rng_.range(0, 9)) {
      case 0: case 1: case 2: case 3: {
        static const BinOp kOps[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Add};
        const BinOp op = kOps[rng_.range(0, 3)];
        // One operand carries the requested level, the other may be lower.
        const bool high_left = rng_.chance(1, 2);
        ExprPtr a = int_expr(s, pc, depth - 1, w);
        ExprPtr b = int_expr(s, pc, depth - 1, w == Want::High ? Want::Any : w);
        if (!a || !b) return int_leaf(s, w);
        return high_left ? bop(op, a, b) : bop(op, b, a);
      }
      case 4: {
        ExprPtr a = int_expr(s, pc, depth - 1, w);
        if (!a) return nullptr;
        std::int64_t d = rng_.range(1, 4);
        if (rng_.chance(1, 4)) d = -d;
        return bop(BinOp::Div, a, num(d));
      }
      case 5: case 6: {
        auto fs = callables(s, pc, w);
        if (fs.empty()) return int_leaf(s, w);
        const std::string f = rng_.pick(fs);
        const SecType& param = s.types.at(f).param();
        ExprPtr arg = int_expr(s, pc, depth - 1, param.is_low() ? Want::Low : Want::High);
        if (!arg) return int_leaf(s, w);
        return app(var(f), arg);
      }
      case 7: {
        ExprPtr c = bool_expr(s, pc, depth - 1, w == Want::Low ? Want::Low : Want::Any);
        if (!c) return int_leaf(s, w);
        const SecType pc2 = raise(pc, s, c);
        ExprPtr a = int_expr(s, pc2, depth - 1, w);
        ExprPtr b = int_expr(s, pc2, depth - 1, w == Want::High ? Want::Any : w);
        if (!a || !b) return int_leaf(s, w);
        return make_expr(ast::If{c, a, b});
      }
      case 8: {
        // (statement; expression)
        Scope inner = s;
        Built st = raw_statement(inner, pc, std::min(depth, 2));
        if (!st.expr || !accept(inner, pc, st)) return int_leaf(s, w);
        ExprPtr tail = int_expr(inner, pc, depth - 1, w);
        if (!tail) return int_leaf(s, w);
        return seq(st.expr, tail);
      }
      default:
        return int_leaf(s, w);
    }
  }

  ExprPtr bool_expr(const Scope& s, const SecType& pc, int depth, Want w) {
    std::vector<std::function<ExprPtr()>> options;
    if (w != Want::High) options.push_back([&] { return boolean(rng_.chance(1, 2)); });
    auto vars = s.names(VKind::Bool, [w](const SecType& t) { return fits(t, w); });
    if (!vars.empty()) options.push_back([&, vars] { return var(rng_.pick(vars)); });
    if (depth > 0) {
      auto cmp = [&, w]() -> ExprPtr {
        static const BinOp kOps[] = {BinOp::Lt, BinOp::Gt, BinOp::Eq};
        ExprPtr a = int_expr(s, pc, std::min(depth - 1, 1), w);
        ExprPtr b = int_expr(s, pc, std::min(depth - 1, 1), w == Want::High ? Want::Any : w);
        if (!a || !b) return nullptr;
        return bop(kOps[rng_.range(0, 2)], a, b);
      };
      options.push_back(cmp);
      options.push_back(cmp);
    }
    for (int tries = 0; tries < 4 && !options.empty(); ++tries) {
      if (ExprPtr e = rng_.pick(options)()) return e;
    }
    return nullptr;
  }

  // pc ⊔ type(cond), read off the checker.
  SecType raise(const SecType& pc, const Scope& s, const ExprPtr& cond) const {
    CheckResult r = check(s.types, pc, *cond, {false});
    if (!r.ok() || !r.judgment->type.is_base()) return SecType::high();
    return leq(r.judgment->type, pc) ? pc : r.judgment->type;
  }

  // -- statements ---------------------------------------------------------------

  bool accept(Scope& s, const SecType& pc, const Built& b) {
    CheckResult r = check(s.types, pc, *b.expr, {false});
    if (!r.ok()) return false;
    s.types = std::move(r.judgment->out_env);
    for (const auto& [x, k] : b.binds) s.kinds[x] = k;
    return true;
  }

  ExprPtr statement(Scope& s, const SecType& pc, int depth) {
    for (int attempt = 0; attempt < kStatementAttempts; ++attempt) {
      Built b = raw_statement(s, pc, depth);
      if (b.expr && accept(s, pc, b)) return b.expr;
      ++stats_.statement_retries;
    }
    return nullptr;
  }

  ExprPtr block(const Scope& outer, const SecType& pc, int depth, int max_items) {
    Scope s = outer;
    std::vector<ExprPtr> items;
    const auto n = rng_.range(1, max_items);
    for (std::int64_t i = 0; i < n; ++i) {
      if (ExprPtr st = statement(s, pc, depth)) items.push_back(st);
    }
    return seq_of(items);
  }

  Built raw_statement(const Scope& s, const SecType& pc, int depth) {
    const bool high = pc.is_high();
    const int ed = std::min(depth, kMaxExprDepth);
    const auto roll = rng_.range(0, depth > 1 ? 19 : 9);
    switch (roll) {
      case 0: case 1: {  // Let-Base
        const bool as_bool = rng_.chance(1, 4);
        const Want w = high ? Want::High : Want::Any;
        ExprPtr rhs = as_bool ? bool_expr(s, pc, ed, w) : int_expr(s, pc, ed, w);
        if (!rhs) return {};
        const std::string x = fresh(as_bool ? 'b' : 'i');
        return {let(x, std::nullopt, rhs), {{x, as_bool ? VKind::Bool : VKind::Int}}};
      }
      case 2: case 3: {  // Let-n
        const bool low = !high && rng_.chance(1, 2);
        const bool as_bool = rng_.chance(1, 4);
        const Want w = low ? Want::Low : Want::Any;
        ExprPtr rhs = as_bool ? bool_expr(s, pc, ed, w) : int_expr(s, pc, ed, w);
        if (!rhs) return {};
        const std::string x = fresh(as_bool ? 'b' : 'i');
        return {let(x, low ? SecType::low() : SecType::high(), rhs),
                {{x, as_bool ? VKind::Bool : VKind::Int}}};
      }
      case 4: {  // Let-Base-Ref, fresh cell or alias
        const std::string x = fresh('r');
        auto refs = s.names(VKind::RefInt, [high](const SecType& t) { return t.is_ref() && (!high || t.inner().is_high()); });
        if (!refs.empty() && rng_.chance(1, 3)) return {let(x, std::nullopt, var(rng_.pick(refs))), {{x, VKind::RefInt}}};
        ExprPtr init = int_expr(s, pc, ed, high ? Want::High : Want::Any);
        if (!init) return {};
        return {let(x, std::nullopt, ref(init)), {{x, VKind::RefInt}}};
      }
      case 5: case 6: {  // Reassign
        auto refs = s.names(VKind::RefInt, [&](const SecType& t) { return t.is_ref() && leq(pc, t.inner()); });
        if (refs.empty()) return {};
        const std::string r = rng_.pick(refs);
        ExprPtr rhs = int_expr(s, pc, ed, s.types.at(r).inner().is_low() ? Want::Low : Want::Any);
        if (!rhs) return {};
        return {assign(r, rhs), {}};
      }
      case 7: {  // application used for its effect
        auto fs = callables(s, pc, Want::Any);
        if (fs.empty()) return {};
        const std::string f = rng_.pick(fs);
        const SecType& param = s.types.at(f).param();
        ExprPtr arg = int_expr(s, pc, ed - 1, param.is_low() ? Want::Low : Want::High);
        if (!arg) return {};
        return {app(var(f), arg), {}};
      }
      case 8: {  // bare expression
        ExprPtr e = int_expr(s, pc, ed, Want::Any);
        if (!e) return {};
        return {e, {}};
      }
      case 9: case 10: case 11: {  // If-Else
        ExprPtr c = bool_expr(s, pc, ed, Want::Any);
        if (!c) return {};
        const SecType pc2 = raise(pc, s, c);
        ExprPtr a = block(s, pc2, depth - 1, 3);
        ExprPtr b = block(s, pc2, depth - 1, 3);
        return {make_expr(ast::If{c, a, b}), {}};
      }
      case 12: case 13: case 14:
        return counted_while(s, pc, depth);
      case 15: {  // unrestricted while; may diverge
        if (rng_.chance(1, 2)) return counted_while(s, pc, depth);
        ExprPtr c = bool_expr(s, pc, ed, Want::Any);
        if (!c) return {};
        const SecType pc2 = raise(pc, s, c);
        return {make_expr(ast::While{c, block(s, pc2, depth - 1, 2)}), {}};
      }
      case 16: case 17:
        return for_loop(s, pc, depth);
      default: {
        if (high) return {};
        return lambda_binding(s, pc, depth);
      }
    }
  }

  // let c = ref(n); while [stmt;] !c > 0 { ...; c := !c - 1 }
  Built counted_while(const Scope& s, const SecType& pc, int depth) {
    const std::string c = fresh('c');
    ExprPtr init;
    bool counter_high = pc.is_high() || rng_.chance(2, 5);
    if (counter_high) init = int_leaf(s, Want::High);
    if (!init) {
      if (pc.is_high()) return {};
      counter_high = false;
      init = num(rng_.range(0, 4));
    }
    Scope in = s;
    in.types[c] = SecType::ref(counter_high ? SecType::high() : SecType::low());
    in.kinds[c] = VKind::RefInt;
    in.frozen.insert(c);

    ExprPtr cond = bop(BinOp::Gt, deref(c), num(0));
    if (rng_.chance(1, 4)) {
      // Conditions are ordinary expressions and may carry effects of their own.
      Scope cs = in;
      Built pre = raw_statement(cs, pc, 1);
      if (pre.expr && accept(cs, pc, pre)) cond = seq(pre.expr, cond);
    }
    const SecType pc2 = counter_high ? SecType::high() : pc;
    ExprPtr body = block(in, pc2, depth - 1, 2);
    ExprPtr step = assign(c, bop(BinOp::Sub, deref(c), num(1)));
    body = body->is<ast::Unit>() ? step : seq_of({body, step});
    return {seq(let(c, std::nullopt, ref(init)), make_expr(ast::While{cond, body})), {{c, VKind::RefInt}}};
  }

  // for k in e to e + n { ... } with e free of effects, so the bounds are ordered.
  Built for_loop(const Scope& s, const SecType& pc, int depth) {
    ExprPtr from = int_leaf(s, Want::Any);
    if (!from) return {};
    const std::int64_t span = rng_.range(0, std::max(0, cfg_.max_for_span));
    ExprPtr to = span == 0 ? from : bop(BinOp::Add, from, num(span));
    const SecType pc2 = raise(pc, s, from);
    const std::string k = fresh('k');
    Scope in = s;
    in.types[k] = pc2;
    in.kinds[k] = VKind::Int;
    ExprPtr body = block(in, pc2, depth - 1, 2);
    return {make_expr(ast::For{k, from, to, body}), {}};
  }

  // let f = (p: t) => { ...; e }
  Built lambda_binding(const Scope& s, const SecType& pc, int depth) {
    const std::string f = fresh('f');
    const std::string p = fresh('p');
    const SecType annot = rng_.chance(1, 2) ? SecType::low() : SecType::high();
    Scope in = s;
    in.types[p] = annot;
    in.kinds[p] = VKind::Int;
    std::vector<ExprPtr> items;
    const auto n = rng_.range(0, 2);
    for (std::int64_t i = 0; i < n; ++i) {
      if (ExprPtr st = statement(in, pc, std::min(depth - 1, 2))) items.push_back(st);
    }
    ExprPtr result = int_expr(in, pc, 2, Want::Any);
    if (!result) return {};
    items.push_back(result);
    ExprPtr fn = make_expr(ast::Func{p, annot, seq_of(items)});
    return {let(f, std::nullopt, fn), {{f, VKind::Fun}}};
  }

  ExprPtr final_item(Scope& s, const SecType& pc, GenTarget target) {
    const Want w = target == GenTarget::LowResult ? Want::Low : Want::Any;
    switch (rng_.range(0, 5)) {
      case 0: {
        auto refs = s.names(VKind::RefInt, [w](const SecType& t) { return t.is_ref() && fits(t.inner(), w); });
        if (!refs.empty()) return var(rng_.pick(refs));
        break;
      }
      case 1: {
        auto fs = s.names(VKind::Fun, [](const SecType& t) { return t.is_fun(); });
        if (!fs.empty()) return var(rng_.pick(fs));
        break;
      }
      case 2:
        if (ExprPtr b = bool_expr(s, pc, 2, w)) return b;
        break;
      case 3:
        if (target == GenTarget::Any) return statement(s, pc, 2);
        break;
      default:
        break;
    }
    return int_expr(s, pc, kMaxExprDepth, w);
  }

  const GenConfig& cfg_;
  Rng& rng_;
  GenStats& stats_;
  int counter_ = 0;
};

}  // namespace

ExprPtr gen_welltyped(const GenConfig& cfg, Rng& rng, const TEnv& tenv, const SecType& pc,
                      GenTarget target, GenStats* stats) {
  if (!pc.is_base()) throw std::invalid_argument("pc must be Low or High");
  GenStats local;
  return Builder(cfg, rng, stats ? *stats : local).program(tenv, pc, target);
}

std::pair<State, State> gen_lowequiv_states(const GenConfig& cfg, Rng& rng, const TEnv& tenv) {
  auto draw = [&](VKind k) -> Value {
    switch (k) {
      case VKind::Bool: return BoolV{rng.chance(1, 2)};
      case VKind::Unit: return UnitV{};
      default: return IntV{rng.range(cfg.int_min, cfg.int_max)};
    }
  };

  State s1, s2;
  for (const auto& [x, t] : tenv) {
    const VKind k = kind_of_name(x);
    if (t.is_fun()) {
      const auto& templates = closure_templates();
      auto it = std::find_if(templates.begin(), templates.end(), [&](const auto& p) { return p.first == t; });
      if (it == templates.end()) throw std::logic_error("no closure template for " + t.str());
      const ExprPtr lam = parse(it->second);
      const auto& fn = std::get<ast::Func>(lam->node);
      const Value c = ClosV{std::make_shared<const Closure>(Closure{fn.body, fn.param, std::make_shared<const Env>()})};
      s1.env.emplace(x, c);
      s2.env.emplace(x, c);
    } else if (t.is_ref()) {
      const Value a = draw(VKind::Int);
      const Value b = t.inner().is_low() ? a : draw(VKind::Int);
      s1.env.emplace(x, LocV{s1.store.alloc(a)});
      s2.env.emplace(x, LocV{s2.store.alloc(b)});
    } else {
      const Value a = draw(k);
      s1.env.emplace(x, a);
      s2.env.emplace(x, t.is_low() ? a : draw(k));
    }
  }
  if (!low_equiv(tenv, s1, s2)) throw std::logic_error("generated states are not low-equivalent");
  return {std::move(s1), std::move(s2)};
}

}  // namespace ifc
