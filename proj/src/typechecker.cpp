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

#include "ifc/typechecker.hpp"

#include <exception>
#include <stdexcept>

#include "ifc/lattice.hpp"

namespace ifc {

std::string TypeError::str() const {
  std::string s = rule + ": side condition " + condition + " violated";
  if (!detail.empty()) s += " (" + detail + ")";
  if (at.line > 0) s += " at " + std::to_string(at.line) + ":" + std::to_string(at.col);
  return s;
}

std::string env_str(const TEnv& env) {
  std::string s = "{";
  bool first = true;
  for (const auto& [name, t] : env) {
    s += (first ? "" : ", ") + name + " ↦ " + t.str();
    first = false;
  }
  return s + "}";
}

namespace {

constexpr std::size_t kTraceExprWidth = 72;

std::string clip(std::string text) {
  if (text.size() > kTraceExprWidth) text = text.substr(0, kTraceExprWidth - 3) + "...";
  return text;
}

struct Failure {
  TypeError error;
};

class Checker {
 public:
  explicit Checker(bool record) : record_(record) {}

  Judgment run(const TEnv& env, const SecType& pc, const Expr& e) { return go(env, pc, e); }

  std::vector<TraceFrame> take_trace() { return std::move(trace_); }

 private:
  // Opens a frame for the rule about to be applied; closes it on scope exit.
  class Frame {
   public:
    Frame(Checker& c, const char* rule, const Expr& e) : c_(c), e_(e) {
      c_.stack_.push_back({rule, &e});
      if (c_.record_) {
        idx_ = c_.trace_.size();
        c_.trace_.push_back({rule, static_cast<int>(c_.stack_.size()) - 1, clip(pretty_inline(e)), e.pos, "", false});
      }
    }
    ~Frame() {
      if (c_.record_ && std::uncaught_exceptions() > 0 && c_.trace_[idx_].outcome.empty()) {
        c_.trace_[idx_].outcome = "✗";
        c_.trace_[idx_].failed = true;
      }
      c_.stack_.pop_back();
    }

    void rename(const char* rule) {
      c_.stack_.back().rule = rule;
      if (c_.record_) c_.trace_[idx_].rule = rule;
    }
    const std::string& rule() const { return c_.stack_.back().rule; }

    Judgment done(Judgment j) {
      if (c_.record_) c_.trace_[idx_].outcome = j.str();
      return j;
    }

    [[noreturn]] void fail(const std::string& condition, const std::string& detail) {
      TypeError err;
      err.rule = rule();
      err.condition = condition;
      err.at = e_.pos;
      err.detail = detail;
      for (std::size_t i = 0; i < c_.stack_.size(); ++i) {
        const auto& open = c_.stack_[i];
        err.path.push_back({open.rule, static_cast<int>(i), clip(pretty_inline(*open.expr)), open.expr->pos,
                            i + 1 == c_.stack_.size() ? "✗ " + condition : "✗", true});
      }
      if (c_.record_) {
        c_.trace_[idx_].outcome = "✗ " + condition;
        c_.trace_[idx_].failed = true;
      }
      throw Failure{std::move(err)};
    }

    // Requires a ⊑ b; `condition` is the written form, e.g. "t1 ⊒ pc".
    void require_leq(const SecType& a, const SecType& b, const std::string& condition,
                     const std::string& detail) {
      if (!leq(a, b)) fail(condition, detail);
    }

    void require_base(const SecType& t, const std::string& condition, const std::string& detail) {
      if (!t.is_base()) fail(condition, detail);
    }

    SecType lub(const std::vector<SecType>& ts, const std::string& condition) {
      if (auto r = try_join(ts)) return *r;
      fail(condition, "no least upper bound of " + list(ts));
    }
    SecType glb(const std::vector<SecType>& ts, const std::string& condition) {
      if (auto r = try_meet(ts)) return *r;
      fail(condition, "no greatest lower bound of " + list(ts));
    }

   private:
    static std::string list(const std::vector<SecType>& ts) {
      std::string s = "{";
      for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + ts[i].str();
      return s + "}";
    }

    Checker& c_;
    const Expr& e_;
    std::size_t idx_ = 0;
  };

  struct Open {
    std::string rule;
    const Expr* expr;
  };

  static std::string is(const char* name, const SecType& t) { return std::string(name) + " = " + t.str(); }
  static std::string is(const char* n1, const SecType& a, const char* n2, const SecType& b) {
    return is(n1, a) + ", " + is(n2, b);
  }

  static const SecType& lookup(Frame& f, const TEnv& env, const std::string& x) {
    auto it = env.find(x);
    if (it == env.end()) f.fail("x ∈ dom(Γ)", x + " is unbound");
    return it->second;
  }

  Judgment go(const TEnv& env, const SecType& pc, const Expr& e) {
    return std::visit([&](const auto& n) { return this->rule(env, pc, e, n); }, e.node);
  }

  Judgment rule(const TEnv& env, const SecType&, const Expr& e, const ast::Num&) {
    Frame f(*this, "Num", e);
    return f.done({SecType::low(), SecType::empty(), env});
  }

  Judgment rule(const TEnv& env, const SecType&, const Expr& e, const ast::Bool&) {
    Frame f(*this, "Bool", e);
    return f.done({SecType::low(), SecType::empty(), env});
  }

  Judgment rule(const TEnv& env, const SecType&, const Expr& e, const ast::Unit&) {
    Frame f(*this, "Unit", e);
    return f.done({SecType::low(), SecType::empty(), env});
  }

  Judgment rule(const TEnv& env, const SecType&, const Expr& e, const ast::Var& v) {
    Frame f(*this, "Var", e);
    return f.done({lookup(f, env, v.name), SecType::empty(), env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::Bop& b) {
    Frame f(*this, "Bop", e);
    const Judgment j1 = go(env, pc, *b.lhs);
    const Judgment j2 = go(env, pc, *b.rhs);
    const SecType &t1 = j1.type, &t3 = j2.type;
    if (!t1.is_base() || !t3.is_base()) f.fail("t1, t3 ∈ {Low, High}", is("t1", t1, "t3", t3));
    const SecType t5 = f.lub({t1, t3}, "t5 = ⊔{t1, t3}");
    const SecType t6 = f.glb({j1.effect, j2.effect}, "t6 = ⊓{t2, t4}");
    return f.done({t5, t6, env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::Let& l) {
    Frame f(*this, "Let", e);
    if (l.annot) {
      f.rename("Let-n");
      const SecType& t1 = *l.annot;
      f.require_leq(pc, t1, "t1 ⊒ pc", is("t1", t1, "pc", pc));
      const Judgment j = go(env, pc, *l.rhs);
      const SecType& t2 = j.type;
      if (!t1.is_base() || !t2.is_base()) f.fail("t1, t2 ∈ {Low, High}", is("t1", t1, "t2", t2));
      f.require_leq(t2, t1, "t1 ⊒ t2", is("t1", t1, "t2", t2));
      const SecType t4 = f.glb({j.effect, t1}, "t4 = ⊓{t3, t1}");
      return f.done({SecType::low(), t4, extend(env, l.name, t1)});
    }

    if (l.rhs->is<ast::Func>()) {
      f.rename("Let-Base-Func");
      f.require_leq(pc, SecType::low(), "Low ⊒ pc", is("pc", pc));
      const Judgment j = go(env, pc, *l.rhs);
      return f.done({SecType::low(), SecType::low(), extend(env, l.name, j.type)});
    }

    const Judgment j = go(env, pc, *l.rhs);
    const SecType& t1 = j.type;
    if (t1.is_fun()) {
      f.rename("Let-Base-Func");
      f.require_leq(pc, SecType::low(), "Low ⊒ pc", is("pc", pc));
      return f.done({SecType::low(), SecType::low(), extend(env, l.name, t1)});
    }
    if (t1.is_ref()) {
      f.rename("Let-Base-Ref");
      const SecType& inner = t1.inner();
      const SecType t3 = f.glb({j.effect, inner}, "t3 = ⊓{t2, t1}");
      f.require_leq(pc, t3, "t3 ⊒ pc", is("t3", t3, "pc", pc));
      f.require_base(inner, "t1 ∈ {Low, High}", is("t1", inner));
      return f.done({SecType::low(), t3, extend(env, l.name, t1)});
    }
    f.rename("Let-Base");
    f.require_base(t1, "t1 ∈ {Low, High}", is("t1", t1));
    f.require_leq(pc, t1, "t1 ⊒ pc", is("t1", t1, "pc", pc));
    const SecType t3 = f.glb({t1, j.effect}, "t3 = ⊓{t1, t2}");
    return f.done({SecType::low(), t3, extend(env, l.name, t1)});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::If& i) {
    Frame f(*this, "If-Else", e);
    const Judgment j1 = go(env, pc, *i.cond);
    f.require_base(j1.type, "t1 ∈ {Low, High}", is("t1", j1.type));
    const SecType pc2 = f.lub({pc, j1.type}, "pc2 = ⊔{pc1, t1}");
    const Judgment j2 = go(env, pc2, *i.then_branch);
    const Judgment j3 = go(env, pc2, *i.else_branch);
    const SecType t7 = f.lub({j1.type, j2.type, j3.type}, "t7 = ⊔{t1, t3, t5}");
    const SecType t8 = f.glb({j1.effect, j2.effect, j3.effect}, "t8 = ⊓{t2, t4, t6}");
    return f.done({t7, t8, env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::While& w) {
    Frame f(*this, "While", e);
    const Judgment j1 = go(env, pc, *w.cond);
    f.require_base(j1.type, "t1 ∈ {Low, High}", is("t1", j1.type));
    const SecType pc2 = f.lub({pc, j1.type}, "pc2 = ⊔{pc1, t1}");
    const Judgment j2 = go(env, pc2, *w.body);
    const SecType t6 = f.glb({j1.effect, j2.effect}, "t6 = ⊓{t2, t4}");
    return f.done({SecType::low(), t6, env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::For& fr) {
    Frame f(*this, "For", e);
    const Judgment j1 = go(env, pc, *fr.from);
    const Judgment j2 = go(env, pc, *fr.to);
    if (!j1.type.is_base() || !j2.type.is_base()) {
      f.fail("t1, t3 ∈ {Low, High}", is("t1", j1.type, "t3", j2.type));
    }
    const SecType pc2 = f.lub({pc, j1.type, j2.type}, "pc2 = ⊔{pc1, t1, t3}");
    const Judgment j3 = go(extend(env, fr.var, pc2), pc2, *fr.body);
    const SecType t8 = f.glb({j1.effect, j2.effect, j3.effect}, "t8 = ⊓{t2, t4, t6}");
    return f.done({SecType::low(), t8, env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::Seq& s) {
    Frame f(*this, "Seq", e);
    const Judgment j1 = go(env, pc, *s.first);
    Judgment j2 = go(j1.out_env, pc, *s.second);
    const SecType t5 = f.glb({j1.effect, j2.effect}, "t5 = ⊓{t2, t4}");
    return f.done({j2.type, t5, std::move(j2.out_env)});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::Func& fn) {
    Frame f(*this, "Func", e);
    if (!well_formed(fn.annot)) f.fail("t1 well-formed", is("t1", fn.annot));
    const Judgment j = go(extend(env, fn.param, fn.annot), pc, *fn.body);
    f.require_leq(pc, j.effect, "t3 ⊒ pc", is("t3", j.effect, "pc", pc));
    return f.done({SecType::fun(fn.annot, j.type, j.effect), SecType::empty(), env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::App& a) {
    Frame f(*this, "App", e);
    const Judgment j2 = go(env, pc, *a.arg);
    const Judgment j1 = go(env, pc, *a.fn);
    const SecType& ft = j1.type;
    if (!ft.is_fun()) f.fail("e1 : (t1 → t3 @ t4)", "e1 has type " + ft.str());
    if (ft.param() != j2.type) {
      f.fail("e2 : t1", "parameter type " + ft.param().str() + ", argument type " + j2.type.str());
    }
    const SecType t6 = f.glb({j2.effect, ft.latent(), j1.effect}, "t6 = ⊓{t2, t4, t5}");
    f.require_leq(pc, t6, "t6 ⊒ pc1", is("t6", t6, "pc1", pc));
    return f.done({ft.result(), t6, env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::Ref& r) {
    Frame f(*this, "Ref", e);
    const Judgment j = go(env, pc, *r.inner);
    f.require_base(j.type, "t1 ∈ {Low, High}", is("t1", j.type));
    return f.done({SecType::ref(j.type), j.effect, env});
  }

  Judgment rule(const TEnv& env, const SecType&, const Expr& e, const ast::Deref& d) {
    Frame f(*this, "Deref", e);
    const SecType& t = lookup(f, env, d.name);
    if (!t.is_ref()) f.fail("Γ(x) = ref t1", d.name + " has type " + t.str());
    return f.done({t.inner(), SecType::empty(), env});
  }

  Judgment rule(const TEnv& env, const SecType& pc, const Expr& e, const ast::Assign& a) {
    Frame f(*this, "Reassign", e);
    const SecType& tx = lookup(f, env, a.name);
    if (!tx.is_ref()) f.fail("Γ(x) = ref t3", a.name + " has type " + tx.str());
    const SecType& t3 = tx.inner();
    f.require_base(t3, "t3 ∈ {Low, High}", is("t3", t3));
    f.require_leq(pc, t3, "t3 ⊒ pc", is("t3", t3, "pc", pc));
    const Judgment j = go(env, pc, *a.rhs);
    f.require_leq(j.type, t3, "t3 ⊒ t1", is("t3", t3, "t1", j.type));
    const SecType t4 = f.glb({t3, j.effect}, "t4 = ⊓{t3, t2}");
    return f.done({SecType::low(), t4, env});
  }

  static TEnv extend(const TEnv& env, const std::string& x, const SecType& t) {
    TEnv out = env;
    out.insert_or_assign(x, t);
    return out;
  }

  bool record_;
  std::vector<TraceFrame> trace_;
  std::vector<Open> stack_;
};

}  // namespace

CheckResult check(const TEnv& env, const SecType& pc, const Expr& e, CheckOptions opts) {
  if (!pc.is_base()) throw std::invalid_argument("pc must be Low or High, got " + pc.str());
  Checker c(opts.record_trace);
  CheckResult out;
  try {
    out.judgment = c.run(env, pc, e);
  } catch (Failure& f) {
    out.error = std::move(f.error);
  }
  out.trace = c.take_trace();
  return out;
}

CheckResult check_program(const Expr& e, CheckOptions opts) {
  return check({}, SecType::low(), e, opts);
}

}  // namespace ifc
