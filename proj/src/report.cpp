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

#include "ifc/report.hpp"

#include "ifc/parser.hpp"

namespace ifc {

Json type_json(const SecType& t) { return type_source(t); }

SecType type_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("type must be a string");
  try {
    return parse_type(j.get<std::string>());
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("bad type: ") + e.what());
  }
}

namespace {

Json pos_json(const SourcePos& p) { return Json{{"line", p.line}, {"col", p.col}}; }

struct AstEncoder {
  Json operator()(const ast::Num& n) const { return {{"literal", n.literal}}; }
  Json operator()(const ast::Bool& b) const { return {{"value", b.value}}; }
  Json operator()(const ast::Unit&) const { return Json::object(); }
  Json operator()(const ast::Var& v) const { return {{"name", v.name}}; }
  Json operator()(const ast::App& a) const { return {{"fn", ast_json(*a.fn)}, {"arg", ast_json(*a.arg)}}; }
  Json operator()(const ast::Func& f) const {
    return {{"param", f.param}, {"annot", type_json(f.annot)}, {"body", ast_json(*f.body)}};
  }
  Json operator()(const ast::Seq& s) const {
    return {{"first", ast_json(*s.first)}, {"second", ast_json(*s.second)}};
  }
  Json operator()(const ast::Let& l) const {
    return {{"name", l.name}, {"annot", l.annot ? type_json(*l.annot) : Json()}, {"rhs", ast_json(*l.rhs)}};
  }
  Json operator()(const ast::Bop& b) const {
    return {{"op", binop_symbol(b.op)}, {"lhs", ast_json(*b.lhs)}, {"rhs", ast_json(*b.rhs)}};
  }
  Json operator()(const ast::Ref& r) const { return {{"inner", ast_json(*r.inner)}}; }
  Json operator()(const ast::Assign& a) const { return {{"name", a.name}, {"rhs", ast_json(*a.rhs)}}; }
  Json operator()(const ast::Deref& d) const { return {{"name", d.name}}; }
  Json operator()(const ast::For& f) const {
    return {{"var", f.var}, {"from", ast_json(*f.from)}, {"to", ast_json(*f.to)}, {"body", ast_json(*f.body)}};
  }
  Json operator()(const ast::While& w) const { return {{"cond", ast_json(*w.cond)}, {"body", ast_json(*w.body)}}; }
  Json operator()(const ast::If& i) const {
    return {{"cond", ast_json(*i.cond)}, {"then", ast_json(*i.then_branch)}, {"else", ast_json(*i.else_branch)}};
  }
};

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

ExprPtr sub(const Json& j, const char* key) { return ast_from_json(field(j, key)); }

BinOp binop_from_symbol(const std::string& s) {
  for (BinOp op : {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Eq, BinOp::Lt, BinOp::Gt}) {
    if (s == binop_symbol(op)) return op;
  }
  throw std::invalid_argument("unknown operator '" + s + "'");
}

}  // namespace

Json ast_json(const Expr& e) {
  Json j{{"node", node_name(e)}};
  j.update(std::visit(AstEncoder{}, e.node));
  if (e.pos.line > 0) j["pos"] = pos_json(e.pos);
  return j;
}

ExprPtr ast_from_json(const Json& j) {
  const std::string kind = str_field(j, "node");
  SourcePos pos;
  if (j.contains("pos")) pos = {field(j["pos"], "line").get<int>(), field(j["pos"], "col").get<int>()};

  if (kind == "Num") return make_expr(ast::Num{str_field(j, "literal")}, pos);
  if (kind == "Bool") return make_expr(ast::Bool{field(j, "value").get<bool>()}, pos);
  if (kind == "Unit") return make_expr(ast::Unit{}, pos);
  if (kind == "Var") return make_expr(ast::Var{str_field(j, "name")}, pos);
  if (kind == "App") return make_expr(ast::App{sub(j, "fn"), sub(j, "arg")}, pos);
  if (kind == "Func") {
    return make_expr(ast::Func{str_field(j, "param"), type_from_json(field(j, "annot")), sub(j, "body")}, pos);
  }
  if (kind == "Seq") return make_expr(ast::Seq{sub(j, "first"), sub(j, "second")}, pos);
  if (kind == "Let") {
    std::optional<SecType> annot;
    if (j.contains("annot") && !j["annot"].is_null()) annot = type_from_json(j["annot"]);
    return make_expr(ast::Let{str_field(j, "name"), annot, sub(j, "rhs")}, pos);
  }
  if (kind == "Bop") return make_expr(ast::Bop{binop_from_symbol(str_field(j, "op")), sub(j, "lhs"), sub(j, "rhs")}, pos);
  if (kind == "Ref") return make_expr(ast::Ref{sub(j, "inner")}, pos);
  if (kind == "Assign") return make_expr(ast::Assign{str_field(j, "name"), sub(j, "rhs")}, pos);
  if (kind == "Deref") return make_expr(ast::Deref{str_field(j, "name")}, pos);
  if (kind == "For") return make_expr(ast::For{str_field(j, "var"), sub(j, "from"), sub(j, "to"), sub(j, "body")}, pos);
  if (kind == "While") return make_expr(ast::While{sub(j, "cond"), sub(j, "body")}, pos);
  if (kind == "If") return make_expr(ast::If{sub(j, "cond"), sub(j, "then"), sub(j, "else")}, pos);
  throw std::invalid_argument("unknown node '" + kind + "'");
}

Json tenv_json(const TEnv& env) {
  Json j = Json::object();
  for (const auto& [x, t] : env) j[x] = type_json(t);
  return j;
}

Json check_json(const CheckResult& r) {
  Json j;
  if (r.ok()) {
    j["status"] = "ok";
    j["type"] = r.judgment->type.str();
    j["effect"] = r.judgment->effect.str();
    j["env"] = tenv_json(r.judgment->out_env);
  } else {
    const TypeError& e = *r.error;
    j["status"] = "error";
    Json path = Json::array();
    for (const auto& f : e.path) path.push_back({{"rule", f.rule}, {"expr", f.expr}, {"line", f.pos.line}, {"col", f.pos.col}});
    j["error"] = {{"rule", e.rule}, {"condition", e.condition}, {"detail", e.detail},
                  {"line", e.at.line}, {"col", e.at.col}, {"message", e.str()}, {"path", path}};
  }
  if (!r.trace.empty()) {
    Json trace = Json::array();
    for (const auto& f : r.trace) {
      trace.push_back({{"rule", f.rule}, {"depth", f.depth}, {"expr", f.expr}, {"line", f.pos.line},
                       {"col", f.pos.col}, {"outcome", f.outcome}, {"failed", f.failed}});
    }
    j["trace"] = trace;
  }
  return j;
}

Json value_json(const Value& v) {
  struct V {
    Json operator()(const IntV& i) const { return {{"kind", "int"}, {"value", i.n}}; }
    Json operator()(const BoolV& b) const { return {{"kind", "bool"}, {"value", b.b}}; }
    Json operator()(const UnitV&) const { return {{"kind", "unit"}}; }
    Json operator()(const LocV& l) const { return {{"kind", "loc"}, {"value", l.id}}; }
    Json operator()(const ClosV& c) const {
      Json captured = Json::array();
      for (const auto& [x, _] : *c->env) captured.push_back(x);
      return {{"kind", "closure"}, {"param", c->param}, {"body", pretty_inline(*c->body)}, {"captures", captured}};
    }
  };
  Json j = std::visit(V{}, v);
  j["text"] = value_str(v);
  return j;
}

Json state_json(const State& s) {
  Json env = Json::object();
  for (const auto& [x, v] : s.env) env[x] = value_json(v);
  Json store = Json::array();
  for (const auto& [id, v] : s.store.cells) store.push_back({{"loc", id}, {"value", value_json(v)}});
  return {{"env", env}, {"store", store}};
}

Json outcome_json(const Outcome& o) {
  if (const auto* ok = std::get_if<Ok>(&o)) {
    return {{"status", "ok"}, {"value", value_json(ok->value)}, {"store", store_str(ok->state.store)},
            {"state", state_json(ok->state)}};
  }
  if (const auto* f = std::get_if<RuntimeFailure>(&o)) {
    return {{"status", "runtime-error"}, {"error", runtime_error_name(f->kind)}, {"message", f->message},
            {"line", f->at.line}, {"col", f->at.col}};
  }
  return {{"status", "fuel-exhausted"}};
}

Json trial_json(const TrialResult& t) {
  Json j{{"seed", t.seed}};
  if (std::holds_alternative<Pass>(t.outcome)) {
    j["result"] = "pass";
  } else if (const auto* d = std::get_if<Discarded>(&t.outcome)) {
    j["result"] = "discarded";
    j["reason"] = d->reason == Discarded::Reason::FuelExhausted ? "fuel-exhausted" : "runtime-error";
    j["detail"] = d->detail;
  } else {
    const auto& v = std::get<Violation>(t.outcome);
    j["result"] = "violation";
    j["note"] = v.note;
    j["pc"] = v.pc.str();
    j["tenv"] = tenv_json(v.tenv);
    j["program"] = pretty(*v.program);
    j["s1"] = state_json(v.s1);
    j["s2"] = state_json(v.s2);
    j["final1"] = outcome_json(v.f1);
    j["final2"] = outcome_json(v.f2);
  }
  return j;
}

Json suite_json(const SuiteReport& r) {
  Json violations = Json::array();
  for (const auto& t : r.violations) violations.push_back(trial_json(t));
  return {
      {"suite", suite_name(r.suite)},
      {"seed", r.seed},
      {"trials", r.trials},
      {"passed", r.passed},
      {"discarded", {{"fuel", r.discarded_fuel}, {"runtime", r.discarded_runtime}}},
      {"discard_rate", r.discard_rate()},
      {"violation_count", r.violations.size()},
      {"violations", violations},
      {"closures", {{"pairs", r.equiv.closure_pairs}, {"identical", r.equiv.identical},
                    {"samples", r.equiv.samples}, {"inconclusive", r.equiv.inconclusive}}},
      {"generator", {{"statement_retries", r.gen.statement_retries}, {"program_retries", r.gen.program_retries},
                     {"fallbacks", r.gen.fallbacks}}},
  };
}

Json corpus_json(const CorpusReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"file", row.file},
                    {"expected", {{"verdict", row.expected_verdict}, {"rule", row.expected_rule},
                                  {"condition", row.expected_condition}}},
                    {"actual", {{"verdict", row.verdict}, {"rule", row.rule}, {"condition", row.condition}}},
                    {"detail", row.detail},
                    {"ok", row.ok}});
  }
  Json j{{"dir", r.dir}, {"ok", r.ok()}, {"rows", rows}};
  if (r.error) j["error"] = *r.error;
  return j;
}

}  // namespace ifc
