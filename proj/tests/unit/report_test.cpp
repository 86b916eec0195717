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

#include "doctest.h"
#include "ifc/parser.hpp"
#include "ifc/report.hpp"
#include "support/random_ast.hpp"

using namespace ifc;

TEST_CASE("AST JSON round-trips") {
  testing::RandomAst gen(77);
  for (int i = 0; i < 500; ++i) {
    ExprPtr e = gen.expr(4);
    const std::string text = ast_json(*e).dump();
    ExprPtr back = ast_from_json(Json::parse(text));
    REQUIRE(*back == *e);
  }
  ExprPtr parsed = parse("let x: high = 1\nx");
  Json j = ast_json(*parsed);
  CHECK(j["node"] == "Seq");
  CHECK(j["first"]["annot"] == "high");
  CHECK(j["first"]["pos"]["line"] == 1);
  CHECK(j["second"]["pos"]["line"] == 2);
}

TEST_CASE("malformed AST JSON is rejected") {
  CHECK_THROWS_AS(ast_from_json(Json::parse(R"({"node": "Nope"})")), std::invalid_argument);
  CHECK_THROWS_AS(ast_from_json(Json::parse(R"({"node": "Var"})")), std::invalid_argument);
  CHECK_THROWS_AS(ast_from_json(Json::parse(R"({"node": "Bop", "op": "%", "lhs": {"node": "Unit"},
                                                "rhs": {"node": "Unit"}})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(ast_from_json(Json::parse(R"([1, 2])")), std::invalid_argument);
}

TEST_CASE("types use source syntax") {
  const SecType t = SecType::fun(SecType::ref(SecType::low()), SecType::high(), SecType::empty());
  CHECK(type_json(t) == "(ref low -> high @ ())");
  CHECK(type_from_json(type_json(t)) == t);
  CHECK_THROWS_AS(type_from_json(Json(3)), std::invalid_argument);
}

TEST_CASE("check diagnostics") {
  Json ok = check_json(check_program(*parse("let h: high = 1\nh + 1"), {false}));
  CHECK(ok["status"] == "ok");
  CHECK(ok["type"] == "High");
  CHECK(ok["effect"] == "High");
  CHECK(ok["env"]["h"] == "high");
  CHECK_FALSE(ok.contains("trace"));

  Json bad = check_json(check_program(*parse("let h: high = true\nlet l = ref(false)\nif h { l := true } else { l := false }")));
  CHECK(bad["status"] == "error");
  CHECK(bad["error"]["rule"] == "Reassign");
  CHECK(bad["error"]["condition"] == "t3 ⊒ pc");
  CHECK(bad["error"]["line"] == 3);
  CHECK(bad["trace"].is_array());
  CHECK(bad["error"]["path"].back()["rule"] == "Reassign");
}

TEST_CASE("runtime values") {
  Outcome o = eval(*parse("let r = ref(4); let f = (x: low) => x; r"), {}, {}, 100);
  Json j = outcome_json(o);
  CHECK(j["status"] == "ok");
  CHECK(j["value"]["kind"] == "loc");
  CHECK(j["store"] == "{ℓ0 ↦ 4}");
  CHECK(j["state"]["env"]["f"]["kind"] == "closure");
  CHECK(outcome_json(eval(*parse("1 / 0"), {}, {}, 100))["error"] == "DivByZero");
  CHECK(outcome_json(eval(*parse("while true { 1 }"), {}, {}, 100))["status"] == "fuel-exhausted");
}
