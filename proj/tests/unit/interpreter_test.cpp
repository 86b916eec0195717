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

#include <climits>
#include <string>

#include "doctest.h"
#include "ifc/interpreter.hpp"
#include "ifc/parser.hpp"

using namespace ifc;

namespace {

Outcome run(const std::string& src, std::int64_t fuel = 10000, const Env& env = {}, const Store& store = {}) {
  return eval(*parse(src), env, store, fuel);
}

Ok ok(const std::string& src, std::int64_t fuel = 10000, const Env& env = {}) {
  Outcome o = run(src, fuel, env);
  INFO(src);
  if (auto* f = std::get_if<RuntimeFailure>(&o)) INFO(f->message);
  REQUIRE(std::holds_alternative<Ok>(o));
  return std::get<Ok>(o);
}

std::int64_t int_of(const std::string& src) {
  Ok r = ok(src);
  REQUIRE(is_int(r.value));
  return std::get<IntV>(r.value).n;
}

RuntimeErrorKind failure(const std::string& src) {
  Outcome o = run(src);
  INFO(src);
  REQUIRE(std::holds_alternative<RuntimeFailure>(o));
  return std::get<RuntimeFailure>(o).kind;
}

}  // namespace

TEST_CASE("arithmetic and comparison") {
  CHECK(int_of("1 + 2") == 3);
  CHECK(int_of("7 / 2") == 3);
  CHECK(int_of("-7 / 2") == -3);
  CHECK(int_of("2 * 3 - 10") == -4);
  CHECK(value_str(ok("1 < 2").value) == "true");
  CHECK(value_str(ok("true == false").value) == "false");
  CHECK(value_str(ok("() == ()").value) == "true");
  CHECK(int_of("9223372036854775807 + 1") == INT64_MIN);
  CHECK(int_of("-9223372036854775808 / -1") == INT64_MIN);
  CHECK(failure("1 / 0") == RuntimeErrorKind::DivByZero);
  CHECK(failure("true + 1") == RuntimeErrorKind::NotAnInt);
  CHECK(failure("1 == true") == RuntimeErrorKind::NotAnInt);
}

TEST_CASE("conditionals restore the environment") {
  Ok r = ok("if false { 1 } else { 2 }");
  CHECK(std::get<IntV>(r.value).n == 2);
  CHECK(r.state.env.empty());
  r = ok("if true { let x = 1 } else { 2 }; 5");
  CHECK(r.state.env.empty());
  CHECK(failure("if 1 { 2 } else { 3 }") == RuntimeErrorKind::NotABool);
}

TEST_CASE("let and sequencing extend the environment") {
  Ok r = ok("let x = 1; let y = x + 1; y");
  CHECK(std::get<IntV>(r.value).n == 2);
  CHECK(r.state.env.size() == 2);
  CHECK(is_unit(ok("let x = 1").value));
  CHECK(failure("y") == RuntimeErrorKind::UnboundVar);
  CHECK(int_of("let x = 1; let x = x + 10; x") == 11);
}

TEST_CASE("references and aliasing") {
  Ok r = ok("let l = ref(2)\nlet h = l\nh := 4\n!l");
  CHECK(std::get<IntV>(r.value).n == 4);
  CHECK(store_str(r.state.store) == "{ℓ0 ↦ 4}");
  r = ok("let l = ref(2)\nlet h = l\nh := 4");
  CHECK(is_unit(r.value));
  CHECK(store_str(r.state.store) == "{ℓ0 ↦ 4}");
  CHECK(failure("let x = 1; !x") == RuntimeErrorKind::NotALoc);
  CHECK(failure("let x = 1; x := 2") == RuntimeErrorKind::NotALoc);
  CHECK(value_str(ok("ref(1); ref(2)").value) == "ℓ1");
}

TEST_CASE("fresh locations") {
  Store s;
  CHECK(s.fresh_loc() == 0);
  s.alloc(IntV{1});
  s.alloc(IntV{2});
  CHECK(s.fresh_loc() == 2);
  Ok r = ok("let a = ref(1); let b = ref(a); b := ref(3)");
  CHECK(r.state.store.find(r.state.store.fresh_loc()) == nullptr);
  CHECK(r.state.store.cells.size() == 3);
}

TEST_CASE("for loops") {
  // Hand unrolling: bodies run for i = 1, 2, 3 in that order, so s = 0+1+2+3.
  CHECK(int_of("let s = ref(0)\nfor i in 1 to 3 { s := !s + i }\n!s") == 6);
  CHECK(int_of("let s = ref(0)\nfor i in 1 to 3 { s := !s * 10 + i }\n!s") == 123);
  CHECK(int_of("let s = ref(0)\nfor i in 2 to 2 { s := !s + i }\n!s") == 2);
  CHECK(failure("for i in 3 to 1 { () }") == RuntimeErrorKind::ForBoundsInvalid);
  CHECK(failure("for i in true to 1 { () }") == RuntimeErrorKind::NotAnInt);
  Ok r = ok("let s = ref(0)\nfor i in 1 to 3 { let t = i }");
  CHECK(r.state.env.count("i") == 0);
  CHECK(r.state.env.count("t") == 0);
}

TEST_CASE("while loops") {
  CHECK(int_of("let c = ref(3); let n = ref(0); while !c > 0 { n := !n + 2; c := !c - 1 }; !n") == 6);
  CHECK(is_unit(ok("while false { 1 }").value));
  CHECK(failure("while 1 { 1 }") == RuntimeErrorKind::NotABool);
  CHECK(std::holds_alternative<FuelExhausted>(run("while true { () }", 10)));
}

TEST_CASE("closures capture their defining environment") {
  CHECK(int_of("let y = 10; let f = (x: low) => x + y; let y = 0; f 1") == 11);
  CHECK(int_of("let f = (x: low) => (y: low) => x - y; f 10 3") == 7);
  CHECK(failure("3 4") == RuntimeErrorKind::NotAFunction);
  Ok r = ok("let r = ref(0); let f = (x: low) => { r := x; x }; f 5; !r");
  CHECK(std::get<IntV>(r.value).n == 5);
  CHECK(value_str(ok("(x: low) => x").value) == "<closure x => x>");
}

TEST_CASE("fuel counts rule applications") {
  CHECK(std::holds_alternative<Ok>(run("1 + 2", 3)));
  CHECK(std::holds_alternative<FuelExhausted>(run("1 + 2", 2)));
  CHECK(std::holds_alternative<Ok>(run("for i in 1 to 3 { () }", 100)));
}

TEST_CASE("deep recursion is bounded") {
  // A closure cannot name itself, but it can call whatever a cell holds.
  const std::string src =
      "let r = ref(0)\n"
      "let f = (x: low) => (!r) x\n"
      "r := f\n"
      "f 1";
  CHECK(std::holds_alternative<FuelExhausted>(run(src, 100000000)));
}

TEST_CASE("statement-like forms yield unit") {
  for (const char* src : {"let x = 1", "while false { 1 }", "for i in 1 to 2 { i }", "let r = ref(1); r := 2"}) {
    CAPTURE(src);
    CHECK(is_unit(ok(src).value));
  }
}

TEST_CASE("observer sees scope restoration") {
  EvalOptions opts;
  int checked = 0;
  bool restored = true;
  opts.observer = [&](const Expr& e, const Env& in, const Env& out) {
    if (e.is<ast::If>() || e.is<ast::While>() || e.is<ast::For>() || e.is<ast::Bop>()) {
      ++checked;
      restored &= in.size() == out.size();
    }
  };
  Outcome o = eval(*parse("let x = 1; if true { let y = 2 } else { 3 }; for i in 1 to 2 { let z = i }; x + 1"), {}, {},
                   opts);
  CHECK(std::holds_alternative<Ok>(o));
  CHECK(checked >= 3);
  CHECK(restored);
}

TEST_CASE("eval is deterministic and does not mutate its inputs") {
  Store s;
  const LocId l = s.alloc(IntV{1});
  Env env{{"r", LocV{l}}};
  Outcome a = run("r := !r + 1; !r", 100, env, s);
  Outcome b = run("r := !r + 1; !r", 100, env, s);
  CHECK(std::get<IntV>(std::get<Ok>(a).value).n == 2);
  CHECK(same_value(std::get<Ok>(a).value, std::get<Ok>(b).value));
  CHECK(std::get<IntV>(*s.find(l)).n == 1);
}
