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

#include <string>

#include "doctest.h"
#include "ifc/parser.hpp"
#include "support/random_ast.hpp"

using namespace ifc;

namespace {

ExprPtr num(const char* s) { return make_expr(ast::Num{s}); }
ExprPtr var(const char* s) { return make_expr(ast::Var{s}); }

// Position of the ParseError raised for `src`, or {0, 0} if none.
std::pair<int, int> error_at(const std::string& src) {
  try {
    parse(src);
  } catch (const ParseError& e) {
    return {e.line(), e.col()};
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("top-level items become a right-nested sequence") {
  auto e = parse("let h = 2\nlet l = h");
  auto want = make_expr(ast::Seq{make_expr(ast::Let{"h", std::nullopt, num("2")}),
                                 make_expr(ast::Let{"l", std::nullopt, var("h")})});
  CHECK(*e == *want);
  CHECK(*parse("a; b\nc") == *make_expr(ast::Seq{var("a"), make_expr(ast::Seq{var("b"), var("c")})}));
}

TEST_CASE("unit forms") {
  CHECK(parse("()")->is<ast::Unit>());
  CHECK_THROWS_AS(parse("{}"), ParseError);
  CHECK(parse("if true { } else { 1 }")->as<ast::If>()->then_branch->is<ast::Unit>());
}

TEST_CASE("operator precedence and associativity") {
  CHECK(*parse("1 + 2 * 3") ==
        *make_expr(ast::Bop{BinOp::Add, num("1"), make_expr(ast::Bop{BinOp::Mul, num("2"), num("3")})}));
  CHECK(*parse("1 - 2 - 3") ==
        *make_expr(ast::Bop{BinOp::Sub, make_expr(ast::Bop{BinOp::Sub, num("1"), num("2")}), num("3")}));
  CHECK(*parse("f x y") ==
        *make_expr(ast::App{make_expr(ast::App{var("f"), var("x")}), var("y")}));
  CHECK(*parse("f x + 1") ==
        *make_expr(ast::Bop{BinOp::Add, make_expr(ast::App{var("f"), var("x")}), num("1")}));
  CHECK(*parse("1 + 2 < 4") ==
        *make_expr(ast::Bop{BinOp::Lt, make_expr(ast::Bop{BinOp::Add, num("1"), num("2")}), num("4")}));
  CHECK(*parse("1 - -2") == *make_expr(ast::Bop{BinOp::Sub, num("1"), num("-2")}));
  CHECK(*parse("f(2)") == *make_expr(ast::App{var("f"), num("2")}));
}

TEST_CASE("comparisons do not chain") {
  CHECK_THROWS_AS(parse("1 < 2 < 3"), ParseError);
  CHECK_NOTHROW(parse("(1 < 2) == true"));
}

TEST_CASE("binding and effect forms") {
  ExprPtr let_e = parse("let x: high = 1");
  auto let = let_e->as<ast::Let>();
  REQUIRE(let);
  CHECK(let->annot == SecType::high());
  CHECK_THROWS_AS(parse("let x: ref low = 1"), ParseError);

  ExprPtr fn_e = parse("(x: (low -> high @ ())) => x");
  auto fn = fn_e->as<ast::Func>();
  REQUIRE(fn);
  CHECK(fn->annot == SecType::fun(SecType::low(), SecType::high(), SecType::empty()));
  CHECK_THROWS_AS(parse("(x: ref ()) => x"), ParseError);

  CHECK(parse("x := !y")->as<ast::Assign>()->rhs->is<ast::Deref>());
  CHECK(parse("ref(1; 2)")->as<ast::Ref>()->inner->is<ast::Seq>());
  ExprPtr loop_e = parse("for i in 1 to n + 1 { s := !s + i }");
  auto loop = loop_e->as<ast::For>();
  REQUIRE(loop);
  CHECK(loop->var == "i");
  CHECK(loop->to->is<ast::Bop>());
}

TEST_CASE("else may follow on the next line") {
  CHECK_NOTHROW(parse("if h {\n  2\n}\nelse {\n  3\n}"));
}

TEST_CASE("comments") {
  CHECK(*parse("// header\nlet x = 1 // trailing\n") == *make_expr(ast::Let{"x", std::nullopt, num("1")}));
}

TEST_CASE("parse_type") {
  CHECK(parse_type("high") == SecType::high());
  CHECK(parse_type("ref low") == SecType::ref(SecType::low()));
  CHECK(parse_type("(low -> high @ ())") == SecType::fun(SecType::low(), SecType::high(), SecType::empty()));
  CHECK_THROWS_AS(parse_type("lo"), ParseError);
  CHECK_THROWS_AS(parse_type("low low"), ParseError);
}

TEST_CASE("errors carry 1-based positions") {
  CHECK(error_at("let = 3") == std::pair{1, 5});
  CHECK(error_at("let x = 1\nif x { 1 }") == std::pair{2, 11});
  CHECK(error_at("x $ y") == std::pair{1, 3});
  try {
    parse("");
    FAIL("empty program accepted");
  } catch (const ParseError& e) {
    CHECK_FALSE(e.message().empty());
  }
}

TEST_CASE("integer literals are range checked") {
  CHECK_NOTHROW(parse("9223372036854775807"));
  CHECK_NOTHROW(parse("-9223372036854775808"));
  CHECK_THROWS_AS(parse("9223372036854775808"), ParseError);
}

TEST_CASE("keywords are reserved") {
  for (const char* kw : {"let", "if", "else", "while", "for", "in", "to", "ref", "true", "false", "low", "high"}) {
    CAPTURE(kw);
    CHECK_THROWS_AS(parse(std::string("let ") + kw + " = 1"), ParseError);
  }
  CHECK_NOTHROW(parse("let iffy = 1"));
}

TEST_CASE("deep nesting is rejected, not a crash") {
  std::string deep(5000, '(');
  CHECK_THROWS_AS(parse(deep), ParseError);
  // Left-associative chains build deep trees too, so they share the limit.
  std::string chain = "1";
  for (int i = 0; i < 300; ++i) chain += " + 1";
  CHECK_NOTHROW(parse(chain));
  for (int i = 0; i < 5000; ++i) chain += " + 1";
  CHECK_THROWS_AS(parse(chain), ParseError);
}

TEST_CASE("random trees round-trip through pretty") {
  testing::RandomAst gen(2026);
  for (int i = 0; i < 2000; ++i) {
    ExprPtr e = gen.expr(5);
    const std::string text = pretty(*e);
    CAPTURE(text);
    ExprPtr back = parse(text);
    REQUIRE(*back == *e);
    REQUIRE(*parse(pretty_inline(*e)) == *e);
  }
}
