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
#include "ifc/syntax.hpp"
#include "support/random_ast.hpp"

using namespace ifc;

namespace {
const SecType L = SecType::low();
const SecType H = SecType::high();
const SecType E = SecType::empty();
}  // namespace

TEST_CASE("well_formed") {
  CHECK(well_formed(L));
  CHECK(well_formed(SecType::ref(H)));
  CHECK_FALSE(well_formed(SecType::ref(SecType::fun(L, L, E))));
  CHECK_FALSE(well_formed(SecType::ref(E)));
  CHECK_FALSE(well_formed(SecType::ref(SecType::ref(L))));
  CHECK(well_formed(SecType::fun(H, SecType::ref(L), E)));
  CHECK_FALSE(well_formed(SecType::fun(L, L, SecType::ref(L))));
  CHECK_FALSE(well_formed(SecType::fun(SecType::ref(E), L, E)));
}

TEST_CASE("well_formed is closed under subterms") {
  testing::RandomAst gen(11);
  for (int i = 0; i < 500; ++i) {
    const SecType t = gen.type(3);
    REQUIRE(well_formed(t));
    if (t.is_ref()) CHECK(well_formed(t.inner()));
    if (t.is_fun()) {
      CHECK(well_formed(t.param()));
      CHECK(well_formed(t.result()));
      CHECK(well_formed(t.latent()));
    }
  }
}

TEST_CASE("type accessors and printing") {
  const SecType f = SecType::fun(L, SecType::ref(H), E);
  CHECK(f.param() == L);
  CHECK(f.result() == SecType::ref(H));
  CHECK(f.latent() == E);
  CHECK(f.depth() == 2);
  CHECK(f.str() == "(Low -> ref High @ ())");
  CHECK(type_source(f) == "(low -> ref high @ ())");
  CHECK_THROWS_AS(L.inner(), std::logic_error);
  CHECK_THROWS_AS(SecType::ref(L).param(), std::logic_error);
  CHECK(SecType() == L);
}

TEST_CASE("pretty") {
  CHECK(pretty(*make_expr(ast::Num{"2"})) == "2");
  CHECK(pretty(*make_expr(ast::Let{"x", H, make_expr(ast::Bool{true})})) == "let x: high = true");
  auto ite = make_expr(ast::If{make_expr(ast::Var{"h"}), make_expr(ast::Num{"2"}), make_expr(ast::Num{"3"})});
  CHECK(pretty(*ite) == "if h { 2 } else { 3 }");
  CHECK(pretty(*make_expr(ast::Unit{})) == "()");
}

TEST_CASE("pretty parenthesizes by precedence") {
  auto n = [](const char* s) { return make_expr(ast::Num{s}); };
  auto sum = make_expr(ast::Bop{BinOp::Add, n("1"), n("2")});
  CHECK(pretty(*make_expr(ast::Bop{BinOp::Mul, sum, n("3")})) == "(1 + 2) * 3");
  CHECK(pretty(*make_expr(ast::Bop{BinOp::Sub, n("1"), make_expr(ast::Bop{BinOp::Sub, n("2"), n("3")})})) ==
        "1 - (2 - 3)");
  CHECK(pretty(*make_expr(ast::App{make_expr(ast::Var{"f"}), n("-3")})) == "f (-3)");
}

TEST_CASE("structural equality ignores positions") {
  auto a = make_expr(ast::Var{"x"}, SourcePos{1, 1});
  auto b = make_expr(ast::Var{"x"}, SourcePos{7, 3});
  CHECK(*a == *b);
  CHECK(*a != *make_expr(ast::Var{"y"}));
  CHECK(*make_expr(ast::Num{"1"}) != *make_expr(ast::Bool{true}));
}

TEST_CASE("node names") {
  CHECK(std::string(node_name(*parse("x := 1"))) == "Assign");
  CHECK(std::string(node_name(*parse("!x"))) == "Deref");
  CHECK(std::string(node_name(*parse("for i in 1 to 2 { i }"))) == "For");
}
