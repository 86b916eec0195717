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

#ifndef IFC_SYNTAX_HPP_
#define IFC_SYNTAX_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace ifc {

/// Security type. Base levels form the chain Low ⊑ High ⊑ (); references and
/// function types are built on top of them. Instances are immutable and cheap
/// to copy (children are shared).
class SecType {
 public:
  enum class Kind : std::uint8_t { Low, High, Empty, Ref, Fun };

  SecType() = default;  // Low

  static SecType low() { return SecType(Kind::Low); }
  static SecType high() { return SecType(Kind::High); }
  static SecType empty() { return SecType(Kind::Empty); }
  static SecType ref(SecType inner);
  static SecType fun(SecType param, SecType result, SecType latent);

  Kind kind() const noexcept { return kind_; }

  bool is_low() const noexcept { return kind_ == Kind::Low; }
  bool is_high() const noexcept { return kind_ == Kind::High; }
  bool is_empty() const noexcept { return kind_ == Kind::Empty; }
  bool is_ref() const noexcept { return kind_ == Kind::Ref; }
  bool is_fun() const noexcept { return kind_ == Kind::Fun; }
  // Low or High.
  bool is_base() const noexcept { return is_low() || is_high(); }
  // Low, High or (): the values an effect may take.
  bool is_level() const noexcept { return is_base() || is_empty(); }

  // Accessors; calling one on the wrong kind throws std::logic_error.
  const SecType& inner() const;
  const SecType& param() const;
  const SecType& result() const;
  const SecType& latent() const;

  // Number of constructors on the longest path below the root (Low = 0).
  int depth() const;

  /// Display form used in diagnostics: `Low`, `ref High`, `(Low -> High @ ())`.
  std::string str() const;

  friend bool operator==(const SecType& a, const SecType& b);
  friend bool operator!=(const SecType& a, const SecType& b) { return !(a == b); }

 private:
  struct Node;
  explicit SecType(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Low;
  std::shared_ptr<const Node> node_;
};

/// Surface syntax of a type annotation: `low`, `ref high`, `(low -> high @ ())`.
std::string type_source(const SecType& t);

/// Ref holds Low/High only, latent effects are levels, recursively.
bool well_formed(const SecType& t);

enum class BinOp : std::uint8_t { Add, Sub, Mul, Div, Eq, Lt, Gt };

const char* binop_symbol(BinOp op);

struct SourcePos {
  int line = 0;  // 1-based; 0 when synthesized
  int col = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

namespace ast {

struct Num {
  std::string literal;  // signed decimal text, as written
};
struct Bool {
  bool value = false;
};
struct Unit {};
struct Var {
  std::string name;
};
struct App {
  ExprPtr fn;
  ExprPtr arg;
};
struct Func {
  std::string param;
  SecType annot;
  ExprPtr body;
};
struct Seq {
  ExprPtr first;
  ExprPtr second;
};
struct Let {
  std::string name;
  std::optional<SecType> annot;  // Low or High when present
  ExprPtr rhs;
};
struct Bop {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Ref {
  ExprPtr inner;
};
struct Assign {
  std::string name;
  ExprPtr rhs;
};
struct Deref {
  std::string name;
};
struct For {
  std::string var;
  ExprPtr from;
  ExprPtr to;
  ExprPtr body;
};
struct While {
  ExprPtr cond;
  ExprPtr body;
};
struct If {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

}  // namespace ast

struct Expr {
  using Node = std::variant<ast::Num, ast::Bool, ast::Unit, ast::Var, ast::App, ast::Func,
                            ast::Seq, ast::Let, ast::Bop, ast::Ref, ast::Assign, ast::Deref,
                            ast::For, ast::While, ast::If>;

  Node node;
  SourcePos pos;

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node);
  }
};

template <typename N>
ExprPtr make_expr(N node, SourcePos pos = {}) {
  return std::make_shared<const Expr>(Expr{Expr::Node(std::move(node)), pos});
}

/// Structural equality; source positions are ignored.
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

/// Name of the AST production, e.g. "Let", "Bop".
const char* node_name(const Expr& e);

/// Concrete syntax. Top-level sequences are printed one item per line.
std::string pretty(const Expr& e);
/// Same, but on one line with `;` between sequence items.
std::string pretty_inline(const Expr& e);

}  // namespace ifc

#endif  // IFC_SYNTAX_HPP_
