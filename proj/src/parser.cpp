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

#include "ifc/parser.hpp"

#include <charconv>
#include <cstdint>
#include <unordered_map>

namespace ifc {

ParseError::ParseError(int line, int col, std::string message, std::vector<std::string> expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
      line_(line),
      col_(col),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  Int,
  Ident,
  // keywords
  Let, If, Else, While, For, In, To, RefKw, True, False, LowKw, HighKw,
  // punctuation
  LParen, RParen, LBrace, RBrace, Semi, Newline, Colon, Assign, Eq, Arrow, FatArrow,
  EqEq, Lt, Gt, Plus, Minus, Star, Slash, Bang, At,
  End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Int: return "integer";
    case Tok::Ident: return "identifier";
    case Tok::Let: return "'let'";
    case Tok::If: return "'if'";
    case Tok::Else: return "'else'";
    case Tok::While: return "'while'";
    case Tok::For: return "'for'";
    case Tok::In: return "'in'";
    case Tok::To: return "'to'";
    case Tok::RefKw: return "'ref'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::LowKw: return "'low'";
    case Tok::HighKw: return "'high'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Newline: return "newline";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::EqEq: return "'=='";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Bang: return "'!'";
    case Tok::At: return "'@'";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view src) {
  static const std::unordered_map<std::string_view, Tok> kKeywords = {
      {"let", Tok::Let},     {"if", Tok::If},       {"else", Tok::Else},   {"while", Tok::While},
      {"for", Tok::For},     {"in", Tok::In},       {"to", Tok::To},       {"ref", Tok::RefKw},
      {"true", Tok::True},   {"false", Tok::False}, {"low", Tok::LowKw},   {"high", Tok::HighKw},
  };

  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(src.substr(i, len)), line, col});
    i += len;
    col += static_cast<int>(len);
  };

  while (i < src.size()) {
    const char c = src[i];
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
    } else if (c == '\n') {
      out.push_back({Tok::Newline, "\n", line, col});
      ++i;
      ++line;
      col = 1;
    } else if (c == '/' && next == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      push(Tok::Int, j - i);
    } else if (is_alpha(c)) {
      std::size_t j = i;
      while (j < src.size() && (is_alpha(src[j]) || is_digit(src[j]) || src[j] == '_')) ++j;
      auto it = kKeywords.find(src.substr(i, j - i));
      push(it == kKeywords.end() ? Tok::Ident : it->second, j - i);
    } else if (c == ':' && next == '=') {
      push(Tok::Assign, 2);
    } else if (c == '=' && next == '=') {
      push(Tok::EqEq, 2);
    } else if (c == '=' && next == '>') {
      push(Tok::FatArrow, 2);
    } else if (c == '-' && next == '>') {
      push(Tok::Arrow, 2);
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ';': k = Tok::Semi; break;
        case ':': k = Tok::Colon; break;
        case '=': k = Tok::Eq; break;
        case '<': k = Tok::Lt; break;
        case '>': k = Tok::Gt; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '!': k = Tok::Bang; break;
        case '@': k = Tok::At; break;
        default: {
          static const char* kHex = "0123456789abcdef";
          const auto byte = static_cast<unsigned char>(c);
          const std::string shown = byte >= 0x20 && byte < 0x7f
                                        ? std::string("'") + c + "'"
                                        : std::string("byte 0x") + kHex[byte >> 4] + kHex[byte & 15];
          throw ParseError(line, col, "unexpected character " + shown);
        }
      }
      push(k, 1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr program() {
    ExprPtr e = seq(Tok::End);
    if (!e) fail("empty program", {"expression"});
    expect(Tok::End);
    return e;
  }

  SecType type_only() {
    skip_newlines();
    SecType t = type();
    skip_newlines();
    expect(Tok::End);
    return t;
  }

 private:
  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxParseDepth) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  // Left-associative chains nest the tree as deeply as explicit parentheses do.
  void chain_guard(int n) const {
    if (depth_ + n > kMaxParseDepth) fail("nesting too deep");
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  bool at(Tok k) const { return peek().kind == k; }
  SourcePos here() const { return {peek().line, peek().col}; }

  Token advance() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(peek().line, peek().col, msg, std::move(expected));
  }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    std::string msg = "unexpected " + std::string(describe(peek().kind));
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
      }
    }
    fail(msg, std::move(expected));
  }

  Token expect(Tok k) {
    if (!at(k)) unexpected({describe(k)});
    return advance();
  }

  void skip_newlines() {
    while (at(Tok::Newline)) advance();
  }

  // Items separated by ';' or newlines until `close`; returns null when empty.
  ExprPtr seq(Tok close) {
    std::vector<ExprPtr> items;
    for (;;) {
      while (at(Tok::Semi) || at(Tok::Newline)) advance();
      if (at(close)) break;
      items.push_back(item());
      if (!at(Tok::Semi) && !at(Tok::Newline) && !at(close)) {
        unexpected({"';'", "newline", describe(close)});
      }
    }
    if (items.empty()) return nullptr;
    ExprPtr acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      acc = make_expr(ast::Seq{items[i], acc}, items[i]->pos);
    }
    return acc;
  }

  ExprPtr block() {
    expect(Tok::LBrace);
    SourcePos p = here();
    ExprPtr body = seq(Tok::RBrace);
    expect(Tok::RBrace);
    return body ? body : make_expr(ast::Unit{}, p);
  }

  ExprPtr item() {
    DepthGuard guard(*this);
    skip_newlines();
    const SourcePos p = here();
    switch (peek().kind) {
      case Tok::Let: {
        advance();
        std::string name = expect(Tok::Ident).text;
        std::optional<SecType> annot;
        if (at(Tok::Colon)) {
          advance();
          if (at(Tok::LowKw)) {
            annot = SecType::low();
          } else if (at(Tok::HighKw)) {
            annot = SecType::high();
          } else {
            unexpected({"'low'", "'high'"});
          }
          advance();
        }
        expect(Tok::Eq);
        ExprPtr rhs = item();
        return make_expr(ast::Let{std::move(name), annot, std::move(rhs)}, p);
      }
      case Tok::If: {
        advance();
        ExprPtr cond = cmp();
        ExprPtr then_branch = block();
        skip_newlines();
        expect(Tok::Else);
        ExprPtr else_branch = block();
        return make_expr(ast::If{std::move(cond), std::move(then_branch), std::move(else_branch)}, p);
      }
      case Tok::While: {
        advance();
        ExprPtr cond = cmp();
        ExprPtr body = block();
        return make_expr(ast::While{std::move(cond), std::move(body)}, p);
      }
      case Tok::For: {
        advance();
        std::string var = expect(Tok::Ident).text;
        expect(Tok::In);
        ExprPtr from = cmp();
        expect(Tok::To);
        ExprPtr to = cmp();
        ExprPtr body = block();
        return make_expr(ast::For{std::move(var), std::move(from), std::move(to), std::move(body)}, p);
      }
      case Tok::Ident:
        if (peek(1).kind == Tok::Assign) {
          std::string name = advance().text;
          advance();
          ExprPtr rhs = item();
          return make_expr(ast::Assign{std::move(name), std::move(rhs)}, p);
        }
        break;
      case Tok::LParen:
        if (peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon) return lambda();
        break;
      default:
        break;
    }
    return cmp();
  }

  ExprPtr lambda() {
    const SourcePos p = here();
    expect(Tok::LParen);
    std::string param = expect(Tok::Ident).text;
    expect(Tok::Colon);
    const SourcePos type_pos = here();
    SecType annot = type();
    if (!well_formed(annot)) {
      throw ParseError(type_pos.line, type_pos.col,
                       "ill-formed type annotation '" + type_source(annot) + "'");
    }
    expect(Tok::RParen);
    expect(Tok::FatArrow);
    skip_newlines();
    ExprPtr body = at(Tok::LBrace) ? block() : item();
    return make_expr(ast::Func{std::move(param), std::move(annot), std::move(body)}, p);
  }

  ExprPtr cmp() {
    DepthGuard guard(*this);
    skip_newlines();
    const SourcePos p = here();
    ExprPtr lhs = add();
    BinOp op;
    switch (peek().kind) {
      case Tok::EqEq: op = BinOp::Eq; break;
      case Tok::Lt: op = BinOp::Lt; break;
      case Tok::Gt: op = BinOp::Gt; break;
      default: return lhs;
    }
    advance();
    skip_newlines();
    ExprPtr rhs = add();
    if (at(Tok::EqEq) || at(Tok::Lt) || at(Tok::Gt)) fail("comparison operators do not associate");
    return make_expr(ast::Bop{op, std::move(lhs), std::move(rhs)}, p);
  }

  ExprPtr add() {
    const SourcePos p = here();
    ExprPtr lhs = mul();
    for (int n = 0; at(Tok::Plus) || at(Tok::Minus); ++n) {
      chain_guard(n);
      const BinOp op = advance().kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
      skip_newlines();
      ExprPtr rhs = mul();
      lhs = make_expr(ast::Bop{op, std::move(lhs), std::move(rhs)}, p);
    }
    return lhs;
  }

  ExprPtr mul() {
    const SourcePos p = here();
    ExprPtr lhs = app();
    for (int n = 0; at(Tok::Star) || at(Tok::Slash); ++n) {
      chain_guard(n);
      const BinOp op = advance().kind == Tok::Star ? BinOp::Mul : BinOp::Div;
      skip_newlines();
      ExprPtr rhs = app();
      lhs = make_expr(ast::Bop{op, std::move(lhs), std::move(rhs)}, p);
    }
    return lhs;
  }

  static bool starts_atom(Tok k) {
    switch (k) {
      case Tok::Int:
      case Tok::True:
      case Tok::False:
      case Tok::LParen:
      case Tok::Ident:
      case Tok::Bang:
      case Tok::RefKw:
        return true;
      default:
        return false;
    }
  }

  ExprPtr app() {
    const SourcePos p = here();
    ExprPtr fn;
    if (at(Tok::Minus)) {
      advance();
      fn = number(p, "-");
    } else {
      fn = atom();
    }
    for (int n = 0; starts_atom(peek().kind); ++n) {
      chain_guard(n);
      ExprPtr arg = atom();
      fn = make_expr(ast::App{std::move(fn), std::move(arg)}, p);
    }
    return fn;
  }

  ExprPtr number(SourcePos p, const std::string& sign) {
    if (!at(Tok::Int)) unexpected({"integer"});
    std::string literal = sign + advance().text;
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
    if (ec != std::errc() || end != literal.data() + literal.size()) {
      throw ParseError(p.line, p.col, "integer literal out of range: " + literal);
    }
    return make_expr(ast::Num{std::move(literal)}, p);
  }

  ExprPtr atom() {
    DepthGuard guard(*this);
    const SourcePos p = here();
    switch (peek().kind) {
      case Tok::Int:
        return number(p, "");
      case Tok::True:
        advance();
        return make_expr(ast::Bool{true}, p);
      case Tok::False:
        advance();
        return make_expr(ast::Bool{false}, p);
      case Tok::Ident:
        return make_expr(ast::Var{advance().text}, p);
      case Tok::Bang: {
        advance();
        return make_expr(ast::Deref{expect(Tok::Ident).text}, p);
      }
      case Tok::RefKw: {
        advance();
        expect(Tok::LParen);
        ExprPtr inner = seq(Tok::RParen);
        if (!inner) unexpected({"expression"});
        expect(Tok::RParen);
        return make_expr(ast::Ref{std::move(inner)}, p);
      }
      case Tok::LParen: {
        advance();
        ExprPtr inner = seq(Tok::RParen);
        expect(Tok::RParen);
        if (!inner) return make_expr(ast::Unit{}, p);
        return inner;
      }
      default:
        unexpected({"expression"});
    }
  }

  SecType type() {
    DepthGuard guard(*this);
    switch (peek().kind) {
      case Tok::LowKw:
        advance();
        return SecType::low();
      case Tok::HighKw:
        advance();
        return SecType::high();
      case Tok::RefKw:
        advance();
        return SecType::ref(type());
      case Tok::LParen: {
        advance();
        if (at(Tok::RParen)) {
          advance();
          return SecType::empty();
        }
        SecType param = type();
        expect(Tok::Arrow);
        SecType result = type();
        expect(Tok::At);
        SecType latent = type();
        expect(Tok::RParen);
        return SecType::fun(std::move(param), std::move(result), std::move(latent));
      }
      default:
        unexpected({"type"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view source) { return Parser(lex(source)).program(); }

SecType parse_type(std::string_view source) { return Parser(lex(source)).type_only(); }

}  // namespace ifc
