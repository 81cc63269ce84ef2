#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fsconn/error.hpp"

namespace fsconn {

// ---------------------------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------------------------

enum class TokenKind {
  number,
  identifier,
  string,
  lparen,
  rparen,
  comma,
  semicolon,
  assign,
  arrow,
  plus,
  minus,
  star,
  slash,
  end,
};

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::number: return "number";
    case TokenKind::identifier: return "identifier";
    case TokenKind::string: return "string";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::semicolon: return "';'";
    case TokenKind::assign: return "'='";
    case TokenKind::arrow: return "'=>'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

struct Token {
  TokenKind kind{TokenKind::end};
  std::string text;  // identifier name, string contents, or number spelling
  double number{0.0};
  SourceSpan span;
};

namespace detail {

// Length of the UTF-8 sequence starting with `lead`, so an illegal character is reported whole.
inline std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace detail

/// Splits `text` into tokens. Whitespace and `#` comments (to end of line) are skipped.
/// Numbers are plain decimals: digits with an optional fractional part.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.span = SourceSpan{i, i, line, col};
    const std::size_t begin = i;
    auto single = [&](TokenKind kind, std::size_t len) {
      tok.kind = kind;
      tok.text = std::string(text.substr(begin, len));
      advance(len);
    };

    if (detail::is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && detail::is_digit(text[j])) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        if (j >= text.size() || !detail::is_digit(text[j])) {
          SourceSpan bad{i, j, line, col};
          throw ParseError("expected digit after '.' in number", bad);
        }
        while (j < text.size() && detail::is_digit(text[j])) ++j;
      }
      tok.kind = TokenKind::number;
      tok.text = std::string(text.substr(i, j - i));
      auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
      if (ec != std::errc{} || !std::isfinite(tok.number))
        throw ParseError("number '" + tok.text + "' is out of range", SourceSpan{i, j, line, col});
      advance(j - i);
    } else if (detail::is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && detail::is_ident_char(text[j])) ++j;
      single(TokenKind::identifier, j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw ParseError("unterminated string literal", SourceSpan{i, j, line, col});
      tok.kind = TokenKind::string;
      tok.text = std::string(text.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
    } else if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
      single(TokenKind::arrow, 2);
    } else {
      switch (c) {
        case '(': single(TokenKind::lparen, 1); break;
        case ')': single(TokenKind::rparen, 1); break;
        case ',': single(TokenKind::comma, 1); break;
        case ';': single(TokenKind::semicolon, 1); break;
        case '=': single(TokenKind::assign, 1); break;
        case '+': single(TokenKind::plus, 1); break;
        case '-': single(TokenKind::minus, 1); break;
        case '*': single(TokenKind::star, 1); break;
        case '/': single(TokenKind::slash, 1); break;
        default: {
          const auto len = std::min(detail::utf8_length(static_cast<unsigned char>(c)), text.size() - i);
          throw ParseError("illegal character '" + std::string(text.substr(i, len)) + "'",
                           SourceSpan{i, i + len, line, col});
        }
      }
    }
    tok.span.end = i;
    out.push_back(std::move(tok));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Scalar expressions
// ---------------------------------------------------------------------------------------------

/// Expression tree for a scalar connective body in the variables x and y.
struct Expr {
  enum class Op { number, var_x, var_y, negate, add, sub, mul, div, min, max, pow, abs };

  Op op{Op::number};
  double value{0.0};  // number literals only
  std::vector<Expr> args;
  SourceSpan span;
};

/// Equality that ignores spans; literals compare bitwise.
inline bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  if (a.op == Expr::Op::number &&
      std::bit_cast<std::uint64_t>(a.value) != std::bit_cast<std::uint64_t>(b.value))
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(a.args[i], b.args[i])) return false;
  return true;
}

inline bool uses_variable(const Expr& e, Expr::Op var) {
  if (e.op == var) return true;
  for (const auto& a : e.args)
    if (uses_variable(a, var)) return true;
  return false;
}

namespace detail {

inline constexpr int kMaxNesting = 200;

/// Token cursor shared by the scalar and script parsers.
class TokenCursor {
 public:
  explicit TokenCursor(std::string_view source) : source_(source), tokens_(tokenize(source)) {
    Token end;
    end.kind = TokenKind::end;
    std::size_t line = 1, col = 1;
    for (char c : source) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col;
      }
    }
    end.span = SourceSpan{source.size(), source.size(), line, col};
    tokens_.push_back(std::move(end));
  }

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  [[nodiscard]] bool at(TokenKind k) const { return peek().kind == k; }
  [[nodiscard]] bool at_ident(std::string_view name) const {
    return peek().kind == TokenKind::identifier && peek().text == name;
  }

  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool accept(TokenKind k) {
    if (!at(k)) return false;
    next();
    return true;
  }

  const Token& expect(TokenKind k, std::string_view context = {}) {
    if (!at(k)) {
      std::string msg = "expected " + std::string(to_string(k));
      if (!context.empty()) msg += " " + std::string(context);
      fail(msg);
    }
    return next();
  }

  [[noreturn]] void fail(const std::string& expected) const { fail_at(peek(), expected); }

  [[noreturn]] static void fail_at(const Token& t, const std::string& expected) {
    std::string found = t.kind == TokenKind::end ? "end of input"
                        : t.kind == TokenKind::string ? "string \"" + t.text + "\""
                                                       : "'" + t.text + "'";
    throw ParseError(expected + ", found " + found, t.span);
  }

  [[nodiscard]] SourceSpan span_from(const SourceSpan& start) const {
    const auto& prev = tokens_[pos_ == 0 ? 0 : pos_ - 1];
    SourceSpan s = start;
    s.end = std::max(start.end, prev.span.end);
    return s;
  }

  [[nodiscard]] std::string_view source() const { return source_; }

  // Scalar expression grammar:
  //   expr   := term (('+' | '-') term)*
  //   term   := unary (('*' | '/') unary)*
  //   unary  := '-' unary | atom
  //   atom   := number | 'x' | 'y' | call | '(' expr ')'
  //   call   := ('min' | 'max' | 'pow') '(' expr ',' expr ')' | 'abs' '(' expr ')'
  Expr parse_expr(int depth = 0) {
    guard(depth);
    const SourceSpan start = peek().span;
    Expr lhs = parse_term(depth + 1);
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      const auto op = next().kind == TokenKind::plus ? Expr::Op::add : Expr::Op::sub;
      Expr rhs = parse_term(depth + 1);
      lhs = binary(op, std::move(lhs), std::move(rhs), start);
    }
    return lhs;
  }

 private:
  void guard(int depth) const {
    if (depth > kMaxNesting) throw ParseError("expression nested too deeply", peek().span);
  }

  Expr binary(Expr::Op op, Expr lhs, Expr rhs, const SourceSpan& start) const {
    Expr e;
    e.op = op;
    e.args.reserve(2);
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    e.span = span_from(start);
    return e;
  }

  Expr parse_term(int depth) {
    guard(depth);
    const SourceSpan start = peek().span;
    Expr lhs = parse_unary(depth + 1);
    while (at(TokenKind::star) || at(TokenKind::slash)) {
      const auto op = next().kind == TokenKind::star ? Expr::Op::mul : Expr::Op::div;
      Expr rhs = parse_unary(depth + 1);
      lhs = binary(op, std::move(lhs), std::move(rhs), start);
    }
    return lhs;
  }

  Expr parse_unary(int depth) {
    guard(depth);
    if (at(TokenKind::minus)) {
      const SourceSpan start = next().span;
      Expr e;
      e.op = Expr::Op::negate;
      e.args.push_back(parse_unary(depth + 1));
      e.span = span_from(start);
      return e;
    }
    return parse_atom(depth + 1);
  }

  Expr parse_atom(int depth) {
    guard(depth);
    const Token& t = peek();
    Expr e;
    e.span = t.span;
    switch (t.kind) {
      case TokenKind::number:
        e.op = Expr::Op::number;
        e.value = t.number;
        next();
        return e;
      case TokenKind::lparen: {
        next();
        Expr inner = parse_expr(depth + 1);
        expect(TokenKind::rparen, "to close '('");
        return inner;
      }
      case TokenKind::identifier: break;
      default: fail("expected expression");
    }

    const std::string& name = t.text;
    if (name == "x" || name == "y") {
      e.op = name == "x" ? Expr::Op::var_x : Expr::Op::var_y;
      next();
      return e;
    }
    std::size_t arity = 0;
    if (name == "min") {
      e.op = Expr::Op::min, arity = 2;
    } else if (name == "max") {
      e.op = Expr::Op::max, arity = 2;
    } else if (name == "pow") {
      e.op = Expr::Op::pow, arity = 2;
    } else if (name == "abs") {
      e.op = Expr::Op::abs, arity = 1;
    } else {
      fail("expected expression (variables are x and y; functions are min, max, pow, abs)");
    }
    const Token callee = next();
    expect(TokenKind::lparen, "after '" + callee.text + "'");
    e.args.push_back(parse_expr(depth + 1));
    while (accept(TokenKind::comma)) e.args.push_back(parse_expr(depth + 1));
    if (!at(TokenKind::rparen)) fail("expected ',' or ')' in call to '" + callee.text + "'");
    if (e.args.size() != arity)
      throw ParseError("'" + callee.text + "' takes " + std::to_string(arity) + " argument" +
                           (arity == 1 ? "" : "s") + ", got " + std::to_string(e.args.size()),
                       span_from(callee.span));
    next();
    e.span = span_from(callee.span);
    return e;
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  std::size_t pos_{0};
};

}  // namespace detail

/// Parses a scalar connective body. With `arity == 1` the variable y is rejected.
inline Expr parse_scalar(std::string_view text, int arity = 2) {
  detail::TokenCursor cur(text);
  Expr e = cur.parse_expr();
  if (!cur.at(TokenKind::end)) cur.fail("expected operator or end of input");
  if (arity == 1 && uses_variable(e, Expr::Op::var_y)) {
    // Find the first y for the span.
    const Expr* hit = nullptr;
    auto find = [&](auto&& self, const Expr& n) -> void {
      if (hit) return;
      if (n.op == Expr::Op::var_y) {
        hit = &n;
        return;
      }
      for (const auto& a : n.args) self(self, a);
    };
    find(find, e);
    throw ParseError("unary connective may only use x", hit->span);
  }
  return e;
}

/// Evaluates `e` at (x, y). The result is not clamped.
inline double eval_scalar(const Expr& e, double x, std::optional<double> y = std::nullopt) {
  using Op = Expr::Op;
  auto checked = [&](double v) {
    if (!std::isfinite(v)) throw EvalError("non-finite result", e.span);
    return v;
  };
  switch (e.op) {
    case Op::number: return e.value;
    case Op::var_x: return x;
    case Op::var_y:
      if (!y) throw EvalError("variable y is unbound", e.span);
      return *y;
    case Op::negate: return -eval_scalar(e.args[0], x, y);
    case Op::abs: return std::fabs(eval_scalar(e.args[0], x, y));
    default: break;
  }
  const double a = eval_scalar(e.args[0], x, y);
  const double b = eval_scalar(e.args[1], x, y);
  switch (e.op) {
    case Op::add: return checked(a + b);
    case Op::sub: return checked(a - b);
    case Op::mul: return checked(a * b);
    case Op::div:
      if (b == 0.0) throw EvalError("division by zero", e.span);
      return checked(a / b);
    case Op::min: return std::min(a, b);
    case Op::max: return std::max(a, b);
    case Op::pow: return checked(std::pow(a, b));
    default: break;
  }
  throw EvalError("malformed expression node", e.span);
}

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.op) {
    case Expr::Op::add:
    case Expr::Op::sub: return 1;
    case Expr::Op::mul:
    case Expr::Op::div: return 2;
    case Expr::Op::negate: return 3;
    default: return 4;
  }
}

// Shortest fixed-notation spelling that reads back to the same double.
inline std::string format_literal(double v) {
  std::array<char, 512> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  return std::string(buf.data(), res.ptr);
}

inline void print(const Expr& e, std::string& out) {
  using Op = Expr::Op;
  auto wrapped = [&](const Expr& child, bool parens) {
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
  };
  switch (e.op) {
    case Op::number: out += format_literal(e.value); return;
    case Op::var_x: out += 'x'; return;
    case Op::var_y: out += 'y'; return;
    case Op::negate:
      out += '-';
      wrapped(e.args[0], precedence(e.args[0]) < 3);
      return;
    case Op::min:
    case Op::max:
    case Op::pow:
    case Op::abs: {
      out += e.op == Op::min ? "min(" : e.op == Op::max ? "max(" : e.op == Op::pow ? "pow(" : "abs(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print(e.args[i], out);
      }
      out += ')';
      return;
    }
    default: break;
  }
  const int p = precedence(e);
  const char* sym = e.op == Op::add ? " + " : e.op == Op::sub ? " - " : e.op == Op::mul ? " * " : " / ";
  // Left-associative: a right operand of equal precedence keeps its parentheses.
  wrapped(e.args[0], precedence(e.args[0]) < p);
  out += sym;
  wrapped(e.args[1], precedence(e.args[1]) <= p);
}

}  // namespace detail

/// Canonical rendering with minimal parentheses; re-parses to a structurally equal tree.
inline std::string pretty_print(const Expr& e) {
  std::string out;
  detail::print(e, out);
  return out;
}

}  // namespace fsconn
