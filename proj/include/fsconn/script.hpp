#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsconn/error.hpp"
#include "fsconn/expr.hpp"
#include "fsconn/fuzzy_soft_set.hpp"
#include "fsconn/io.hpp"
#include "fsconn/lifted.hpp"
#include "fsconn/scalar.hpp"

// Set-level scripts:
//
//   H = union(S, G);
//   K = apply(dual(product), S, complement(G));
//   print apply(fn(x, y) => max(x + y - 1, 0), H, K);
//   save K "k.fss";
//
// The full grammar is in docs/grammar.md.

namespace fsconn {

struct ConnectiveTerm {
  enum class Form { builtin, dual, lambda };

  Form form{Form::builtin};
  std::string name;                  // builtin name, e.g. "product" or "sugeno(0.5)"
  std::vector<ConnectiveTerm> inner;  // operand of dual
  Expr body;                         // lambda body in x, y
  SourceSpan span;
};

struct SetExpr {
  enum class Op { ref, complement, union_, intersect, apply };

  Op op{Op::ref};
  std::string name;  // ref only
  std::vector<SetExpr> args;
  std::vector<ConnectiveTerm> connective;  // apply only
  SourceSpan span;
};

struct Statement {
  enum class Kind { assign, print, save };

  Kind kind{Kind::print};
  std::string target;  // assign: identifier; save: output path
  SetExpr value;
  SourceSpan span;
};

struct Script {
  std::vector<Statement> statements;
};

namespace detail {

inline constexpr std::array<std::string_view, 8> kScriptKeywords{"print",     "save",  "complement", "union",
                                                                 "intersect", "apply", "dual",       "fn"};

inline bool is_reserved(std::string_view name) {
  return std::find(kScriptKeywords.begin(), kScriptKeywords.end(), name) != kScriptKeywords.end() ||
         find_builtin(name) != nullptr;
}

class ScriptParser {
 public:
  ScriptParser(std::string_view text, std::span<const std::string> bound)
      : cur_(text), defined_(bound.begin(), bound.end()) {}

  Script parse() {
    Script s;
    while (!cur_.at(TokenKind::end)) s.statements.push_back(statement());
    return s;
  }

 private:
  Statement statement() {
    Statement st;
    const SourceSpan start = cur_.peek().span;
    if (cur_.at_ident("print")) {
      cur_.next();
      st.kind = Statement::Kind::print;
      st.value = set_expr(0);
    } else if (cur_.at_ident("save")) {
      cur_.next();
      st.kind = Statement::Kind::save;
      st.value = set_expr(0);
      st.target = cur_.expect(TokenKind::string, "holding the output path").text;
    } else if (cur_.at(TokenKind::identifier) && cur_.peek(1).kind == TokenKind::assign) {
      const Token& id = cur_.next();
      if (is_reserved(id.text)) throw ParseError("cannot assign to reserved name '" + id.text + "'", id.span);
      cur_.next();
      st.kind = Statement::Kind::assign;
      st.target = id.text;
      st.value = set_expr(0);
    } else {
      cur_.fail("expected statement (assignment, print or save)");
    }
    cur_.expect(TokenKind::semicolon, "after statement");
    if (st.kind == Statement::Kind::assign) defined_.insert(st.target);
    st.span = cur_.span_from(start);
    return st;
  }

  SetExpr set_expr(int depth) {
    if (depth > kMaxNesting) throw ParseError("expression nested too deeply", cur_.peek().span);
    SetExpr e;
    const Token& t = cur_.peek();
    const SourceSpan start = t.span;
    if (t.kind != TokenKind::identifier) cur_.fail("expected set expression");
    const std::string name = t.text;
    cur_.next();

    if (name == "complement" || name == "union" || name == "intersect" || name == "apply") {
      cur_.expect(TokenKind::lparen, "after '" + name + "'");
      if (name == "complement") {
        e.op = SetExpr::Op::complement;
        e.args.push_back(set_expr(depth + 1));
      } else {
        e.op = name == "union" ? SetExpr::Op::union_ : name == "intersect" ? SetExpr::Op::intersect : SetExpr::Op::apply;
        if (e.op == SetExpr::Op::apply) {
          e.connective.push_back(connective(depth + 1));
          cur_.expect(TokenKind::comma, "after connective");
        }
        e.args.push_back(set_expr(depth + 1));
        cur_.expect(TokenKind::comma, "between operands");
        e.args.push_back(set_expr(depth + 1));
      }
      cur_.expect(TokenKind::rparen, "to close '" + name + "('");
    } else {
      if (is_reserved(name)) throw ParseError("'" + name + "' is not a fuzzy soft set", start);
      if (!defined_.contains(name)) throw ParseError("undefined identifier '" + name + "'", start);
      e.op = SetExpr::Op::ref;
      e.name = name;
    }
    e.span = cur_.span_from(start);
    return e;
  }

  // Builtin names may contain '-' (lukasiewicz-implication); the pieces must touch.
  std::string hyphenated_name(const Token& first) {
    std::string name = first.text;
    std::size_t end = first.span.end;
    while (cur_.at(TokenKind::minus) && cur_.peek().span.start == end &&
           cur_.peek(1).kind == TokenKind::identifier && cur_.peek(1).span.start == end + 1) {
      cur_.next();
      const Token& part = cur_.next();
      name += "-" + part.text;
      end = part.span.end;
    }
    return name;
  }

  ConnectiveTerm connective(int depth) {
    if (depth > kMaxNesting) throw ParseError("expression nested too deeply", cur_.peek().span);
    ConnectiveTerm c;
    const SourceSpan start = cur_.peek().span;
    if (!cur_.at(TokenKind::identifier)) cur_.fail("expected connective");
    const Token first = cur_.next();

    if (first.text == "dual") {
      c.form = ConnectiveTerm::Form::dual;
      cur_.expect(TokenKind::lparen, "after 'dual'");
      c.inner.push_back(connective(depth + 1));
      cur_.expect(TokenKind::rparen, "to close 'dual('");
    } else if (first.text == "fn") {
      c.form = ConnectiveTerm::Form::lambda;
      cur_.expect(TokenKind::lparen, "after 'fn'");
      if (!cur_.at_ident("x")) cur_.fail("expected parameter 'x'");
      cur_.next();
      cur_.expect(TokenKind::comma, "between parameters");
      if (!cur_.at_ident("y")) cur_.fail("expected parameter 'y'");
      cur_.next();
      cur_.expect(TokenKind::rparen, "after parameters");
      cur_.expect(TokenKind::arrow, "before connective body");
      c.body = cur_.parse_expr();
    } else {
      c.form = ConnectiveTerm::Form::builtin;
      c.name = hyphenated_name(first);
      if (c.name == "sugeno" && cur_.accept(TokenKind::lparen)) {
        const bool negative = cur_.accept(TokenKind::minus);
        const Token& num = cur_.expect(TokenKind::number, "as sugeno parameter");
        cur_.expect(TokenKind::rparen, "to close 'sugeno('");
        c.name += "(" + std::string(negative ? "-" : "") + num.text + ")";
      }
      c.span = cur_.span_from(start);
      try {
        (void)builtin(c.name);
      } catch (const UsageError& e) {
        throw ParseError(e.what(), c.span);
      }
    }
    c.span = cur_.span_from(start);
    if (arity_of(c) != 2) throw ParseError("connective '" + c.name + "' is unary; a binary one is needed", c.span);
    return c;
  }

  static int arity_of(const ConnectiveTerm& c) {
    return c.form == ConnectiveTerm::Form::builtin ? builtin(c.name).arity() : 2;
  }

  TokenCursor cur_;
  std::set<std::string, std::less<>> defined_;
};

}  // namespace detail

/// Parses a script. `bound` lists names supplied from outside (e.g. --bind); every other
/// identifier must be assigned before it is used.
inline Script parse_script(std::string_view text, std::span<const std::string> bound = {}) {
  return detail::ScriptParser(text, bound).parse();
}

inline ScalarConnective resolve_connective(const ConnectiveTerm& c) {
  switch (c.form) {
    case ConnectiveTerm::Form::builtin: return builtin(c.name);
    case ConnectiveTerm::Form::dual: return dual_of(resolve_connective(c.inner.at(0)));
    case ConnectiveTerm::Form::lambda: return expression_connective(c.body, 2);
  }
  throw UsageError("bad connective term");
}

/// Lifts a binary scalar according to its declared kind; unclassified scalars lift as t-norms.
inline LiftedConnective lift_binary(const ScalarConnective& f) {
  switch (f.kind()) {
    case ConnectiveKind::tconorm: return lift_tconorm(f);
    case ConnectiveKind::implication: return lift_implication(f);
    default: return lift_tnorm(f);
  }
}

/// One line per tag: `a1*b1: {u1: 0.5, u2: 0.7}`.
inline std::string render_fss(const FuzzySoftSet& fss) {
  std::string out;
  for (const auto& [tag, set] : fss.assignments()) {
    out += tag.str() + ": {";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ", ";
      out += fss.universe()[i] + ": " + format_number(set[i]);
    }
    out += "}\n";
  }
  return out;
}

struct ScriptResult {
  std::vector<std::string> printed;
  std::vector<std::filesystem::path> saved;
  std::map<std::string, FuzzySoftSet> env;
};

namespace detail {

inline FuzzySoftSet eval_set(const SetExpr& e, const std::map<std::string, FuzzySoftSet>& env) {
  switch (e.op) {
    case SetExpr::Op::ref: {
      auto it = env.find(e.name);
      if (it == env.end()) throw ValidationError("identifier '" + e.name + "' is not bound");
      return it->second;
    }
    case SetExpr::Op::complement: return complement_fss(eval_set(e.args[0], env));
    case SetExpr::Op::union_: return union_fss(eval_set(e.args[0], env), eval_set(e.args[1], env));
    case SetExpr::Op::intersect: return intersect_fss(eval_set(e.args[0], env), eval_set(e.args[1], env));
    case SetExpr::Op::apply:
      return apply_connective(lift_binary(resolve_connective(e.connective.at(0))), eval_set(e.args[0], env),
                              eval_set(e.args[1], env));
  }
  throw ValidationError("bad set expression");
}

}  // namespace detail

/// Runs statements in order. Failures are reported against the statement that raised them.
inline ScriptResult eval_script(const Script& script, std::map<std::string, FuzzySoftSet> env) {
  ScriptResult out;
  for (const auto& st : script.statements) {
    try {
      FuzzySoftSet value = detail::eval_set(st.value, env);
      switch (st.kind) {
        case Statement::Kind::assign: env.insert_or_assign(st.target, std::move(value)); break;
        case Statement::Kind::print: out.printed.push_back(render_fss(value)); break;
        case Statement::Kind::save:
          save_fss(value, st.target);
          out.saved.emplace_back(st.target);
          break;
      }
    } catch (const Error& e) {
      throw ScriptError("line " + std::to_string(st.span.line) + ", column " + std::to_string(st.span.column) +
                            ": " + e.what(),
                        st.span, e.exit_code());
    }
  }
  out.env = std::move(env);
  return out;
}

namespace detail {

inline void print(const ConnectiveTerm& c, std::string& out) {
  switch (c.form) {
    case ConnectiveTerm::Form::builtin: out += c.name; break;
    case ConnectiveTerm::Form::dual:
      out += "dual(";
      print(c.inner.at(0), out);
      out += ")";
      break;
    case ConnectiveTerm::Form::lambda: out += "fn(x, y) => " + pretty_print(c.body); break;
  }
}

inline void print(const SetExpr& e, std::string& out) {
  switch (e.op) {
    case SetExpr::Op::ref: out += e.name; return;
    case SetExpr::Op::complement: out += "complement("; break;
    case SetExpr::Op::union_: out += "union("; break;
    case SetExpr::Op::intersect: out += "intersect("; break;
    case SetExpr::Op::apply:
      out += "apply(";
      print(e.connective.at(0), out);
      out += ", ";
      break;
  }
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ", ";
    print(e.args[i], out);
  }
  out += ")";
}

}  // namespace detail

/// One statement per line in canonical spacing.
inline std::string pretty_print(const Script& script) {
  std::string out;
  for (const auto& st : script.statements) {
    switch (st.kind) {
      case Statement::Kind::assign: out += st.target + " = "; break;
      case Statement::Kind::print: out += "print "; break;
      case Statement::Kind::save: out += "save "; break;
    }
    detail::print(st.value, out);
    if (st.kind == Statement::Kind::save) out += " \"" + st.target + "\"";
    out += ";\n";
  }
  return out;
}

}  // namespace fsconn
