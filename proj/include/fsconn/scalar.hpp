#pragma once

#include <array>
#include <charconv>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "fsconn/error.hpp"
#include "fsconn/expr.hpp"

namespace fsconn {

enum class ConnectiveKind { tnorm, tconorm, negation, implication, unclassified };

inline std::string_view to_string(ConnectiveKind k) {
  switch (k) {
    case ConnectiveKind::tnorm: return "tnorm";
    case ConnectiveKind::tconorm: return "tconorm";
    case ConnectiveKind::negation: return "negation";
    case ConnectiveKind::implication: return "implication";
    case ConnectiveKind::unclassified: return "unclassified";
  }
  return "?";
}

enum class Builtin {
  product,
  minimum,
  lukasiewicz,
  maximum,
  probsum,
  boundedsum,
  standard_negation,
  sugeno,
  lukasiewicz_implication,
  godel_implication,
  kleene_dienes_implication,
};

struct BuiltinInfo {
  Builtin id;
  std::string_view name;
  int arity;
  ConnectiveKind kind;
  bool continuous;
};

// Names are the stable identifiers used by scripts and the command line.
inline constexpr std::array<BuiltinInfo, 11> kBuiltins{{
    {Builtin::product, "product", 2, ConnectiveKind::tnorm, true},
    {Builtin::minimum, "minimum", 2, ConnectiveKind::tnorm, true},
    {Builtin::lukasiewicz, "lukasiewicz", 2, ConnectiveKind::tnorm, true},
    {Builtin::maximum, "maximum", 2, ConnectiveKind::tconorm, true},
    {Builtin::probsum, "probsum", 2, ConnectiveKind::tconorm, true},
    {Builtin::boundedsum, "boundedsum", 2, ConnectiveKind::tconorm, true},
    {Builtin::standard_negation, "standard-negation", 1, ConnectiveKind::negation, true},
    {Builtin::sugeno, "sugeno", 1, ConnectiveKind::negation, true},
    {Builtin::lukasiewicz_implication, "lukasiewicz-implication", 2, ConnectiveKind::implication, true},
    // Jumps from 1 to y as x crosses y.
    {Builtin::godel_implication, "godel-implication", 2, ConnectiveKind::implication, false},
    {Builtin::kleene_dienes_implication, "kleene-dienes-implication", 2, ConnectiveKind::implication, true},
}};

inline const BuiltinInfo* find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins)
    if (b.name == name) return &b;
  return nullptr;
}

inline const BuiltinInfo& builtin_info(Builtin id) {
  for (const auto& b : kBuiltins)
    if (b.id == id) return b;
  throw UnknownBuiltin("unknown builtin id");
}

inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

/// A unary or binary function on [0,1]: a builtin, a parsed expression, or the dual of
/// another binary connective.
///
/// The kind tag and continuity flag are metadata only; evaluation depends on arity and body.
/// Values are returned as computed; keeping them inside [0,1] is the caller's policy.
class ScalarConnective {
 public:
  struct BuiltinBody {
    Builtin id;
    double lambda{0.0};  // sugeno only
  };
  struct ExprBody {
    std::shared_ptr<const Expr> ast;
  };
  struct DualBody {
    std::shared_ptr<const ScalarConnective> inner;
  };
  using Body = std::variant<BuiltinBody, ExprBody, DualBody>;

  ScalarConnective(Body body, int arity, ConnectiveKind kind, bool continuous, std::string name)
      : body_(std::move(body)), arity_(arity), kind_(kind), continuous_(continuous), name_(std::move(name)) {
    if (arity_ != 1 && arity_ != 2) throw ArityError("connective arity must be 1 or 2");
  }

  [[nodiscard]] int arity() const noexcept { return arity_; }
  [[nodiscard]] ConnectiveKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool continuous() const noexcept { return continuous_; }
  [[nodiscard]] const Body& body() const noexcept { return body_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  double operator()(double x) const {
    if (arity_ != 1) throw ArityError("'" + name_ + "' is binary, called with one argument");
    return evaluate(x, 0.0);
  }

  double operator()(double x, double y) const {
    if (arity_ != 2) throw ArityError("'" + name_ + "' is unary, called with two arguments");
    return evaluate(x, y);
  }

 private:
  double evaluate(double x, double y) const {
    return std::visit(
        [&](const auto& b) -> double {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, BuiltinBody>) {
            return eval_builtin(b, x, y);
          } else if constexpr (std::is_same_v<B, ExprBody>) {
            return arity_ == 1 ? eval_scalar(*b.ast, x) : eval_scalar(*b.ast, x, y);
          } else {
            return 1.0 - (*b.inner)(1.0 - x, 1.0 - y);
          }
        },
        body_);
  }

  static double eval_builtin(const BuiltinBody& b, double x, double y) {
    switch (b.id) {
      case Builtin::product: return x * y;
      case Builtin::minimum: return std::min(x, y);
      case Builtin::lukasiewicz: return std::max(x + y - 1.0, 0.0);
      case Builtin::maximum: return std::max(x, y);
      case Builtin::probsum: return x + y - x * y;
      case Builtin::boundedsum: return std::min(1.0, x + y);
      case Builtin::standard_negation: return 1.0 - x;
      case Builtin::sugeno: return (1.0 - x) / (1.0 + b.lambda * x);
      case Builtin::lukasiewicz_implication: return std::min(1.0, 1.0 - x + y);
      case Builtin::godel_implication: return x <= y ? 1.0 : y;
      case Builtin::kleene_dienes_implication: return std::max(1.0 - x, y);
    }
    return 0.0;
  }

  Body body_;
  int arity_;
  ConnectiveKind kind_;
  bool continuous_;
  std::string name_;
};

/// Sugeno negation (1 - x) / (1 + λx), λ > -1.
inline ScalarConnective sugeno(double lambda) {
  if (!(lambda > -1.0)) throw UsageError("sugeno parameter must exceed -1, got " + format_number(lambda));
  return ScalarConnective(ScalarConnective::BuiltinBody{Builtin::sugeno, lambda}, 1, ConnectiveKind::negation,
                          true, "sugeno(" + format_number(lambda) + ")");
}

/// Looks up a builtin by its stable name; `sugeno(λ)` carries its parameter inline.
inline ScalarConnective builtin(std::string_view name) {
  if (name.starts_with("sugeno")) {
    auto rest = name.substr(6);
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')')
      throw UsageError("sugeno needs a parameter, as in sugeno(1)");
    auto arg = rest.substr(1, rest.size() - 2);
    double lambda = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), lambda, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw UsageError("bad sugeno parameter '" + std::string(arg) + "'");
    return sugeno(lambda);
  }
  const BuiltinInfo* info = find_builtin(name);
  if (!info || info->id == Builtin::sugeno) throw UnknownBuiltin("unknown builtin connective '" + std::string(name) + "'");
  return ScalarConnective(ScalarConnective::BuiltinBody{info->id}, info->arity, info->kind, info->continuous,
                          std::string(info->name));
}

/// Wraps a parsed expression. Continuity is whatever the caller asserts.
inline ScalarConnective expression_connective(Expr ast, int arity,
                                              ConnectiveKind kind = ConnectiveKind::unclassified,
                                              bool continuous = false) {
  if (arity == 1 && uses_variable(ast, Expr::Op::var_y))
    throw ArityError("unary connective may only use x");
  std::string name = pretty_print(ast);
  return ScalarConnective(ScalarConnective::ExprBody{std::make_shared<const Expr>(std::move(ast))}, arity, kind,
                          continuous, std::move(name));
}

inline ScalarConnective expression_connective(std::string_view text, int arity,
                                              ConnectiveKind kind = ConnectiveKind::unclassified,
                                              bool continuous = false) {
  return expression_connective(parse_scalar(text, arity), arity, kind, continuous);
}

/// g(x, y) = 1 - f(1 - x, 1 - y). Swaps t-norm and t-conorm kinds.
inline ScalarConnective dual_of(const ScalarConnective& f) {
  if (f.arity() != 2) throw ArityError("dual of '" + f.name() + "' needs a binary connective");
  ConnectiveKind kind = ConnectiveKind::unclassified;
  if (f.kind() == ConnectiveKind::tnorm) kind = ConnectiveKind::tconorm;
  if (f.kind() == ConnectiveKind::tconorm) kind = ConnectiveKind::tnorm;
  return ScalarConnective(ScalarConnective::DualBody{std::make_shared<const ScalarConnective>(f)}, 2, kind,
                          f.continuous(), "dual(" + f.name() + ")");
}

}  // namespace fsconn
