#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "fsconn/error.hpp"
#include "fsconn/fuzzy_soft_set.hpp"
#include "fsconn/scalar.hpp"
#include "fsconn/tag.hpp"

namespace fsconn {

/// Outputs this close to [0,1] are snapped onto it; anything further out is an error.
inline constexpr double kCodomainSlack = 1e-12;

/// (a, α): a parameter tag with a membership value.
struct TaggedMembership {
  ParamTag tag;
  double value;

  TaggedMembership(ParamTag t, double v) : tag(std::move(t)), value(v) {
    if (!(value >= 0.0 && value <= 1.0))
      throw ValidationError("membership " + format_number(value) + " under '" + tag.str() + "' outside [0,1]");
  }

  friend bool operator==(const TaggedMembership&, const TaggedMembership&) = default;

  // Only values under the same tag are comparable.
  friend std::partial_ordering operator<=>(const TaggedMembership& a, const TaggedMembership& b) {
    if (!(a.tag == b.tag)) return std::partial_ordering::unordered;
    return a.value <=> b.value;
  }
};

enum class LiftedKind { tnorm, tconorm, negation, implication };

inline std::string_view to_string(LiftedKind k) {
  switch (k) {
    case LiftedKind::tnorm: return "fuzzy soft t-norm";
    case LiftedKind::tconorm: return "fuzzy soft t-conorm";
    case LiftedKind::negation: return "fuzzy soft negation";
    case LiftedKind::implication: return "fuzzy soft implication";
  }
  return "?";
}

/// Per-parameter negations, keyed by tag text, with an optional fallback for other tags.
struct NegationFamily {
  std::map<std::string, ScalarConnective> per_tag;
  std::optional<ScalarConnective> fallback;

  [[nodiscard]] const ScalarConnective& for_tag(const ParamTag& tag) const {
    if (auto it = per_tag.find(tag.str()); it != per_tag.end()) return it->second;
    if (fallback) return *fallback;
    throw ValidationError("no negation given for parameter '" + tag.str() + "'");
  }
};

/// A scalar connective acting on tagged memberships.
///
/// Binary kinds map ((a, x), (b, y)) to (a*b, f(x, y)). Negations keep the tag.
class LiftedConnective {
 public:
  using Scalar = std::variant<ScalarConnective, NegationFamily>;

  LiftedConnective(LiftedKind kind, Scalar scalar) : kind_(kind), scalar_(std::move(scalar)) {}

  [[nodiscard]] LiftedKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_binary() const noexcept { return kind_ != LiftedKind::negation; }
  [[nodiscard]] const Scalar& scalar() const noexcept { return scalar_; }

  [[nodiscard]] const ScalarConnective& binary_scalar() const {
    if (!is_binary()) throw ArityError("negation is unary");
    return std::get<ScalarConnective>(scalar_);
  }

  [[nodiscard]] const ScalarConnective& negation_for(const ParamTag& tag) const {
    if (is_binary()) throw ArityError(std::string(to_string(kind_)) + " is binary");
    if (const auto* single = std::get_if<ScalarConnective>(&scalar_)) return *single;
    return std::get<NegationFamily>(scalar_).for_tag(tag);
  }

 private:
  LiftedKind kind_;
  Scalar scalar_;
};

namespace detail {

inline LiftedConnective lift_binary(LiftedKind kind, const ScalarConnective& scalar) {
  if (scalar.arity() != 2)
    throw ArityError("cannot lift unary '" + scalar.name() + "' to a " + std::string(to_string(kind)));
  return LiftedConnective(kind, scalar);
}

}  // namespace detail

// The lift_* constructors trust the caller that the scalar satisfies the axioms of its kind;
// the analysis checks are the place to verify that.

inline LiftedConnective lift_tnorm(const ScalarConnective& t) { return detail::lift_binary(LiftedKind::tnorm, t); }
inline LiftedConnective lift_tconorm(const ScalarConnective& s) {
  return detail::lift_binary(LiftedKind::tconorm, s);
}
inline LiftedConnective lift_implication(const ScalarConnective& h) {
  return detail::lift_binary(LiftedKind::implication, h);
}

inline LiftedConnective lift_negation(const ScalarConnective& n) {
  if (n.arity() != 1) throw ArityError("negation '" + n.name() + "' must be unary");
  return LiftedConnective(LiftedKind::negation, n);
}

inline LiftedConnective lift_negation(NegationFamily family) {
  for (const auto& [label, n] : family.per_tag)
    if (n.arity() != 1) throw ArityError("negation for '" + label + "' must be unary");
  if (family.fallback && family.fallback->arity() != 1) throw ArityError("fallback negation must be unary");
  return LiftedConnective(LiftedKind::negation, std::move(family));
}

/// Applies the codomain policy to a raw connective output.
inline double codomain_checked(double v, const std::string& what) {
  if (std::isnan(v) || v < -kCodomainSlack || v > 1.0 + kCodomainSlack)
    throw CodomainError(what + " produced " + format_number(v) + ", outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

inline TaggedMembership eval_lifted(const LiftedConnective& conn, const TaggedMembership& arg) {
  const auto& n = conn.negation_for(arg.tag);
  return {arg.tag, codomain_checked(n(arg.value), "'" + n.name() + "'")};
}

inline TaggedMembership eval_lifted(const LiftedConnective& conn, const TaggedMembership& lhs,
                                    const TaggedMembership& rhs) {
  const auto& f = conn.binary_scalar();
  return {combine_tags(lhs.tag, rhs.tag), codomain_checked(f(lhs.value, rhs.value), "'" + f.name() + "'")};
}

/// Generalised union/intersection: every pair of approximations combined by the scalar.
inline FuzzySoftSet apply_connective(const LiftedConnective& conn, const FuzzySoftSet& lhs,
                                     const FuzzySoftSet& rhs) {
  const auto& f = conn.binary_scalar();
  const std::string what = "'" + f.name() + "'";
  return detail::combine_pairwise(lhs, rhs, [&](double x, double y) { return codomain_checked(f(x, y), what); });
}

}  // namespace fsconn
