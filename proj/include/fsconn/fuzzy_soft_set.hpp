#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsconn/error.hpp"
#include "fsconn/tag.hpp"

namespace fsconn {

/// Finite universe of discourse. Element order is fixed at construction.
class Universe {
 public:
  explicit Universe(std::vector<std::string> elements)
      : elements_(std::make_shared<const std::vector<std::string>>(std::move(elements))) {
    if (elements_->empty()) throw ValidationError("universe must not be empty");
    std::set<std::string_view> seen;
    for (const auto& e : *elements_)
      if (!seen.insert(e).second) throw ValidationError("duplicate universe element '" + e + "'");
  }

  Universe(std::initializer_list<std::string> elements) : Universe(std::vector<std::string>(elements)) {}

  [[nodiscard]] std::size_t size() const noexcept { return elements_->size(); }
  [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return *elements_; }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return (*elements_)[i]; }

  friend bool operator==(const Universe& a, const Universe& b) noexcept {
    return a.elements_ == b.elements_ || *a.elements_ == *b.elements_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> elements_;
};

namespace detail {

inline bool same_bits(double a, double b) noexcept {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool same_bits(const std::vector<double>& a, const std::vector<double>& b) noexcept {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(),
                                            [](double x, double y) { return same_bits(x, y); });
}

}  // namespace detail

/// Membership function over a universe. Values are checked to lie in [0,1].
class FuzzySet {
 public:
  FuzzySet(Universe universe, std::vector<double> memberships)
      : universe_(std::move(universe)), memberships_(std::move(memberships)) {
    if (memberships_.size() != universe_.size())
      throw ValidationError("expected " + std::to_string(universe_.size()) + " memberships, got " +
                            std::to_string(memberships_.size()));
    for (std::size_t i = 0; i < memberships_.size(); ++i) {
      const double m = memberships_[i];
      if (!(m >= 0.0 && m <= 1.0))
        throw ValidationError("membership of '" + universe_[i] + "' is " + std::to_string(m) +
                              ", outside [0,1]");
    }
  }

  [[nodiscard]] const Universe& universe() const noexcept { return universe_; }
  [[nodiscard]] const std::vector<double>& memberships() const noexcept { return memberships_; }
  [[nodiscard]] double operator[](std::size_t i) const { return memberships_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return memberships_.size(); }

  // Bitwise on membership values.
  friend bool operator==(const FuzzySet& a, const FuzzySet& b) noexcept {
    return a.universe_ == b.universe_ && detail::same_bits(a.memberships_, b.memberships_);
  }

 private:
  Universe universe_;
  std::vector<double> memberships_;
};

/// A fuzzy soft set (S, A): each parameter tag names one fuzzy subset of a shared universe.
class FuzzySoftSet {
 public:
  using Assignments = std::map<ParamTag, FuzzySet>;

  FuzzySoftSet(Universe universe, Assignments assignments)
      : universe_(std::move(universe)), assignments_(std::move(assignments)) {
    if (assignments_.empty()) throw ValidationError("fuzzy soft set needs at least one parameter");
    for (const auto& [tag, set] : assignments_)
      if (!(set.universe() == universe_))
        throw UniverseMismatch("approximation under '" + tag.str() + "' uses a different universe");
  }

  [[nodiscard]] const Universe& universe() const noexcept { return universe_; }
  [[nodiscard]] const Assignments& assignments() const noexcept { return assignments_; }
  [[nodiscard]] std::size_t parameter_count() const noexcept { return assignments_.size(); }

  [[nodiscard]] const FuzzySet& at(const ParamTag& tag) const {
    auto it = assignments_.find(tag);
    if (it == assignments_.end()) throw ValidationError("no parameter '" + tag.str() + "'");
    return it->second;
  }

  friend bool operator==(const FuzzySoftSet& a, const FuzzySoftSet& b) noexcept {
    return a.universe_ == b.universe_ && a.assignments_ == b.assignments_;
  }

 private:
  Universe universe_;
  Assignments assignments_;
};

/// Builds a validated fuzzy soft set. Errors name the offending tag and element.
inline FuzzySoftSet make_fuzzy_soft_set(const Universe& universe,
                                        const std::vector<std::pair<ParamTag, std::vector<double>>>& assignments) {
  FuzzySoftSet::Assignments out;
  for (const auto& [tag, values] : assignments) {
    if (values.size() != universe.size())
      throw ValidationError("parameter '" + tag.str() + "': expected " + std::to_string(universe.size()) +
                            " memberships, got " + std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!(values[i] >= 0.0 && values[i] <= 1.0))
        throw ValidationError("parameter '" + tag.str() + "', element '" + universe[i] + "': membership " +
                              std::to_string(values[i]) + " outside [0,1]");
    if (!out.emplace(tag, FuzzySet(universe, values)).second)
      throw ValidationError("duplicate parameter '" + tag.str() + "'");
  }
  return FuzzySoftSet(universe, std::move(out));
}

/// The family of approximations, one per tag, in tag order. Equal sets under different
/// tags are kept.
inline std::vector<FuzzySet> tau_family(const FuzzySoftSet& fss) {
  std::vector<FuzzySet> out;
  out.reserve(fss.parameter_count());
  for (const auto& [tag, set] : fss.assignments()) out.push_back(set);
  return out;
}

/// tau_family with bitwise-equal approximations collapsed, first occurrence wins.
inline std::vector<FuzzySet> tau_family_distinct(const FuzzySoftSet& fss) {
  std::vector<FuzzySet> out;
  for (const auto& [tag, set] : fss.assignments())
    if (std::find(out.begin(), out.end(), set) == out.end()) out.push_back(set);
  return out;
}

/// Pointwise 1 - μ under every tag.
///
/// Applying it twice gives back the input bit for bit whenever 1 - μ is exact, which holds
/// for every μ on the 2^-53 lattice (for instance 0.7, 0.5 or any value drawn by a 53-bit
/// uniform generator). Decimal inputs below one half such as 0.3 can come back one ulp off.
inline FuzzySoftSet complement_fss(const FuzzySoftSet& fss) {
  FuzzySoftSet::Assignments out;
  for (const auto& [tag, set] : fss.assignments()) {
    std::vector<double> values(set.memberships());
    for (auto& v : values) v = 1.0 - v;
    out.emplace(tag, FuzzySet(fss.universe(), std::move(values)));
  }
  return FuzzySoftSet(fss.universe(), std::move(out));
}

namespace detail {

inline void require_same_universe(const FuzzySoftSet& lhs, const FuzzySoftSet& rhs) {
  if (!(lhs.universe() == rhs.universe()))
    throw UniverseMismatch("operands are defined over different universes");
}

// Combines every pair of approximations with `op`, producing product tags. Two source pairs
// that land on the same canonical tag must agree bit for bit.
template <class PointwiseOp>
FuzzySoftSet combine_pairwise(const FuzzySoftSet& lhs, const FuzzySoftSet& rhs, PointwiseOp&& op) {
  require_same_universe(lhs, rhs);
  FuzzySoftSet::Assignments out;
  const std::size_t n = lhs.universe().size();
  for (const auto& [ta, sa] : lhs.assignments()) {
    for (const auto& [tb, sb] : rhs.assignments()) {
      std::vector<double> values(n);
      for (std::size_t i = 0; i < n; ++i) values[i] = op(sa[i], sb[i]);
      auto tag = combine_tags(ta, tb);
      auto it = out.find(tag);
      if (it != out.end()) {
        if (!same_bits(it->second.memberships(), values))
          throw TagCollision("product tag '" + tag.str() + "' arises from several parameter pairs with "
                             "different memberships");
        continue;
      }
      out.emplace(std::move(tag), FuzzySet(lhs.universe(), std::move(values)));
    }
  }
  return FuzzySoftSet(lhs.universe(), std::move(out));
}

}  // namespace detail

/// Union over A×B with pointwise max.
inline FuzzySoftSet union_fss(const FuzzySoftSet& lhs, const FuzzySoftSet& rhs) {
  return detail::combine_pairwise(lhs, rhs, [](double x, double y) { return std::max(x, y); });
}

/// Intersection over A×B with pointwise min.
inline FuzzySoftSet intersect_fss(const FuzzySoftSet& lhs, const FuzzySoftSet& rhs) {
  return detail::combine_pairwise(lhs, rhs, [](double x, double y) { return std::min(x, y); });
}

}  // namespace fsconn
