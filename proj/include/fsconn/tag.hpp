#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "fsconn/error.hpp"

namespace fsconn {

inline constexpr char kTagSeparator = '*';

/// A parameter tag: a sorted multiset of atomic labels.
///
/// A single parameter `a` is the tag {a}; the product of `a` and `b` is {a,b}. Because the
/// labels are kept sorted, the tags of A×B and B×A, and of (A×B)×C and A×(B×C), are
/// literally equal. The text form joins the labels with '*', so "b1*a1" reads as {a1,b1}
/// and prints back as "a1*b1".
class ParamTag {
 public:
  explicit ParamTag(std::string_view label) : ParamTag(std::vector<std::string>{std::string(label)}) {}

  explicit ParamTag(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("parameter tag needs at least one label");
    for (const auto& l : labels_) validate_label(l);
    std::sort(labels_.begin(), labels_.end());
    rebuild_key();
  }

  ParamTag(std::initializer_list<std::string_view> labels)
      : ParamTag(std::vector<std::string>(labels.begin(), labels.end())) {}

  /// Parses the '*'-joined text form.
  static ParamTag parse(std::string_view text) {
    std::vector<std::string> labels;
    std::size_t pos = 0;
    while (true) {
      auto next = text.find(kTagSeparator, pos);
      labels.emplace_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    for (const auto& l : labels)
      if (l.empty()) throw ValidationError("empty label in parameter tag '" + std::string(text) + "'");
    return ParamTag(std::move(labels));
  }

  static void validate_label(std::string_view label) {
    if (label.empty()) throw ValidationError("parameter label must not be empty");
    if (label.find(kTagSeparator) != std::string_view::npos)
      throw ValidationError("parameter label '" + std::string(label) + "' contains reserved '*'");
  }

  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& str() const noexcept { return key_; }
  [[nodiscard]] std::size_t arity() const noexcept { return labels_.size(); }

  // Ordered by text form so that in-memory order and serialized order agree.
  friend bool operator==(const ParamTag& a, const ParamTag& b) noexcept { return a.key_ == b.key_; }
  friend std::strong_ordering operator<=>(const ParamTag& a, const ParamTag& b) noexcept {
    return a.key_ <=> b.key_;
  }

 private:
  ParamTag() = default;

  void rebuild_key() {
    key_.clear();
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (i) key_ += kTagSeparator;
      key_ += labels_[i];
    }
  }

  std::vector<std::string> labels_;
  std::string key_;

  friend ParamTag combine_tags(const ParamTag&, const ParamTag&);
};

/// Multiset union of two tags; commutative and associative as plain equality.
inline ParamTag combine_tags(const ParamTag& lhs, const ParamTag& rhs) {
  ParamTag out;
  out.labels_.reserve(lhs.labels_.size() + rhs.labels_.size());
  std::merge(lhs.labels_.begin(), lhs.labels_.end(), rhs.labels_.begin(), rhs.labels_.end(),
             std::back_inserter(out.labels_));
  out.rebuild_key();
  return out;
}

}  // namespace fsconn
