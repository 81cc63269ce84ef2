#include <gtest/gtest.h>

#include <random>

#include "fsconn/tag.hpp"

using fsconn::ParamTag;
using fsconn::combine_tags;

TEST(ParamTag, ProductIsOrderIndependent) {
  const ParamTag a("a"), b("b");
  EXPECT_EQ(combine_tags(a, b), ParamTag({"a", "b"}));
  EXPECT_EQ(combine_tags(b, a), ParamTag({"a", "b"}));
  EXPECT_EQ(combine_tags(b, a).str(), "a*b");
}

TEST(ParamTag, ProductIsAssociative) {
  const ParamTag a("a"), b("b"), c("c");
  EXPECT_EQ(combine_tags(combine_tags(a, b), c), combine_tags(a, combine_tags(b, c)));
  EXPECT_EQ(combine_tags(combine_tags(a, b), c), ParamTag({"a", "b", "c"}));
}

TEST(ParamTag, DuplicatesAreKept) {
  const auto aa = combine_tags(ParamTag("a"), ParamTag("a"));
  EXPECT_EQ(aa.labels(), (std::vector<std::string>{"a", "a"}));
  EXPECT_EQ(aa.str(), "a*a");
  EXPECT_NE(aa, ParamTag("a"));
}

TEST(ParamTag, ParseCanonicalises) {
  EXPECT_EQ(ParamTag::parse("b1*a1").str(), "a1*b1");
  EXPECT_EQ(ParamTag::parse("a1"), ParamTag("a1"));
  EXPECT_THROW(ParamTag::parse("a1**b1"), fsconn::ValidationError);
  EXPECT_THROW(ParamTag::parse(""), fsconn::ValidationError);
  EXPECT_THROW(ParamTag("a*b"), fsconn::ValidationError);
}

TEST(ParamTag, OrderFollowsTextForm) {
  EXPECT_LT(ParamTag({"a1", "b1"}), ParamTag({"a2", "b1"}));
  EXPECT_LT(ParamTag("a!"), ParamTag({"a", "b"}));  // '!' sorts before '*'
}

TEST(ParamTag, CommutativeAndAssociativeOnRandomTags) {
  std::mt19937_64 rng(7);
  auto random_tag = [&] {
    std::vector<std::string> labels;
    const auto n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
    return ParamTag(labels);
  };
  for (int i = 0; i < 200; ++i) {
    const auto x = random_tag(), y = random_tag(), z = random_tag();
    ASSERT_EQ(combine_tags(x, y), combine_tags(y, x));
    ASSERT_EQ(combine_tags(combine_tags(x, y), z), combine_tags(x, combine_tags(y, z)));
    ASSERT_EQ(combine_tags(x, y).arity(), x.arity() + y.arity());
  }
}
