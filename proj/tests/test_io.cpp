#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "fsconn/io.hpp"
#include "oracles.hpp"

using namespace fsconn;

namespace {

std::string validation_message(std::string_view doc) {
  try {
    parse_fss(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "<no error>";
}

struct TempDir {
  TempDir() : path(std::filesystem::temp_directory_path() / ("fsconn_io_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::filesystem::path path;
};

}  // namespace

TEST(LoadFss, Basic) {
  const auto s = parse_fss(R"({"universe":["u1","u2"],"parameters":{"a1":{"u1":0.3,"u2":0.7}}})");
  EXPECT_EQ(s.parameter_count(), 1u);
  EXPECT_EQ(s.at(ParamTag("a1")).memberships(), (std::vector<double>{0.3, 0.7}));
}

TEST(LoadFss, ValidationPaths) {
  EXPECT_NE(validation_message(R"({"universe":["u1","u2"],"parameters":{"a1":{"u1":0.3,"u2":1.2}}})")
                .find("parameters.a1.u2"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1","u2"],"parameters":{"a1":{"u1":0.3}}})")
                .find("parameters.a1.u2: missing membership"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1"],"parameters":{"a1":{"u1":0.3,"u9":0.1}}})")
                .find("parameters.a1.u9"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1"],"parameters":{"a1":{"u1":"high"}}})").find("number"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1","u1"],"parameters":{"a1":{"u1":0.3}}})").find("universe"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1"],"parameters":{"a1*b1":{"u1":0.3},"b1*a1":{"u1":0.3}}})")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1"],"parameters":{}})").find("parameters"), std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1"]})").find("parameters: missing"), std::string::npos);
  EXPECT_NE(validation_message("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(validation_message(R"({"universe":["u1"],"parameters":{"a1":{"u1":0.3}},"extra":1})").find("extra"),
            std::string::npos);
}

TEST(LoadFss, ProductTagsCanonicalise) {
  const auto s = parse_fss(R"({"universe":["u1"],"parameters":{"b1*a1":{"u1":0.5}}})");
  EXPECT_EQ(s.assignments().begin()->first, ParamTag({"a1", "b1"}));
  EXPECT_NE(dump_fss(s).find("\"a1*b1\""), std::string::npos);
}

TEST(SaveFss, DeterministicLayout) {
  const Universe u{"u2", "u1"};
  const auto s = make_fuzzy_soft_set(
      u, {{ParamTag({"a2", "b1"}), {0.5, 1.0}}, {ParamTag({"a1", "b1"}), {0.25, 0.0}}});
  const auto text = dump_fss(s);
  EXPECT_LT(text.find("a1*b1"), text.find("a2*b1"));
  EXPECT_LT(text.find("\"u2\""), text.find("\"u1\""));
  EXPECT_NE(text.find("0.5"), std::string::npos);
  EXPECT_EQ(text.find("0.50"), std::string::npos);
  EXPECT_EQ(dump_fss(parse_fss(text)), text);
}

TEST(SaveFss, RoundTripIsExact) {
  TempDir dir;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto u = oracle::random_universe(rng, 8);
    auto s = oracle::random_fss(rng, u, 1 + rng() % 4, "p");
    // Include decimal inputs that are not lattice points.
    if (i % 3 == 0) s = complement_fss(s);
    const auto path = dir.path / ("s" + std::to_string(i) + ".fss");
    save_fss(s, path);
    ASSERT_EQ(load_fss(path), s) << i;
  }
}

TEST(LoadFss, MissingFile) {
  EXPECT_THROW(load_fss("/nonexistent/definitely/missing.fss"), IoError);
  EXPECT_THROW(save_fss(parse_fss(R"({"universe":["u"],"parameters":{"a":{"u":0}}})"), "/nonexistent/dir/x.fss"),
               IoError);
}
