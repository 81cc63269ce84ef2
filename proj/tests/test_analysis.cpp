#include <gtest/gtest.h>

#include <cmath>

#include "fsconn/analysis.hpp"
#include "oracles.hpp"

using namespace fsconn;

namespace {

// Re-evaluates a witness from scratch and reports whether it really violates the axiom.
bool witness_violates(const ScalarConnective& f, ConnectiveKind kind, const AxiomResult& a, double tol) {
  const auto& w = *a.witness;
  const auto& p = w.args;
  double got = 0, want = 0;
  if (a.id == "codomain") {
    got = p.size() == 1 ? f(p[0]) : f(p[0], p[1]);
    return got < -kCodomainSlack || got > 1 + kCodomainSlack;
  }
  if (kind == ConnectiveKind::tnorm || kind == ConnectiveKind::tconorm) {
    const double e = kind == ConnectiveKind::tnorm ? 1.0 : 0.0;
    if (a.id == "i") got = f(e, p[1]), want = p[1];
    if (a.id == "ii") got = f(p[0], e), want = p[0];
    if (a.id == "iii") got = f(p[0], p[1]), want = f(p[1], p[0]);
    if (a.id == "iv") got = f(p[0], f(p[1], p[2])), want = f(f(p[0], p[1]), p[2]);
    if (a.id == "v") return p[0] <= p[2] && p[1] <= p[3] && f(p[0], p[1]) > f(p[2], p[3]) + tol;
    return std::fabs(got - want) > tol;
  }
  if (kind == ConnectiveKind::implication) {
    if (a.id == "i") return p[0] <= p[2] && f(p[0], p[1]) < f(p[2], p[3]) - tol;
    if (a.id == "ii") return p[1] <= p[3] && f(p[0], p[1]) > f(p[2], p[3]) + tol;
    if (a.id == "iii") got = f(1, p[1]), want = p[1];
    if (a.id == "iv") got = f(0, p[1]), want = 1;
    if (a.id == "v") got = f(p[0], f(p[1], p[2])), want = f(p[1], f(p[0], p[2]));
    return std::fabs(got - want) > tol;
  }
  if (a.id == "i") return std::fabs(f(p[0]) - (p[0] == 1.0 ? 0.0 : 1.0)) > tol;
  if (a.id == "ii") return p[0] <= p[1] && f(p[0]) < f(p[1]) - tol;
  if (a.id == "iii") return std::fabs(f(f(p[0])) - p[0]) > tol;
  return false;
}

void expect_sound(const ScalarConnective& f, ConnectiveKind kind, const AxiomReport& r) {
  for (const auto& a : r.axioms) {
    if (a.passed()) {
      EXPECT_FALSE(a.witness);
      continue;
    }
    ASSERT_TRUE(a.witness) << a.id;
    EXPECT_TRUE(witness_violates(f, kind, a, r.config.tolerance)) << f.name() << " axiom " << a.id;
  }
}

const std::vector<ParamTag> kOneTag{ParamTag("a")};

}  // namespace

TEST(CheckConfig, Validation) {
  CheckConfig c;
  c.grid_steps = 1;
  EXPECT_THROW(c.validate(), UsageError);
  c.grid_steps = 2;
  c.tolerance = 0;
  EXPECT_THROW(c.validate(), UsageError);
}

TEST(CheckTnorm, BuiltinsAgreeWithOracle) {
  for (const char* name : {"product", "minimum", "lukasiewicz"}) {
    const auto f = builtin(name);
    ASSERT_TRUE(oracle::monoid_holds([&](double x, double y) { return f(x, y); }, 1.0)) << name;
    const auto r = check_tnorm_axioms(f);
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_EQ(r.axioms.size(), 6u);
    EXPECT_EQ(r.axiom("iv").points_checked, 65u * 65 * 65 + 10000);
  }
}

TEST(CheckTnorm, HalfProductFailsBoundary) {
  const auto f = expression_connective("x*y/2", 2);
  const auto r = check_tnorm_axioms(f);
  EXPECT_FALSE(r.passed());
  const auto& i = r.axiom("i");
  ASSERT_FALSE(i.passed());
  // The first grid violation is reported; (1, 1) is a violation too.
  EXPECT_EQ(i.witness->args, (std::vector<double>{1.0, 1.0 / 64}));
  EXPECT_EQ(f(1, 1), 0.5);
  expect_sound(f, ConnectiveKind::tnorm, r);
}

TEST(CheckTnorm, ProbsumIsNotATnorm) {
  const auto f = expression_connective("x+y-x*y", 2);
  const auto r = check_tnorm_axioms(f);
  const auto& i = r.axiom("i");
  ASSERT_FALSE(i.passed());
  EXPECT_EQ(i.witness->args, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(i.witness->got, 1.0);
  EXPECT_EQ(i.witness->want, 0.0);
  EXPECT_EQ(f(1, 0.5), 1.0);
  EXPECT_TRUE(r.axiom("iii").passed());
  expect_sound(f, ConnectiveKind::tnorm, r);
}

TEST(CheckTnorm, NonCommutativeAndNonMonotone) {
  const auto f = expression_connective("x*y*y", 2);
  const auto r = check_tnorm_axioms(f);
  EXPECT_FALSE(r.axiom("iii").passed());
  expect_sound(f, ConnectiveKind::tnorm, r);

  const auto g = expression_connective("x*y*(2 - x*y)*(1 - x*y) + pow(x*y, 3)", 2);
  const auto rg = check_tnorm_axioms(g);
  expect_sound(g, ConnectiveKind::tnorm, rg);

  const auto h = expression_connective("x*y*2", 2);
  const auto rh = check_tnorm_axioms(h);
  EXPECT_FALSE(rh.axiom("codomain").passed());
  expect_sound(h, ConnectiveKind::tnorm, rh);
}

TEST(CheckTnorm, EvaluationErrorsPropagateWithPoint) {
  try {
    check_tnorm_axioms(expression_connective("x/y", 2));
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_NE(std::string(e.what()).find("at (0, 0)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(check_tnorm_axioms(builtin("standard-negation")), ArityError);
}

TEST(CheckTconorm, Builtins) {
  for (const char* name : {"maximum", "probsum", "boundedsum"}) {
    const auto f = builtin(name);
    ASSERT_TRUE(oracle::monoid_holds([&](double x, double y) { return f(x, y); }, 0.0)) << name;
    EXPECT_TRUE(check_tconorm_axioms(f).passed()) << name;
  }
}

TEST(CheckTconorm, ProductFails) {
  const auto f = builtin("product");
  const auto r = check_tconorm_axioms(f);
  const auto& i = r.axiom("i");
  ASSERT_FALSE(i.passed());
  EXPECT_EQ(i.witness->args, (std::vector<double>{0.0, 1.0 / 64}));
  EXPECT_EQ(i.witness->got, 0.0);
  EXPECT_EQ(f(0, 0.5), 0.0);
  expect_sound(f, ConnectiveKind::tconorm, r);
}

TEST(CheckNegation, Builtins) {
  for (const char* name : {"standard-negation", "sugeno(1)", "sugeno(-0.5)", "sugeno(3)"}) {
    const auto n = builtin(name);
    ASSERT_TRUE(oracle::negation_holds([&](double x) { return n(x); })) << name;
    EXPECT_TRUE(check_negation_axioms(n, kOneTag).passed()) << name;
  }
}

TEST(CheckNegation, NonInvolutive) {
  const auto n = expression_connective("1-x*x", 1);
  const auto r = check_negation_axioms(n, kOneTag);
  EXPECT_TRUE(r.axiom("i").passed());
  EXPECT_TRUE(r.axiom("ii").passed());
  const auto& inv = r.axiom("iii");
  ASSERT_FALSE(inv.passed());
  EXPECT_EQ(inv.witness->label, "a");
  EXPECT_EQ(n(n(0.5)), 0.4375);
  expect_sound(n, ConnectiveKind::negation, r);
}

TEST(CheckNegation, FamilyReportsFailingLabel) {
  NegationFamily fam;
  fam.per_tag.emplace("a1", builtin("standard-negation"));
  fam.per_tag.emplace("a2", expression_connective("x", 1));
  const std::vector<ParamTag> tags{ParamTag("a1"), ParamTag("a2")};
  const auto r = check_negation_axioms(lift_negation(fam), tags);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.axiom("i").witness->label, "a2");
  EXPECT_TRUE(r.axiom("iii").passed());
  EXPECT_THROW(check_negation_axioms(builtin("standard-negation"), std::vector<ParamTag>{}), ValidationError);
}

TEST(CheckImplication, Builtins) {
  for (const char* name : {"lukasiewicz-implication", "godel-implication", "kleene-dienes-implication"}) {
    const auto h = builtin(name);
    ASSERT_TRUE(oracle::implication_holds([&](double x, double y) { return h(x, y); })) << name;
    EXPECT_TRUE(check_implication_axioms(h).passed()) << name;
  }
  EXPECT_TRUE(check_implication_axioms(expression_connective("max(1-x,y)", 2)).passed());
}

TEST(CheckImplication, MinimumFails) {
  const auto h = expression_connective("min(x,y)", 2);
  const auto r = check_implication_axioms(h);
  const auto& iv = r.axiom("iv");
  ASSERT_FALSE(iv.passed());
  EXPECT_EQ(iv.witness->args, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(iv.witness->got, 0.0);
  EXPECT_EQ(iv.witness->want, 1.0);
  EXPECT_EQ(h(0, 0.3), 0.0);
  EXPECT_FALSE(r.axiom("i").passed());
  expect_sound(h, ConnectiveKind::implication, r);
}

TEST(CheckImplication, ExchangeFailure) {
  // Reichenbach-like but squared: boundary conditions hold, exchange does not.
  const auto h = expression_connective("1 - x + x*y*y", 2);
  const auto r = check_implication_axioms(h);
  expect_sound(h, ConnectiveKind::implication, r);
}

TEST(Checks, Deterministic) {
  CheckConfig cfg;
  cfg.grid_steps = 16;
  cfg.seed = 99;
  const auto f = expression_connective("x*y*y", 2);
  const auto a = check_tnorm_axioms(f, cfg), b = check_tnorm_axioms(f, cfg);
  ASSERT_EQ(a.axioms.size(), b.axioms.size());
  for (std::size_t i = 0; i < a.axioms.size(); ++i) {
    EXPECT_EQ(a.axioms[i].violations, b.axioms[i].violations);
    EXPECT_EQ(a.axioms[i].witness.has_value(), b.axioms[i].witness.has_value());
    if (a.axioms[i].witness) {
      EXPECT_EQ(a.axioms[i].witness->args, b.axioms[i].witness->args);
    }
  }
}

TEST(Checks, DualOfPassingTnormPassesTconorm) {
  for (const char* name : {"product", "minimum", "lukasiewicz"}) {
    const auto r = check_tconorm_axioms(dual_of(builtin(name)));
    EXPECT_TRUE(r.passed()) << name;
  }
}

TEST(FindEquilibria, StandardNegation) {
  const std::vector<ParamTag> tags{ParamTag("a1"), ParamTag("a2")};
  const auto r = find_equilibria(lift_negation(builtin("standard-negation")), tags);
  ASSERT_EQ(r.points.size(), 2u);
  for (const auto& p : r.points) {
    EXPECT_NEAR(p.value, 0.5, 1e-9);
    EXPECT_TRUE(p.is_equilibrium);
  }
  EXPECT_EQ(r.count(), 2u);
}

TEST(FindEquilibria, SugenoAgainstOracle) {
  const auto n = builtin("sugeno(1)");
  const double expected = oracle::bisect_fixed_point([](double x) { return (1 - x) / (1 + x); });
  ASSERT_NEAR(expected, std::sqrt(2.0) - 1, 1e-15);
  const auto r = find_equilibria(lift_negation(n), kOneTag);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_NEAR(r.points[0].value, expected, 1e-9);
  EXPECT_TRUE(r.points[0].is_equilibrium);
}

TEST(FindEquilibria, FamilyHasOnePerParameter) {
  NegationFamily fam;
  fam.per_tag.emplace("a1", builtin("standard-negation"));
  fam.per_tag.emplace("a2", builtin("sugeno(1)"));
  const std::vector<ParamTag> tags{ParamTag("a1"), ParamTag("a2")};
  const auto r = find_equilibria(lift_negation(fam), tags);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.count(), 2u);
  EXPECT_NEAR(r.points[0].value, 0.5, 1e-9);
  EXPECT_NEAR(r.points[1].value, std::sqrt(2.0) - 1, 1e-9);
}

TEST(FindEquilibria, NoCrossingIsAVerdict) {
  // Constant 1 meets the diagonal only at x = 1.
  const auto r = find_equilibria(lift_negation(expression_connective("1", 1)), kOneTag);
  EXPECT_NEAR(r.points[0].value, 1.0, 1e-9);
  EXPECT_TRUE(r.points[0].is_equilibrium);
  // Strictly below or strictly above the diagonal: no fixed point at all.
  for (const char* src : {"x - 0.5", "x + 0.2"}) {
    const auto none = find_equilibria(lift_negation(expression_connective(src, 1)), kOneTag);
    EXPECT_FALSE(none.points[0].is_equilibrium) << src;
    EXPECT_EQ(none.count(), 0u) << src;
  }
}

TEST(ClassifyElements, Lukasiewicz) {
  const auto f = builtin("lukasiewicz");
  const std::vector<double> extra{0.8, 0.1};
  const auto r = classify_elements(f, {}, extra);
  EXPECT_EQ(r.idempotents, (std::vector<double>{0.0, 1.0}));
  for (double x : r.points) {
    EXPECT_EQ(r.is_nilpotent(x), x <= 0.5) << x;
    EXPECT_EQ(r.zero_divisor(x) != nullptr, x > 0.0 && x < 1.0) << x;
  }
  const auto* z = r.zero_divisor(0.8);
  ASSERT_NE(z, nullptr);
  EXPECT_EQ(f(0.8, z->witness), 0.0);
  EXPECT_FALSE(r.is_nilpotent(0.8));
  EXPECT_NEAR(f(0.8, 0.8), 0.6, 1e-12);
  EXPECT_EQ(f(0.8, 0.1), 0.0);
  for (double x : r.nilpotents)
    if (x > 0) {
      ASSERT_NE(r.zero_divisor(x), nullptr);
      EXPECT_TRUE(r.zero_divisor(x)->nilpotent);
    }
}

TEST(ClassifyElements, MinimumAndProduct) {
  const auto m = classify_elements(builtin("minimum"));
  EXPECT_EQ(m.idempotents.size(), 65u);
  EXPECT_EQ(m.nilpotents, std::vector<double>{0.0});
  EXPECT_TRUE(m.zero_divisors.empty());

  const auto p = classify_elements(builtin("product"));
  EXPECT_EQ(p.idempotents, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(p.nilpotents, std::vector<double>{0.0});
  EXPECT_TRUE(p.zero_divisors.empty());
  EXPECT_THROW(classify_elements(builtin("product"), {}, std::vector<double>{1.5}), ValidationError);
}

TEST(ContinuityProbe, Builtins) {
  CheckConfig cfg;
  for (const char* name : {"product", "minimum", "lukasiewicz", "maximum", "probsum", "boundedsum",
                           "lukasiewicz-implication", "kleene-dienes-implication"}) {
    const auto est = continuity_probe(builtin(name), cfg);
    EXPECT_FALSE(est.suspected_discontinuity) << name;
    EXPECT_LE(est.max_jump, 2.0 / (4 * cfg.grid_steps) + cfg.tolerance) << name;
  }
  const auto godel = continuity_probe(builtin("godel-implication"), cfg);
  EXPECT_TRUE(godel.suspected_discontinuity);
  EXPECT_FALSE(continuity_probe(builtin("standard-negation"), cfg).suspected_discontinuity);
}
