#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fsconn/error.hpp"
#include "fsconn/lifted.hpp"
#include "fsconn/scalar.hpp"

// Grid-and-sample falsification of connective axioms. A passing report means no violation
// was found at the probed points, not that the axiom holds on all of [0,1].

namespace fsconn {

struct CheckConfig {
  int grid_steps{64};  // grid is {k / grid_steps : k = 0..grid_steps}
  std::size_t random_samples{10000};
  double tolerance{1e-9};
  std::uint64_t seed{0x5EED};

  void validate() const {
    if (grid_steps < 2) throw UsageError("grid must have at least 2 steps");
    if (!(tolerance > 0.0)) throw UsageError("tolerance must be positive");
  }

  [[nodiscard]] std::vector<double> grid() const {
    std::vector<double> g(static_cast<std::size_t>(grid_steps) + 1);
    for (int k = 0; k <= grid_steps; ++k) g[k] = static_cast<double>(k) / grid_steps;
    return g;
  }
};

/// Arguments at which an axiom failed, with what was computed and what was required.
struct Witness {
  std::vector<double> args;
  std::string label;  // parameter tag, negations only
  double got{0.0};
  double want{0.0};
  std::string relation;  // "=", "<=", ">=", or "in [0,1]"
};

struct AxiomResult {
  std::string id;  // "codomain", "i" .. "v"
  std::string statement;
  std::size_t points_checked{0};
  std::size_t violations{0};
  std::optional<Witness> witness;  // first violation in grid order, then sample order

  [[nodiscard]] bool passed() const noexcept { return violations == 0; }
};

struct AxiomReport {
  ConnectiveKind kind{ConnectiveKind::unclassified};
  std::string candidate;
  CheckConfig config;
  std::vector<AxiomResult> axioms;

  [[nodiscard]] bool passed() const noexcept {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed(); });
  }

  [[nodiscard]] const AxiomResult& axiom(std::string_view id) const {
    for (const auto& a : axioms)
      if (a.id == id) return a;
    throw UsageError("no axiom '" + std::string(id) + "' in report");
  }
};

namespace detail {

class AxiomTally {
 public:
  AxiomTally(std::string id, std::string statement, double tol) : tol_(tol) {
    result_.id = std::move(id);
    result_.statement = std::move(statement);
  }

  void equal(std::vector<double> args, double got, double want, std::string label = {}) {
    record(std::fabs(got - want) <= tol_, std::move(args), got, want, "=", std::move(label));
  }
  void at_most(std::vector<double> args, double got, double bound, std::string label = {}) {
    record(got <= bound + tol_, std::move(args), got, bound, "<=", std::move(label));
  }
  void at_least(std::vector<double> args, double got, double bound, std::string label = {}) {
    record(got >= bound - tol_, std::move(args), got, bound, ">=", std::move(label));
  }
  void in_unit(std::vector<double> args, double got, std::string label = {}) {
    const bool ok = got >= -kCodomainSlack && got <= 1.0 + kCodomainSlack;
    record(ok, std::move(args), got, got < 0.0 ? 0.0 : 1.0, "in [0,1]", std::move(label));
  }

  AxiomResult take() { return std::move(result_); }

 private:
  void record(bool ok, std::vector<double> args, double got, double want, const char* rel, std::string label) {
    ++result_.points_checked;
    if (ok) return;
    if (result_.violations++ == 0) result_.witness = Witness{std::move(args), std::move(label), got, want, rel};
  }

  double tol_;
  AxiomResult result_;
};

// Evaluation errors are rethrown with the point that triggered them.
inline double call(const ScalarConnective& f, double x, std::optional<double> y = std::nullopt) {
  try {
    return y ? f(x, *y) : f(x);
  } catch (const Error& e) {
    std::string at = "(" + format_number(x) + (y ? ", " + format_number(*y) : std::string()) + ")";
    throw EvalError(std::string(e.what()) + " while evaluating '" + f.name() + "' at " + at, e.span());
  }
}

struct Sampler {
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double operator()() { return dist(rng); }
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> dist{0.0, 1.0};
};

// Shared by t-norms and t-conorms; only the neutral element differs.
inline AxiomReport check_monoid(const ScalarConnective& f, const CheckConfig& cfg, ConnectiveKind kind,
                                double neutral) {
  cfg.validate();
  if (f.arity() != 2) throw ArityError("'" + f.name() + "' must be binary");
  const auto g = cfg.grid();
  const std::size_t n = g.size();
  const double tol = cfg.tolerance;
  Sampler sample(cfg.seed);

  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = call(f, g[i], g[j]);
  auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

  const std::string e = neutral == 1.0 ? "1" : "0";
  AxiomTally codomain("codomain", "f(x, y) lies in [0,1]", tol);
  AxiomTally left("i", "f(" + e + ", y) = y", tol);
  AxiomTally right("ii", "f(x, " + e + ") = x", tol);
  AxiomTally comm("iii", "f(x, y) = f(y, x)", tol);
  AxiomTally assoc("iv", "f(x, f(y, z)) = f(f(x, y), z)", tol);
  AxiomTally mono("v", "x1 <= x2 and y1 <= y2 imply f(x1, y1) <= f(x2, y2)", tol);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) codomain.in_unit({g[i], g[j]}, at(i, j));
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double x = sample(), y = sample();
    codomain.in_unit({x, y}, call(f, x, y));
  }

  for (std::size_t j = 0; j < n; ++j) left.equal({neutral, g[j]}, call(f, neutral, g[j]), g[j]);
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double y = sample();
    left.equal({neutral, y}, call(f, neutral, y), y);
  }
  for (std::size_t i = 0; i < n; ++i) right.equal({g[i], neutral}, call(f, g[i], neutral), g[i]);
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double x = sample();
    right.equal({x, neutral}, call(f, x, neutral), x);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) comm.equal({g[i], g[j]}, at(i, j), at(j, i));
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double x = sample(), y = sample();
    comm.equal({x, y}, call(f, x, y), call(f, y, x));
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        assoc.equal({g[i], g[j], g[k]}, call(f, g[i], at(j, k)), call(f, at(i, j), g[k]));
  for (std::size_t s = 0; s < cfg.random_samples; ++s) {
    const double x = sample(), y = sample(), z = sample();
    assoc.equal({x, y, z}, call(f, x, call(f, y, z)), call(f, call(f, x, y), z));
  }

  // Adjacent grid steps along each axis imply the joint property on the grid.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i + 1 < n) mono.at_most({g[i], g[j], g[i + 1], g[j]}, at(i, j), at(i + 1, j));
      if (j + 1 < n) mono.at_most({g[i], g[j], g[i], g[j + 1]}, at(i, j), at(i, j + 1));
    }
  for (std::size_t s = 0; s < cfg.random_samples; ++s) {
    double x1 = sample(), x2 = sample(), y1 = sample(), y2 = sample();
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    mono.at_most({x1, y1, x2, y2}, call(f, x1, y1), call(f, x2, y2));
  }

  AxiomReport report{kind, f.name(), cfg, {}};
  for (auto* t : {&codomain, &left, &right, &comm, &assoc, &mono}) report.axioms.push_back(t->take());
  return report;
}

}  // namespace detail

/// Boundary with 1, commutativity, associativity (on the grid cube) and monotonicity.
inline AxiomReport check_tnorm_axioms(const ScalarConnective& candidate, const CheckConfig& cfg = {}) {
  return detail::check_monoid(candidate, cfg, ConnectiveKind::tnorm, 1.0);
}

/// Same as the t-norm check with 0 as the neutral element.
inline AxiomReport check_tconorm_axioms(const ScalarConnective& candidate, const CheckConfig& cfg = {}) {
  return detail::check_monoid(candidate, cfg, ConnectiveKind::tconorm, 0.0);
}

/// Checks n(1) = 0, n(0) = 1, antitonicity and involution for every tag in `tags`.
inline AxiomReport check_negation_axioms(const LiftedConnective& negation, std::span<const ParamTag> tags,
                                         const CheckConfig& cfg = {}) {
  cfg.validate();
  if (negation.kind() != LiftedKind::negation) throw ArityError("expected a negation");
  if (tags.empty()) throw ValidationError("negation check needs at least one parameter");
  const auto g = cfg.grid();
  const double tol = cfg.tolerance;
  detail::Sampler sample(cfg.seed);

  detail::AxiomTally codomain("codomain", "n(x) lies in [0,1]", tol);
  detail::AxiomTally bounds("i", "n(1) = 0 and n(0) = 1", tol);
  detail::AxiomTally anti("ii", "x <= y implies n(x) >= n(y)", tol);
  detail::AxiomTally invol("iii", "n(n(x)) = x", tol);

  std::string name;
  for (const auto& tag : tags) {
    const auto& n = negation.negation_for(tag);
    const std::string& label = tag.str();
    if (!name.empty()) name += ", ";
    name += label + ": " + n.name();

    std::vector<double> values(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) values[i] = detail::call(n, g[i]);

    for (std::size_t i = 0; i < g.size(); ++i) codomain.in_unit({g[i]}, values[i], label);
    for (std::size_t k = 0; k < cfg.random_samples; ++k) {
      const double x = sample();
      codomain.in_unit({x}, detail::call(n, x), label);
    }

    bounds.equal({1.0}, values.back(), 0.0, label);
    bounds.equal({0.0}, values.front(), 1.0, label);

    for (std::size_t i = 0; i + 1 < g.size(); ++i) anti.at_least({g[i], g[i + 1]}, values[i], values[i + 1], label);
    for (std::size_t k = 0; k < cfg.random_samples; ++k) {
      double x = sample(), y = sample();
      if (x > y) std::swap(x, y);
      anti.at_least({x, y}, detail::call(n, x), detail::call(n, y), label);
    }

    for (std::size_t i = 0; i < g.size(); ++i) invol.equal({g[i]}, detail::call(n, values[i]), g[i], label);
    for (std::size_t k = 0; k < cfg.random_samples; ++k) {
      const double x = sample();
      invol.equal({x}, detail::call(n, detail::call(n, x)), x, label);
    }
  }

  AxiomReport report{ConnectiveKind::negation, name, cfg, {}};
  for (auto* t : {&codomain, &bounds, &anti, &invol}) report.axioms.push_back(t->take());
  return report;
}

inline AxiomReport check_negation_axioms(const ScalarConnective& negation, std::span<const ParamTag> tags,
                                         const CheckConfig& cfg = {}) {
  return check_negation_axioms(lift_negation(negation), tags, cfg);
}

/// Antitone in x, monotone in y, h(1, y) = y, h(0, y) = 1, and the exchange law on the grid cube.
inline AxiomReport check_implication_axioms(const ScalarConnective& h, const CheckConfig& cfg = {}) {
  using detail::call;
  cfg.validate();
  if (h.arity() != 2) throw ArityError("'" + h.name() + "' must be binary");
  const auto g = cfg.grid();
  const std::size_t n = g.size();
  const double tol = cfg.tolerance;
  detail::Sampler sample(cfg.seed);

  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = call(h, g[i], g[j]);
  auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

  detail::AxiomTally codomain("codomain", "h(x, y) lies in [0,1]", tol);
  detail::AxiomTally anti("i", "x <= z implies h(x, y) >= h(z, y)", tol);
  detail::AxiomTally mono("ii", "y <= z implies h(x, y) <= h(x, z)", tol);
  detail::AxiomTally one("iii", "h(1, y) = y", tol);
  detail::AxiomTally zero("iv", "h(0, y) = 1", tol);
  detail::AxiomTally exch("v", "h(x, h(y, z)) = h(y, h(x, z))", tol);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) codomain.in_unit({g[i], g[j]}, at(i, j));
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double x = sample(), y = sample();
    codomain.in_unit({x, y}, call(h, x, y));
  }

  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) anti.at_least({g[i], g[j], g[i + 1], g[j]}, at(i, j), at(i + 1, j));
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    double x = sample(), z = sample();
    const double y = sample();
    if (x > z) std::swap(x, z);
    anti.at_least({x, y, z, y}, call(h, x, y), call(h, z, y));
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) mono.at_most({g[i], g[j], g[i], g[j + 1]}, at(i, j), at(i, j + 1));
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double x = sample();
    double y = sample(), z = sample();
    if (y > z) std::swap(y, z);
    mono.at_most({x, y, x, z}, call(h, x, y), call(h, x, z));
  }

  for (std::size_t j = 0; j < n; ++j) {
    one.equal({1.0, g[j]}, at(n - 1, j), g[j]);
    zero.equal({0.0, g[j]}, at(0, j), 1.0);
  }
  for (std::size_t k = 0; k < cfg.random_samples; ++k) {
    const double y = sample();
    one.equal({1.0, y}, call(h, 1.0, y), y);
    zero.equal({0.0, y}, call(h, 0.0, y), 1.0);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        exch.equal({g[i], g[j], g[k]}, call(h, g[i], at(j, k)), call(h, g[j], at(i, k)));
  for (std::size_t s = 0; s < cfg.random_samples; ++s) {
    const double x = sample(), y = sample(), z = sample();
    exch.equal({x, y, z}, call(h, x, call(h, y, z)), call(h, y, call(h, x, z)));
  }

  AxiomReport report{ConnectiveKind::implication, h.name(), cfg, {}};
  for (auto* t : {&codomain, &anti, &mono, &one, &zero, &exch}) report.axioms.push_back(t->take());
  return report;
}

// ---------------------------------------------------------------------------------------------
// Equilibrium points
// ---------------------------------------------------------------------------------------------

inline constexpr double kBisectionWidth = 1e-12;

struct EquilibriumPoint {
  ParamTag tag;
  double value;     // crossing of n(x) - x
  double residual;  // |n(value) - value|
  bool is_equilibrium;
};

struct EquilibriumResult {
  std::vector<EquilibriumPoint> points;  // one candidate per tag

  [[nodiscard]] std::size_t count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const auto& p) { return p.is_equilibrium; }));
  }
};

/// Bisection on n(x) - x for each tag. An antitone negation crosses the diagonal at most
/// once, so each tag contributes at most one equilibrium.
inline EquilibriumResult find_equilibria(const LiftedConnective& negation, std::span<const ParamTag> tags,
                                         const CheckConfig& cfg = {}) {
  cfg.validate();
  EquilibriumResult out;
  for (const auto& tag : tags) {
    const auto& n = negation.negation_for(tag);
    auto d = [&](double x) { return detail::call(n, x) - x; };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > kBisectionWidth) {
      const double mid = lo + (hi - lo) / 2;
      const double dm = d(mid);
      if (dm == 0.0) {
        lo = hi = mid;
        break;
      }
      (dm > 0.0 ? lo : hi) = mid;
    }
    const double x = lo + (hi - lo) / 2;
    const double residual = std::fabs(d(x));
    out.points.push_back({tag, x, residual, residual <= cfg.tolerance});
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Idempotent, nilpotent and zero-divisor elements
// ---------------------------------------------------------------------------------------------

struct ZeroDivisor {
  double element;
  double witness;          // smallest positive probe point y with f(element, y) = 0
  bool nilpotent{false};   // f(element, element) = 0
};

struct ClassificationReport {
  std::string candidate;
  std::vector<double> points;
  std::vector<double> idempotents;
  std::vector<double> nilpotents;
  std::vector<ZeroDivisor> zero_divisors;

  [[nodiscard]] static bool contains(const std::vector<double>& v, double x) {
    return std::any_of(v.begin(), v.end(), [&](double p) { return p == x; });
  }
  [[nodiscard]] bool is_idempotent(double x) const { return contains(idempotents, x); }
  [[nodiscard]] bool is_nilpotent(double x) const { return contains(nilpotents, x); }
  [[nodiscard]] const ZeroDivisor* zero_divisor(double x) const {
    for (const auto& z : zero_divisors)
      if (z.element == x) return &z;
    return nullptr;
  }
};

/// Scans the grid, plus any `extra_points`, for idempotent, nilpotent and zero-divisor elements.
inline ClassificationReport classify_elements(const ScalarConnective& t, const CheckConfig& cfg = {},
                                              std::span<const double> extra_points = {}) {
  cfg.validate();
  if (t.arity() != 2) throw ArityError("'" + t.name() + "' must be binary");
  const double tol = cfg.tolerance;

  ClassificationReport r;
  r.candidate = t.name();
  r.points = cfg.grid();
  for (double p : extra_points) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probe point " + format_number(p) + " outside [0,1]");
    r.points.push_back(p);
  }
  std::sort(r.points.begin(), r.points.end());
  r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());

  for (double x : r.points) {
    const double self = detail::call(t, x, x);
    if (std::fabs(self - x) <= tol) r.idempotents.push_back(x);
    const bool nil = self <= tol;
    if (nil) r.nilpotents.push_back(x);
    if (x <= 0.0) continue;
    for (double y : r.points) {
      if (y <= 0.0) continue;
      if (detail::call(t, x, y) <= tol) {
        r.zero_divisors.push_back({x, y, nil});
        break;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Continuity
// ---------------------------------------------------------------------------------------------

/// Largest change between neighbouring points of a fine grid. A heuristic only: a finite
/// scan can suggest a discontinuity but can never prove continuity.
struct ContinuityEstimate {
  int fine_steps{0};
  double spacing{0.0};
  double max_jump{0.0};
  std::vector<double> from;
  std::vector<double> to;
  double bound{0.0};      // jump expected from a 1-Lipschitz function per argument
  double threshold{0.0};  // 10 × bound
  bool suspected_discontinuity{false};
};

inline ContinuityEstimate continuity_probe(const ScalarConnective& f, const CheckConfig& cfg = {}) {
  cfg.validate();
  ContinuityEstimate est;
  est.fine_steps = 4 * cfg.grid_steps;
  est.spacing = 1.0 / est.fine_steps;
  const int m = est.fine_steps;
  auto pt = [&](int k) { return static_cast<double>(k) / m; };

  auto consider = [&](std::vector<double> a, std::vector<double> b, double fa, double fb) {
    const double jump = std::fabs(fa - fb);
    if (jump > est.max_jump) {
      est.max_jump = jump;
      est.from = std::move(a);
      est.to = std::move(b);
    }
  };

  if (f.arity() == 1) {
    for (int i = 0; i < m; ++i) consider({pt(i)}, {pt(i + 1)}, detail::call(f, pt(i)), detail::call(f, pt(i + 1)));
    est.bound = est.spacing;
  } else {
    std::vector<double> row(static_cast<std::size_t>(m + 1) * (m + 1));
    auto at = [&](int i, int j) -> double& { return row[static_cast<std::size_t>(i) * (m + 1) + j]; };
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) at(i, j) = detail::call(f, pt(i), pt(j));
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) {
        if (i < m) consider({pt(i), pt(j)}, {pt(i + 1), pt(j)}, at(i, j), at(i + 1, j));
        if (j < m) consider({pt(i), pt(j)}, {pt(i), pt(j + 1)}, at(i, j), at(i, j + 1));
        if (i < m && j < m) consider({pt(i), pt(j)}, {pt(i + 1), pt(j + 1)}, at(i, j), at(i + 1, j + 1));
      }
    est.bound = 2 * est.spacing;
  }
  est.threshold = 10 * est.bound;
  est.suspected_discontinuity = est.max_jump > est.threshold;
  return est;
}

}  // namespace fsconn
