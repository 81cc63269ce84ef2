#pragma once

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "fsconn/analysis.hpp"
#include "fsconn/error.hpp"
#include "fsconn/io.hpp"
#include "fsconn/lifted.hpp"
#include "fsconn/scalar.hpp"
#include "fsconn/script.hpp"

// Command-line front end. Exit codes: 0 success, 1 axiom violation (or a classification
// forbidden by --expect-none), 2 usage or parse error, 3 I/O or validation error.

namespace fsconn {

namespace cli_detail {

using ojson = nlohmann::ordered_json;

// Enough digits for a witness to re-evaluate to the same double.
inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string tuple(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + g17(v[i]);
  return s + ")";
}

inline std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<ParamTag> parse_tags(const std::string& csv) {
  std::vector<ParamTag> tags;
  for (const auto& part : split_top_level(csv, ','))
    if (!part.empty()) tags.push_back(ParamTag::parse(part));
  if (tags.empty()) throw UsageError("--params needs at least one parameter");
  return tags;
}

// A builtin name (including sugeno(λ)) or an expression in x, y.
inline ScalarConnective connective_from_text(const std::string& text, int arity, ConnectiveKind kind) {
  if (find_builtin(text) || text.starts_with("sugeno(")) {
    auto c = builtin(text);
    if (c.arity() != arity)
      throw ArityError("'" + text + "' is " + (c.arity() == 1 ? "unary" : "binary") + ", expected " +
                       (arity == 1 ? "unary" : "binary"));
    return c;
  }
  return expression_connective(text, arity, kind);
}

struct Candidate {
  std::string expr;
  std::string builtin_name;

  void add_to(CLI::App* app) {
    auto* e = app->add_option("--expr", expr, "connective as an expression in x (and y)");
    auto* b = app->add_option("--builtin", builtin_name, "builtin connective name");
    e->excludes(b);
  }

  [[nodiscard]] bool given() const { return !expr.empty() || !builtin_name.empty(); }

  [[nodiscard]] ScalarConnective resolve(int arity, ConnectiveKind kind) const {
    if (!builtin_name.empty()) {
      auto c = builtin(builtin_name);
      if (c.arity() != arity)
        throw ArityError("builtin '" + builtin_name + "' has the wrong arity for this command");
      return c;
    }
    if (expr.empty()) throw UsageError("one of --expr or --builtin is required");
    return expression_connective(expr, arity, kind);
  }
};

inline ojson witness_json(const Witness& w) {
  ojson j;
  j["args"] = w.args;
  if (!w.label.empty()) j["parameter"] = w.label;
  j["got"] = w.got;
  j["relation"] = w.relation;
  j["want"] = w.want;
  return j;
}

inline ojson config_json(const CheckConfig& c) {
  return ojson{{"grid", c.grid_steps}, {"samples", c.random_samples}, {"tolerance", c.tolerance}, {"seed", c.seed}};
}

inline ojson report_json(const AxiomReport& r) {
  ojson j;
  j["command"] = "check";
  j["kind"] = std::string(to_string(r.kind));
  j["candidate"] = r.candidate;
  j["config"] = config_json(r.config);
  j["axioms"] = ojson::array();
  for (const auto& a : r.axioms) {
    ojson ja;
    ja["axiom"] = a.id;
    ja["statement"] = a.statement;
    ja["verdict"] = a.passed() ? "pass" : "fail";
    ja["points"] = a.points_checked;
    ja["violations"] = a.violations;
    if (a.witness) ja["witness"] = witness_json(*a.witness);
    j["axioms"].push_back(std::move(ja));
  }
  j["verdict"] = r.passed() ? "pass" : "fail";
  return j;
}

inline void report_text(const AxiomReport& r, std::ostream& out) {
  out << "check " << to_string(r.kind) << ": " << r.candidate << "\n";
  out << "grid " << r.config.grid_steps << ", samples " << r.config.random_samples << ", tolerance "
      << format_number(r.config.tolerance) << ", seed " << r.config.seed << "\n";
  for (const auto& a : r.axioms) {
    out << "  " << (a.passed() ? "pass" : "FAIL") << "  (" << a.id << ") " << a.statement;
    if (a.witness) {
      const auto& w = *a.witness;
      out << "\n        " << a.violations << " of " << a.points_checked << " points violate; witness "
          << (w.label.empty() ? "" : w.label + " ") << tuple(w.args) << ": got " << g17(w.got) << ", want "
          << (w.relation == "=" ? "" : w.relation + " ") << g17(w.want);
    }
    out << "\n";
  }
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
}

}  // namespace cli_detail

/// Runs one command-line invocation. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"Fuzzy soft connectives: axiom checks, classification, set algebra", "fsconn"};
  app.require_subcommand(1);

  CheckConfig cfg;
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  // check
  auto* check = app.add_subcommand("check", "verify the axioms of a connective kind");
  std::string kind;
  Candidate check_candidate;
  std::string check_params = "a";
  check->add_option("--kind", kind, "tnorm, tconorm, negation or implication")
      ->required()
      ->check(CLI::IsMember({"tnorm", "tconorm", "negation", "implication"}));
  check_candidate.add_to(check);
  check->add_option("--grid", cfg.grid_steps, "grid steps")->check(CLI::Range(2, 100000));
  check->add_option("--samples", cfg.random_samples, "random samples per axiom");
  check->add_option("--tol", cfg.tolerance, "absolute tolerance");
  check->add_option("--seed", cfg.seed, "sampler seed");
  check->add_option("--params", check_params, "parameters for negation checks, comma separated");
  add_format(check);

  // classify
  auto* classify = app.add_subcommand("classify", "find idempotent, nilpotent and zero-divisor elements");
  Candidate classify_candidate;
  std::vector<double> extra_points;
  std::string expect_none;
  classify_candidate.add_to(classify);
  classify->add_option("--grid", cfg.grid_steps, "grid steps")->check(CLI::Range(2, 100000));
  classify->add_option("--tol", cfg.tolerance, "absolute tolerance");
  classify->add_option("--points", extra_points, "extra probe points")->delimiter(',');
  classify->add_option("--expect-none", expect_none, "exit 1 if any are found")
      ->check(CLI::IsMember({"zero-divisors", "nilpotents"}));
  add_format(classify);

  // equilibrium
  auto* equilibrium = app.add_subcommand("equilibrium", "locate equilibrium points of a negation");
  Candidate eq_candidate;
  std::string family;
  std::string eq_params;
  eq_candidate.add_to(equilibrium);
  equilibrium->add_option("--family", family, "per-parameter negations, LABEL=EXPR,...");
  equilibrium->add_option("--params", eq_params, "parameters, comma separated")->required();
  equilibrium->add_option("--tol", cfg.tolerance, "absolute tolerance");
  add_format(equilibrium);

  // apply
  auto* apply = app.add_subcommand("apply", "combine two fuzzy soft sets");
  std::string op;
  std::vector<std::string> apply_args;
  std::string output;
  apply->add_option("--op", op, "union, intersect, or connective followed by NAME-or-EXPR")
      ->required()
      ->check(CLI::IsMember({"union", "intersect", "connective"}));
  apply->add_option("inputs", apply_args, "[CONNECTIVE] A.fss B.fss")->required()->expected(2, 3);
  apply->add_option("-o,--output", output, "output file")->required();

  // dual
  auto* dual = app.add_subcommand("dual", "tabulate 1 - f(1 - x, 1 - y)");
  Candidate dual_candidate;
  int table = 5;
  dual_candidate.add_to(dual);
  dual->add_option("--table", table, "table size N (N x N points)")->check(CLI::Range(2, 1000));
  add_format(dual);

  // eval
  auto* eval = app.add_subcommand("eval", "run a set-algebra script");
  std::string script_path;
  std::vector<std::string> binds;
  eval->add_option("script", script_path, "script file")->required();
  eval->add_option("--bind", binds, "NAME=FILE.fss");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fsconn: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  }

  const bool json = format == "json";
  try {
    if (check->parsed()) {
      const auto k = kind == "tnorm"     ? ConnectiveKind::tnorm
                     : kind == "tconorm" ? ConnectiveKind::tconorm
                     : kind == "negation" ? ConnectiveKind::negation
                                          : ConnectiveKind::implication;
      const int arity = k == ConnectiveKind::negation ? 1 : 2;
      const auto f = check_candidate.resolve(arity, k);
      cfg.validate();
      AxiomReport r;
      switch (k) {
        case ConnectiveKind::tnorm: r = check_tnorm_axioms(f, cfg); break;
        case ConnectiveKind::tconorm: r = check_tconorm_axioms(f, cfg); break;
        case ConnectiveKind::negation: {
          const auto tags = parse_tags(check_params);
          r = check_negation_axioms(f, tags, cfg);
          break;
        }
        default: r = check_implication_axioms(f, cfg); break;
      }
      if (json)
        out << report_json(r).dump(2) << "\n";
      else
        report_text(r, out);
      return static_cast<int>(r.passed() ? ExitCode::ok : ExitCode::violation);
    }

    if (classify->parsed()) {
      const auto f = classify_candidate.resolve(2, ConnectiveKind::tnorm);
      const auto r = classify_elements(f, cfg, extra_points);
      std::vector<double> nonzero_nil;
      for (double x : r.nilpotents)
        if (x > 0.0) nonzero_nil.push_back(x);
      if (json) {
        ojson j;
        j["command"] = "classify";
        j["candidate"] = r.candidate;
        j["grid"] = cfg.grid_steps;
        j["tolerance"] = cfg.tolerance;
        j["points"] = r.points.size();
        j["idempotents"] = r.idempotents;
        j["nilpotents"] = r.nilpotents;
        j["zero_divisors"] = ojson::array();
        for (const auto& z : r.zero_divisors)
          j["zero_divisors"].push_back(ojson{{"element", z.element}, {"witness", z.witness}, {"nilpotent", z.nilpotent}});
        out << j.dump(2) << "\n";
      } else {
        out << "classify: " << r.candidate << " on " << r.points.size() << " points\n";
        auto list = [&](const char* title, const std::vector<double>& v) {
          out << "  " << title << " (" << v.size() << "):";
          for (double x : v) out << " " << format_number(x);
          out << "\n";
        };
        list("idempotents", r.idempotents);
        list("nilpotents", r.nilpotents);
        out << "  zero divisors (" << r.zero_divisors.size() << "):\n";
        for (const auto& z : r.zero_divisors)
          out << "    " << format_number(z.element) << " with y = " << format_number(z.witness)
              << (z.nilpotent ? " (also nilpotent)" : "") << "\n";
      }
      if ((expect_none == "zero-divisors" && !r.zero_divisors.empty()) ||
          (expect_none == "nilpotents" && !nonzero_nil.empty()))
        return static_cast<int>(ExitCode::violation);
      return 0;
    }

    if (equilibrium->parsed()) {
      const auto tags = parse_tags(eq_params);
      std::optional<LiftedConnective> neg;
      if (!family.empty()) {
        if (eq_candidate.given()) throw UsageError("--family cannot be combined with --expr or --builtin");
        NegationFamily fam;
        for (const auto& entry : split_top_level(family, ',')) {
          const auto eq = entry.find('=');
          if (eq == std::string::npos || eq == 0) throw UsageError("family entry '" + entry + "' is not LABEL=EXPR");
          const auto label = ParamTag::parse(entry.substr(0, eq)).str();
          fam.per_tag.insert_or_assign(label, connective_from_text(entry.substr(eq + 1), 1, ConnectiveKind::negation));
        }
        neg.emplace(lift_negation(std::move(fam)));
      } else {
        neg.emplace(lift_negation(eq_candidate.resolve(1, ConnectiveKind::negation)));
      }
      const auto r = find_equilibria(*neg, tags, cfg);
      if (json) {
        ojson j;
        j["command"] = "equilibrium";
        j["tolerance"] = cfg.tolerance;
        j["points"] = ojson::array();
        for (const auto& p : r.points)
          j["points"].push_back(ojson{{"parameter", p.tag.str()},
                                      {"value", p.value},
                                      {"residual", p.residual},
                                      {"equilibrium", p.is_equilibrium}});
        j["count"] = r.count();
        out << j.dump(2) << "\n";
      } else {
        for (const auto& p : r.points)
          out << p.tag.str() << ": x = " << g17(p.value) << ", residual " << g17(p.residual)
              << (p.is_equilibrium ? "  equilibrium" : "  no equilibrium") << "\n";
        out << r.count() << " equilibrium point(s) over " << tags.size() << " parameter(s)\n";
      }
      return 0;
    }

    if (apply->parsed()) {
      std::optional<ScalarConnective> conn;
      std::size_t first = 0;
      if (op == "connective") {
        if (apply_args.size() != 3) throw UsageError("--op connective needs NAME-or-EXPR followed by two files");
        const auto& conn_text = apply_args[0];
        if (find_builtin(conn_text) || conn_text.starts_with("dual(") || conn_text.starts_with("fn(")) {
          const std::vector<std::string> bound{"A", "B"};
          const auto script = parse_script("R = apply(" + conn_text + ", A, B);", bound);
          conn.emplace(resolve_connective(script.statements.at(0).value.connective.at(0)));
        } else {
          conn.emplace(expression_connective(conn_text, 2));
        }
        first = 1;
      } else if (apply_args.size() != 2) {
        throw UsageError("--op " + op + " takes exactly two files");
      }
      const auto a = load_fss(apply_args[first]);
      const auto b = load_fss(apply_args[first + 1]);
      const auto result = op == "union"       ? union_fss(a, b)
                          : op == "intersect" ? intersect_fss(a, b)
                                              : apply_connective(lift_binary(*conn), a, b);
      save_fss(result, output);
      out << "wrote " << output << " (" << result.parameter_count() << " parameters)\n";
      return 0;
    }

    if (dual->parsed()) {
      const auto f = dual_candidate.resolve(2, ConnectiveKind::unclassified);
      const auto g = dual_of(f);
      std::vector<double> pts(table);
      for (int i = 0; i < table; ++i) pts[i] = static_cast<double>(i) / (table - 1);
      if (json) {
        ojson j;
        j["command"] = "dual";
        j["connective"] = g.name();
        j["kind"] = std::string(to_string(g.kind()));
        j["points"] = pts;
        j["values"] = ojson::array();
        for (double x : pts) {
          ojson row = ojson::array();
          for (double y : pts) row.push_back(g(x, y));
          j["values"].push_back(row);
        }
        out << j.dump(2) << "\n";
      } else {
        out << g.name() << " (" << to_string(g.kind()) << ")\n";
        out << "x\\y";
        for (double y : pts) out << "\t" << format_number(y);
        out << "\n";
        for (double x : pts) {
          out << format_number(x);
          for (double y : pts) out << "\t" << format_number(g(x, y));
          out << "\n";
        }
      }
      return 0;
    }

    if (eval->parsed()) {
      std::map<std::string, FuzzySoftSet> env;
      std::vector<std::string> names;
      for (const auto& b : binds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects NAME=FILE, got '" + b + "'");
        names.push_back(b.substr(0, eq));
        env.insert_or_assign(names.back(), load_fss(b.substr(eq + 1)));
      }
      std::ifstream in(script_path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + script_path + "'");
      std::ostringstream text;
      text << in.rdbuf();
      const auto script = parse_script(text.str(), names);
      const auto result = eval_script(script, std::move(env));
      for (const auto& p : result.printed) out << p;
      return 0;
    }
  } catch (const Error& e) {
    err << "fsconn: " << e.what();
    if (const auto& s = e.span()) err << " (line " << s->line << ", column " << s->column << ")";
    err << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    err << "fsconn: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  }
  return static_cast<int>(ExitCode::usage);
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace fsconn
