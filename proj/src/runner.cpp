#include "polcal/runner.hpp"

#include <algorithm>
#include <cctype>

#include "polcal/field.hpp"
#include "polcal/taylor.hpp"

namespace polcal {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Scalar parse_literal(const std::string& text, bool float_mode) {
  if (text.empty()) throw SyntaxError(1, {"number"}, "empty coordinate literal");
  Scalar s = Scalar::parse(text);
  if (float_mode && s.is_exact()) return Scalar::real(s.dbl());
  return s;
}

std::vector<Scalar> parse_tuple(const std::string& text, bool float_mode) {
  std::vector<Scalar> coords;
  for (const auto& piece : split(text, ',')) coords.push_back(parse_literal(piece, float_mode));
  return coords;
}

Point parse_point(const std::string& text, bool float_mode) {
  if (text.empty()) throw SyntaxError(1, {"point"}, "missing --point");
  return Point(parse_tuple(text, float_mode));
}

std::vector<Direction> parse_directions(const std::string& text, bool float_mode) {
  std::vector<Direction> dirs;
  if (text.empty()) return dirs;
  for (const auto& piece : split(text, ';')) dirs.push_back(Direction(parse_tuple(piece, float_mode)));
  return dirs;
}

const std::vector<std::string>& default_var_pool() {
  static const std::vector<std::string> pool = {"x", "y", "z", "w"};
  return pool;
}

struct ParsedInputs {
  ScalarField field;
  Point point;
  std::vector<Direction> dirs;
  bool float_mode = false;
  std::vector<std::string> var_names;
};

ParsedInputs parse_inputs(const RunConfig& cfg) {
  const bool float_mode = cfg.mode == "float";
  if (!float_mode && cfg.mode != "exact")
    throw SyntaxError(1, {"exact", "float"}, "unknown mode '" + cfg.mode + "'");
  Point q = parse_point(cfg.point_text, float_mode);
  std::vector<std::string> vars = cfg.var_names;
  if (vars.empty()) {
    const auto& pool = default_var_pool();
    if (q.dimension() > static_cast<int>(pool.size()))
      throw SyntaxError(1, {"--vars"}, "--vars is required for dimension > 4");
    vars.assign(pool.begin(), pool.begin() + q.dimension());
  }
  const int dim = static_cast<int>(vars.size());
  require_same_dimension(dim, q.dimension(), "point");
  if (cfg.fn.empty()) throw SyntaxError(1, {"--fn"}, "missing --fn");
  ScalarField field = ScalarField::parse(cfg.fn, dim, vars);
  if (!float_mode && !field.exactly_evaluable_field())
    throw SyntaxError(1, {"exactly evaluable expression"},
                      "expression is not exactly evaluable; run with --mode float");
  std::vector<Direction> dirs = parse_directions(cfg.dirs_text, float_mode);
  for (const auto& v : dirs) require_same_dimension(v.dimension(), dim, "direction");
  if (!float_mode) {
    bool all_exact = q.all_exact();
    for (const auto& v : dirs) all_exact = all_exact && v.all_exact();
    if (!all_exact)
      throw SyntaxError(1, {"rational literal"}, "decimal coordinate literals require --mode float");
  }
  return {std::move(field), std::move(q), std::move(dirs), float_mode, std::move(vars)};
}

// Polynomial-expressible inputs take the exact engines; everything else
// stays on the sampled/numeric paths.
ScalarField lowered_if_possible(const ScalarField& field) {
  if (field.polynomial_backed()) return field;
  try {
    return ScalarField::from_polynomial(field.to_polynomial());
  } catch (const NotPolynomial&) {
    return field;
  } catch (const DivisionByZero&) {
    return field;
  }
}

RichardsonOptions richardson_from(const RunConfig& cfg) {
  RichardsonOptions opts;
  Scalar s0 = Scalar::parse(cfg.s0_text);
  if (!s0.is_exact() || s0.sign() <= 0)
    throw SyntaxError(1, {"positive rational"}, "--s0 must be a positive rational");
  opts.s0 = s0.rat();
  opts.levels = cfg.levels;
  return opts;
}

Json cmd_polarize(const RunConfig& cfg) {
  ParsedInputs in = parse_inputs(cfg);
  Json doc;
  doc["command"] = "polarize";
  if (cfg.order >= 0 && in.dirs.size() == 1 && cfg.order != 1) {
    // unidirectional stencil: n+1 binomial-weighted terms
    Scalar value = polarize_unidirectional(in.field, in.point, in.dirs[0], cfg.order);
    doc["kernel"] = "unidirectional";
    doc["order"] = cfg.order;
    doc["value"] = to_json(value);
    doc["term_count"] = cfg.order + 1;
    return doc;
  }
  if (cfg.order >= 0 && cfg.order != static_cast<int>(in.dirs.size()))
    throw SyntaxError(1, {"--dirs"}, "--order must match the number of directions (or give one direction)");
  PolarizationReport report = polarize(in.field, in.point, in.dirs, cfg.with_terms);
  doc["kernel"] = "multidirectional";
  doc["order"] = static_cast<int>(in.dirs.size());
  Json body = to_json(report);
  for (auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

Json cmd_derive(const RunConfig& cfg) {
  ParsedInputs in = parse_inputs(cfg);
  std::vector<Direction> dirs = in.dirs;
  if (cfg.order >= 0) {
    if (dirs.size() == 1 && cfg.order != 1) {
      dirs.assign(static_cast<std::size_t>(cfg.order), in.dirs[0]);
    } else if (cfg.order != static_cast<int>(dirs.size())) {
      throw SyntaxError(1, {"--dirs"}, "--order must match the number of directions (or give one direction)");
    }
  }
  DerivativeEstimate est;
  if (!in.float_mode) {
    // exact mode guarantees the polynomial lowering succeeds
    est = derive_exact(in.field.to_polynomial(), in.point, dirs);
  } else {
    est = derive_numeric(in.field, in.point, dirs, richardson_from(cfg));
  }
  Json doc;
  doc["command"] = "derive";
  doc["order"] = static_cast<int>(dirs.size());
  Json body = to_json(est);
  for (auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

TaylorOptions taylor_options_from(const RunConfig& cfg) {
  TaylorOptions opts;
  opts.richardson = richardson_from(cfg);
  Scalar t0 = Scalar::parse(cfg.t0_text);
  if (!t0.is_exact() || t0.sign() <= 0)
    throw SyntaxError(1, {"positive rational"}, "--t0 must be a positive rational");
  opts.t0 = t0.rat();
  opts.shrinks = cfg.shrinks;
  opts.seed = cfg.seed;
  return opts;
}

Json cmd_taylor(const RunConfig& cfg) {
  if (cfg.order < 0) throw SyntaxError(1, {"--order"}, "taylor requires --order n >= 0");
  ParsedInputs in = parse_inputs(cfg);
  TaylorOptions opts = taylor_options_from(cfg);
  ScalarField field = lowered_if_possible(in.field);
  TaylorResult result = taylor_polynomial(field, in.point, cfg.order, opts);
  RemainderProfile profile = remainder_profile(result.remainder, in.point, cfg.order, opts);
  Json doc;
  doc["command"] = "taylor";
  doc["order"] = cfg.order;
  doc["polynomial"] = to_json(result.polynomial);
  doc["remainder_profile"] = to_json(profile);
  return doc;
}

Json cmd_classify(const RunConfig& cfg) {
  if (cfg.order < 0) throw SyntaxError(1, {"--order"}, "classify requires --order n >= 0");
  ParsedInputs in = parse_inputs(cfg);
  SampleOptions opts;
  opts.seed = cfg.seed;
  opts.tolerance = cfg.tolerance;
  ScalarField field = lowered_if_possible(in.field);
  Json doc;
  doc["command"] = "classify";
  doc["order"] = cfg.order;
  doc["homogeneous"] = to_json(is_homogeneous(field, in.point, cfg.order, cfg.samples, opts));
  doc["homogeneous_polynomial"] =
      to_json(is_homogeneous_polynomial(field, in.point, cfg.order, cfg.samples, opts));
  return doc;
}

Json cmd_extract(const RunConfig& cfg) {
  if (cfg.order < 0) throw SyntaxError(1, {"--order"}, "extract requires --order n >= 0");
  ParsedInputs in = parse_inputs(cfg);
  std::vector<ScalarField> components =
      extract_homogeneous_components(lowered_if_possible(in.field), in.point, cfg.order);
  Json list = Json::array();
  for (std::size_t m = 0; m < components.size(); ++m) {
    Json entry;
    entry["degree"] = static_cast<int>(m);
    if (components[m].polynomial_backed()) entry["polynomial"] = to_json(components[m].polynomial());
    else entry["expr"] = print(components[m].ast(), in.var_names);
    list.push_back(std::move(entry));
  }
  Json doc;
  doc["command"] = "extract";
  doc["order"] = cfg.order;
  doc["components"] = std::move(list);
  return doc;
}

Json cmd_rebase(const RunConfig& cfg) {
  ParsedInputs in = parse_inputs(cfg);
  Polynomial p = in.field.to_polynomial();
  Json doc;
  doc["command"] = "rebase";
  doc["polynomial"] = to_json(p.rebase(in.point.exact_coords()));
  return doc;
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct SuiteState {
  Json failures = Json::array();
  long long checks = 0;

  void check_equal(const Scalar& lhs, const Scalar& rhs, Json context) {
    ++checks;
    if (lhs == rhs) return;
    context["lhs"] = to_json(lhs);
    context["rhs"] = to_json(rhs);
    failures.push_back(std::move(context));
  }
};

Json dirs_json(const std::vector<Direction>& dirs) {
  Json arr = Json::array();
  for (const auto& v : dirs) arr.push_back(to_json(v));
  return arr;
}

void suite_iterate(Sampler& rng, long long trials, SuiteState& state) {
  for (long long trial = 0; trial < trials; ++trial) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    ScalarField f = ScalarField::from_polynomial(p);
    Point q = rng.point(d);
    for (int n1 = 0; n1 <= 5; ++n1) {
      for (int n2 = 0; n1 + n2 <= 5; ++n2) {
        std::vector<Direction> dirs;
        for (int i = 0; i < n1 + n2; ++i) dirs.push_back(rng.direction(d));
        ExtendedField inner = polarization_operator(as_extended(f), n2);
        ExtendedField outer = polarization_operator(inner, n1);
        Scalar lhs = outer.eval(q, dirs);
        Scalar rhs = polarize_value(f, q, dirs);
        state.check_equal(lhs, rhs, {{"trial", trial},
                                     {"n1", n1},
                                     {"n2", n2},
                                     {"polynomial", to_json(p)},
                                     {"point", to_json(q)},
                                     {"dirs", dirs_json(dirs)}});
      }
    }
  }
}

void suite_reconstruct(Sampler& rng, long long trials, SuiteState& state) {
  for (long long trial = 0; trial < trials; ++trial) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    ScalarField f = ScalarField::from_polynomial(p);
    Point q = rng.point(d);
    const int n = static_cast<int>(rng.integer(0, 5));
    std::vector<Direction> dirs;
    Direction total = Direction::zero(d);
    for (int i = 0; i < n; ++i) {
      dirs.push_back(rng.direction(d));
      total = total + dirs.back();
    }
    Scalar lhs = reconstruct_increment(f, q, dirs);
    Scalar rhs = f.eval(translate(q, total));
    state.check_equal(lhs, rhs, {{"trial", trial},
                                 {"n", n},
                                 {"polynomial", to_json(p)},
                                 {"point", to_json(q)},
                                 {"dirs", dirs_json(dirs)}});
  }
}

void suite_leibniz(Sampler& rng, long long trials, SuiteState& state) {
  for (long long trial = 0; trial < trials; ++trial) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p1 = rng.polynomial(d, 5);
    Polynomial p2 = rng.polynomial(d, 5);
    ScalarField f = ScalarField::from_polynomial(p1);
    ScalarField f2 = ScalarField::from_polynomial(p2);
    Point q = rng.point(d);
    const int n = static_cast<int>(rng.integer(0, 4));
    std::vector<Direction> dirs;
    for (int i = 0; i < n; ++i) dirs.push_back(rng.direction(d));
    Scalar lhs = leibniz_expand(f, f2, q, dirs);
    Scalar rhs = polarize_value(product(f, f2), q, dirs);
    state.check_equal(lhs, rhs, {{"trial", trial},
                                 {"n", n},
                                 {"f", to_json(p1)},
                                 {"f2", to_json(p2)},
                                 {"point", to_json(q)},
                                 {"dirs", dirs_json(dirs)}});
  }
}

void suite_chain(Sampler& rng, long long trials, SuiteState& state) {
  for (long long trial = 0; trial < trials; ++trial) {
    const int dp = static_cast<int>(rng.integer(1, 2));
    const int dq = static_cast<int>(rng.integer(1, 2));
    std::vector<ScalarField> comps;
    std::vector<Json> comp_docs;
    for (int c = 0; c < dq; ++c) {
      Polynomial g_c = rng.polynomial(dp, 3);
      comp_docs.push_back(to_json(g_c));
      comps.push_back(ScalarField::from_polynomial(std::move(g_c)));
    }
    AffineMap g(std::move(comps));
    Polynomial pf = rng.polynomial(dq, 3);
    ScalarField f = ScalarField::from_polynomial(pf);
    Point p = rng.point(dp);
    const int n = static_cast<int>(rng.integer(0, 3));
    std::vector<Direction> dirs;
    for (int i = 0; i < n; ++i) dirs.push_back(rng.direction(dp));
    Scalar lhs = chain_expand(f, g, p, dirs);
    Scalar rhs = polarize_value(compose(f, g), p, dirs);
    state.check_equal(lhs, rhs, {{"trial", trial},
                                 {"n", n},
                                 {"f", to_json(pf)},
                                 {"g", comp_docs},
                                 {"point", to_json(p)},
                                 {"dirs", dirs_json(dirs)}});
  }
}

void suite_euler(Sampler& rng, long long trials, SuiteState& state) {
  auto check_cell = [&](int n, int m, int l) {
    Scalar value = euler_alternating_sum(n, m, l);
    if (m < n) {
      state.check_equal(value, Scalar(0), {{"n", n}, {"m", m}, {"l", l}});
    } else if (m == n) {
      state.check_equal(value, Scalar::exact(Rational(factorial(static_cast<unsigned>(n)))),
                        {{"n", n}, {"m", m}, {"l", l}});
    }
  };
  if (trials == 0) {
    // exhaustive grid, plus the delta-chi cross-oracle on a fixed lattice
    for (int n = 0; n <= 10; ++n)
      for (int m = 0; m <= 10; ++m)
        for (int l = 0; l <= 10; ++l) check_cell(n, m, l);
    for (int n = 0; n <= 5; ++n) {
      for (int k = 0; k <= 7; ++k) {
        for (const Scalar& lambda : homogeneity_lambdas()) {
          // chi field: (1 + lambda s)^n in the single variable s
          Polynomial chi = Polynomial::constant(1, {Rational(0)}, Rational(1)) +
                           Polynomial::variable(1, {Rational(0)}, 0).scaled(lambda.rat());
          ScalarField field = ScalarField::from_polynomial(chi.pow(static_cast<unsigned>(n)));
          Scalar lhs = polarize_unidirectional(field, Point::origin(1), Direction::basis(1, 0), k);
          Scalar rhs = delta_chi(k, n, lambda);
          state.check_equal(lhs, rhs, {{"check", "delta-chi"}, {"n", n}, {"k", k}, {"lambda", to_json(lambda)}});
        }
      }
    }
    return;
  }
  for (long long trial = 0; trial < trials; ++trial)
    check_cell(static_cast<int>(rng.integer(0, 10)), static_cast<int>(rng.integer(0, 10)),
               static_cast<int>(rng.integer(0, 10)));
}

void suite_euler_theorem(Sampler& rng, long long trials, SuiteState& state) {
  for (long long trial = 0; trial < trials; ++trial) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n = static_cast<int>(rng.integer(0, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    Direction v = rng.nonzero_direction(d);
    for (int k = 0; k <= n + 2; ++k) {
      auto [lhs, rhs] = euler_theorem_check(hom, k, v);
      state.check_equal(lhs, rhs, {{"trial", trial},
                                   {"check", "euler-theorem"},
                                   {"n", n},
                                   {"k", k},
                                   {"polynomial", to_json(hom)},
                                   {"v", to_json(v)}});
    }
    // finite-level Euler scaling at the same homogeneous witness
    ScalarField field = ScalarField::from_polynomial(hom);
    Scalar lambda = Scalar::exact(rng.nonzero_rational(5, 3));
    const int k = static_cast<int>(rng.integer(0, n + 2));
    auto [lhs, rhs] = euler_scaling_check(field, hom.base_point(), n, k, v, lambda);
    state.check_equal(lhs, rhs, {{"trial", trial},
                                 {"check", "euler-scaling"},
                                 {"n", n},
                                 {"k", k},
                                 {"lambda", to_json(lambda)},
                                 {"polynomial", to_json(hom)},
                                 {"v", to_json(v)}});
  }
}

}  // namespace

Json run_verify_suite(const std::string& suite, long long trials, std::uint64_t seed, bool& any_failure) {
  if (trials < 0 || (trials == 0 && suite != "euler"))
    throw SyntaxError(1, {"--trials"}, "verify requires trials >= 1 (euler accepts 0 for exhaustive mode)");
  Sampler rng(seed);
  SuiteState state;
  if (suite == "iterate") suite_iterate(rng, trials, state);
  else if (suite == "reconstruct") suite_reconstruct(rng, trials, state);
  else if (suite == "leibniz") suite_leibniz(rng, trials, state);
  else if (suite == "chain") suite_chain(rng, trials, state);
  else if (suite == "euler") suite_euler(rng, trials, state);
  else if (suite == "euler-theorem") suite_euler_theorem(rng, trials, state);
  else
    throw SyntaxError(1, {"iterate", "leibniz", "chain", "euler", "reconstruct", "euler-theorem"},
                      "unknown verify suite '" + suite + "'");
  Json doc;
  doc["command"] = "verify";
  doc["suite"] = suite;
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["checks"] = state.checks;
  doc["failures"] = state.failures;
  any_failure = !state.failures.empty();
  return doc;
}

RunResult run_command(const RunConfig& cfg) {
  RunResult result;
  try {
    if (cfg.command == "polarize") result.doc = cmd_polarize(cfg);
    else if (cfg.command == "derive") result.doc = cmd_derive(cfg);
    else if (cfg.command == "taylor") result.doc = cmd_taylor(cfg);
    else if (cfg.command == "classify") result.doc = cmd_classify(cfg);
    else if (cfg.command == "extract") result.doc = cmd_extract(cfg);
    else if (cfg.command == "rebase") result.doc = cmd_rebase(cfg);
    else if (cfg.command == "verify") {
      bool any_failure = false;
      result.doc = run_verify_suite(cfg.suite, cfg.trials, cfg.seed, any_failure);
      result.exit_code = any_failure ? kExitIdentityViolation : kExitOk;
    } else {
      throw SyntaxError(1, {"polarize", "derive", "taylor", "classify", "extract", "verify", "rebase"},
                        "unknown command '" + cfg.command + "'");
    }
  } catch (const SyntaxError& e) {
    result.doc = Json{{"error", e.what()}, {"offset", e.offset()}, {"expected", e.expected()}};
    result.exit_code = kExitUsage;
  } catch (const Error& e) {
    result.doc = Json{{"error", e.what()}};
    result.exit_code = e.error_class() == ErrorClass::Usage ? kExitUsage : kExitEvaluation;
  }
  return result;
}

}  // namespace polcal
