#include "polcal/homogeneity.hpp"

namespace polcal {

const std::vector<Scalar>& homogeneity_lambdas() {
  static const std::vector<Scalar> lambdas = {
      Scalar::exact(Rational(-2)), Scalar::exact(Rational(-1)), Scalar::exact(Rational(-1, 2)),
      Scalar::exact(Rational(1, 2)), Scalar::exact(Rational(2)), Scalar::exact(Rational(3))};
  return lambdas;
}

namespace {

// Evaluator that assigns the value 0 to a singular base point when n >= 1.
// A field scaling-homogeneous of positive degree away from q admits no other
// value there, so the imputation is the removable-singularity convention the
// sampling needs (x^3/(x^2+y^2) at the origin is the canonical case).
struct PatchedEval {
  const ScalarField* f;
  const Point* q;
  int n;
  bool* imputed;

  Scalar operator()(const Point& at) const {
    try {
      return f->eval(at);
    } catch (const EvalDomainError&) {
      if (n >= 1 && at == *q) {
        *imputed = true;
        return Scalar(0);
      }
      throw;
    }
  }
};

// lhs/rhs of the scaling law at one probe: f(q + lambda v) vs lambda^n f(q+v)
std::pair<Scalar, Scalar> scaling_probe(const PatchedEval& f, const Point& q, int n, const Scalar& lambda,
                                        const Direction& v) {
  Scalar lhs = f(translate(q, lambda * v));
  Scalar scale = (n == 0) ? Scalar(1) : lambda.pow(n);
  Scalar rhs = scale * f(translate(q, v));
  return {lhs, rhs};
}

bool record_failure(HomogeneityVerdict& verdict, Witness w) {
  verdict.kind = VerdictKind::Fail;
  if (verdict.witnesses.size() < 5) verdict.witnesses.push_back(std::move(w));
  return verdict.witnesses.size() >= 5;
}

HomogeneityVerdict sampled_homogeneity(const ScalarField& f, const Point& q, int n, int samples,
                                       const SampleOptions& opts) {
  HomogeneityVerdict verdict;
  verdict.kind = VerdictKind::SampledPass;
  verdict.degree = n;
  verdict.samples = samples;
  verdict.seed = opts.seed;
  verdict.tolerance = opts.tolerance;
  Sampler rng(opts.seed);
  PatchedEval eval{&f, &q, n, &verdict.imputed_base_value};
  const auto& lambdas = homogeneity_lambdas();
  for (int i = 0; i < samples; ++i) {
    Direction v = rng.nonzero_direction(q.dimension());
    // lambda = 0 is part of the definition: it forces f(q) = 0 for n >= 1
    Scalar zero_lambda = Scalar(0);
    auto [lhs0, rhs0] = scaling_probe(eval, q, n, zero_lambda, v);
    if (!values_agree(lhs0, rhs0, opts.tolerance)) {
      if (record_failure(verdict, {"lambda-scaling", zero_lambda, std::nullopt, {v}, lhs0, rhs0})) return verdict;
    }
    const Scalar& lambda = lambdas[static_cast<std::size_t>(i) % lambdas.size()];
    auto [lhs, rhs] = scaling_probe(eval, q, n, lambda, v);
    if (!values_agree(lhs, rhs, opts.tolerance)) {
      if (record_failure(verdict, {"lambda-scaling", lambda, std::nullopt, {v}, lhs, rhs})) return verdict;
    }
  }
  return verdict;
}

HomogeneityVerdict exact_homogeneity(const Polynomial& p, const Point& q, int n, const SampleOptions& opts) {
  HomogeneityVerdict verdict;
  verdict.seed = opts.seed;
  verdict.tolerance = opts.tolerance;
  Polynomial at_q = p.rebase(q.exact_coords());
  if (at_q.is_zero()) {
    // homogeneous of every degree; surface the degeneracy instead of picking one
    verdict.kind = VerdictKind::ExactProof;
    verdict.degree = std::nullopt;
    return verdict;
  }
  if (at_q.is_homogeneous_of(n)) {
    verdict.kind = VerdictKind::ExactProof;
    verdict.degree = n;
    return verdict;
  }
  verdict.kind = VerdictKind::Fail;
  verdict.degree = n;
  // mine a concrete scaling counterexample for the report
  Sampler rng(opts.seed);
  ScalarField field = ScalarField::from_polynomial(p);
  bool unused = false;
  PatchedEval eval{&field, &q, n, &unused};
  for (int attempt = 0; attempt < 64; ++attempt) {
    Direction v = attempt < q.dimension() ? Direction::basis(q.dimension(), attempt)
                                          : rng.nonzero_direction(q.dimension());
    for (const Scalar& lambda : homogeneity_lambdas()) {
      auto [lhs, rhs] = scaling_probe(eval, q, n, lambda, v);
      if (lhs != rhs) {
        verdict.witnesses.push_back({"lambda-scaling", lambda, std::nullopt, {v}, lhs, rhs});
        return verdict;
      }
    }
  }
  return verdict;  // no witness found; the graded refutation above still stands
}

}  // namespace

HomogeneityVerdict is_homogeneous(const ScalarField& f, const Point& q, int n, int samples,
                                  const SampleOptions& opts) {
  require_same_dimension(f.dimension(), q.dimension(), "is_homogeneous");
  if (samples < 1) throw OrderTooLarge("is_homogeneous requires samples >= 1");
  if (f.polynomial_backed()) return exact_homogeneity(f.polynomial(), q, n, opts);
  return sampled_homogeneity(f, q, n, samples, opts);
}

HomogeneityVerdict multilinearity_check(const ExtendedField& F, const Point& q, int n, int samples,
                                        const SampleOptions& opts) {
  if (samples < 1) throw OrderTooLarge("multilinearity_check requires samples >= 1");
  HomogeneityVerdict verdict;
  verdict.kind = VerdictKind::SampledPass;
  verdict.degree = n;
  verdict.samples = samples;
  verdict.seed = opts.seed;
  verdict.tolerance = opts.tolerance;
  if (n == 0) return verdict;  // no slots to test
  Sampler rng(opts.seed);
  const int dim = q.dimension();
  auto eval_slots = [&](const std::vector<Direction>& slots) {
    return F.eval(q, std::span<const Direction>(slots.data(), slots.size()));
  };
  for (int i = 0; i < samples; ++i) {
    std::vector<Direction> slots;
    slots.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) slots.push_back(rng.nonzero_direction(dim));
    for (int k = 0; k < n; ++k) {
      Direction v = rng.nonzero_direction(dim);
      Direction w = rng.nonzero_direction(dim);
      std::vector<Direction> probe = slots;

      probe[static_cast<std::size_t>(k)] = v + w;
      Scalar joint = eval_slots(probe);
      probe[static_cast<std::size_t>(k)] = v;
      Scalar at_v = eval_slots(probe);
      probe[static_cast<std::size_t>(k)] = w;
      Scalar at_w = eval_slots(probe);
      if (!values_agree(joint, at_v + at_w, opts.tolerance)) {
        if (record_failure(verdict, {"slot-additivity", std::nullopt, k, {v, w}, joint, at_v + at_w}))
          return verdict;
      }

      Scalar c = rng.exact_scalar(5, 3);
      probe[static_cast<std::size_t>(k)] = c * v;
      Scalar scaled = eval_slots(probe);
      if (!values_agree(scaled, c * at_v, opts.tolerance)) {
        if (record_failure(verdict, {"slot-homogeneity", c, k, {v}, scaled, c * at_v})) return verdict;
      }
    }
  }
  return verdict;
}

HomogeneityVerdict is_homogeneous_polynomial(const ScalarField& f, const Point& q, int n, int samples,
                                             const SampleOptions& opts) {
  HomogeneityVerdict scaling = is_homogeneous(f, q, n, samples, opts);
  if (!scaling.pass()) return scaling;

  // delta^n f with the same base-point imputation the scaling probes used
  bool imputed = scaling.imputed_base_value;
  auto shared_f = std::make_shared<ScalarField>(f);
  auto shared_q = std::make_shared<Point>(q);
  auto shared_flag = std::make_shared<bool>(false);
  ExtendedField delta_n;
  delta_n.dimension = f.dimension();
  delta_n.frozen_arity = n;
  delta_n.eval = [shared_f, shared_q, shared_flag, n](const Point& at, std::span<const Direction> dirs) {
    PatchedEval eval{shared_f.get(), shared_q.get(), n, shared_flag.get()};
    return polarize_evaluator(eval, at, dirs).value;
  };
  HomogeneityVerdict linear = multilinearity_check(delta_n, q, n, samples, opts);
  imputed = imputed || *shared_flag;
  if (!linear.pass()) {
    linear.imputed_base_value = imputed;
    return linear;
  }

  HomogeneityVerdict verdict;
  verdict.kind = f.polynomial_backed() ? VerdictKind::ExactProof : VerdictKind::SampledPass;
  verdict.degree = scaling.degree;
  verdict.samples = samples;
  verdict.seed = opts.seed;
  verdict.tolerance = opts.tolerance;
  verdict.imputed_base_value = imputed;
  return verdict;
}

namespace {

// h with the displacement around q0 scaled by the integer j, i.e.
// q |-> h(q0 + j (q - q0)), staying in the same backing.
Polynomial scale_displacement(const Polynomial& h, const std::vector<Rational>& q0, long long j) {
  std::vector<Polynomial> comps;
  comps.reserve(q0.size());
  for (int i = 0; i < h.dimension(); ++i) {
    Polynomial c = Polynomial::variable(h.dimension(), q0, i).scaled(Rational(j));
    c = c + Polynomial::constant(h.dimension(), q0, q0[static_cast<std::size_t>(i)]);
    comps.push_back(std::move(c));
  }
  return h.compose(comps);
}

AstPtr scale_displacement_ast(const AstPtr& h, const Point& q0, long long j) {
  std::vector<AstPtr> subs;
  subs.reserve(static_cast<std::size_t>(q0.dimension()));
  for (int i = 0; i < q0.dimension(); ++i) {
    AstPtr displaced = make_var(i);
    if (!q0[i].is_zero()) displaced = make_node(NodeKind::Sub, {displaced, make_const(q0[i])});
    AstPtr scaled = make_node(NodeKind::Mul, {make_const(Scalar(j)), displaced});
    subs.push_back(q0[i].is_zero() ? scaled : make_node(NodeKind::Add, {make_const(q0[i]), scaled}));
  }
  return substitute(h, subs);
}

}  // namespace

std::vector<ScalarField> extract_homogeneous_components(const ScalarField& f, const Point& q0, int n) {
  require_same_dimension(f.dimension(), q0.dimension(), "extract_homogeneous_components");
  if (n < 0) throw OrderTooLarge("component extraction requires n >= 0");

  if (f.polynomial_backed()) {
    Polynomial p = f.polynomial().rebase(q0.exact_coords());
    if (p.degree() > n)
      throw NotPolyhomogeneous("polynomial has degree " + std::to_string(p.degree()) +
                               " > requested bound " + std::to_string(n));
    const auto& q0c = p.base();
    std::vector<Polynomial> components(static_cast<std::size_t>(n) + 1, Polynomial::zero(p.dimension(), q0c));
    Polynomial residue = p;
    for (int m = n; m >= 0; --m) {
      // Delta^m residue(q0; q - q0) / m!
      Polynomial acc = Polynomial::zero(p.dimension(), q0c);
      for (long long j = 0; j <= m; ++j) {
        Polynomial shifted = scale_displacement(residue, q0c, j);
        Rational coeff(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)));
        if ((m - j) % 2 != 0) coeff = -coeff;
        acc = acc + shifted.scaled(coeff);
      }
      Polynomial y_m = acc.scaled(Rational(1) / Rational(factorial(static_cast<unsigned>(m))));
      components[static_cast<std::size_t>(m)] = y_m;
      residue = residue - y_m;
    }
    std::vector<ScalarField> out;
    out.reserve(components.size());
    for (auto& c : components) out.push_back(ScalarField::from_polynomial(std::move(c)));
    return out;
  }

  // expression path: build each component as a substituted tree, top-down
  std::vector<AstPtr> components(static_cast<std::size_t>(n) + 1);
  AstPtr residue = f.as_ast();
  for (int m = n; m >= 0; --m) {
    AstPtr sum;
    for (long long j = 0; j <= m; ++j) {
      AstPtr shifted = scale_displacement_ast(residue, q0, j);
      Rational coeff(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)));
      AstPtr term = coeff == 1 ? shifted
                               : make_node(NodeKind::Mul, {make_const(Scalar::exact(coeff)), shifted});
      bool negative = (m - j) % 2 != 0;
      if (!sum) {
        sum = negative ? make_node(NodeKind::Neg, {term}) : term;
      } else {
        sum = make_node(negative ? NodeKind::Sub : NodeKind::Add, {sum, term});
      }
    }
    Rational inv_fact = Rational(1) / Rational(factorial(static_cast<unsigned>(m)));
    AstPtr y_m = inv_fact == 1 ? sum : make_node(NodeKind::Mul, {make_const(Scalar::exact(inv_fact)), sum});
    components[static_cast<std::size_t>(m)] = y_m;
    residue = make_node(NodeKind::Sub, {residue, y_m});
  }
  std::vector<ScalarField> out;
  out.reserve(components.size());
  for (auto& c : components) out.push_back(ScalarField::from_ast(std::move(c), f.dimension()));
  return out;
}

std::pair<Scalar, Scalar> euler_scaling_check(const ScalarField& f, const Point& q, int n, int k,
                                              const Direction& v, const Scalar& lambda) {
  require_same_dimension(f.dimension(), q.dimension(), "euler_scaling_check");
  Point shifted = translate(q, v);
  Scalar lhs = polarize_unidirectional(f, shifted, lambda * v, k);
  Scalar rhs = delta_chi(k, n, lambda) * f.eval(shifted);
  return {lhs, rhs};
}

}  // namespace polcal
