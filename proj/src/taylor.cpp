#include "polcal/taylor.hpp"

#include <cmath>

namespace polcal {

namespace {

// exponent vectors of total degree m over d coordinates, lexicographic
template <class Fn>
void for_each_exponent(int d, int m, std::vector<int>& prefix, Fn&& fn) {
  if (static_cast<int>(prefix.size()) == d - 1) {
    prefix.push_back(m);
    fn(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = 0; e <= m; ++e) {
    prefix.push_back(e);
    for_each_exponent(d, m - e, prefix, fn);
    prefix.pop_back();
  }
}

Rational exponent_factorial(const std::vector<int>& exps) {
  BigInt acc(1);
  for (int e : exps) acc *= factorial(static_cast<unsigned>(e));
  return Rational(acc);
}

std::vector<Direction> multiset_directions(const std::vector<int>& exps, int dim) {
  std::vector<Direction> dirs;
  for (int i = 0; i < dim; ++i)
    for (int rep = 0; rep < exps[static_cast<std::size_t>(i)]; ++rep) dirs.push_back(Direction::basis(dim, i));
  return dirs;
}

Polynomial assemble_from_derivatives(const ScalarField& f, const Point& q, int degree_lo, int degree_hi,
                                     const TaylorOptions& opts) {
  const int d = f.dimension();
  const std::vector<Rational> base = q.exact_coords();
  Polynomial out = Polynomial::zero(d, base);
  for (int m = degree_lo; m <= degree_hi; ++m) {
    std::vector<int> prefix;
    for_each_exponent(d, m, prefix, [&](const std::vector<int>& exps) {
      std::vector<Direction> dirs = multiset_directions(exps, d);
      Scalar deriv = m == 0 ? f.eval(q) : derive(f, q, dirs, opts.richardson).value;
      Rational coeff = deriv.to_rational() / exponent_factorial(exps);
      out.add_term(exps, coeff);
    });
  }
  return out;
}

ScalarField remainder_field(const ScalarField& f, const Polynomial& p) {
  if (f.polynomial_backed()) {
    Polynomial shifted = f.polynomial().rebase(p.base());
    return ScalarField::from_polynomial(shifted - p);
  }
  return ScalarField::from_ast(
      make_node(NodeKind::Sub, {f.as_ast(), ScalarField::from_polynomial(p).as_ast()}), f.dimension());
}

std::vector<Direction> default_probe_directions(int dim) {
  std::vector<Direction> dirs;
  for (int i = 0; i < dim; ++i) dirs.push_back(Direction::basis(dim, i));
  if (dim > 1) dirs.push_back(Direction(std::vector<Scalar>(static_cast<std::size_t>(dim), Scalar(1))));
  return dirs;
}

// final ratio below tolerance and a non-increasing tail of three rows
bool ray_verdict(const std::vector<double>& ratios, double ratio_tol) {
  if (ratios.empty()) return false;
  if (!(ratios.back() < ratio_tol)) return false;
  const std::size_t k = ratios.size();
  for (std::size_t i = (k >= 3 ? k - 3 : 0) + 1; i < k; ++i)
    if (ratios[i] > ratios[i - 1]) return false;
  return true;
}

}  // namespace

TaylorResult taylor_polynomial(const ScalarField& f, const Point& q, int n, const TaylorOptions& opts) {
  require_same_dimension(f.dimension(), q.dimension(), "taylor_polynomial");
  if (n < 0) throw OrderTooLarge("taylor order must be nonnegative");
  if (f.polynomial_backed()) {
    Polynomial rebased = f.polynomial().rebase(q.exact_coords());
    if (rebased.degree() <= n) {
      ScalarField zero = ScalarField::from_polynomial(Polynomial::zero(f.dimension(), rebased.base()));
      return TaylorResult(std::move(rebased), std::move(zero));
    }
  }
  Polynomial p = assemble_from_derivatives(f, q, 0, n, opts);
  ScalarField r = remainder_field(f, p);
  return TaylorResult(std::move(p), std::move(r));
}

Polynomial extract_component(const ScalarField& f, const Point& q, int j, int n, const TaylorOptions& opts,
                             const std::vector<Polynomial>* claimed_components) {
  require_same_dimension(f.dimension(), q.dimension(), "extract_component");
  if (j < 0 || j > n) throw OrderTooLarge("component degree must satisfy 0 <= j <= n");
  Polynomial piece = assemble_from_derivatives(f, q, j, j, opts);
  if (claimed_components) {
    if (static_cast<int>(claimed_components->size()) <= j)
      throw PartsSumMismatch("claimed decomposition has no degree-" + std::to_string(j) + " component");
    Polynomial claimed = (*claimed_components)[static_cast<std::size_t>(j)].rebase(q.exact_coords());
    if (!(claimed.terms() == piece.terms()))
      throw PartsSumMismatch("extracted component disagrees with the claimed decomposition");
  }
  return piece;
}

RemainderProfile remainder_profile(const ScalarField& r, const Point& q, int n, const TaylorOptions& opts) {
  require_same_dimension(r.dimension(), q.dimension(), "remainder_profile");
  if (opts.shrinks < 4) throw OrderTooLarge("remainder_profile requires shrinks >= 4");
  RemainderProfile profile;
  profile.order = n;
  profile.ratio_tol = opts.ratio_tol;

  TolerancePolicy tol;
  Scalar at_base = r.eval(q);
  if (!tol.close(at_base.dbl(), 0.0))
    throw EvalDomainError("remainder does not vanish at the base point (r(q) = " + at_base.str() + ")");

  std::vector<Direction> dirs = opts.directions.empty() ? default_probe_directions(q.dimension()) : opts.directions;
  bool pass = true;
  for (const auto& v : dirs) {
    if (v.is_zero()) throw EvalDomainError("zero probe direction in remainder profile");
    std::vector<double> ratios;
    Rational t = opts.t0;
    for (int j = 0; j < opts.shrinks; ++j) {
      const Scalar step = Scalar::exact(t);
      const double norm = std::fabs(step.dbl()) * v.max_norm();
      const double value = r.eval(translate(q, step * v)).dbl();
      const double ratio = n == 0 ? std::fabs(value) : std::fabs(value) / std::pow(norm, n);
      profile.rows.push_back({step.dbl(), v, ratio});
      ratios.push_back(ratio);
      t /= 2;
    }
    pass = pass && ray_verdict(ratios, opts.ratio_tol);
  }
  profile.pass = pass;
  return profile;
}

RemainderProfile modified_taylor_probe(const ScalarField& f, const Point& q0, int n,
                                       const TaylorOptions& opts) {
  require_same_dimension(f.dimension(), q0.dimension(), "modified_taylor_probe");
  if (n < 0) throw OrderTooLarge("probe order must be nonnegative");
  if (opts.probe_shrinks < 4) throw OrderTooLarge("modified_taylor_probe requires shrinks >= 4");
  RemainderProfile profile;
  profile.order = n;
  profile.ratio_tol = opts.ratio_tol;

  Sampler rng(opts.seed);
  const int dim = q0.dimension();
  // rescale to a max-norm near the target; keeps the ratio denominator away
  // from the numeric noise floor
  auto normalized = [](const Direction& v, double target) {
    const double m = v.max_norm();
    const long long num = std::llround(64.0 * target / m);
    return Scalar::exact(Rational(std::max<long long>(1, num), 64)) * v;
  };
  bool pass = true;
  for (int ray = 0; ray < opts.probe_rays; ++ray) {
    // two rays into q0 with unit spread; the displacement q' - q shrinks with t
    Direction a = normalized(rng.nonzero_direction(dim), 0.5);
    Direction spread = normalized(rng.nonzero_direction(dim), 1.0);
    Direction b = a + spread;
    const Direction ray_dir = spread;

    std::vector<double> ratios;
    Rational t = opts.probe_t0;
    for (int j = 0; j < opts.probe_shrinks; ++j) {
      const Scalar step = Scalar::exact(t);
      const Point q = translate(q0, step * a);
      const Point q_prime = translate(q0, step * b);
      const Direction w = difference(q_prime, q);
      ScalarAccumulator expansion;
      for (int k = 0; k <= n; ++k) {
        std::vector<Direction> repeated(static_cast<std::size_t>(k), w);
        Scalar dk = k == 0 ? f.eval(q) : derive(f, q, repeated, opts.richardson).value;
        expansion.add(dk / Scalar::exact(Rational(factorial(static_cast<unsigned>(k)))));
      }
      const Scalar r_value = f.eval(q_prime) - expansion.total();
      const double norm = w.max_norm();
      const double ratio = n == 0 ? std::fabs(r_value.dbl()) : std::fabs(r_value.dbl()) / std::pow(norm, n);
      profile.rows.push_back({step.dbl(), ray_dir, ratio});
      ratios.push_back(ratio);
      t /= 2;
    }
    pass = pass && ray_verdict(ratios, opts.ratio_tol);
  }
  profile.pass = pass;
  return profile;
}

}  // namespace polcal
