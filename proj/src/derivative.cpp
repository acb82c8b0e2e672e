#include "polcal/derivative.hpp"

#include <cmath>

namespace polcal {

namespace {

void check_derive_inputs(const Point& q, std::span<const Direction> dirs, const char* what) {
  const int n = static_cast<int>(dirs.size());
  if (n > kDeriveCap)
    throw OrderTooLarge(std::string(what) + " supports order <= " + std::to_string(kDeriveCap) + ", got " +
                        std::to_string(n));
  for (const auto& v : dirs) require_same_dimension(q.dimension(), v.dimension(), what);
}

bool all_directions_equal(std::span<const Direction> dirs) {
  for (std::size_t i = 1; i < dirs.size(); ++i)
    if (!(dirs[i] == dirs[0])) return false;
  return true;
}

struct RichardsonResult {
  double value = 0.0;
  double error = 0.0;
  std::vector<double> steps;
  std::vector<std::vector<double>> tableau;
};

// Neville elimination for an error series in integer powers of s over the
// halving schedule s_j = s0 / 2^j.
template <class G>
RichardsonResult richardson_limit(G&& g, const Rational& s0, int levels) {
  if (levels < 2) throw OrderTooLarge("Richardson extrapolation requires levels >= 2");
  if (!(s0 > 0)) throw NumericalBreakdown("Richardson step s0 must be positive");
  RichardsonResult out;
  std::vector<std::vector<double>> rows;
  Rational s = s0;
  for (int j = 0; j < levels; ++j) {
    out.steps.push_back(s.convert_to<double>());
    std::vector<double> row(static_cast<std::size_t>(j) + 1);
    row[0] = g(s);
    if (!std::isfinite(row[0])) throw NumericalBreakdown("non-finite sample in extrapolation tableau");
    for (int k = 1; k <= j; ++k) {
      const double fine = row[static_cast<std::size_t>(k - 1)];
      const double coarse = rows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
      row[static_cast<std::size_t>(k)] = fine + (fine - coarse) / (std::pow(2.0, k) - 1.0);
      if (!std::isfinite(row[static_cast<std::size_t>(k)]))
        throw NumericalBreakdown("non-finite entry in extrapolation tableau");
    }
    rows.push_back(std::move(row));
    s /= 2;
  }
  out.value = rows.back().back();
  const double prev = rows[rows.size() - 2].back();
  out.error = std::fabs(out.value - prev);
  out.tableau = std::move(rows);
  return out;
}

}  // namespace

DerivativeEstimate derive_exact(const Polynomial& p, const Point& q, std::span<const Direction> dirs) {
  check_derive_inputs(q, dirs, "derive_exact");
  require_same_dimension(p.dimension(), q.dimension(), "derive_exact");
  const int n = static_cast<int>(dirs.size());
  DerivativeEstimate est;
  est.method = DerivMethod::ExactPolynomial;
  if (n == 0) {
    est.value = Scalar::exact(p.eval_rational(q.exact_coords()));
    return est;
  }
  const std::vector<Rational> qc = q.exact_coords();
  std::vector<Rational> offset;
  offset.reserve(qc.size());
  for (int i = 0; i < p.dimension(); ++i) offset.push_back(qc[static_cast<std::size_t>(i)] - p.base()[static_cast<std::size_t>(i)]);

  std::vector<std::vector<Rational>> dir_coords;
  dir_coords.reserve(dirs.size());
  for (const auto& v : dirs) dir_coords.push_back(v.exact_coords());

  // delta^n p(q; s v_1 .. s v_n) as a univariate polynomial in s
  UniPoly expansion;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Rational> step(offset.size(), Rational(0));
    for (int i = 0; i < n; ++i)
      if (mask & (1ull << i))
        for (std::size_t c = 0; c < step.size(); ++c) step[c] += dir_coords[static_cast<std::size_t>(i)][c];
    UniPoly term = p.eval_on_ray(offset, step);
    if ((n - __builtin_popcountll(mask)) % 2 != 0) term.scale(Rational(-1));
    expansion += term;
  }
  for (int i = 0; i < n; ++i)
    if (!expansion.coeff(i).is_zero())
      throw InternalDefect("polarization expansion not divisible by s^n");
  est.value = Scalar::exact(expansion.coeff(n));
  return est;
}

DerivativeEstimate derive_numeric(const ScalarField& f, const Point& q, std::span<const Direction> dirs,
                                  const RichardsonOptions& opts) {
  check_derive_inputs(q, dirs, "derive_numeric");
  require_same_dimension(f.dimension(), q.dimension(), "derive_numeric");
  if (f.polynomial_backed()) return derive_exact(f.polynomial(), q, dirs);
  const int n = static_cast<int>(dirs.size());
  DerivativeEstimate est;
  est.method = DerivMethod::Richardson;
  if (n == 0) {
    est.value = f.eval(q);
    est.error_estimate = 0.0;
    return est;
  }
  const bool unidirectional = all_directions_equal(dirs);
  auto g = [&](const Rational& s) -> double {
    const Scalar step = Scalar::exact(s);
    Scalar delta;
    if (unidirectional) {
      delta = polarize_unidirectional(f, q, step * dirs[0], n);
    } else {
      std::vector<Direction> scaled;
      scaled.reserve(dirs.size());
      for (const auto& v : dirs) scaled.push_back(step * v);
      delta = polarize_value(f, q, scaled);
    }
    return delta.dbl() / std::pow(s.convert_to<double>(), n);
  };
  RichardsonResult r = richardson_limit(g, opts.s0, opts.levels);
  est.value = Scalar::real(r.value);
  est.error_estimate = r.error;
  est.steps_used = std::move(r.steps);
  if (opts.keep_tableau) est.tableau = std::move(r.tableau);
  return est;
}

DerivativeEstimate derive(const ScalarField& f, const Point& q, std::span<const Direction> dirs,
                          const RichardsonOptions& opts) {
  if (f.polynomial_backed()) return derive_exact(f.polynomial(), q, dirs);
  return derive_numeric(f, q, dirs, opts);
}

Polynomial derivative_field(const Polynomial& p, std::span<const Direction> dirs) {
  Polynomial out = p;
  for (const auto& v : dirs) out = out.directional_derivative(v.exact_coords());
  return out;
}

std::pair<Scalar, Scalar> euler_theorem_check(const Polynomial& p_hom, int k, const Direction& v) {
  if (k < 0) throw OrderTooLarge("euler_theorem_check requires k >= 0");
  const int n = p_hom.is_zero() ? 0 : p_hom.degree();
  if (!p_hom.is_homogeneous_of(n))
    throw NotHomogeneous("euler_theorem_check requires a homogeneous polynomial");
  const Point shifted = translate(p_hom.base_point(), v);
  std::vector<Direction> repeated(static_cast<std::size_t>(k), v);
  Scalar lhs = derive_exact(p_hom, shifted, repeated).value;
  Scalar at_shifted = Scalar::exact(p_hom.eval_rational(shifted.exact_coords()));
  Scalar rhs;
  if (k > n) {
    rhs = Scalar(0);
  } else {
    Rational factor = Rational(factorial(static_cast<unsigned>(n)) / factorial(static_cast<unsigned>(n - k)));
    rhs = Scalar::exact(factor) * at_shifted;
  }
  return {lhs, rhs};
}

std::pair<Scalar, Scalar> leibniz_derivative_check(const ScalarField& f, const ScalarField& f2,
                                                   const Point& q, std::span<const Direction> dirs) {
  check_derive_inputs(q, dirs, "leibniz_derivative_check");
  require_same_dimension(f.dimension(), f2.dimension(), "leibniz_derivative_check");
  const int n = static_cast<int>(dirs.size());
  Scalar lhs = derive(product(f, f2), q, dirs).value;
  // ordered disjoint pairs (I, N \ I): 2^n of them, bitmask order
  ScalarAccumulator rhs;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Direction> left, right;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ull << i)) left.push_back(dirs[static_cast<std::size_t>(i)]);
      else right.push_back(dirs[static_cast<std::size_t>(i)]);
    }
    rhs.add(derive(f, q, left).value * derive(f2, q, right).value);
  }
  return {lhs, rhs.total()};
}

std::pair<Scalar, Scalar> chain_derivative_check(const ScalarField& f, const AffineMap& g, const Point& p,
                                                 std::span<const Direction> dirs) {
  const int n = static_cast<int>(dirs.size());
  if (n > kChainExpandCap)
    throw OrderTooLarge("chain_derivative_check supports order <= " + std::to_string(kChainExpandCap));
  require_same_dimension(f.dimension(), g.codomain_dimension(), "chain_derivative_check");
  require_same_dimension(g.domain_dimension(), p.dimension(), "chain_derivative_check");
  Scalar lhs = derive(compose(f, g), p, dirs).value;
  const Point at_image = g.eval(p);
  if (n == 0) return {lhs, f.eval(at_image)};

  ScalarAccumulator rhs;
  for (const auto& cover : distinct_subset_covers(n)) {
    if (!cover.is_partition()) continue;  // the derivative-level sum keeps set partitions only
    std::vector<Direction> images;
    images.reserve(cover.blocks.size());
    for (const auto& block : cover.blocks) {
      std::vector<Direction> sub;
      for (int member : block.members) sub.push_back(dirs[static_cast<std::size_t>(member - 1)]);
      std::vector<Scalar> comps;
      comps.reserve(g.components().size());
      for (const auto& c : g.components()) comps.push_back(derive(c, p, sub).value);
      images.emplace_back(std::move(comps));
    }
    rhs.add(derive(f, at_image, images).value);
  }
  return {lhs, rhs.total()};
}

std::pair<DerivativeEstimate, DerivativeEstimate> mixed_partial_bridge(const ScalarField& f, const Point& q,
                                                                       std::span<const Direction> dirs,
                                                                       const RichardsonOptions& opts) {
  const int n = static_cast<int>(dirs.size());
  if (n > kChainExpandCap)
    throw OrderTooLarge("mixed_partial_bridge supports order <= " + std::to_string(kChainExpandCap));
  require_same_dimension(f.dimension(), q.dimension(), "mixed_partial_bridge");
  for (const auto& v : dirs) require_same_dimension(q.dimension(), v.dimension(), "mixed_partial_bridge");

  DerivativeEstimate multi = derive(f, q, dirs, opts);

  DerivativeEstimate nested;
  if (n == 0) {
    nested.method = f.polynomial_backed() ? DerivMethod::ExactPolynomial : DerivMethod::Richardson;
    nested.value = f.eval(q);
    if (!f.polynomial_backed()) nested.error_estimate = 0.0;
    return {std::move(multi), std::move(nested)};
  }
  if (f.polynomial_backed()) {
    // psi(s_1..s_n) = f(q + sum s_i v_i) composed exactly, then iterated
    // first-order partials evaluated at the origin
    const std::vector<Rational> origin(static_cast<std::size_t>(n));
    std::vector<Polynomial> comps;
    const std::vector<Rational> qc = q.exact_coords();
    for (int c = 0; c < q.dimension(); ++c) {
      Polynomial coord = Polynomial::constant(n, origin, qc[static_cast<std::size_t>(c)]);
      for (int i = 0; i < n; ++i) {
        Rational vc = dirs[static_cast<std::size_t>(i)].exact_coords()[static_cast<std::size_t>(c)];
        if (!vc.is_zero())
          coord = coord + Polynomial::variable(n, origin, i).scaled(vc);
      }
      comps.push_back(std::move(coord));
    }
    Polynomial psi = f.polynomial().compose(comps);
    for (int i = 0; i < n; ++i) psi = psi.partial_derivative(i);
    nested.method = DerivMethod::ExactPolynomial;
    nested.value = Scalar::exact(psi.eval_rational(origin));
    return {std::move(multi), std::move(nested)};
  }

  // numeric path: recursive order-1 limits, innermost variable first
  std::function<double(const std::vector<double>&, int)> level = [&](const std::vector<double>& fixed,
                                                                     int k) -> double {
    if (k == n) {
      Direction offset = Direction::zero(q.dimension());
      for (int i = 0; i < n; ++i) offset = offset + Scalar::real(fixed[static_cast<std::size_t>(i)]) * dirs[static_cast<std::size_t>(i)];
      return f.eval(translate(q, offset)).dbl();
    }
    auto g = [&](const Rational& s) -> double {
      std::vector<double> probe = fixed;
      probe[static_cast<std::size_t>(k)] = s.convert_to<double>();
      double incremented = level(probe, k + 1);
      probe[static_cast<std::size_t>(k)] = 0.0;
      double at_zero = level(probe, k + 1);
      return (incremented - at_zero) / s.convert_to<double>();
    };
    return richardson_limit(g, opts.s0, opts.levels).value;
  };

  nested.method = DerivMethod::Richardson;
  std::vector<double> fixed(static_cast<std::size_t>(n), 0.0);
  auto g_outer = [&](const Rational& s) -> double {
    std::vector<double> probe = fixed;
    probe[0] = s.convert_to<double>();
    double incremented = level(probe, 1);
    probe[0] = 0.0;
    double at_zero = level(probe, 1);
    return (incremented - at_zero) / s.convert_to<double>();
  };
  RichardsonResult top = richardson_limit(g_outer, opts.s0, opts.levels);
  nested.value = Scalar::real(top.value);
  nested.error_estimate = top.error;
  nested.steps_used = std::move(top.steps);
  return {std::move(multi), std::move(nested)};
}

}  // namespace polcal
