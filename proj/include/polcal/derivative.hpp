#ifndef POLCAL_DERIVATIVE_HPP
#define POLCAL_DERIVATIVE_HPP

#include <optional>
#include <span>
#include <vector>

#include "polcal/polarization.hpp"

namespace polcal {

enum class DerivMethod { ExactPolynomial, Richardson };

struct DerivativeEstimate {
  Scalar value;
  DerivMethod method = DerivMethod::ExactPolynomial;
  std::optional<double> error_estimate;       // difference of the last two tableau diagonal entries
  std::vector<double> steps_used;
  std::optional<std::vector<std::vector<double>>> tableau;
};

struct RichardsonOptions {
  Rational s0 = Rational(1, 8);
  int levels = 5;
  bool keep_tableau = false;
};

// Exact limit of delta^n p(q; s v_1..s v_n) / s^n: the polarization is
// expanded symbolically in s and the s^n coefficient is read off.  Float
// inputs are converted to their exact dyadic values first.
DerivativeEstimate derive_exact(const Polynomial& p, const Point& q, std::span<const Direction> dirs);

// Richardson-extrapolated limit over the halving schedule s_j = s0 / 2^j;
// polynomial-backed fields delegate to derive_exact.  When all directions
// coincide the (n+1)-term unidirectional stencil replaces the 2^n sum.
DerivativeEstimate derive_numeric(const ScalarField& f, const Point& q, std::span<const Direction> dirs,
                                  const RichardsonOptions& opts = {});

// Exact or numeric, by backing.
DerivativeEstimate derive(const ScalarField& f, const Point& q, std::span<const Direction> dirs,
                          const RichardsonOptions& opts = {});

// d^n p(.; dirs) as an exact polynomial field of the base point, i.e. the
// fold of directional derivative operators; enables iterated derivatives.
Polynomial derivative_field(const Polynomial& p, std::span<const Direction> dirs);

// lhs = D^k p(q+v; v); rhs = the Euler factor: 0 above the degree, k! f(q+v)
// at the degree, n!/(n-k)! f(q+v) below it.
std::pair<Scalar, Scalar> euler_theorem_check(const Polynomial& p_hom, int k, const Direction& v);

// lhs = d^n(f f2); rhs = sum over ordered disjoint pairs partitioning the
// index set of d^|I| f * d^|I'| f2.
std::pair<Scalar, Scalar> leibniz_derivative_check(const ScalarField& f, const ScalarField& f2,
                                                   const Point& q, std::span<const Direction> dirs);

// lhs = d^n(f o g); rhs = sum over set partitions {I^1..I^k} of
// d^k f(g(p); d^|I^1| g, ..., d^|I^k| g).
std::pair<Scalar, Scalar> chain_derivative_check(const ScalarField& f, const AffineMap& g, const Point& p,
                                                 std::span<const Direction> dirs);

// multi = d^n f(q; v_1..v_n); nested = the iterated one-directional partials
// of s -> f(q + s_1 v_1 + ... + s_n v_n) at 0, built from order-1 derivatives.
std::pair<DerivativeEstimate, DerivativeEstimate> mixed_partial_bridge(const ScalarField& f, const Point& q,
                                                                       std::span<const Direction> dirs,
                                                                       const RichardsonOptions& opts = {});

}  // namespace polcal

#endif
