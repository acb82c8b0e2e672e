#ifndef POLCAL_POLARIZATION_HPP
#define POLCAL_POLARIZATION_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polcal/combinatorics.hpp"
#include "polcal/field.hpp"

namespace polcal {

inline constexpr int kPolarizeCap = 20;
inline constexpr int kLeibnizExpandCap = 12;
inline constexpr int kChainExpandCap = 4;
inline constexpr int kDeriveCap = 8;

// One inclusion-exclusion term: f evaluated at q + sum of the subset's
// directions, with its sign in the alternating sum.
struct PolarizationTerm {
  IndexSubset subset;
  int sign = 1;
  Point at;
  Scalar value;
};

struct PolarizationReport {
  Scalar value;
  std::uint64_t term_count = 0;
  std::optional<std::vector<PolarizationTerm>> terms;  // opt-in audit list
};

using PointFn = std::function<Scalar(const Point&)>;

// delta^n over an arbitrary point evaluator; every other polarization entry
// point funnels through this sum.  Terms are visited in subset-bitmask order
// and accumulated with compensation in float mode.
PolarizationReport polarize_evaluator(const PointFn& f, const Point& q, std::span<const Direction> dirs,
                                      bool with_terms = false);

PolarizationReport polarize(const ScalarField& f, const Point& q, std::span<const Direction> dirs,
                            bool with_terms = false);
Scalar polarize_value(const ScalarField& f, const Point& q, std::span<const Direction> dirs);

// Delta^n via the (n+1)-term binomial stencil, never the 2^n subset sum.
Scalar polarize_unidirectional(const ScalarField& f, const Point& q, const Direction& v, int n);
Scalar polarize_unidirectional_evaluator(const PointFn& f, const Point& q, const Direction& v, int n);

// Function of a point plus m frozen vector slots; polarization acts on the
// point slot only.
struct ExtendedField {
  int dimension = 0;
  int frozen_arity = 0;
  std::function<Scalar(const Point&, std::span<const Direction>)> eval;
};

ExtendedField as_extended(const ScalarField& f);  // m = 0

// The operator delta^n : B^m -> B^(n+m); the n polarized slots come first in
// the argument list of the result.
ExtendedField polarization_operator(const ExtendedField& F, int n);

Scalar polarize_extended(const ExtendedField& F, const Point& q, std::span<const Direction> dirs,
                         std::span<const Direction> frozen);

// Componentwise polarization of a mapping; the result lives in the codomain's
// direction space.
Direction polarize_map(const AffineMap& g, const Point& p, std::span<const Direction> dirs);

// sum over I of delta^|I| f(q; v^I); equals f(q + v_1 + ... + v_n).
Scalar reconstruct_increment(const ScalarField& f, const Point& q, std::span<const Direction> dirs);

// sum over pairs I u I' = N of delta^|I| f * delta^|I'| f2; equals the
// polarization of the pointwise product.
Scalar leibniz_expand(const ScalarField& f, const ScalarField& f2, const Point& q,
                      std::span<const Direction> dirs);

// sum over distinct-subset covers of delta^k f(g(p); delta g blocks); equals
// the polarization of the composition.
Scalar chain_expand(const ScalarField& f, const AffineMap& g, const Point& p,
                    std::span<const Direction> dirs);

}  // namespace polcal

#endif
