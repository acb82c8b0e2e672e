#ifndef POLCAL_FIELD_HPP
#define POLCAL_FIELD_HPP

#include <string>
#include <variant>
#include <vector>

#include "polcal/expr.hpp"
#include "polcal/geometry.hpp"
#include "polcal/polynomial.hpp"

namespace polcal {

// Evaluable function f: Q -> R, backed by a parsed expression tree or an
// exact polynomial.
class ScalarField {
 public:
  static ScalarField from_ast(AstPtr ast, int dim);
  static ScalarField from_polynomial(Polynomial p);
  // Convenience: parse + wrap.
  static ScalarField parse(const std::string& src, int dim, const std::vector<std::string>& var_names);

  int dimension() const { return dim_; }
  bool polynomial_backed() const { return std::holds_alternative<Polynomial>(backing_); }
  const Polynomial& polynomial() const { return std::get<Polynomial>(backing_); }
  const AstPtr& ast() const { return std::get<AstPtr>(backing_); }

  Scalar eval(const Point& q) const;

  // Exact lowering; NotPolynomial names the offending node when the tree
  // leaves the polynomial closure.
  Polynomial to_polynomial() const;

  // AST view of either backing (polynomials expand their displaced monomials).
  AstPtr as_ast() const;

  // True when eval returns Exact scalars for all-exact points.
  bool exactly_evaluable_field() const;

 private:
  ScalarField(std::variant<AstPtr, Polynomial> backing, int dim, bool exact_capable)
      : backing_(std::move(backing)), dim_(dim), exact_capable_(exact_capable) {}

  std::variant<AstPtr, Polynomial> backing_;
  int dim_ = 0;
  bool exact_capable_ = false;
};

// Pointwise product; polynomial backings multiply exactly, anything else
// becomes a product expression tree.
ScalarField product(const ScalarField& f, const ScalarField& g);

// Mapping g: P -> Q given by one scalar component per codomain coordinate.
class AffineMap {
 public:
  explicit AffineMap(std::vector<ScalarField> components);

  int domain_dimension() const { return components_.front().dimension(); }
  int codomain_dimension() const { return static_cast<int>(components_.size()); }
  const std::vector<ScalarField>& components() const { return components_; }

  Point eval(const Point& p) const;
  bool polynomial_backed() const;

 private:
  std::vector<ScalarField> components_;
};

// f composed with g; polynomial f with polynomial g composes exactly,
// otherwise the composition is an expression-tree substitution.
ScalarField compose(const ScalarField& f, const AffineMap& g);

}  // namespace polcal

#endif
