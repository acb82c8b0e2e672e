#ifndef POLCAL_POLYNOMIAL_HPP
#define POLCAL_POLYNOMIAL_HPP

#include <map>
#include <span>
#include <vector>

#include "polcal/geometry.hpp"
#include "polcal/scalar.hpp"

namespace polcal {

// Dense univariate polynomial over Rational; the formal parameter s in which
// polarizations are expanded when derivatives are taken symbolically.
class UniPoly {
 public:
  UniPoly() = default;  // zero
  static UniPoly constant(Rational c);
  static UniPoly linear(Rational c0, Rational c1);  // c0 + c1*s

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(int i) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly pow(unsigned e) const;
  void scale(const Rational& c);

 private:
  void trim();
  std::vector<Rational> coeffs_;  // coeffs_[i] multiplies s^i; no trailing zeros
};

// Graded-lexicographic term order: total degree ascending, then exponent
// tuple ascending lexicographically.
struct GradedLexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Exact multivariate polynomial with rational coefficients; monomials are
// read in the displaced coordinates (x - base_point).
class Polynomial {
 public:
  using TermMap = std::map<std::vector<int>, Rational, GradedLexLess>;

  Polynomial() = default;
  static Polynomial zero(int dim, std::vector<Rational> base);
  static Polynomial constant(int dim, std::vector<Rational> base, Rational value);
  static Polynomial monomial(int dim, std::vector<Rational> base, std::vector<int> exponents, Rational coeff);
  static Polynomial variable(int dim, std::vector<Rational> base, int index);  // (x_index - base_index)

  int dimension() const { return dim_; }
  const std::vector<Rational>& base() const { return base_; }
  Point base_point() const;
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 marks the zero polynomial
  bool is_homogeneous_of(int n) const;

  void add_term(const std::vector<int>& exponents, const Rational& coeff);

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned e) const;

  Scalar eval(const Point& q) const;
  Rational eval_rational(const std::vector<Rational>& x) const;
  // Value along x(s) with x(s)_i - base_i = offset_i + s * step_i.
  UniPoly eval_on_ray(const std::vector<Rational>& offset, const std::vector<Rational>& step) const;

  // parts[m] holds exactly the total-degree-m terms; empty list for zero.
  std::vector<Polynomial> homogeneous_parts() const;
  Polynomial homogeneous_part(int m) const;

  // Same function, terms re-collected around new_base; degree is preserved.
  Polynomial rebase(const std::vector<Rational>& new_base) const;
  Polynomial rebase(const Point& new_base) const;

  // Substitution: this(y) with y_j = components[j](x); components share a
  // common domain dimension and base point.
  Polynomial compose(const std::vector<Polynomial>& components) const;

  Polynomial partial_derivative(int i) const;
  Polynomial directional_derivative(const std::vector<Rational>& v) const;

  Polynomial truncate(int max_total_degree) const;

 private:
  int dim_ = 0;
  std::vector<Rational> base_;
  TermMap terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

// Product in the truncated algebra P^n: full product with every component of
// total degree > n discarded.
Polynomial truncated_product(const Polynomial& a, const Polynomial& b, int n);

// Symmetric multilinear coefficient table of a homogeneous polynomial,
// F(q; v_1..v_n) = delta^n p, stored on sorted index multisets.
class SymmetricForm {
 public:
  SymmetricForm(int arity, int dim, std::vector<Rational> base);

  int arity() const { return arity_; }
  int dimension() const { return dim_; }
  const std::vector<Rational>& base() const { return base_; }

  void set_coeff(std::vector<int> multiset, Rational value);
  const Rational& coeff(const std::vector<int>& multiset) const;

  // Multilinear expansion over the coefficient table.
  Scalar eval(std::span<const Direction> dirs) const;

 private:
  int arity_;
  int dim_;
  std::vector<Rational> base_;
  std::map<std::vector<int>, Rational> table_;
  Rational zero_;
};

// F = delta^n p_hom at the base point of p_hom; (1/n!) F(v..v) = p_hom(q+v).
SymmetricForm symmetric_form(const Polynomial& p_hom);

}  // namespace polcal

#endif
