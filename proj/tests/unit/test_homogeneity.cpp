#include <doctest.h>

#include "polcal/homogeneity.hpp"

using namespace polcal;

namespace {

const std::vector<std::string> xy = {"x", "y"};
const std::vector<std::string> just_x = {"x"};

}  // namespace

TEST_CASE("monomials prove homogeneity exactly") {
  ScalarField f = ScalarField::from_polynomial(ScalarField::parse("x^2*y", 2, xy).to_polynomial());
  HomogeneityVerdict v = is_homogeneous(f, Point::origin(2), 3, 5);
  CHECK(v.kind == VerdictKind::ExactProof);
  CHECK(v.degree == 3);
  // wrong degree fails with a concrete witness
  HomogeneityVerdict wrong = is_homogeneous(f, Point::origin(2), 2, 5);
  CHECK(wrong.kind == VerdictKind::Fail);
  REQUIRE(!wrong.witnesses.empty());
  CHECK(wrong.witnesses[0].lhs != wrong.witnesses[0].rhs);
}

TEST_CASE("shifted polynomial fails with witness") {
  ScalarField f = ScalarField::from_polynomial(ScalarField::parse("x^2 + x", 1, just_x).to_polynomial());
  HomogeneityVerdict v = is_homogeneous(f, Point::origin(1), 2, 6);
  CHECK(v.kind == VerdictKind::Fail);
  REQUIRE(!v.witnesses.empty());
}

TEST_CASE("zero polynomial reports indeterminate degree") {
  ScalarField zero = ScalarField::from_polynomial(Polynomial::zero(1, {Rational(0)}));
  HomogeneityVerdict v = is_homogeneous(zero, Point::origin(1), 4, 5);
  CHECK(v.kind == VerdictKind::ExactProof);
  CHECK_FALSE(v.degree.has_value());
}

TEST_CASE("the rational witness is homogeneous but not a polynomial") {
  ScalarField f = ScalarField::parse("x^3/(x^2 + y^2)", 2, xy);
  HomogeneityVerdict hom = is_homogeneous(f, Point::origin(2), 1, 25);
  CHECK(hom.kind == VerdictKind::SampledPass);
  CHECK(hom.imputed_base_value);

  HomogeneityVerdict poly = is_homogeneous_polynomial(f, Point::origin(2), 1, 25);
  CHECK(poly.kind == VerdictKind::Fail);
  REQUIRE(!poly.witnesses.empty());
  CHECK(poly.witnesses[0].check == "slot-additivity");
}

TEST_CASE("absolute value is rejected by a negative lambda") {
  ScalarField f = ScalarField::parse("abs(x)", 1, just_x);
  HomogeneityVerdict v = is_homogeneous(f, Point::origin(1), 1, 12);
  CHECK(v.kind == VerdictKind::Fail);
  REQUIRE(!v.witnesses.empty());
  bool negative_lambda_witness = false;
  for (const auto& w : v.witnesses)
    if (w.lambda && w.lambda->sign() < 0) negative_lambda_witness = true;
  CHECK(negative_lambda_witness);
}

TEST_CASE("homogeneous polynomial verdicts") {
  ScalarField xy_field = ScalarField::from_polynomial(ScalarField::parse("x*y", 2, xy).to_polynomial());
  HomogeneityVerdict v = is_homogeneous_polynomial(xy_field, Point::origin(2), 2, 8);
  CHECK(v.kind == VerdictKind::ExactProof);

  ScalarField c = ScalarField::from_polynomial(ScalarField::parse("7", 1, just_x).to_polynomial());
  CHECK(is_homogeneous_polynomial(c, Point::origin(1), 0, 4).pass());
}

TEST_CASE("multilinearity check catches non-additive slots") {
  // F(q; v) = 3 v_1 passes
  ExtendedField linear;
  linear.dimension = 1;
  linear.frozen_arity = 1;
  linear.eval = [](const Point&, std::span<const Direction> v) { return Scalar(3) * v[0][0]; };
  CHECK(multilinearity_check(linear, Point::origin(1), 1, 6).pass());

  // F(q; v) = v_1^2 fails additivity: 4 != 2 at v = w = e_1
  ExtendedField square;
  square.dimension = 1;
  square.frozen_arity = 1;
  square.eval = [](const Point&, std::span<const Direction> v) { return v[0][0] * v[0][0]; };
  HomogeneityVerdict v = multilinearity_check(square, Point::origin(1), 1, 6);
  CHECK(v.kind == VerdictKind::Fail);
  REQUIRE(!v.witnesses.empty());

  // delta^2(x^2) = 2 u v is bilinear
  ScalarField f = ScalarField::from_polynomial(ScalarField::parse("x^2", 1, just_x).to_polynomial());
  CHECK(multilinearity_check(polarization_operator(as_extended(f), 2), Point::origin(1), 2, 6).pass());
}

TEST_CASE("component extraction walks degrees top down") {
  ScalarField f = ScalarField::from_polynomial(ScalarField::parse("1 + x + x^2", 1, just_x).to_polynomial());
  auto components = extract_homogeneous_components(f, Point::origin(1), 2);
  REQUIRE(components.size() == 3);
  CHECK(components[0].polynomial().eval_rational({Rational(9)}) == 1);
  CHECK(components[1].polynomial().eval_rational({Rational(9)}) == 9);
  CHECK(components[2].polynomial().eval_rational({Rational(9)}) == 81);

  ScalarField c = ScalarField::from_polynomial(ScalarField::parse("5", 1, just_x).to_polynomial());
  auto constant_only = extract_homogeneous_components(c, Point::origin(1), 0);
  REQUIRE(constant_only.size() == 1);
  CHECK(constant_only[0].polynomial().eval_rational({Rational(2)}) == 5);

  ScalarField overflow = ScalarField::from_polynomial(ScalarField::parse("x^2", 1, just_x).to_polynomial());
  CHECK_THROWS_AS(extract_homogeneous_components(overflow, Point::origin(1), 1), NotPolyhomogeneous);
}

TEST_CASE("extraction agrees with homogeneous parts after rebase") {
  Sampler rng(37);
  for (int i = 0; i < 25; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    Point q0 = rng.point(d);
    const int n = std::max(p.degree(), 0);
    auto components = extract_homogeneous_components(ScalarField::from_polynomial(p), q0, n);
    Polynomial rebased = p.rebase(q0.exact_coords());
    Polynomial sum = Polynomial::zero(d, rebased.base());
    for (int m = 0; m <= n; ++m) {
      CHECK(components[static_cast<std::size_t>(m)].polynomial().terms() ==
            rebased.homogeneous_part(m).terms());
      sum = sum + components[static_cast<std::size_t>(m)].polynomial();
    }
    CHECK(sum.terms() == rebased.terms());  // components sum back to f exactly
  }
}

TEST_CASE("extraction from expression trees evaluates correctly") {
  // (x+1)^2 kept as an expression: components by evaluation
  ScalarField f = ScalarField::parse("(x+1)^2", 1, just_x);
  auto components = extract_homogeneous_components(f, Point::origin(1), 2);
  REQUIRE(components.size() == 3);
  Point probe({Scalar(7)});
  CHECK(components[0].eval(probe) == Scalar(1));
  CHECK(components[1].eval(probe) == Scalar(14));
  CHECK(components[2].eval(probe) == Scalar(49));
}

TEST_CASE("product of homogeneous fields is homogeneous of the summed degree") {
  Sampler rng(41);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n1 = static_cast<int>(rng.integer(0, 3));
    const int n2 = static_cast<int>(rng.integer(0, 3));
    Polynomial h1 = rng.homogeneous_polynomial(d, n1);
    Polynomial h2 = rng.homogeneous_polynomial(d, n2);
    Polynomial prod = h1 * h2;
    if (prod.is_zero()) continue;
    HomogeneityVerdict v =
        is_homogeneous(ScalarField::from_polynomial(prod), prod.base_point(), n1 + n2, 4);
    CHECK(v.kind == VerdictKind::ExactProof);
  }
}

TEST_CASE("unidirectional differences inherit the scaling degree") {
  // Delta^j f(q; lambda v) = lambda^n Delta^j f(q; v) for f homogeneous of
  // degree n and j <= n
  Sampler rng(47);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n = static_cast<int>(rng.integer(0, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    ScalarField f = ScalarField::from_polynomial(hom);
    Point q = hom.base_point();
    Direction v = rng.nonzero_direction(d);
    Scalar lambda = Scalar::exact(rng.nonzero_rational(5, 3));
    for (int j = 0; j <= n; ++j) {
      Scalar scaled = polarize_unidirectional(f, q, lambda * v, j);
      Scalar plain = polarize_unidirectional(f, q, v, j);
      CHECK(scaled == lambda.pow(n) * plain);
    }
  }
}

TEST_CASE("euler scaling identities") {
  ScalarField f = ScalarField::from_polynomial(ScalarField::parse("x^2", 1, just_x).to_polynomial());
  Point q = Point::origin(1);
  Direction v({Scalar(1)});
  // Delta^2 f(1; 1) = f(3) - 2 f(2) + f(1) = 2 and rhs = 2 * f(1)
  auto [lhs, rhs] = euler_scaling_check(f, q, 2, 2, v, Scalar(1));
  CHECK(lhs == Scalar(2));
  CHECK(rhs == Scalar(2));

  auto [lhs3, rhs3] = euler_scaling_check(f, q, 2, 3, v, Scalar::exact(Rational(5, 7)));
  CHECK(lhs3 == Scalar(0));
  CHECK(rhs3 == Scalar(0));

  auto [lhs0, rhs0] = euler_scaling_check(f, q, 2, 1, v, Scalar(0));
  CHECK(lhs0 == Scalar(0));
  CHECK(rhs0 == Scalar(0));

  // random homogeneous polynomials: lhs = rhs exactly for all k <= n + 2
  Sampler rng(43);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n = static_cast<int>(rng.integer(0, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    ScalarField field = ScalarField::from_polynomial(hom);
    Direction dir = rng.nonzero_direction(d);
    Scalar lambda = Scalar::exact(rng.rational(5, 3));
    for (int k = 0; k <= n + 2; ++k) {
      auto [l, r] = euler_scaling_check(field, hom.base_point(), n, k, dir, lambda);
      CHECK(l == r);
    }
  }
}
