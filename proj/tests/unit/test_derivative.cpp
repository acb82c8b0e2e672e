#include <doctest.h>

#include <cmath>

#include "polcal/derivative.hpp"
#include "polcal/rng.hpp"

using namespace polcal;

namespace {

const std::vector<std::string> just_x = {"x"};
const std::vector<std::string> xy = {"x", "y"};

Polynomial lower(const std::string& src, int dim, const std::vector<std::string>& vars) {
  return ScalarField::parse(src, dim, vars).to_polynomial();
}

std::vector<Direction> repeat(const Direction& v, int n) {
  return std::vector<Direction>(static_cast<std::size_t>(n), v);
}

}  // namespace

TEST_CASE("exact symbolic limit") {
  Polynomial x2 = lower("x^2", 1, just_x);
  Direction e({Scalar(1)});
  DerivativeEstimate d2 = derive_exact(x2, Point::origin(1), repeat(e, 2));
  CHECK(d2.value == Scalar(2));
  CHECK(d2.method == DerivMethod::ExactPolynomial);
  CHECK_FALSE(d2.error_estimate.has_value());

  // order above the degree vanishes
  CHECK(derive_exact(x2, Point({Scalar(5)}), repeat(e, 3)).value == Scalar(0));

  // mixed partial of xy in the basis multidirection
  Polynomial xyp = lower("x*y", 2, xy);
  std::vector<Direction> basis = {Direction::basis(2, 0), Direction::basis(2, 1)};
  CHECK(derive_exact(xyp, Point::origin(2), basis).value == Scalar(1));

  // order zero is evaluation
  CHECK(derive_exact(x2, Point({Scalar(3)}), {}).value == Scalar(9));
}

TEST_CASE("derivative homogeneity and symmetry") {
  Sampler rng(51);
  for (int i = 0; i < 30; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    Point q = rng.point(d);
    const int n = static_cast<int>(rng.integer(1, 4));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    Scalar base = derive_exact(p, q, dirs).value;

    Scalar lambda = Scalar::exact(rng.rational(5, 3));
    std::vector<Direction> scaled;
    for (const auto& v : dirs) scaled.push_back(lambda * v);
    CHECK(derive_exact(p, q, scaled).value == lambda.pow(n) * base);

    std::vector<Direction> shuffled = dirs;
    std::swap(shuffled.front(), shuffled.back());
    CHECK(derive_exact(p, q, shuffled).value == base);
  }
}

TEST_CASE("richardson limit on smooth fields") {
  ScalarField e = ScalarField::parse("exp(x)", 1, just_x);
  Direction v({Scalar(1)});
  DerivativeEstimate d2 = derive_numeric(e, Point::origin(1), repeat(v, 2), {});
  CHECK(d2.method == DerivMethod::Richardson);
  CHECK(std::fabs(d2.value.dbl() - 1.0) < 1e-7);
  REQUIRE(d2.error_estimate.has_value());
  CHECK(d2.steps_used.size() == 5);

  // polynomial backing routes to the exact oracle
  ScalarField cube = ScalarField::from_polynomial(lower("x^3", 1, just_x));
  DerivativeEstimate d3 = derive_numeric(cube, Point::origin(1), repeat(v, 3), {});
  CHECK(d3.method == DerivMethod::ExactPolynomial);
  CHECK(d3.value == Scalar(6));  // n! f(q + v) for the homogeneous cubic

  CHECK_THROWS_AS(derive_numeric(e, Point::origin(1), repeat(v, 9), {}), OrderTooLarge);
}

TEST_CASE("richardson error estimate decreases with depth on exp") {
  ScalarField e = ScalarField::parse("exp(x)", 1, just_x);
  Direction v({Scalar(1)});
  double previous = 1.0;
  for (int levels = 3; levels <= 6; ++levels) {
    RichardsonOptions opts;
    opts.levels = levels;
    DerivativeEstimate est = derive_numeric(e, Point::origin(1), repeat(v, 1), opts);
    REQUIRE(est.error_estimate.has_value());
    CHECK(*est.error_estimate < previous);
    previous = *est.error_estimate;
  }
}

TEST_CASE("multidirectional stencil handles distinct directions") {
  ScalarField f = ScalarField::parse("sin(x + y)", 2, xy);
  std::vector<Direction> dirs = {Direction({Scalar(1), Scalar(0)}), Direction({Scalar(0), Scalar(1)})};
  DerivativeEstimate est = derive_numeric(f, Point::origin(2), dirs, {});
  // d^2 sin(x+y) in (e1, e2) at 0 is -sin(0) = 0
  CHECK(std::fabs(est.value.dbl()) < 1e-8);
}

TEST_CASE("euler theorem factors") {
  Polynomial x2y = lower("x^2*y", 2, xy);
  Direction v({Scalar(1), Scalar(1)});
  auto [lhs1, rhs1] = euler_theorem_check(x2y, 1, v);
  CHECK(lhs1 == Scalar(3));
  CHECK(rhs1 == Scalar(3));
  auto [lhs4, rhs4] = euler_theorem_check(x2y, 4, v);
  CHECK(lhs4 == Scalar(0));
  CHECK(rhs4 == Scalar(0));
  auto [lhs3, rhs3] = euler_theorem_check(x2y, 3, v);
  CHECK(lhs3 == Scalar(6));  // k! f(q+v) at k = n = 3
  CHECK(lhs3 == rhs3);

  CHECK_THROWS_AS(euler_theorem_check(lower("x^2 + x", 1, just_x), 1, Direction({Scalar(1)})),
                  NotHomogeneous);
}

TEST_CASE("kronecker collapse on homogeneous polynomials") {
  Sampler rng(57);
  for (int i = 0; i < 25; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n = static_cast<int>(rng.integer(0, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    Point q = hom.base_point();
    Direction v = rng.direction(d);
    for (int m = 0; m <= n + 2; ++m) {
      Scalar value = derive_exact(hom, q, repeat(v, m)).value;
      if (m == n) {
        Scalar fact = Scalar::exact(Rational(factorial(static_cast<unsigned>(n))));
        CHECK(value == fact * hom.eval(translate(q, v)));
      } else {
        CHECK(value == Scalar(0));
      }
    }
  }
}

TEST_CASE("directional derivative ratio identity") {
  // D^k f(q+v; v) = (n+m-k)!/(n-k)! D^(k-m) f(q+v; v) on homogeneous f
  Sampler rng(61);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 2));
    const int n = static_cast<int>(rng.integer(1, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    Direction v = rng.nonzero_direction(d);
    Point at = translate(hom.base_point(), v);
    for (int k = 0; k <= n; ++k) {
      for (int m = 0; m <= k; ++m) {
        Scalar dk = derive_exact(hom, at, repeat(v, k)).value;
        Scalar dkm = derive_exact(hom, at, repeat(v, k - m)).value;
        Rational factor = Rational(factorial(static_cast<unsigned>(n + m - k))) /
                          Rational(factorial(static_cast<unsigned>(n - k)));
        CHECK(dk == Scalar::exact(factor) * dkm);
      }
    }
  }
}

TEST_CASE("derivative equals polarization on homogeneous polynomials") {
  // d^n f = delta^n f on degree-n homogeneous polynomials, any directions
  Sampler rng(63);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n = static_cast<int>(rng.integer(1, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    Point q = hom.base_point();
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    CHECK(derive_exact(hom, q, dirs).value ==
          polarize_value(ScalarField::from_polynomial(hom), q, dirs));
  }
}

TEST_CASE("iterated derivatives compose") {
  Sampler rng(67);
  for (int i = 0; i < 25; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    Point q = rng.point(d);
    for (int n1 = 0; n1 <= 3; ++n1) {
      for (int n2 = 0; n1 + n2 <= 5; ++n2) {
        std::vector<Direction> dirs;
        for (int k = 0; k < n1 + n2; ++k) dirs.push_back(rng.direction(d));
        std::vector<Direction> outer(dirs.begin(), dirs.begin() + n1);
        std::vector<Direction> inner(dirs.begin() + n1, dirs.end());
        Polynomial inner_field = derivative_field(p, inner);
        Scalar iterated = derive_exact(inner_field, q, outer).value;
        Scalar single = derive_exact(p, q, dirs).value;
        CHECK(iterated == single);
      }
    }
  }
}

TEST_CASE("leibniz rule for derivatives") {
  ScalarField x = ScalarField::from_polynomial(lower("x", 1, just_x));
  Point q = Point::origin(1);
  Direction v({Scalar(1)});
  auto [lhs, rhs] = leibniz_derivative_check(x, x, q, repeat(v, 1));
  CHECK(lhs == Scalar(0));  // d(x^2) at 0 is 2q = 0
  CHECK(rhs == Scalar(0));

  ScalarField x2 = ScalarField::from_polynomial(lower("x^2", 1, just_x));
  auto [lhs2, rhs2] = leibniz_derivative_check(x2, x, q, repeat(v, 2));
  CHECK(lhs2 == rhs2);
  CHECK(lhs2 == Scalar(0));  // second derivative of x^3 at 0

  // constant second factor collapses to c * d^n f
  ScalarField c = ScalarField::from_polynomial(lower("5", 1, just_x));
  auto [lhsc, rhsc] = leibniz_derivative_check(x2, c, Point({Scalar(2)}), repeat(v, 2));
  CHECK(lhsc == Scalar(10));
  CHECK(lhsc == rhsc);

  Sampler rng(71);
  for (int i = 0; i < 25; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    ScalarField f = ScalarField::from_polynomial(rng.polynomial(d, 5));
    ScalarField f2 = ScalarField::from_polynomial(rng.polynomial(d, 5));
    Point at = rng.point(d);
    const int n = static_cast<int>(rng.integer(0, 4));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    auto [l, r] = leibniz_derivative_check(f, f2, at, dirs);
    CHECK(l == r);
  }
}

TEST_CASE("chain rule for derivatives") {
  // f = y^2, g = x^2 at p = 1: d^2(x^4) = 12 = 8 + 4 over the two partitions
  ScalarField f = ScalarField::from_polynomial(lower("y^2", 1, {"y"}));
  AffineMap g({ScalarField::from_polynomial(lower("x^2", 1, just_x))});
  Point p({Scalar(1)});
  Direction u({Scalar(1)});
  auto [lhs, rhs] = chain_derivative_check(f, g, p, repeat(u, 2));
  CHECK(lhs == Scalar(12));
  CHECK(rhs == Scalar(12));

  // order one is the ordinary chain rule
  auto [lhs1, rhs1] = chain_derivative_check(f, g, p, repeat(u, 1));
  CHECK(lhs1 == rhs1);
  CHECK(lhs1 == Scalar(4));  // 4 x^3 at 1

  Sampler rng(73);
  for (int i = 0; i < 20; ++i) {
    const int dp = static_cast<int>(rng.integer(1, 2));
    const int dq = static_cast<int>(rng.integer(1, 2));
    std::vector<ScalarField> comps;
    for (int c = 0; c < dq; ++c) comps.push_back(ScalarField::from_polynomial(rng.polynomial(dp, 3)));
    AffineMap gr(comps);
    ScalarField fr = ScalarField::from_polynomial(rng.polynomial(dq, 3));
    Point at = rng.point(dp);
    const int n = static_cast<int>(rng.integer(0, 3));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(dp));
    auto [l, r] = chain_derivative_check(fr, gr, at, dirs);
    CHECK(l == r);
  }
}

TEST_CASE("mixed partial bridge") {
  ScalarField xyf = ScalarField::from_polynomial(lower("x*y", 2, xy));
  std::vector<Direction> basis = {Direction::basis(2, 0), Direction::basis(2, 1)};
  auto [multi, nested] = mixed_partial_bridge(xyf, Point::origin(2), basis);
  CHECK(multi.value == Scalar(1));
  CHECK(nested.value == Scalar(1));

  ScalarField x2 = ScalarField::from_polynomial(lower("x^2", 1, just_x));
  Direction e({Scalar(1)});
  auto [m2, n2] = mixed_partial_bridge(x2, Point::origin(1), repeat(e, 2));
  CHECK(m2.value == Scalar(2));
  CHECK(n2.value == Scalar(2));

  // order one: multi and nested are the same limit by definition
  ScalarField expf = ScalarField::parse("exp(x)", 1, just_x);
  auto [m1, n1] = mixed_partial_bridge(expf, Point::origin(1), repeat(e, 1));
  CHECK(std::fabs(m1.value.dbl() - n1.value.dbl()) <= 1e-9);

  // smooth expression at order two: agreement within combined estimates
  ScalarField sinf = ScalarField::parse("sin(x + y)", 2, xy);
  auto [ms, ns] = mixed_partial_bridge(sinf, Point({Scalar::exact(Rational(1, 3)), Scalar(0)}), basis);
  REQUIRE(ms.error_estimate.has_value());
  REQUIRE(ns.error_estimate.has_value());
  CHECK(std::fabs(ms.value.dbl() - ns.value.dbl()) <= *ms.error_estimate + *ns.error_estimate);

  // exact agreement across the polynomial corpus
  Sampler rng(79);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    ScalarField f = ScalarField::from_polynomial(rng.polynomial(d, 4));
    Point q = rng.point(d);
    const int n = static_cast<int>(rng.integer(1, 4));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    auto [m, nn] = mixed_partial_bridge(f, q, dirs);
    CHECK(m.value == nn.value);
  }
}
