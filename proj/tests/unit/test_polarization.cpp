#include <doctest.h>

#include <algorithm>

#include "polcal/polarization.hpp"
#include "polcal/rng.hpp"

using namespace polcal;

namespace {

const std::vector<std::string> just_x = {"x"};

ScalarField poly_field(const Polynomial& p) { return ScalarField::from_polynomial(p); }

std::vector<Direction> ones(int count) {
  return std::vector<Direction>(static_cast<std::size_t>(count), Direction({Scalar(1)}));
}

}  // namespace

TEST_CASE("first and second differences of x^2") {
  ScalarField f = ScalarField::parse("x^2", 1, just_x);
  Point q = Point::origin(1);
  CHECK(polarize_value(f, q, ones(1)) == Scalar(1));  // f(1) - f(0)
  CHECK(polarize_value(f, q, ones(2)) == Scalar(2));  // f(2) - 2 f(1) + f(0)
  CHECK(polarize(f, q, {}).value == Scalar(0));       // n = 0 is f(q)
}

TEST_CASE("term audit list at order three") {
  ScalarField f = ScalarField::parse("x^2", 1, just_x);
  PolarizationReport report = polarize(f, Point::origin(1), ones(3), true);
  REQUIRE(report.terms.has_value());
  REQUIRE(report.terms->size() == 8);
  CHECK(report.term_count == 8);
  // sign pattern: +f(q+v1+v2+v3), -pairs, +singles, -f(q)
  for (const auto& term : *report.terms) {
    const int expected_sign = ((3 - term.subset.size()) % 2 == 0) ? 1 : -1;
    CHECK(term.sign == expected_sign);
  }
  CHECK((*report.terms)[0].subset.members.empty());
  CHECK((*report.terms)[0].sign == -1);
  CHECK((*report.terms)[7].subset.members == std::vector<int>{1, 2, 3});
  CHECK((*report.terms)[7].sign == 1);
  ScalarAccumulator acc;
  for (const auto& term : *report.terms)
    acc.add(term.sign < 0 ? -term.value : term.value);
  CHECK(acc.total() == report.value);
}

TEST_CASE("zero direction annihilates") {
  ScalarField f = ScalarField::parse("x^2 + 3*x", 1, just_x);
  std::vector<Direction> dirs = {Direction({Scalar(2)}), Direction::zero(1)};
  CHECK(polarize_value(f, Point({Scalar(5)}), dirs) == Scalar(0));
}

TEST_CASE("order cap") {
  ScalarField f = ScalarField::parse("x", 1, just_x);
  CHECK_THROWS_AS(polarize(f, Point::origin(1), ones(21)), OrderTooLarge);
}

TEST_CASE("unidirectional stencil") {
  ScalarField cube = ScalarField::parse("x^3", 1, just_x);
  Point q = Point::origin(1);
  Direction v({Scalar(1)});
  // -[0 - 3*1 + 3*8 - 27] = 6 = 3! f(q + v)
  CHECK(polarize_unidirectional(cube, q, v, 3) == Scalar(6));
  CHECK(polarize_unidirectional(cube, q, v, 4) == Scalar(0));
  CHECK(polarize_unidirectional(cube, Point({Scalar(7)}), v, 0) == cube.eval(Point({Scalar(7)})));
  // agrees with the 2^n expansion exactly
  Sampler rng(3);
  for (int i = 0; i < 40; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 4);
    Point at = rng.point(d);
    Direction dir = rng.direction(d);
    const int n = static_cast<int>(rng.integer(0, 5));
    std::vector<Direction> repeated(static_cast<std::size_t>(n), dir);
    CHECK(polarize_unidirectional(poly_field(p), at, dir, n) == polarize_value(poly_field(p), at, repeated));
  }
}

TEST_CASE("symmetry in the vector arguments") {
  Sampler rng(5);
  for (int i = 0; i < 40; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    Point q = rng.point(d);
    const int n = static_cast<int>(rng.integer(1, 4));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    Scalar base = polarize_value(poly_field(p), q, dirs);
    std::vector<Direction> shuffled = dirs;
    for (int s = 0; s < 3; ++s) {
      std::swap(shuffled[static_cast<std::size_t>(rng.integer(0, n - 1))],
                shuffled[static_cast<std::size_t>(rng.integer(0, n - 1))]);
      CHECK(polarize_value(poly_field(p), q, shuffled) == base);
    }
  }
}

TEST_CASE("recursion in the last direction") {
  Sampler rng(6);
  for (int i = 0; i < 40; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    ScalarField f = poly_field(p);
    Point q = rng.point(d);
    const int n = static_cast<int>(rng.integer(1, 4));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    std::vector<Direction> head(dirs.begin(), dirs.end() - 1);
    Scalar expected = polarize_value(f, translate(q, dirs.back()), head) - polarize_value(f, q, head);
    CHECK(polarize_value(f, q, dirs) == expected);
  }
}

TEST_CASE("degree bound annihilation") {
  // delta^(n+1) of a degree <= n polynomial vanishes identically
  Sampler rng(8);
  for (int i = 0; i < 30; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int deg = static_cast<int>(rng.integer(0, 4));
    Polynomial p = rng.polynomial(d, deg);
    Point q = rng.point(d);
    std::vector<Direction> dirs;
    for (int k = 0; k <= deg; ++k) dirs.push_back(rng.direction(d));
    CHECK(polarize_value(poly_field(p), q, dirs) == Scalar(0));
  }
}

TEST_CASE("homogeneous top-degree collapse") {
  // Delta^j f = 0 above the degree and n! f(q+v) at the degree
  Sampler rng(9);
  for (int i = 0; i < 30; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    const int n = static_cast<int>(rng.integer(0, 4));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    ScalarField f = poly_field(hom);
    Point q = hom.base_point();
    Direction v = rng.direction(d);
    CHECK(polarize_unidirectional(f, q, v, n + 1) == Scalar(0));
    Scalar fact = Scalar::exact(Rational(factorial(static_cast<unsigned>(n))));
    CHECK(polarize_unidirectional(f, q, v, n) == fact * f.eval(translate(q, v)));
  }
}

TEST_CASE("extended polarization freezes the vector slots") {
  ScalarField f = ScalarField::parse("x^2", 1, just_x);
  // F(q; w) = f(q) * w_1
  ExtendedField F;
  F.dimension = 1;
  F.frozen_arity = 1;
  F.eval = [f](const Point& q, std::span<const Direction> w) { return f.eval(q) * w[0][0]; };
  Direction w({Scalar(3)});
  std::vector<Direction> frozen = {w};
  std::vector<Direction> dirs = ones(2);
  Scalar lhs = polarize_extended(F, Point::origin(1), dirs, frozen);
  CHECK(lhs == Scalar(3) * polarize_value(f, Point::origin(1), dirs));

  // m = 0 reduces to the plain polarization
  Sampler rng(12);
  for (int i = 0; i < 20; ++i) {
    Polynomial p = rng.polynomial(1, 4);
    Point q = rng.point(1);
    std::vector<Direction> ds = {rng.direction(1), rng.direction(1)};
    CHECK(polarize_extended(as_extended(poly_field(p)), q, ds, {}) == polarize_value(poly_field(p), q, ds));
  }
}

TEST_CASE("iteration composes polarization orders") {
  Sampler rng(13);
  for (int i = 0; i < 25; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    ScalarField f = poly_field(p);
    Point q = rng.point(d);
    for (int n1 = 0; n1 <= 3; ++n1) {
      for (int n2 = 0; n1 + n2 <= 4; ++n2) {
        std::vector<Direction> dirs;
        for (int k = 0; k < n1 + n2; ++k) dirs.push_back(rng.direction(d));
        ExtendedField composed = polarization_operator(polarization_operator(as_extended(f), n2), n1);
        CHECK(composed.eval(q, dirs) == polarize_value(f, q, dirs));
      }
    }
  }
}

TEST_CASE("polarization of mappings") {
  ScalarField idx = ScalarField::parse("x", 1, just_x);
  AffineMap identity({idx});
  Direction u({Scalar(5)});
  std::vector<Direction> du = {u};
  CHECK(polarize_map(identity, Point({Scalar(2)}), du) == u);
  std::vector<Direction> duu = {u, u};
  CHECK(polarize_map(identity, Point({Scalar(2)}), duu) == Direction::zero(1));

  AffineMap square({ScalarField::parse("x^2", 1, just_x)});
  CHECK(polarize_map(square, Point::origin(1), ones(2)) == Direction({Scalar(2)}));
}

TEST_CASE("reconstruction inverts the polarization relation") {
  ScalarField f = ScalarField::parse("x^2", 1, just_x);
  Point q = Point::origin(1);
  // f(0) + delta(0;1) + delta(0;1) + delta^2(0;1,1) = 0 + 1 + 1 + 2 = 4
  CHECK(reconstruct_increment(f, q, ones(2)) == Scalar(4));
  CHECK(reconstruct_increment(f, Point({Scalar(3)}), {}) == Scalar(9));
  Direction v({Scalar::exact(Rational(1, 2))});
  std::vector<Direction> dv = {v};
  CHECK(reconstruct_increment(f, q, dv) == f.eval(translate(q, v)));

  Sampler rng(17);
  for (int i = 0; i < 30; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p = rng.polynomial(d, 5);
    Point at = rng.point(d);
    const int n = static_cast<int>(rng.integer(0, 5));
    std::vector<Direction> dirs;
    Direction sum = Direction::zero(d);
    for (int k = 0; k < n; ++k) {
      dirs.push_back(rng.direction(d));
      sum = sum + dirs.back();
    }
    CHECK(reconstruct_increment(poly_field(p), at, dirs) == poly_field(p).eval(translate(at, sum)));
  }
}

TEST_CASE("leibniz expansion at the finite level") {
  ScalarField x = ScalarField::parse("x", 1, just_x);
  Point q = Point::origin(1);
  // delta f * delta f2 + delta f * f2(0) + f(0) * delta f2 = 1
  CHECK(leibniz_expand(x, x, q, ones(1)) == Scalar(1));
  ScalarField c3 = ScalarField::parse("3", 1, just_x);
  CHECK(leibniz_expand(x, c3, Point({Scalar(2)}), {}) == Scalar(6));

  Sampler rng(19);
  for (int i = 0; i < 30; ++i) {
    const int d = static_cast<int>(rng.integer(1, 3));
    Polynomial p1 = rng.polynomial(d, 5);
    Polynomial p2 = rng.polynomial(d, 5);
    Point at = rng.point(d);
    const int n = static_cast<int>(rng.integer(0, 4));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(d));
    Scalar expanded = leibniz_expand(poly_field(p1), poly_field(p2), at, dirs);
    Scalar direct = polarize_value(poly_field(p1 * p2), at, dirs);
    CHECK(expanded == direct);
  }
}

TEST_CASE("chain expansion single cover at order one") {
  ScalarField f = ScalarField::parse("y^2", 1, {"y"});
  AffineMap g({ScalarField::parse("x^2", 1, just_x)});
  Point p({Scalar(3)});
  Direction u({Scalar(1)});
  std::vector<Direction> du = {u};
  Direction dg = polarize_map(g, p, du);
  Scalar inner = polarize_value(f, g.eval(p), std::vector<Direction>{dg});
  CHECK(chain_expand(f, g, p, du) == inner);
  CHECK(chain_expand(f, g, p, du) == polarize_value(compose(f, g), p, du));
}

TEST_CASE("chain expansion order two worked example") {
  // f = y^2, g = x^2: (f o g)(x) = x^4; delta^2 at 0 in (1,1) is 16 - 2 = 14
  ScalarField f = ScalarField::parse("y^2", 1, {"y"});
  AffineMap g({ScalarField::parse("x^2", 1, just_x)});
  Point p = Point::origin(1);
  CHECK(chain_expand(f, g, p, ones(2)) == Scalar(14));
  CHECK(polarize_value(compose(f, g), p, ones(2)) == Scalar(14));
}

TEST_CASE("chain expansion on affine inner maps") {
  // delta^(>=2) g = 0 for affine g, so only covers whose blocks all map to
  // first differences survive
  ScalarField f = ScalarField::parse("y^3 + y", 1, {"y"});
  AffineMap g({ScalarField::parse("2*x + 1", 1, just_x)});
  Sampler rng(23);
  for (int i = 0; i < 10; ++i) {
    Point p = rng.point(1);
    const int n = static_cast<int>(rng.integer(1, 3));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(1));
    CHECK(chain_expand(f, g, p, dirs) == polarize_value(compose(f, g), p, dirs));
  }
}

TEST_CASE("chain expansion equals polarization of the composition") {
  Sampler rng(29);
  for (int i = 0; i < 25; ++i) {
    const int dp = static_cast<int>(rng.integer(1, 2));
    const int dq = static_cast<int>(rng.integer(1, 2));
    std::vector<ScalarField> comps;
    for (int c = 0; c < dq; ++c) comps.push_back(poly_field(rng.polynomial(dp, 3)));
    AffineMap g(comps);
    ScalarField f = poly_field(rng.polynomial(dq, 3));
    Point p = rng.point(dp);
    const int n = static_cast<int>(rng.integer(0, 3));
    std::vector<Direction> dirs;
    for (int k = 0; k < n; ++k) dirs.push_back(rng.direction(dp));
    CHECK(chain_expand(f, g, p, dirs) == polarize_value(compose(f, g), p, dirs));
  }
}

TEST_CASE("multinomial expansion of homogeneous polynomials") {
  // f(q + v_1 + .. + v_m) as the multinomial-weighted sum of polarizations
  // with repeated slots, for f homogeneous of degree n
  Sampler rng(31);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng.integer(1, 2));
    const int n = static_cast<int>(rng.integer(1, 3));
    const int m = static_cast<int>(rng.integer(1, 3));
    Polynomial hom = rng.homogeneous_polynomial(d, n);
    ScalarField f = poly_field(hom);
    Point q = hom.base_point();
    std::vector<Direction> vs;
    Direction total = Direction::zero(d);
    for (int j = 0; j < m; ++j) {
      vs.push_back(rng.direction(d));
      total = total + vs.back();
    }
    // sum over compositions (n_1..n_m) of n
    ScalarAccumulator sum;
    std::vector<int> parts(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> walk = [&](int slot, int left) {
      if (slot == m - 1) {
        parts[static_cast<std::size_t>(slot)] = left;
        std::vector<Direction> repeated;
        for (int j = 0; j < m; ++j)
          for (int rep = 0; rep < parts[static_cast<std::size_t>(j)]; ++rep)
            repeated.push_back(vs[static_cast<std::size_t>(j)]);
        Scalar weight = multinomial(n, parts) / Scalar::exact(Rational(factorial(static_cast<unsigned>(n))));
        sum.add(weight * polarize_value(f, q, repeated));
        return;
      }
      for (int take = 0; take <= left; ++take) {
        parts[static_cast<std::size_t>(slot)] = take;
        walk(slot + 1, left - take);
      }
    };
    walk(0, n);
    CHECK(sum.total() == f.eval(translate(q, total)));
  }
}

TEST_CASE("domain errors carry the offending subset") {
  ScalarField f = ScalarField::parse("1/x", 1, just_x);
  std::vector<Direction> dirs = {Direction({Scalar(-1)})};
  try {
    polarize(f, Point({Scalar(1)}), dirs);  // hits x = 0 at subset {1}
    FAIL("expected EvalDomainError");
  } catch (const EvalDomainError& e) {
    REQUIRE(e.has_subset());
    CHECK(e.subset() == std::vector<int>{1});
  }
}
