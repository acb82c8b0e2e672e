#include <doctest.h>

#include <algorithm>
#include <set>

#include "polcal/combinatorics.hpp"
#include "polcal/field.hpp"
#include "polcal/polarization.hpp"

using namespace polcal;

TEST_CASE("subset streams") {
  CHECK(subsets(0).size() == 1);
  CHECK(subsets(0)[0].members.empty());

  auto two = subsets(2);
  REQUIRE(two.size() == 4);
  CHECK(two[0].members.empty());
  CHECK(two[1].members == std::vector<int>{1});
  CHECK(two[2].members == std::vector<int>{2});
  CHECK(two[3].members == std::vector<int>{1, 2});

  CHECK(subsets(3).size() == 8);
  for (int n = 0; n <= 12; ++n) {
    std::uint64_t count = 0;
    for_each_subset(n, [&](const IndexSubset&) { ++count; });
    CHECK(count == (1ull << n));
  }
  CHECK_THROWS_AS(for_each_subset(31, [](const IndexSubset&) {}), OrderTooLarge);
}

namespace {

// independent brute force: filter all collections of nonempty subsets
std::set<std::set<std::set<int>>> brute_force_covers(int n) {
  std::vector<std::set<int>> pool;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    std::set<int> s;
    for (int i = 1; i <= n; ++i)
      if (m & (1u << (i - 1))) s.insert(i);
    pool.push_back(s);
  }
  std::set<std::set<std::set<int>>> covers;
  for (std::uint64_t sel = 1; sel < (1ull << pool.size()); ++sel) {
    std::set<std::set<int>> collection;
    std::set<int> un;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (sel & (1ull << i)) {
        collection.insert(pool[i]);
        un.insert(pool[i].begin(), pool[i].end());
      }
    if (static_cast<int>(un.size()) == n) covers.insert(collection);
  }
  return covers;
}

}  // namespace

TEST_CASE("distinct subset covers") {
  auto one = distinct_subset_covers(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].blocks.size() == 1);
  CHECK(one[0].blocks[0].members == std::vector<int>{1});

  auto two = distinct_subset_covers(2);
  CHECK(two.size() == 5);

  for (int n = 1; n <= 3; ++n) {
    auto enumerated = distinct_subset_covers(n);
    for (const auto& cover : enumerated) CHECK(cover.covers_ambient());
    // agreement with the independent brute-force filter, as sets of sets
    std::set<std::set<std::set<int>>> seen;
    for (const auto& cover : enumerated) {
      std::set<std::set<int>> collection;
      for (const auto& b : cover.blocks) collection.insert(std::set<int>(b.members.begin(), b.members.end()));
      CHECK(collection.size() == cover.blocks.size());  // blocks pairwise distinct
      seen.insert(collection);
    }
    CHECK(seen.size() == enumerated.size());  // each collection exactly once
    CHECK(seen == brute_force_covers(n));
  }

  CHECK_THROWS_AS(distinct_subset_covers(0), OrderTooLarge);
  CHECK_THROWS_AS(distinct_subset_covers(5), OrderTooLarge);
}

TEST_CASE("leibniz pairs") {
  auto zero = leibniz_pairs(0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].first.members.empty());
  CHECK(zero[0].second.members.empty());

  auto one = leibniz_pairs(1);
  CHECK(one.size() == 3);

  for (int n = 0; n <= 6; ++n) {
    auto pairs = leibniz_pairs(n);
    std::uint64_t expected = 1;
    for (int i = 0; i < n; ++i) expected *= 3;
    CHECK(pairs.size() == expected);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    const std::uint32_t full = (1u << n) - 1u;
    for (const auto& [a, b] : pairs) {
      CHECK((a.mask | b.mask) == full);
      seen.emplace(a.mask, b.mask);
    }
    CHECK(seen.size() == pairs.size());
  }
}

TEST_CASE("multinomial coefficients") {
  CHECK(multinomial(3, {1, 1, 1}) == Scalar(6));
  CHECK(multinomial(4, {2, 2}) == Scalar(6));
  CHECK(multinomial(7, {7}) == Scalar(1));
  CHECK(multinomial(0, {}) == Scalar(1));
  CHECK_THROWS_AS(multinomial(4, {2, 1}), PartsSumMismatch);
  CHECK_THROWS_AS(multinomial(2, {3, -1}), PartsSumMismatch);
}

TEST_CASE("euler alternating sum closed form") {
  CHECK(euler_alternating_sum(2, 2, 0) == Scalar(2));
  CHECK(euler_alternating_sum(3, 2, 5) == Scalar(0));
  CHECK(euler_alternating_sum(0, 0, 7) == Scalar(1));
  // exhaustive small grid: termwise equals the closed form
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= n; ++m)
      for (int l = 0; l <= 10; ++l) {
        Scalar value = euler_alternating_sum(n, m, l);
        if (m < n) CHECK(value == Scalar(0));
        else CHECK(value == Scalar::exact(Rational(factorial(static_cast<unsigned>(n)))));
      }
  CHECK_THROWS_AS(euler_alternating_sum(26, 3, 0), OrderTooLarge);
}

TEST_CASE("delta chi closed form") {
  Scalar half = Scalar::exact(Rational(1, 2));
  CHECK(delta_chi(2, 2, half) == Scalar::exact(Rational(1, 2)));  // lambda^k k! = 2 (1/2)^2
  CHECK(delta_chi(3, 2, half) == Scalar(0));
  CHECK(delta_chi(3, 2, Scalar::real(0.7)) == Scalar(0));
  Scalar lam = Scalar::exact(Rational(5, 3));
  CHECK(delta_chi(1, 1, lam) == lam);
}

TEST_CASE("delta chi equals the polarization of (1 + lambda s)^n") {
  // cross-module oracle: Delta^k applied through the polarization engine
  for (int n = 0; n <= 5; ++n) {
    for (int k = 0; k <= n + 2; ++k) {
      for (const Rational& lr : {Rational(1, 2), Rational(-2), Rational(3, 4)}) {
        Scalar lambda = Scalar::exact(lr);
        Polynomial chi = Polynomial::constant(1, {Rational(0)}, Rational(1)) +
                         Polynomial::variable(1, {Rational(0)}, 0).scaled(lr);
        ScalarField field = ScalarField::from_polynomial(chi.pow(static_cast<unsigned>(n)));
        Scalar via_engine = polarize_unidirectional(field, Point::origin(1), Direction::basis(1, 0), k);
        CHECK(via_engine == delta_chi(k, n, lambda));
      }
    }
  }
}
