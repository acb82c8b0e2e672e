#include "polcal/combinatorics.hpp"

#include <algorithm>

namespace polcal {

IndexSubset IndexSubset::from_mask(int n, std::uint32_t mask) {
  IndexSubset s;
  s.ambient = n;
  s.mask = mask;
  for (int i = 1; i <= n; ++i)
    if (mask & (1u << (i - 1))) s.members.push_back(i);
  return s;
}

bool SubsetCover::covers_ambient() const {
  std::uint32_t u = 0;
  for (const auto& b : blocks) u |= b.mask;
  return u == ((1u << ambient) - 1u);
}

bool SubsetCover::is_partition() const {
  int total = 0;
  for (const auto& b : blocks) total += b.size();
  return covers_ambient() && total == ambient;
}

std::vector<IndexSubset> subsets(int n) {
  if (n < 0 || n > 20) throw OrderTooLarge("materialized subsets support n <= 20, got " + std::to_string(n));
  std::vector<IndexSubset> out;
  out.reserve(1ull << n);
  for_each_subset(n, [&](const IndexSubset& s) { out.push_back(s); });
  return out;
}

std::vector<SubsetCover> distinct_subset_covers(int n) {
  if (n < 1 || n > 4)
    throw OrderTooLarge("distinct subset covers support 1 <= n <= 4, got " + std::to_string(n));
  const std::uint32_t full = (1u << n) - 1u;
  // the 2^n - 1 nonempty subsets, in bitmask order
  std::vector<IndexSubset> pool;
  for (std::uint32_t m = 1; m <= full; ++m) pool.push_back(IndexSubset::from_mask(n, m));

  std::vector<SubsetCover> out;
  const std::uint64_t selections = 1ull << pool.size();
  for (std::uint64_t sel = 1; sel < selections; ++sel) {
    std::uint32_t covered = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (sel & (1ull << i)) covered |= pool[i].mask;
    if (covered != full) continue;
    SubsetCover cover;
    cover.ambient = n;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (sel & (1ull << i)) cover.blocks.push_back(pool[i]);
    std::sort(cover.blocks.begin(), cover.blocks.end(),
              [](const IndexSubset& a, const IndexSubset& b) { return a.members < b.members; });
    out.push_back(std::move(cover));
  }
  return out;
}

std::vector<std::pair<IndexSubset, IndexSubset>> leibniz_pairs(int n) {
  if (n < 0 || n > 12) throw OrderTooLarge("materialized leibniz pairs support n <= 12, got " + std::to_string(n));
  std::vector<std::pair<IndexSubset, IndexSubset>> out;
  for_each_leibniz_pair(n, [&](const IndexSubset& a, const IndexSubset& b) { out.emplace_back(a, b); });
  return out;
}

Scalar multinomial(int n, const std::vector<int>& parts) {
  long long sum = 0;
  for (int p : parts) {
    if (p < 0) throw PartsSumMismatch("multinomial parts must be nonnegative");
    sum += p;
  }
  if (sum != n)
    throw PartsSumMismatch("multinomial parts sum to " + std::to_string(sum) + ", expected " + std::to_string(n));
  BigInt acc(1);
  int remaining = n;
  for (int p : parts) {
    acc *= binomial(static_cast<unsigned>(remaining), static_cast<unsigned>(p));
    remaining -= p;
  }
  return Scalar::exact(Rational(acc));
}

namespace {

// integer power with the 0^0 = 1 convention
BigInt int_pow(const BigInt& base, unsigned e) {
  BigInt acc(1);
  BigInt b = base;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

BigInt euler_sum_int(int n, int m, int l) {
  BigInt total(0);
  for (int k = 0; k <= n; ++k) {
    BigInt term = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) *
                  int_pow(BigInt(l + k), static_cast<unsigned>(m));
    if ((n - k) % 2 != 0) term = -term;
    total += term;
  }
  return total;
}

}  // namespace

Scalar euler_alternating_sum(int n, int m, int l) {
  if (n < 0 || m < 0 || l < 0) throw OrderTooLarge("euler_alternating_sum requires nonnegative arguments");
  if (n > kEulerCap || m > kEulerCap)
    throw OrderTooLarge("euler_alternating_sum supports n, m <= " + std::to_string(kEulerCap));
  BigInt total = euler_sum_int(n, m, l);
  if (m < n && total != 0) throw InternalDefect("Euler sum nonzero for m < n");
  if (m == n && total != factorial(static_cast<unsigned>(n))) throw InternalDefect("Euler sum != n! for m = n");
  return Scalar::exact(Rational(total));
}

Scalar delta_chi(int k, int n, const Scalar& lambda) {
  if (k < 0 || n < 0) throw OrderTooLarge("delta_chi requires nonnegative orders");
  ScalarAccumulator acc;
  for (int i = 0; i <= n; ++i) {
    BigInt coeff = binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)) * euler_sum_int(k, i, 0);
    if (coeff == 0) continue;  // keeps k > n exactly zero in either mode
    acc.add(Scalar::exact(Rational(coeff)) * lambda.pow(i));
  }
  return acc.total();
}

}  // namespace polcal
