#ifndef POLCAL_COMBINATORICS_HPP
#define POLCAL_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "polcal/scalar.hpp"

namespace polcal {

// Subset of {1..n}, members sorted ascending, mirrored as a bitmask
// (bit i-1 set iff i is a member).
struct IndexSubset {
  int ambient = 0;
  std::uint32_t mask = 0;
  std::vector<int> members;

  static IndexSubset from_mask(int n, std::uint32_t mask);
  int size() const { return static_cast<int>(members.size()); }
  bool operator==(const IndexSubset& o) const { return ambient == o.ambient && mask == o.mask; }
};

// Collection of pairwise-distinct nonempty subsets covering {1..n}.
// Blocks are kept lexicographically sorted by member list.
struct SubsetCover {
  int ambient = 0;
  std::vector<IndexSubset> blocks;

  bool covers_ambient() const;
  // Blocks pairwise disjoint and total size n, i.e. a set partition of {1..n}.
  bool is_partition() const;
};

inline constexpr int kSubsetOrderCap = 30;

// Visits all 2^n subsets of {1..n} once, in bitmask order.
template <class Fn>
void for_each_subset(int n, Fn&& fn) {
  if (n < 0 || n > kSubsetOrderCap)
    throw OrderTooLarge("subset enumeration supports 0 <= n <= " + std::to_string(kSubsetOrderCap) +
                        ", got " + std::to_string(n));
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) fn(IndexSubset::from_mask(n, static_cast<std::uint32_t>(mask)));
}

std::vector<IndexSubset> subsets(int n);  // materialized, n <= 20

// All collections of pairwise-distinct nonempty subsets of {1..n} whose
// union is {1..n}; each collection appears exactly once.  Grows doubly
// exponentially, hence the hard cap n <= 4.
std::vector<SubsetCover> distinct_subset_covers(int n);

inline constexpr int kLeibnizOrderCap = 20;

// Visits every ordered pair (I, I') with I union I' = {1..n}; 3^n pairs,
// deterministic order.
template <class Fn>
void for_each_leibniz_pair(int n, Fn&& fn) {
  if (n < 0 || n > kLeibnizOrderCap)
    throw OrderTooLarge("leibniz pair enumeration supports 0 <= n <= " + std::to_string(kLeibnizOrderCap) +
                        ", got " + std::to_string(n));
  const std::uint32_t full = static_cast<std::uint32_t>((1ull << n) - 1);
  for (std::uint64_t first = 0; first <= full; ++first) {
    const auto i_mask = static_cast<std::uint32_t>(first);
    // I' = (N \ I) | J over all J subset of I, ascending submask order
    const std::uint32_t complement = full & ~i_mask;
    std::uint32_t j = 0;
    while (true) {
      fn(IndexSubset::from_mask(n, i_mask), IndexSubset::from_mask(n, complement | j));
      if (j == i_mask) break;
      j = (j - i_mask) & i_mask;
    }
  }
}

std::vector<std::pair<IndexSubset, IndexSubset>> leibniz_pairs(int n);  // materialized, n <= 12

// n! / (parts[0]! ... parts[m-1]!) via the telescoping binomial product.
Scalar multinomial(int n, const std::vector<int>& parts);

inline constexpr int kEulerCap = 25;

// sum_k (-1)^(n-k) C(n,k) (l+k)^m, computed termwise in exact integers.
// Equals 0 for m < n and n! for m = n; both are asserted internally.
Scalar euler_alternating_sum(int n, int m, int l);

// Delta^k chi^n(1; lambda) where chi^n(q; lambda) = (q + lambda)^n, via the
// closed-form double sum; 0 for k > n and lambda^k k! for k = n.
Scalar delta_chi(int k, int n, const Scalar& lambda);

}  // namespace polcal

#endif
