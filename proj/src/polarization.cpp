#include "polcal/polarization.hpp"

#include <algorithm>

namespace polcal {

namespace {

void check_polarize_inputs(const Point& q, std::span<const Direction> dirs, int cap, const char* what) {
  const int n = static_cast<int>(dirs.size());
  if (n > cap)
    throw OrderTooLarge(std::string(what) + " supports order <= " + std::to_string(cap) + ", got " +
                        std::to_string(n));
  for (const auto& v : dirs) require_same_dimension(q.dimension(), v.dimension(), what);
}

Point subset_point(const Point& q, std::span<const Direction> dirs, std::uint32_t mask) {
  if (mask == 0) return q;
  Direction sum = Direction::zero(q.dimension());
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (mask & (1u << i)) sum = sum + dirs[i];
  return translate(q, sum);
}

std::vector<Direction> subset_dirs(std::span<const Direction> dirs, std::uint32_t mask) {
  std::vector<Direction> out;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (mask & (1u << i)) out.push_back(dirs[i]);
  return out;
}

std::vector<int> subset_members(std::uint32_t mask, int n) {
  std::vector<int> m;
  for (int i = 1; i <= n; ++i)
    if (mask & (1u << (i - 1))) m.push_back(i);
  return m;
}

}  // namespace

PolarizationReport polarize_evaluator(const PointFn& f, const Point& q, std::span<const Direction> dirs,
                                      bool with_terms) {
  check_polarize_inputs(q, dirs, kPolarizeCap, "polarize");
  const int n = static_cast<int>(dirs.size());
  const std::uint64_t total = 1ull << n;
  PolarizationReport report;
  report.term_count = total;
  if (with_terms) report.terms.emplace();
  ScalarAccumulator acc;
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    Point at = subset_point(q, dirs, mask);
    Scalar value;
    try {
      value = f(at);
    } catch (const EvalDomainError& e) {
      if (e.has_subset()) throw;
      throw EvalDomainError(e.what(), subset_members(mask, n));
    }
    const int sign = ((n - __builtin_popcountll(m)) % 2 == 0) ? 1 : -1;
    acc.add(sign < 0 ? -value : value);
    if (with_terms)
      report.terms->push_back({IndexSubset::from_mask(n, mask), sign, std::move(at), std::move(value)});
  }
  report.value = acc.total();
  return report;
}

PolarizationReport polarize(const ScalarField& f, const Point& q, std::span<const Direction> dirs,
                            bool with_terms) {
  require_same_dimension(f.dimension(), q.dimension(), "polarize");
  return polarize_evaluator([&f](const Point& at) { return f.eval(at); }, q, dirs, with_terms);
}

Scalar polarize_value(const ScalarField& f, const Point& q, std::span<const Direction> dirs) {
  return polarize(f, q, dirs).value;
}

Scalar polarize_unidirectional_evaluator(const PointFn& f, const Point& q, const Direction& v, int n) {
  if (n < 0) throw OrderTooLarge("polarization order must be nonnegative");
  if (n > kPolarizeCap)
    throw OrderTooLarge("polarize supports order <= " + std::to_string(kPolarizeCap) + ", got " +
                        std::to_string(n));
  require_same_dimension(q.dimension(), v.dimension(), "polarize_unidirectional");
  ScalarAccumulator acc;
  for (int m = 0; m <= n; ++m) {
    Scalar coeff = Scalar::exact(
        Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(m))));
    Scalar value = f(translate(q, Scalar(m) * v));
    Scalar term = coeff * value;
    const int sign = ((n - m) % 2 == 0) ? 1 : -1;
    acc.add(sign < 0 ? -term : term);
  }
  return acc.total();
}

Scalar polarize_unidirectional(const ScalarField& f, const Point& q, const Direction& v, int n) {
  require_same_dimension(f.dimension(), q.dimension(), "polarize_unidirectional");
  return polarize_unidirectional_evaluator([&f](const Point& at) { return f.eval(at); }, q, v, n);
}

ExtendedField as_extended(const ScalarField& f) {
  ExtendedField F;
  F.dimension = f.dimension();
  F.frozen_arity = 0;
  F.eval = [f](const Point& q, std::span<const Direction>) { return f.eval(q); };
  return F;
}

ExtendedField polarization_operator(const ExtendedField& F, int n) {
  if (n < 0) throw OrderTooLarge("polarization order must be nonnegative");
  ExtendedField G;
  G.dimension = F.dimension;
  G.frozen_arity = F.frozen_arity + n;
  G.eval = [F, n](const Point& q, std::span<const Direction> args) {
    if (static_cast<int>(args.size()) != F.frozen_arity + n)
      throw DimensionMismatch("extended field arity");
    return polarize_extended(F, q, args.subspan(0, static_cast<std::size_t>(n)),
                             args.subspan(static_cast<std::size_t>(n)));
  };
  return G;
}

Scalar polarize_extended(const ExtendedField& F, const Point& q, std::span<const Direction> dirs,
                         std::span<const Direction> frozen) {
  if (static_cast<int>(frozen.size()) != F.frozen_arity)
    throw DimensionMismatch("polarize_extended: expected " + std::to_string(F.frozen_arity) +
                            " frozen arguments, got " + std::to_string(frozen.size()));
  auto fn = [&F, frozen](const Point& at) { return F.eval(at, frozen); };
  return polarize_evaluator(fn, q, dirs).value;
}

Direction polarize_map(const AffineMap& g, const Point& p, std::span<const Direction> dirs) {
  std::vector<Scalar> out;
  out.reserve(g.components().size());
  for (const auto& comp : g.components()) out.push_back(polarize_value(comp, p, dirs));
  return Direction(std::move(out));
}

Scalar reconstruct_increment(const ScalarField& f, const Point& q, std::span<const Direction> dirs) {
  check_polarize_inputs(q, dirs, kPolarizeCap, "reconstruct_increment");
  const int n = static_cast<int>(dirs.size());
  ScalarAccumulator acc;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    auto sub = subset_dirs(dirs, static_cast<std::uint32_t>(m));
    acc.add(polarize_value(f, q, sub));
  }
  return acc.total();
}

Scalar leibniz_expand(const ScalarField& f, const ScalarField& f2, const Point& q,
                      std::span<const Direction> dirs) {
  check_polarize_inputs(q, dirs, kLeibnizExpandCap, "leibniz_expand");
  require_same_dimension(f.dimension(), f2.dimension(), "leibniz_expand");
  const int n = static_cast<int>(dirs.size());
  const std::uint64_t total = 1ull << n;
  // memoize the sub-polarizations of both factors per index subset
  std::vector<Scalar> delta_f(total), delta_f2(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    auto sub = subset_dirs(dirs, static_cast<std::uint32_t>(m));
    delta_f[m] = polarize_value(f, q, sub);
    delta_f2[m] = polarize_value(f2, q, sub);
  }
  ScalarAccumulator acc;
  for_each_leibniz_pair(n, [&](const IndexSubset& a, const IndexSubset& b) {
    acc.add(delta_f[a.mask] * delta_f2[b.mask]);
  });
  return acc.total();
}

Scalar chain_expand(const ScalarField& f, const AffineMap& g, const Point& p,
                    std::span<const Direction> dirs) {
  const int n = static_cast<int>(dirs.size());
  if (n > kChainExpandCap)
    throw OrderTooLarge("chain_expand supports order <= " + std::to_string(kChainExpandCap) + ", got " +
                        std::to_string(n));
  require_same_dimension(f.dimension(), g.codomain_dimension(), "chain_expand");
  require_same_dimension(g.domain_dimension(), p.dimension(), "chain_expand");
  for (const auto& v : dirs) require_same_dimension(p.dimension(), v.dimension(), "chain_expand");
  const Point at_image = g.eval(p);
  if (n == 0) return f.eval(at_image);

  // block values w_I = delta^|I| g(p; u^I) per nonempty subset, bitmask order
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<Direction> block_value;
  block_value.reserve(full);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto sub = subset_dirs(dirs, mask);
    block_value.push_back(polarize_map(g, p, sub));
  }

  // f-values at g(p) + sums of distinct block values, keyed by the set of
  // participating blocks; covers overlap heavily in these points
  std::vector<std::optional<Scalar>> value_cache(1ull << full);
  auto value_at = [&](std::uint32_t block_set) -> const Scalar& {
    auto& slot = value_cache[block_set];
    if (!slot) {
      Direction sum = Direction::zero(at_image.dimension());
      for (std::uint32_t i = 0; i < full; ++i)
        if (block_set & (1u << i)) sum = sum + block_value[i];
      slot = f.eval(translate(at_image, sum));
    }
    return *slot;
  };

  ScalarAccumulator outer;
  for (const auto& cover : distinct_subset_covers(n)) {
    const int k = static_cast<int>(cover.blocks.size());
    // delta^k f(g(p); w_1..w_k) over the cached incremented values
    ScalarAccumulator inner;
    const std::uint64_t subsets = 1ull << k;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      std::uint32_t block_set = 0;
      for (int i = 0; i < k; ++i)
        if (s & (1ull << i)) block_set |= 1u << (cover.blocks[static_cast<std::size_t>(i)].mask - 1);
      const Scalar& value = value_at(block_set);
      const int sign = ((k - __builtin_popcountll(s)) % 2 == 0) ? 1 : -1;
      inner.add(sign < 0 ? -value : value);
    }
    outer.add(inner.total());
  }
  return outer.total();
}

}  // namespace polcal
