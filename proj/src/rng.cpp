#include "polcal/rng.hpp"

namespace polcal {

long long Sampler::integer(long long lo, long long hi) {
  std::uniform_int_distribution<long long> dist(lo, hi);
  return dist(engine_);
}

Rational Sampler::rational(long long max_num, long long max_den) {
  return Rational(BigInt(integer(-max_num, max_num)), BigInt(integer(1, max_den)));
}

Rational Sampler::nonzero_rational(long long max_num, long long max_den) {
  while (true) {
    Rational r = rational(max_num, max_den);
    if (!r.is_zero()) return r;
  }
}

Scalar Sampler::exact_scalar(long long max_num, long long max_den) {
  return Scalar::exact(rational(max_num, max_den));
}

Point Sampler::point(int dim) {
  std::vector<Scalar> c;
  c.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) c.push_back(exact_scalar());
  return Point(std::move(c));
}

Direction Sampler::direction(int dim) {
  std::vector<Scalar> c;
  c.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) c.push_back(exact_scalar());
  return Direction(std::move(c));
}

Direction Sampler::nonzero_direction(int dim) {
  while (true) {
    Direction v = direction(dim);
    if (!v.is_zero()) return v;
  }
}

Polynomial Sampler::polynomial(int dim, int max_degree, int max_terms) {
  Polynomial p = Polynomial::zero(dim, std::vector<Rational>(static_cast<std::size_t>(dim)));
  for (int t = 0; t < max_terms; ++t) {
    std::vector<int> exps(static_cast<std::size_t>(dim), 0);
    int budget = static_cast<int>(integer(0, max_degree));
    for (int i = 0; i < dim && budget > 0; ++i) {
      int e = static_cast<int>(integer(0, budget));
      exps[static_cast<std::size_t>(i)] = e;
      budget -= e;
    }
    p.add_term(exps, rational());
  }
  return p;
}

Polynomial Sampler::homogeneous_polynomial(int dim, int n, int max_terms) {
  while (true) {
    Polynomial p = Polynomial::zero(dim, std::vector<Rational>(static_cast<std::size_t>(dim)));
    for (int t = 0; t < max_terms; ++t) {
      std::vector<int> exps(static_cast<std::size_t>(dim), 0);
      int budget = n;
      for (int i = 0; i < dim - 1; ++i) {
        int e = static_cast<int>(integer(0, budget));
        exps[static_cast<std::size_t>(i)] = e;
        budget -= e;
      }
      exps[static_cast<std::size_t>(dim - 1)] = budget;
      p.add_term(exps, rational());
    }
    if (!p.is_zero()) return p;
  }
}

}  // namespace polcal
