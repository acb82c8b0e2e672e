#ifndef POLCAL_RNG_HPP
#define POLCAL_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "polcal/geometry.hpp"
#include "polcal/polynomial.hpp"
#include "polcal/scalar.hpp"

namespace polcal {

// Seeded source of small exact rationals, points, directions and random
// rational polynomials.  Every sampled verdict and verify suite owns one of
// these explicitly; nothing draws from ambient global state.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // uniform integer in [lo, hi]
  long long integer(long long lo, long long hi);

  // numerator in [-max_num, max_num], denominator in [1, max_den]
  Rational rational(long long max_num = 9, long long max_den = 4);
  Rational nonzero_rational(long long max_num = 9, long long max_den = 4);

  Scalar exact_scalar(long long max_num = 9, long long max_den = 4);

  Point point(int dim);
  Direction direction(int dim);
  Direction nonzero_direction(int dim);

  // random rational polynomial with max_terms monomials of total degree <=
  // max_degree (sparse; may collapse to fewer terms)
  Polynomial polynomial(int dim, int max_degree, int max_terms = 6);

  // homogeneous polynomial of exact total degree n (zero polynomial excluded)
  Polynomial homogeneous_polynomial(int dim, int n, int max_terms = 4);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace polcal

#endif
