#ifndef POLCAL_TAYLOR_HPP
#define POLCAL_TAYLOR_HPP

#include <optional>
#include <vector>

#include "polcal/derivative.hpp"
#include "polcal/homogeneity.hpp"

namespace polcal {

struct TaylorOptions {
  RichardsonOptions richardson;
  // verdict threshold on the final ratio row; the sequence must also be
  // non-increasing over its last three rows
  double ratio_tol = 0.05;
  Rational t0 = Rational(1, 8);  // remainder-profile start
  int shrinks = 6;
  Rational probe_t0 = Rational(1, 16);  // modified-Taylor probe start
  int probe_shrinks = 8;
  int probe_rays = 3;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Direction> directions;  // profile probes; coordinate basis (+ diagonal) when empty
};

struct TaylorResult {
  Polynomial polynomial;    // base_point q, degree <= n
  ScalarField remainder;    // f minus the polynomial, lazily evaluated

  TaylorResult(Polynomial p, ScalarField r) : polynomial(std::move(p)), remainder(std::move(r)) {}
};

struct ProfileRow {
  double t = 0.0;
  Direction dir;
  double ratio = 0.0;
};

// Finite table of |r(q + t v)| / ||t v||^n against shrinking t; the verdict
// supports or refutes the limit, it never certifies it.
struct RemainderProfile {
  int order = 0;
  std::vector<ProfileRow> rows;  // grouped per direction, t decreasing
  bool pass = false;
  double ratio_tol = 0.0;
};

// Taylor polynomial of order n at q: the degree-m piece is assembled from
// d^m f(q; e_i1..e_im) over sorted basis multisets with 1/(n_1!..n_d!)
// weights.  Polynomial-backed f of degree <= n comes back rebased verbatim
// with an identically-zero remainder.
TaylorResult taylor_polynomial(const ScalarField& f, const Point& q, int n, const TaylorOptions& opts = {});

// Degree-j homogeneous piece via (1/j!) D^j f(q; .); insensitive to any
// order-n remainder in f.  A claimed decomposition, when supplied, is
// cross-checked against the extraction.
Polynomial extract_component(const ScalarField& f, const Point& q, int j, int n,
                             const TaylorOptions& opts = {},
                             const std::vector<Polynomial>* claimed_components = nullptr);

RemainderProfile remainder_profile(const ScalarField& r, const Point& q, int n,
                                   const TaylorOptions& opts = {});

// Two-point probe of the modified Taylor expansion: samples (q, q') -> q0
// along seeded rays and tabulates
//   |f(q') - sum_k D^k f(q; q'-q)/k!| / ||q'-q||^n.
RemainderProfile modified_taylor_probe(const ScalarField& f, const Point& q0, int n,
                                       const TaylorOptions& opts = {});

}  // namespace polcal

#endif
