#ifndef POLCAL_SCALAR_HPP
#define POLCAL_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "polcal/errors.hpp"

namespace polcal {

// Arbitrary-precision rational, always reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational rational_pow(const Rational& base, long long exponent);
BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// Exact dyadic rational equal to the given finite double.
Rational rational_from_double(double v);

std::string rational_to_string(const Rational& r);
bool try_parse_rational(const std::string& text, Rational& out);

// Shortest decimal that round-trips to the same double.
std::string double_to_string(double v);

enum class Mode { Exact, Float };

// The single numeric currency: an exact rational or a 64-bit float, with
// float mode contagious through arithmetic.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : rat_(v) {}
  Scalar(long long v) : rat_(v) {}
  static Scalar exact(Rational r) {
    Scalar s;
    s.rat_ = std::move(r);
    return s;
  }
  static Scalar real(double v) {
    Scalar s;
    s.mode_ = Mode::Float;
    s.dbl_ = v;
    return s;
  }

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }
  bool is_zero() const { return is_exact() ? rat_.is_zero() : dbl_ == 0.0; }

  // Exact payload; only meaningful in Exact mode.
  const Rational& rat() const { return rat_; }

  // Numeric value in either mode (exact values convert).
  double dbl() const;

  // Exact rational equal to this value (floats convert dyadically, exactly).
  Rational to_rational() const;

  Scalar operator-() const;
  Scalar abs() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar pow(long long exponent) const;

  // Exact equality when both operands are exact, double equality otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  int sign() const;

  // "p/q" (or "p") for exact values, shortest round-trip decimal for floats.
  std::string str() const;

  // Accepts "p/q", "p", or a decimal literal (decimal point / exponent
  // marker force Float mode).
  static Scalar parse(const std::string& text);

 private:
  Mode mode_ = Mode::Exact;
  Rational rat_;
  double dbl_ = 0.0;
};

// Running sum that stays exact while every addend is exact and switches to
// Neumaier-compensated double accumulation on first float contact.  The
// switch preserves the partial sum, so the result depends only on addend
// order, which callers keep deterministic.
class ScalarAccumulator {
 public:
  void add(const Scalar& term);
  Scalar total() const;

 private:
  bool exact_ = true;
  Rational exact_sum_;
  double float_sum_ = 0.0;
  double compensation_ = 0.0;
};

// Symmetric absolute/relative closeness test used by every sampled verdict.
struct TolerancePolicy {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  bool close(const Scalar& a, const Scalar& b) const;
  bool close(double a, double b) const;
};

// Exact comparison for exact pairs, tolerance comparison otherwise.
bool values_agree(const Scalar& a, const Scalar& b, const TolerancePolicy& tol);

}  // namespace polcal

#endif
