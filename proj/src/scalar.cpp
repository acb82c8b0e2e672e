#include "polcal/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace polcal {

Rational rational_pow(const Rational& base, long long exponent) {
  if (exponent == 0) return Rational(1);
  if (base.is_zero() && exponent < 0) throw ZeroToNegativePower();
  bool invert = exponent < 0;
  unsigned long long e = invert ? static_cast<unsigned long long>(-exponent) : static_cast<unsigned long long>(exponent);
  Rational acc(1);
  Rational b = base;
  while (e > 0) {
    if (e & 1ull) acc *= b;
    b *= b;
    e >>= 1;
  }
  if (invert) acc = Rational(1) / acc;
  return acc;
}

BigInt factorial(unsigned n) {
  BigInt acc(1);
  for (unsigned i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt acc(1);
  for (unsigned i = 0; i < k; ++i) {
    acc *= (n - i);
    acc /= (i + 1);  // exact: product of j consecutive integers is divisible by j!
  }
  return acc;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw NumericalBreakdown("cannot convert non-finite float to rational");
  return Rational(v);
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

bool try_parse_rational(const std::string& text, Rational& out) {
  if (text.empty()) return false;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      out = Rational(BigInt(text));
    } else {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw DivisionByZero();
      out = Rational(num, den);
    }
  } catch (const DivisionByZero&) {
    throw;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

std::string double_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double Scalar::dbl() const {
  if (mode_ == Mode::Float) return dbl_;
  return rat_.convert_to<double>();
}

Rational Scalar::to_rational() const {
  if (mode_ == Mode::Exact) return rat_;
  return rational_from_double(dbl_);
}

Scalar Scalar::operator-() const {
  return is_exact() ? Scalar::exact(-rat_) : Scalar::real(-dbl_);
}

Scalar Scalar::abs() const {
  return is_exact() ? Scalar::exact(rat_ < 0 ? Rational(-rat_) : rat_) : Scalar::real(std::fabs(dbl_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact(a.rat_ + b.rat_);
  return Scalar::real(a.dbl() + b.dbl());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact(a.rat_ - b.rat_);
  return Scalar::real(a.dbl() - b.dbl());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact(a.rat_ * b.rat_);
  return Scalar::real(a.dbl() * b.dbl());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_exact() && b.is_exact()) return Scalar::exact(a.rat_ / b.rat_);
  return Scalar::real(a.dbl() / b.dbl());
}

Scalar Scalar::pow(long long exponent) const {
  if (is_exact()) return Scalar::exact(rational_pow(rat_, exponent));
  if (dbl_ == 0.0 && exponent < 0) throw ZeroToNegativePower();
  return Scalar::real(std::pow(dbl_, static_cast<double>(exponent)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rat_ == b.rat_;
  return a.dbl() == b.dbl();
}

int Scalar::sign() const {
  if (is_exact()) return rat_.sign();
  return dbl_ > 0 ? 1 : (dbl_ < 0 ? -1 : 0);
}

std::string Scalar::str() const {
  if (is_exact()) return rational_to_string(rat_);
  return double_to_string(dbl_);
}

Scalar Scalar::parse(const std::string& text) {
  if (text.empty()) throw SyntaxError(1, {"number"}, "empty numeric literal");
  bool decimal = text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
                 text.find('E') != std::string::npos;
  if (decimal) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) throw SyntaxError(1, {"number"}, "malformed float literal '" + text + "'");
    return Scalar::real(v);
  }
  std::string body = text;
  bool negate = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negate = body[0] == '-';
    body = body.substr(1);
  }
  Rational r;
  if (!try_parse_rational(body, r)) throw SyntaxError(1, {"number"}, "malformed rational literal '" + text + "'");
  return Scalar::exact(negate ? Rational(-r) : r);
}

void ScalarAccumulator::add(const Scalar& term) {
  if (exact_ && term.is_exact()) {
    exact_sum_ += term.rat();
    return;
  }
  if (exact_) {
    float_sum_ = exact_sum_.convert_to<double>();
    compensation_ = 0.0;
    exact_ = false;
  }
  double v = term.dbl();
  double t = float_sum_ + v;
  if (std::fabs(float_sum_) >= std::fabs(v)) {
    compensation_ += (float_sum_ - t) + v;
  } else {
    compensation_ += (v - t) + float_sum_;
  }
  float_sum_ = t;
}

Scalar ScalarAccumulator::total() const {
  if (exact_) return Scalar::exact(exact_sum_);
  return Scalar::real(float_sum_ + compensation_);
}

bool TolerancePolicy::close(double a, double b) const {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::fabs(a - b) <= abs_tol + rel_tol * std::max(std::fabs(a), std::fabs(b));
}

bool TolerancePolicy::close(const Scalar& a, const Scalar& b) const { return close(a.dbl(), b.dbl()); }

bool values_agree(const Scalar& a, const Scalar& b, const TolerancePolicy& tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return tol.close(a, b);
}

}  // namespace polcal
