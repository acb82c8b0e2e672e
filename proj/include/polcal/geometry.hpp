#ifndef POLCAL_GEOMETRY_HPP
#define POLCAL_GEOMETRY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "polcal/scalar.hpp"

namespace polcal {

class Direction;

// Affine position q in Q.  Point + Point is deliberately not defined; the
// affine structure admits Point + Direction and Point - Point only.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Scalar> coords) : coords_(coords) {}
  static Point origin(int dim) { return Point(std::vector<Scalar>(static_cast<std::size_t>(dim))); }

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Scalar& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<Scalar>& coords() const { return coords_; }
  bool all_exact() const;
  std::vector<Rational> exact_coords() const;  // floats convert dyadically

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Scalar> coords_;
};

// Vector v in V, same coordinate length as the ambient points.
class Direction {
 public:
  Direction() = default;
  explicit Direction(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Direction(std::initializer_list<Scalar> coords) : coords_(coords) {}
  static Direction zero(int dim) { return Direction(std::vector<Scalar>(static_cast<std::size_t>(dim))); }
  static Direction basis(int dim, int i);

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Scalar& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<Scalar>& coords() const { return coords_; }
  bool all_exact() const;
  bool is_zero() const;
  std::vector<Rational> exact_coords() const;

  // max-norm as a double, the norm used by remainder diagnostics
  double max_norm() const;

  friend bool operator==(const Direction& a, const Direction& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Scalar> coords_;
};

void require_same_dimension(int a, int b, const char* where);

Point translate(const Point& q, const Direction& v);
Direction difference(const Point& q, const Point& base);  // q - base
Direction operator+(const Direction& a, const Direction& b);
Direction operator-(const Direction& a, const Direction& b);
Direction operator*(const Scalar& c, const Direction& v);

std::string to_string(const Point& q);
std::string to_string(const Direction& v);

}  // namespace polcal

#endif
