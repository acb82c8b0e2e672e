#include "polcal/geometry.hpp"

#include <cmath>

namespace polcal {

namespace {

bool coords_all_exact(const std::vector<Scalar>& c) {
  for (const auto& s : c)
    if (!s.is_exact()) return false;
  return true;
}

std::vector<Rational> coords_to_rational(const std::vector<Scalar>& c) {
  std::vector<Rational> out;
  out.reserve(c.size());
  for (const auto& s : c) out.push_back(s.to_rational());
  return out;
}

}  // namespace

bool Point::all_exact() const { return coords_all_exact(coords_); }
std::vector<Rational> Point::exact_coords() const { return coords_to_rational(coords_); }

Direction Direction::basis(int dim, int i) {
  std::vector<Scalar> c(static_cast<std::size_t>(dim));
  c[static_cast<std::size_t>(i)] = Scalar(1);
  return Direction(std::move(c));
}

bool Direction::all_exact() const { return coords_all_exact(coords_); }
std::vector<Rational> Direction::exact_coords() const { return coords_to_rational(coords_); }

bool Direction::is_zero() const {
  for (const auto& s : coords_)
    if (!s.is_zero()) return false;
  return true;
}

double Direction::max_norm() const {
  double m = 0.0;
  for (const auto& s : coords_) m = std::max(m, std::fabs(s.dbl()));
  return m;
}

void require_same_dimension(int a, int b, const char* where) {
  if (a != b)
    throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

Point translate(const Point& q, const Direction& v) {
  require_same_dimension(q.dimension(), v.dimension(), "translate");
  std::vector<Scalar> c;
  c.reserve(q.coords().size());
  for (int i = 0; i < q.dimension(); ++i) c.push_back(q[i] + v[i]);
  return Point(std::move(c));
}

Direction difference(const Point& q, const Point& base) {
  require_same_dimension(q.dimension(), base.dimension(), "difference");
  std::vector<Scalar> c;
  c.reserve(q.coords().size());
  for (int i = 0; i < q.dimension(); ++i) c.push_back(q[i] - base[i]);
  return Direction(std::move(c));
}

Direction operator+(const Direction& a, const Direction& b) {
  require_same_dimension(a.dimension(), b.dimension(), "direction sum");
  std::vector<Scalar> c;
  c.reserve(a.coords().size());
  for (int i = 0; i < a.dimension(); ++i) c.push_back(a[i] + b[i]);
  return Direction(std::move(c));
}

Direction operator-(const Direction& a, const Direction& b) {
  require_same_dimension(a.dimension(), b.dimension(), "direction difference");
  std::vector<Scalar> c;
  c.reserve(a.coords().size());
  for (int i = 0; i < a.dimension(); ++i) c.push_back(a[i] - b[i]);
  return Direction(std::move(c));
}

Direction operator*(const Scalar& c, const Direction& v) {
  std::vector<Scalar> out;
  out.reserve(v.coords().size());
  for (int i = 0; i < v.dimension(); ++i) out.push_back(c * v[i]);
  return Direction(std::move(out));
}

namespace {
std::string coords_str(const std::vector<Scalar>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += c[i].str();
  }
  return s + ")";
}
}  // namespace

std::string to_string(const Point& q) { return coords_str(q.coords()); }
std::string to_string(const Direction& v) { return coords_str(v.coords()); }

}  // namespace polcal
