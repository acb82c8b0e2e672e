#include "polcal/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "polcal/combinatorics.hpp"

namespace polcal {

UniPoly UniPoly::constant(Rational c) {
  UniPoly p;
  if (!c.is_zero()) p.coeffs_.push_back(std::move(c));
  return p;
}

UniPoly UniPoly::linear(Rational c0, Rational c1) {
  UniPoly p;
  p.coeffs_ = {std::move(c0), std::move(c1)};
  p.trim();
  return p;
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  UniPoly out;
  if (a.coeffs_.empty() || b.coeffs_.empty()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  out.trim();
  return out;
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly acc = UniPoly::constant(Rational(1));
  UniPoly b = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

void UniPoly::scale(const Rational& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return;
  }
  for (auto& x : coeffs_) x *= c;
}

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

Polynomial Polynomial::zero(int dim, std::vector<Rational> base) {
  Polynomial p;
  p.dim_ = dim;
  p.base_ = std::move(base);
  if (static_cast<int>(p.base_.size()) != dim) throw DimensionMismatch("polynomial base point dimension");
  return p;
}

Polynomial Polynomial::constant(int dim, std::vector<Rational> base, Rational value) {
  Polynomial p = zero(dim, std::move(base));
  p.add_term(std::vector<int>(static_cast<std::size_t>(dim), 0), value);
  return p;
}

Polynomial Polynomial::monomial(int dim, std::vector<Rational> base, std::vector<int> exponents, Rational coeff) {
  Polynomial p = zero(dim, std::move(base));
  if (static_cast<int>(exponents.size()) != dim) throw DimensionMismatch("monomial exponent dimension");
  for (int e : exponents)
    if (e < 0) throw NotPolynomial("negative exponent in monomial");
  p.add_term(exponents, coeff);
  return p;
}

Polynomial Polynomial::variable(int dim, std::vector<Rational> base, int index) {
  std::vector<int> exps(static_cast<std::size_t>(dim), 0);
  exps[static_cast<std::size_t>(index)] = 1;
  return monomial(dim, std::move(base), std::move(exps), Rational(1));
}

Point Polynomial::base_point() const {
  std::vector<Scalar> c;
  c.reserve(base_.size());
  for (const auto& r : base_) c.push_back(Scalar::exact(r));
  return Point(std::move(c));
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  const auto& top = terms_.rbegin()->first;
  return std::accumulate(top.begin(), top.end(), 0);
}

bool Polynomial::is_homogeneous_of(int n) const {
  for (const auto& [exps, coeff] : terms_) {
    (void)coeff;
    if (std::accumulate(exps.begin(), exps.end(), 0) != n) return false;
  }
  return true;
}

void Polynomial::add_term(const std::vector<int>& exponents, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

namespace {
void require_compatible(const Polynomial& a, const Polynomial& b, const char* where) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch(std::string(where) + ": polynomial dimensions differ");
  if (a.base() != b.base()) throw BasePointMismatch(std::string(where) + ": polynomial base points differ");
}
}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b, "poly_add");
  Polynomial out = a;
  for (const auto& [exps, coeff] : b.terms()) out.add_term(exps, coeff);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b, "poly_sub");
  Polynomial out = a;
  for (const auto& [exps, coeff] : b.terms()) out.add_term(exps, -coeff);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = zero(dim_, base_);
  for (const auto& [exps, coeff] : terms_) out.terms_.emplace(exps, -coeff);
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out = zero(dim_, base_);
  if (c.is_zero()) return out;
  for (const auto& [exps, coeff] : terms_) out.terms_.emplace(exps, coeff * c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b, "poly_mul");
  Polynomial out = Polynomial::zero(a.dimension(), a.base());
  std::vector<int> exps(static_cast<std::size_t>(a.dimension()));
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = ea[i] + eb[i];
      out.add_term(exps, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial acc = constant(dim_, base_, Rational(1));
  Polynomial b = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

Scalar Polynomial::eval(const Point& q) const {
  require_same_dimension(dim_, q.dimension(), "polynomial eval");
  std::vector<Scalar> displaced;
  displaced.reserve(base_.size());
  for (int i = 0; i < dim_; ++i) displaced.push_back(q[i] - Scalar::exact(base_[static_cast<std::size_t>(i)]));
  ScalarAccumulator acc;
  for (const auto& [exps, coeff] : terms_) {
    Scalar term = Scalar::exact(coeff);
    for (int i = 0; i < dim_; ++i)
      if (exps[static_cast<std::size_t>(i)] != 0) term *= displaced[static_cast<std::size_t>(i)].pow(exps[static_cast<std::size_t>(i)]);
    acc.add(term);
  }
  return acc.total();
}

Rational Polynomial::eval_rational(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("polynomial eval_rational");
  Rational total(0);
  for (const auto& [exps, coeff] : terms_) {
    Rational term = coeff;
    for (int i = 0; i < dim_; ++i) {
      int e = exps[static_cast<std::size_t>(i)];
      if (e != 0) term *= rational_pow(x[static_cast<std::size_t>(i)] - base_[static_cast<std::size_t>(i)], e);
    }
    total += term;
  }
  return total;
}

UniPoly Polynomial::eval_on_ray(const std::vector<Rational>& offset, const std::vector<Rational>& step) const {
  if (static_cast<int>(offset.size()) != dim_ || static_cast<int>(step.size()) != dim_)
    throw DimensionMismatch("polynomial eval_on_ray");
  std::vector<UniPoly> displaced;
  displaced.reserve(offset.size());
  for (int i = 0; i < dim_; ++i)
    displaced.push_back(UniPoly::linear(offset[static_cast<std::size_t>(i)], step[static_cast<std::size_t>(i)]));
  UniPoly total;
  for (const auto& [exps, coeff] : terms_) {
    UniPoly term = UniPoly::constant(coeff);
    for (int i = 0; i < dim_; ++i) {
      int e = exps[static_cast<std::size_t>(i)];
      if (e != 0) term = term * displaced[static_cast<std::size_t>(i)].pow(static_cast<unsigned>(e));
    }
    total += term;
  }
  return total;
}

std::vector<Polynomial> Polynomial::homogeneous_parts() const {
  std::vector<Polynomial> parts;
  int deg = degree();
  if (deg < 0) return parts;
  parts.reserve(static_cast<std::size_t>(deg) + 1);
  for (int m = 0; m <= deg; ++m) parts.push_back(zero(dim_, base_));
  for (const auto& [exps, coeff] : terms_) {
    int m = std::accumulate(exps.begin(), exps.end(), 0);
    parts[static_cast<std::size_t>(m)].terms_.emplace(exps, coeff);
  }
  return parts;
}

Polynomial Polynomial::homogeneous_part(int m) const {
  Polynomial out = zero(dim_, base_);
  for (const auto& [exps, coeff] : terms_)
    if (std::accumulate(exps.begin(), exps.end(), 0) == m) out.terms_.emplace(exps, coeff);
  return out;
}

Polynomial Polynomial::rebase(const std::vector<Rational>& new_base) const {
  if (static_cast<int>(new_base.size()) != dim_) throw DimensionMismatch("rebase");
  if (new_base == base_) return *this;
  // (x_i - b_i) = (x_i - b'_i) + (b'_i - b_i); expand each factor binomially
  std::vector<Rational> shift;
  shift.reserve(new_base.size());
  for (int i = 0; i < dim_; ++i) shift.push_back(new_base[static_cast<std::size_t>(i)] - base_[static_cast<std::size_t>(i)]);
  Polynomial out = zero(dim_, new_base);
  for (const auto& [exps, coeff] : terms_) {
    Polynomial term = constant(dim_, new_base, coeff);
    for (int i = 0; i < dim_; ++i) {
      int e = exps[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      Polynomial factor = zero(dim_, new_base);
      for (int k = 0; k <= e; ++k) {
        std::vector<int> mono(static_cast<std::size_t>(dim_), 0);
        mono[static_cast<std::size_t>(i)] = k;
        factor.add_term(mono, Rational(binomial(static_cast<unsigned>(e), static_cast<unsigned>(k))) *
                                  rational_pow(shift[static_cast<std::size_t>(i)], e - k));
      }
      term = term * factor;
    }
    out = out + term;
  }
  return out;
}

Polynomial Polynomial::rebase(const Point& new_base) const { return rebase(new_base.exact_coords()); }

Polynomial Polynomial::compose(const std::vector<Polynomial>& components) const {
  if (static_cast<int>(components.size()) != dim_)
    throw DimensionMismatch("compose: component count != polynomial dimension");
  if (components.empty()) throw DimensionMismatch("compose: empty component list");
  for (const auto& c : components) require_compatible(components.front(), c, "compose");
  const Polynomial& model = components.front();
  // y_i - b_i as polynomials on the domain
  std::vector<Polynomial> displaced;
  displaced.reserve(components.size());
  for (int i = 0; i < dim_; ++i)
    displaced.push_back(components[static_cast<std::size_t>(i)] -
                        Polynomial::constant(model.dimension(), model.base(), base_[static_cast<std::size_t>(i)]));
  Polynomial out = zero(model.dimension(), model.base());
  for (const auto& [exps, coeff] : terms_) {
    Polynomial term = constant(model.dimension(), model.base(), coeff);
    for (int i = 0; i < dim_; ++i) {
      int e = exps[static_cast<std::size_t>(i)];
      if (e != 0) term = term * displaced[static_cast<std::size_t>(i)].pow(static_cast<unsigned>(e));
    }
    out = out + term;
  }
  return out;
}

Polynomial Polynomial::partial_derivative(int i) const {
  Polynomial out = zero(dim_, base_);
  for (const auto& [exps, coeff] : terms_) {
    int e = exps[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    std::vector<int> lowered = exps;
    lowered[static_cast<std::size_t>(i)] -= 1;
    out.add_term(lowered, coeff * e);
  }
  return out;
}

Polynomial Polynomial::directional_derivative(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != dim_) throw DimensionMismatch("directional_derivative");
  Polynomial out = zero(dim_, base_);
  for (int i = 0; i < dim_; ++i)
    if (!v[static_cast<std::size_t>(i)].is_zero())
      out = out + partial_derivative(i).scaled(v[static_cast<std::size_t>(i)]);
  return out;
}

Polynomial Polynomial::truncate(int max_total_degree) const {
  Polynomial out = zero(dim_, base_);
  for (const auto& [exps, coeff] : terms_)
    if (std::accumulate(exps.begin(), exps.end(), 0) <= max_total_degree) out.terms_.emplace(exps, coeff);
  return out;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial truncated_product(const Polynomial& a, const Polynomial& b, int n) { return (a * b).truncate(n); }

SymmetricForm::SymmetricForm(int arity, int dim, std::vector<Rational> base)
    : arity_(arity), dim_(dim), base_(std::move(base)), zero_(0) {}

void SymmetricForm::set_coeff(std::vector<int> multiset, Rational value) {
  if (value.is_zero()) return;
  table_.emplace(std::move(multiset), std::move(value));
}

const Rational& SymmetricForm::coeff(const std::vector<int>& multiset) const {
  auto it = table_.find(multiset);
  return it == table_.end() ? zero_ : it->second;
}

Scalar SymmetricForm::eval(std::span<const Direction> dirs) const {
  if (static_cast<int>(dirs.size()) != arity_) throw DimensionMismatch("symmetric form arity");
  for (const auto& d : dirs) require_same_dimension(d.dimension(), dim_, "symmetric form eval");
  if (arity_ == 0) return Scalar::exact(coeff({}));
  ScalarAccumulator acc;
  std::vector<int> idx(static_cast<std::size_t>(arity_), 0);
  while (true) {
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    const Rational& c = coeff(sorted);
    if (!c.is_zero()) {
      Scalar term = Scalar::exact(c);
      for (int k = 0; k < arity_; ++k) term *= dirs[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
      acc.add(term);
    }
    int pos = arity_ - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim_ - 1) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
  }
  return acc.total();
}

SymmetricForm symmetric_form(const Polynomial& p_hom) {
  int n = p_hom.degree();
  if (p_hom.is_zero()) n = 0;
  if (!p_hom.is_homogeneous_of(n))
    throw NotHomogeneous("symmetric_form requires a homogeneous polynomial, degree " + std::to_string(n) +
                         " mixed with lower-degree terms");
  const int d = p_hom.dimension();
  SymmetricForm form(n, d, p_hom.base());
  // fill the table with delta^n p over basis multisets; the 2^n subset sum of
  // the polarization is exact on rational inputs
  std::vector<int> multiset(static_cast<std::size_t>(n), 0);
  while (true) {
    Rational value(0);
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Rational> x = p_hom.base();
      for (int i = 0; i < n; ++i)
        if (mask & (1ull << i)) x[static_cast<std::size_t>(multiset[static_cast<std::size_t>(i)])] += 1;
      Rational term = p_hom.eval_rational(x);
      int parity = n - __builtin_popcountll(mask);
      value += (parity % 2 != 0) ? Rational(-term) : term;
    }
    form.set_coeff(multiset, value);
    if (n == 0) break;
    int pos = n - 1;
    // advance to the next sorted multiset over {0..d-1}
    while (pos >= 0 && multiset[static_cast<std::size_t>(pos)] == d - 1) --pos;
    if (pos < 0) break;
    int next = multiset[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < n; ++i) multiset[static_cast<std::size_t>(i)] = next;
  }
  return form;
}

}  // namespace polcal
