#include "polcal/field.hpp"

#include <cmath>

namespace polcal {

namespace {

Scalar eval_exact_ast(const ExprAst& n, const Point& q);
double eval_float_ast(const ExprAst& n, const Point& q);

Scalar eval_exact_ast(const ExprAst& n, const Point& q) {
  switch (n.kind) {
    case NodeKind::Const: return n.value;
    case NodeKind::Var: return q[n.var_index];
    case NodeKind::Add: return eval_exact_ast(*n.children[0], q) + eval_exact_ast(*n.children[1], q);
    case NodeKind::Sub: return eval_exact_ast(*n.children[0], q) - eval_exact_ast(*n.children[1], q);
    case NodeKind::Mul: return eval_exact_ast(*n.children[0], q) * eval_exact_ast(*n.children[1], q);
    case NodeKind::Neg: return -eval_exact_ast(*n.children[0], q);
    case NodeKind::PowInt: return eval_exact_ast(*n.children[0], q).pow(n.exponent);
    case NodeKind::Div: {
      Scalar denom = eval_exact_ast(*n.children[1], q);
      if (denom.is_zero()) throw EvalDomainError("division by zero");
      return eval_exact_ast(*n.children[0], q) / denom;
    }
    case NodeKind::Call: break;  // unreachable on the exact path
  }
  throw InternalDefect("builtin call on exact evaluation path");
}

double eval_float_ast(const ExprAst& n, const Point& q) {
  switch (n.kind) {
    case NodeKind::Const: return n.value.dbl();
    case NodeKind::Var: return q[n.var_index].dbl();
    case NodeKind::Add: return eval_float_ast(*n.children[0], q) + eval_float_ast(*n.children[1], q);
    case NodeKind::Sub: return eval_float_ast(*n.children[0], q) - eval_float_ast(*n.children[1], q);
    case NodeKind::Mul: return eval_float_ast(*n.children[0], q) * eval_float_ast(*n.children[1], q);
    case NodeKind::Neg: return -eval_float_ast(*n.children[0], q);
    case NodeKind::PowInt: {
      double base = eval_float_ast(*n.children[0], q);
      if (base == 0.0 && n.exponent < 0) throw EvalDomainError("zero raised to a negative power");
      return std::pow(base, static_cast<double>(n.exponent));
    }
    case NodeKind::Div: {
      double denom = eval_float_ast(*n.children[1], q);
      if (denom == 0.0) throw EvalDomainError("division by zero");
      return eval_float_ast(*n.children[0], q) / denom;
    }
    case NodeKind::Call: {
      double x = eval_float_ast(*n.children[0], q);
      switch (n.fn) {
        case Builtin::Sin: return std::sin(x);
        case Builtin::Cos: return std::cos(x);
        case Builtin::Exp: return std::exp(x);
        case Builtin::Log:
          if (x <= 0) throw EvalDomainError("log of nonpositive value");
          return std::log(x);
        case Builtin::Abs: return std::fabs(x);
        case Builtin::Sqrt:
          if (x < 0) throw EvalDomainError("sqrt of negative value");
          return std::sqrt(x);
      }
      break;
    }
  }
  throw InternalDefect("unhandled expression node");
}

Polynomial lower_to_polynomial(const ExprAst& n, int dim, const std::vector<Rational>& base);

Polynomial lower_to_polynomial(const ExprAst& n, int dim, const std::vector<Rational>& base) {
  switch (n.kind) {
    case NodeKind::Const:
      if (!n.value.is_exact())
        throw NotPolynomial("float literal at offset " + std::to_string(n.offset) +
                            " is outside the exact polynomial closure");
      return Polynomial::constant(dim, base, n.value.rat());
    case NodeKind::Var: {
      // x_i = (x_i - 0) around the origin base
      Polynomial p = Polynomial::variable(dim, base, n.var_index);
      return p;
    }
    case NodeKind::Add:
      return lower_to_polynomial(*n.children[0], dim, base) + lower_to_polynomial(*n.children[1], dim, base);
    case NodeKind::Sub:
      return lower_to_polynomial(*n.children[0], dim, base) - lower_to_polynomial(*n.children[1], dim, base);
    case NodeKind::Mul:
      return lower_to_polynomial(*n.children[0], dim, base) * lower_to_polynomial(*n.children[1], dim, base);
    case NodeKind::Neg: return -lower_to_polynomial(*n.children[0], dim, base);
    case NodeKind::PowInt: {
      if (n.exponent < 0)
        throw NotPolynomial("negative exponent at offset " + std::to_string(n.offset));
      return lower_to_polynomial(*n.children[0], dim, base).pow(static_cast<unsigned>(n.exponent));
    }
    case NodeKind::Div: {
      Scalar divisor;
      bool folded = false;
      try {
        folded = constant_fold(n.children[1], divisor);
      } catch (const Error&) {
        folded = false;
      }
      if (!folded || !divisor.is_exact())
        throw NotPolynomial("division by a non-constant at offset " + std::to_string(n.offset));
      if (divisor.is_zero()) throw DivisionByZero();
      return lower_to_polynomial(*n.children[0], dim, base).scaled(Rational(1) / divisor.rat());
    }
    case NodeKind::Call:
      throw NotPolynomial(std::string("builtin '") + builtin_name(n.fn) + "' at offset " +
                          std::to_string(n.offset));
  }
  throw InternalDefect("unhandled expression node in polynomial lowering");
}

AstPtr polynomial_to_ast(const Polynomial& p) {
  AstPtr sum;
  for (const auto& [exps, coeff] : p.terms()) {
    AstPtr term = make_const(Scalar::exact(coeff < 0 ? Rational(-coeff) : coeff));
    bool trivial_coeff = coeff == 1 || coeff == -1;
    AstPtr factors;
    for (int i = 0; i < p.dimension(); ++i) {
      int e = exps[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      AstPtr var = make_var(i);
      const Rational& b = p.base()[static_cast<std::size_t>(i)];
      if (!b.is_zero()) var = make_node(NodeKind::Sub, {var, make_const(Scalar::exact(b))});
      AstPtr factor = e == 1 ? var : make_pow(var, e);
      factors = factors ? make_node(NodeKind::Mul, {factors, factor}) : factor;
    }
    AstPtr monomial = factors ? (trivial_coeff ? factors : make_node(NodeKind::Mul, {term, factors})) : term;
    if (coeff < 0) monomial = make_node(NodeKind::Neg, {monomial});
    sum = sum ? make_node(NodeKind::Add, {sum, monomial}) : monomial;
  }
  if (!sum) sum = make_const(Scalar(0));
  return sum;
}

}  // namespace

ScalarField ScalarField::from_ast(AstPtr ast, int dim) {
  bool exact = exactly_evaluable(ast);
  return ScalarField(std::variant<AstPtr, Polynomial>(std::move(ast)), dim, exact);
}

ScalarField ScalarField::from_polynomial(Polynomial p) {
  int dim = p.dimension();
  return ScalarField(std::variant<AstPtr, Polynomial>(std::move(p)), dim, true);
}

ScalarField ScalarField::parse(const std::string& src, int dim, const std::vector<std::string>& var_names) {
  return from_ast(polcal::parse(src, dim, var_names), dim);
}

Scalar ScalarField::eval(const Point& q) const {
  require_same_dimension(dim_, q.dimension(), "field eval");
  if (polynomial_backed()) return polynomial().eval(q);
  const AstPtr& root = ast();
  if (exact_capable_ && q.all_exact()) return eval_exact_ast(*root, q);
  return Scalar::real(eval_float_ast(*root, q));
}

Polynomial ScalarField::to_polynomial() const {
  if (polynomial_backed()) return polynomial();
  return lower_to_polynomial(*ast(), dim_, std::vector<Rational>(static_cast<std::size_t>(dim_)));
}

AstPtr ScalarField::as_ast() const {
  if (polynomial_backed()) return polynomial_to_ast(polynomial());
  return ast();
}

bool ScalarField::exactly_evaluable_field() const { return exact_capable_; }

ScalarField product(const ScalarField& f, const ScalarField& g) {
  require_same_dimension(f.dimension(), g.dimension(), "field product");
  if (f.polynomial_backed() && g.polynomial_backed()) {
    const Polynomial& a = f.polynomial();
    const Polynomial& b = g.polynomial();
    Polynomial rhs = a.base() == b.base() ? b : b.rebase(a.base());
    return ScalarField::from_polynomial(a * rhs);
  }
  return ScalarField::from_ast(make_node(NodeKind::Mul, {f.as_ast(), g.as_ast()}), f.dimension());
}

AffineMap::AffineMap(std::vector<ScalarField> components) : components_(std::move(components)) {
  if (components_.empty()) throw DimensionMismatch("mapping needs at least one component");
  for (const auto& c : components_)
    require_same_dimension(c.dimension(), components_.front().dimension(), "mapping components");
}

Point AffineMap::eval(const Point& p) const {
  std::vector<Scalar> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.eval(p));
  return Point(std::move(out));
}

bool AffineMap::polynomial_backed() const {
  for (const auto& c : components_)
    if (!c.polynomial_backed()) return false;
  return true;
}

ScalarField compose(const ScalarField& f, const AffineMap& g) {
  require_same_dimension(f.dimension(), g.codomain_dimension(), "compose");
  if (f.polynomial_backed() && g.polynomial_backed()) {
    std::vector<Polynomial> comps;
    comps.reserve(g.components().size());
    for (const auto& c : g.components()) comps.push_back(c.polynomial());
    // align the component base points
    for (auto& c : comps)
      if (!(c.base() == comps.front().base())) c = c.rebase(comps.front().base());
    return ScalarField::from_polynomial(f.polynomial().compose(comps));
  }
  std::vector<AstPtr> subs;
  subs.reserve(g.components().size());
  for (const auto& c : g.components()) subs.push_back(c.as_ast());
  return ScalarField::from_ast(substitute(f.as_ast(), subs), g.domain_dimension());
}

}  // namespace polcal
