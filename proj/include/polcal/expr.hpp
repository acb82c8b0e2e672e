#ifndef POLCAL_EXPR_HPP
#define POLCAL_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "polcal/scalar.hpp"

namespace polcal {

enum class NodeKind { Const, Var, Add, Sub, Mul, Div, Neg, PowInt, Call };

enum class Builtin { Sin, Cos, Exp, Log, Abs, Sqrt };

const char* builtin_name(Builtin fn);

// Immutable expression tree.  Children are shared so derived expressions
// (products, substitutions) can reuse subtrees.
struct ExprAst {
  NodeKind kind;
  Scalar value;          // Const
  int var_index = -1;    // Var
  long long exponent = 0;  // PowInt
  Builtin fn = Builtin::Sin;  // Call
  std::vector<std::shared_ptr<const ExprAst>> children;
  std::size_t offset = 0;  // 1-based byte offset into the source, 0 if synthesized
};

using AstPtr = std::shared_ptr<const ExprAst>;

AstPtr make_const(Scalar value);
AstPtr make_var(int index);
AstPtr make_node(NodeKind kind, std::vector<AstPtr> children);
AstPtr make_pow(AstPtr base, long long exponent);
AstPtr make_call(Builtin fn, AstPtr arg);

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" int)?            with ^ binding above unary minus
//   base   := number | ident | ident "(" expr ")" | "(" expr ")" | "-" base
// Numbers are integers, adjacent "p/q" rationals, or decimal floats
// (a decimal point or exponent marker forces Float mode).
AstPtr parse(const std::string& src, int dim, const std::vector<std::string>& var_names);

// Canonical rendering; parse(print(ast)) == ast for trees whose constants
// are nonnegative (the parser encodes signs as Neg nodes).
std::string print(const AstPtr& ast, const std::vector<std::string>& var_names);

bool ast_equal(const AstPtr& a, const AstPtr& b);

// Replaces Var(i) with substitutions[i]; used for composition with mappings.
AstPtr substitute(const AstPtr& ast, const std::vector<AstPtr>& substitutions);

// True when every node lies in the exactly-evaluable closure: constants,
// variables, + - * neg, nonnegative integer powers, and division by a
// nonzero exact constant subtree.
bool exactly_evaluable(const AstPtr& ast);

// Constant-folds a subtree; returns false if any variable occurs.
bool constant_fold(const AstPtr& ast, Scalar& out);

}  // namespace polcal

#endif
