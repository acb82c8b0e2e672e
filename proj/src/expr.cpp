#include "polcal/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <optional>

namespace polcal {

const char* builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::Sin: return "sin";
    case Builtin::Cos: return "cos";
    case Builtin::Exp: return "exp";
    case Builtin::Log: return "log";
    case Builtin::Abs: return "abs";
    case Builtin::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

std::optional<Builtin> builtin_by_name(const std::string& name) {
  static const std::array<Builtin, 6> all = {Builtin::Sin, Builtin::Cos, Builtin::Exp,
                                             Builtin::Log, Builtin::Abs, Builtin::Sqrt};
  for (Builtin b : all)
    if (name == builtin_name(b)) return b;
  return std::nullopt;
}

}  // namespace

AstPtr make_const(Scalar value) {
  auto node = std::make_shared<ExprAst>();
  node->kind = NodeKind::Const;
  node->value = std::move(value);
  return node;
}

AstPtr make_var(int index) {
  auto node = std::make_shared<ExprAst>();
  node->kind = NodeKind::Var;
  node->var_index = index;
  return node;
}

AstPtr make_node(NodeKind kind, std::vector<AstPtr> children) {
  auto node = std::make_shared<ExprAst>();
  node->kind = kind;
  node->children = std::move(children);
  return node;
}

AstPtr make_pow(AstPtr base, long long exponent) {
  auto node = std::make_shared<ExprAst>();
  node->kind = NodeKind::PowInt;
  node->exponent = exponent;
  node->children = {std::move(base)};
  return node;
}

AstPtr make_call(Builtin fn, AstPtr arg) {
  auto node = std::make_shared<ExprAst>();
  node->kind = NodeKind::Call;
  node->fn = fn;
  node->children = {std::move(arg)};
  return node;
}

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::size_t offset;  // 1-based
  Scalar number;
  std::string text;
};

const char* token_name(TokKind k) {
  switch (k) {
    case TokKind::Number: return "number";
    case TokKind::Ident: return "identifier";
    case TokKind::Plus: return "'+'";
    case TokKind::Minus: return "'-'";
    case TokKind::Star: return "'*'";
    case TokKind::Slash: return "'/'";
    case TokKind::Caret: return "'^'";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokKind::End) break;
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  Token next() {
    if (pos_ >= src_.size()) return {TokKind::End, src_.size() + 1, Scalar(), ""};
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {TokKind::Ident, start + 1, Scalar(), src_.substr(start, pos_ - start)};
    }
    ++pos_;
    switch (c) {
      case '+': return {TokKind::Plus, start + 1, Scalar(), "+"};
      case '-': return {TokKind::Minus, start + 1, Scalar(), "-"};
      case '*': return {TokKind::Star, start + 1, Scalar(), "*"};
      case '/': return {TokKind::Slash, start + 1, Scalar(), "/"};
      case '^': return {TokKind::Caret, start + 1, Scalar(), "^"};
      case '(': return {TokKind::LParen, start + 1, Scalar(), "("};
      case ')': return {TokKind::RParen, start + 1, Scalar(), ")"};
      default:
        throw SyntaxError(start + 1, {"number", "identifier", "operator"},
                          std::string("unexpected character '") + c + "'");
    }
  }

  Token lex_number(std::size_t start) {
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    bool is_float = false;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      is_float = true;
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        is_float = true;
        digits();
      } else {
        pos_ = mark;  // "2exp(x)"-style adjacency: leave the ident alone
      }
    }
    // adjacent p/q forms one rational literal
    if (!is_float && pos_ + 1 < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    std::string text = src_.substr(start, pos_ - start);
    Token t{TokKind::Number, start + 1, Scalar(), text};
    try {
      t.number = Scalar::parse(text);
    } catch (const DivisionByZero&) {
      throw SyntaxError(start + 1, {"number"}, "rational literal with zero denominator");
    }
    return t;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dim, const std::vector<std::string>& var_names)
      : tokens_(std::move(tokens)), dim_(dim), var_names_(var_names) {}

  AstPtr run() {
    AstPtr root = parse_expr();
    expect(TokKind::End);
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }
  bool at(TokKind k) const { return peek().kind == k; }

  void expect(TokKind k) {
    if (!at(k))
      throw SyntaxError(peek().offset, {token_name(k)},
                        std::string("expected ") + token_name(k) + ", found " + token_name(peek().kind));
    ++pos_;
  }

  AstPtr parse_expr() {
    AstPtr lhs = parse_term();
    while (at(TokKind::Plus) || at(TokKind::Minus)) {
      NodeKind kind = take().kind == TokKind::Plus ? NodeKind::Add : NodeKind::Sub;
      lhs = make_node(kind, {lhs, parse_term()});
    }
    return lhs;
  }

  AstPtr parse_term() {
    AstPtr lhs = parse_factor();
    while (at(TokKind::Star) || at(TokKind::Slash)) {
      NodeKind kind = take().kind == TokKind::Star ? NodeKind::Mul : NodeKind::Div;
      lhs = make_node(kind, {lhs, parse_factor()});
    }
    return lhs;
  }

  // '^' binds above unary minus: -x^2 parses as -(x^2)
  AstPtr parse_factor() {
    if (at(TokKind::Minus)) {
      take();
      return make_node(NodeKind::Neg, {parse_factor()});
    }
    AstPtr base = parse_primary();
    if (at(TokKind::Caret)) {
      take();
      base = make_pow(base, parse_exponent());
    }
    return base;
  }

  long long parse_exponent() {
    bool negate = false;
    if (at(TokKind::Minus)) {
      take();
      negate = true;
    }
    const Token& t = peek();
    if (t.kind != TokKind::Number || !t.number.is_exact() || denominator(t.number.rat()) != 1)
      throw SyntaxError(t.offset, {"integer"}, "exponent must be a literal integer");
    long long e = numerator(t.number.rat()).convert_to<long long>();
    take();
    return negate ? -e : e;
  }

  AstPtr parse_primary() {
    const Token t = peek();
    switch (t.kind) {
      case TokKind::Number: {
        take();
        auto node = std::make_shared<ExprAst>();
        node->kind = NodeKind::Const;
        node->value = t.number;
        node->offset = t.offset;
        return node;
      }
      case TokKind::Ident: {
        take();
        if (auto fn = builtin_by_name(t.text)) {
          if (!at(TokKind::LParen))
            throw ArityError("builtin '" + t.text + "' requires an argument list at offset " +
                             std::to_string(peek().offset));
          take();
          AstPtr arg = parse_call_argument(t.text);
          auto node = std::make_shared<ExprAst>();
          node->kind = NodeKind::Call;
          node->fn = *fn;
          node->children = {std::move(arg)};
          node->offset = t.offset;
          return node;
        }
        for (std::size_t i = 0; i < var_names_.size(); ++i) {
          if (var_names_[i] == t.text) {
            if (static_cast<int>(i) >= dim_)
              throw UnknownIdentifier(t.text, t.offset);
            if (at(TokKind::LParen)) throw ArityError("variable '" + t.text + "' is not callable");
            auto node = std::make_shared<ExprAst>();
            node->kind = NodeKind::Var;
            node->var_index = static_cast<int>(i);
            node->offset = t.offset;
            return node;
          }
        }
        throw UnknownIdentifier(t.text, t.offset);
      }
      case TokKind::LParen: {
        take();
        AstPtr inner = parse_expr();
        expect(TokKind::RParen);
        return inner;
      }
      default:
        throw SyntaxError(t.offset, {"number", "identifier", "'('", "'-'"},
                          std::string("expected an operand, found ") + token_name(t.kind));
    }
  }

  AstPtr parse_call_argument(const std::string& name) {
    AstPtr arg = parse_expr();
    if (!at(TokKind::RParen))
      throw SyntaxError(peek().offset, {"')'"},
                        "unterminated argument of '" + name + "', found " + token_name(peek().kind));
    take();
    return arg;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dim_;
  const std::vector<std::string>& var_names_;
};

}  // namespace

AstPtr parse(const std::string& src, int dim, const std::vector<std::string>& var_names) {
  if (src.empty()) throw SyntaxError(1, {"expression"}, "empty expression");
  if (dim < 1) throw DimensionMismatch("expression dimension must be >= 1");
  return Parser(Lexer(src).run(), dim, var_names).run();
}

namespace {

// precedence tiers: 1 add/sub, 2 mul/div, 3 neg, 4 pow, 5 atoms
int print_level(const ExprAst& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::PowInt: return 4;
    default: return 5;
  }
}

std::string print_const(const Scalar& s) {
  std::string text = s.str();
  if (!s.is_exact() && text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
      text.find("inf") == std::string::npos && text.find("nan") == std::string::npos)
    text += ".0";  // keep the literal in Float mode on re-parse
  return text;
}

std::string print_node(const ExprAst& n, const std::vector<std::string>& vars, int required) {
  std::string body;
  switch (n.kind) {
    case NodeKind::Const: body = print_const(n.value); break;
    case NodeKind::Var: body = vars[static_cast<std::size_t>(n.var_index)]; break;
    case NodeKind::Add:
      body = print_node(*n.children[0], vars, 1) + " + " + print_node(*n.children[1], vars, 2);
      break;
    case NodeKind::Sub:
      body = print_node(*n.children[0], vars, 1) + " - " + print_node(*n.children[1], vars, 2);
      break;
    case NodeKind::Mul:
      body = print_node(*n.children[0], vars, 2) + "*" + print_node(*n.children[1], vars, 3);
      break;
    case NodeKind::Div:
      body = print_node(*n.children[0], vars, 2) + " / " + print_node(*n.children[1], vars, 3);
      break;
    case NodeKind::Neg: body = "-" + print_node(*n.children[0], vars, 3); break;
    case NodeKind::PowInt:
      body = print_node(*n.children[0], vars, 5) + "^" + std::to_string(n.exponent);
      break;
    case NodeKind::Call:
      body = std::string(builtin_name(n.fn)) + "(" + print_node(*n.children[0], vars, 1) + ")";
      break;
  }
  if (print_level(n) < required) return "(" + body + ")";
  return body;
}

bool scalar_identical(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) return false;
  if (a.is_exact()) return a.rat() == b.rat();
  return a.dbl() == b.dbl();
}

}  // namespace

std::string print(const AstPtr& ast, const std::vector<std::string>& var_names) {
  return print_node(*ast, var_names, 1);
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Const:
      return scalar_identical(a->value, b->value);
    case NodeKind::Var:
      return a->var_index == b->var_index;
    case NodeKind::PowInt:
      if (a->exponent != b->exponent) return false;
      break;
    case NodeKind::Call:
      if (a->fn != b->fn) return false;
      break;
    default: break;
  }
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!ast_equal(a->children[i], b->children[i])) return false;
  return true;
}

AstPtr substitute(const AstPtr& ast, const std::vector<AstPtr>& substitutions) {
  if (ast->kind == NodeKind::Var) return substitutions.at(static_cast<std::size_t>(ast->var_index));
  if (ast->children.empty()) return ast;
  auto node = std::make_shared<ExprAst>(*ast);
  for (auto& child : node->children) child = substitute(child, substitutions);
  return node;
}

bool constant_fold(const AstPtr& ast, Scalar& out) {
  switch (ast->kind) {
    case NodeKind::Const: out = ast->value; return true;
    case NodeKind::Var: return false;
    default: break;
  }
  std::vector<Scalar> folded(ast->children.size());
  for (std::size_t i = 0; i < ast->children.size(); ++i)
    if (!constant_fold(ast->children[i], folded[i])) return false;
  switch (ast->kind) {
    case NodeKind::Add: out = folded[0] + folded[1]; return true;
    case NodeKind::Sub: out = folded[0] - folded[1]; return true;
    case NodeKind::Mul: out = folded[0] * folded[1]; return true;
    case NodeKind::Div: out = folded[0] / folded[1]; return true;
    case NodeKind::Neg: out = -folded[0]; return true;
    case NodeKind::PowInt: out = folded[0].pow(ast->exponent); return true;
    case NodeKind::Call: {
      double x = folded[0].dbl();
      switch (ast->fn) {
        case Builtin::Sin: out = Scalar::real(std::sin(x)); return true;
        case Builtin::Cos: out = Scalar::real(std::cos(x)); return true;
        case Builtin::Exp: out = Scalar::real(std::exp(x)); return true;
        case Builtin::Log:
          if (x <= 0) throw EvalDomainError("log of nonpositive constant");
          out = Scalar::real(std::log(x));
          return true;
        case Builtin::Abs: out = Scalar::real(std::fabs(x)); return true;
        case Builtin::Sqrt:
          if (x < 0) throw EvalDomainError("sqrt of negative constant");
          out = Scalar::real(std::sqrt(x));
          return true;
      }
      return false;
    }
    default: return false;
  }
}

bool exactly_evaluable(const AstPtr& ast) {
  switch (ast->kind) {
    case NodeKind::Const: return ast->value.is_exact();
    case NodeKind::Var: return true;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Neg: {
      for (const auto& c : ast->children)
        if (!exactly_evaluable(c)) return false;
      return true;
    }
    case NodeKind::PowInt:
      return ast->exponent >= 0 && exactly_evaluable(ast->children[0]);
    case NodeKind::Div: {
      if (!exactly_evaluable(ast->children[0])) return false;
      Scalar divisor;
      try {
        if (!constant_fold(ast->children[1], divisor)) return false;
      } catch (const Error&) {
        return false;
      }
      return divisor.is_exact() && !divisor.is_zero();
    }
    case NodeKind::Call: return false;
  }
  return false;
}

}  // namespace polcal
