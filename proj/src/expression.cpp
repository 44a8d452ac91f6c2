#include "kcurv/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace kcurv {

enum class Op {
  Const,  // value
  Var,    // z_{var}
  ConjVar,
  Add,
  Sub,
  Mul,
  Div,
  Pow,   // general a^b = exp(b log a)
  Neg,
  Log,
  Exp,
  Sqrt,
  Conj,  // conj of a subexpression
};

struct Expr::Node {
  Op op;
  cplx value{0.0, 0.0};
  int var = -1;
  NodePtr a, b;
};

namespace {

using NodePtr = Expr::NodePtr;

NodePtr make_const(cplx v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

bool is_const(const NodePtr& n, cplx v) {
  return n->op == Op::Const && n->value == v;
}

NodePtr make_unary(Op op, NodePtr a) {
  if (a->op == Op::Const) {
    switch (op) {
      case Op::Neg: return make_const(-a->value);
      case Op::Conj: return make_const(std::conj(a->value));
      case Op::Log: return make_const(std::log(a->value));
      case Op::Exp: return make_const(std::exp(a->value));
      case Op::Sqrt: return make_const(std::sqrt(a->value));
      default: break;
    }
  }
  if (op == Op::Conj && a->op == Op::Var) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::ConjVar;
    n->var = a->var;
    return n;
  }
  if (op == Op::Conj && a->op == Op::ConjVar) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Var;
    n->var = a->var;
    return n;
  }
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  const cplx zero(0.0, 0.0), one(1.0, 0.0);
  switch (op) {
    case Op::Add:
      if (is_const(a, zero)) return b;
      if (is_const(b, zero)) return a;
      break;
    case Op::Sub:
      if (is_const(b, zero)) return a;
      if (is_const(a, zero)) return make_unary(Op::Neg, b);
      break;
    case Op::Mul:
      if (is_const(a, zero) || is_const(b, zero)) return make_const(zero);
      if (is_const(a, one)) return b;
      if (is_const(b, one)) return a;
      break;
    case Op::Div:
      if (is_const(a, zero)) return make_const(zero);
      if (is_const(b, one)) return a;
      break;
    case Op::Pow:
      if (is_const(b, one)) return a;
      if (is_const(b, zero)) return make_const(one);
      break;
    default:
      break;
  }
  if (a->op == Op::Const && b->op == Op::Const) {
    switch (op) {
      case Op::Add: return make_const(a->value + b->value);
      case Op::Sub: return make_const(a->value - b->value);
      case Op::Mul: return make_const(a->value * b->value);
      case Op::Div: return make_const(a->value / b->value);
      case Op::Pow: return make_const(std::pow(a->value, b->value));
      default: break;
    }
  }
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// --- parser ---------------------------------------------------------------

struct Parser {
  const std::string& text;
  int m;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprParseError(msg, static_cast<int>(pos));
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr t = parse_term();
    for (;;) {
      if (eat('+'))
        t = make_binary(Op::Add, t, parse_term());
      else if (eat('-'))
        t = make_binary(Op::Sub, t, parse_term());
      else
        return t;
    }
  }

  NodePtr parse_term() {
    NodePtr t = parse_power();
    for (;;) {
      if (eat('*'))
        t = make_binary(Op::Mul, t, parse_power());
      else if (eat('/'))
        t = make_binary(Op::Div, t, parse_power());
      else
        return t;
    }
  }

  NodePtr parse_power() {
    NodePtr base = parse_unary();
    if (eat('^')) return make_binary(Op::Pow, base, parse_power());
    return base;
  }

  NodePtr parse_unary() {
    skip_ws();
    if (eat('-')) return make_unary(Op::Neg, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    if (eat('(')) {
      NodePtr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    skip_ws();
    std::size_t end = pos;
    while (end < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
            text[end] == 'e' || text[end] == 'E' ||
            ((text[end] == '+' || text[end] == '-') && end > pos &&
             (text[end - 1] == 'e' || text[end - 1] == 'E'))))
      ++end;
    const std::string tok = text.substr(pos, end - pos);
    try {
      const double v = std::stod(tok);
      pos = end;
      return make_const(cplx(v, 0.0));
    } catch (const std::exception&) {
      fail("invalid numeric literal '" + tok + "'");
    }
  }

  NodePtr parse_ident() {
    skip_ws();
    std::size_t end = pos;
    while (end < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
      ++end;
    std::string name = text.substr(pos, end - pos);
    const std::size_t name_pos = pos;
    pos = end;

    if (name == "i") return make_const(cplx(0.0, 1.0));
    if (name == "pi") return make_const(cplx(M_PI, 0.0));
    if (name.size() >= 2 && name[0] == 'z') {
      std::string digits = name.substr(1);
      if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
      bool numeric = !digits.empty();
      for (char d : digits)
        if (!std::isdigit(static_cast<unsigned char>(d))) numeric = false;
      if (numeric) {
        const int k = std::stoi(digits);
        if (k < 1 || k > m) {
          pos = name_pos;
          fail("coordinate " + name + " out of range for m = " + std::to_string(m));
        }
        auto n = std::make_shared<Expr::Node>();
        n->op = Op::Var;
        n->var = k - 1;
        return n;
      }
    }

    skip_ws();
    if (!eat('(')) {
      pos = name_pos;
      fail("unknown identifier '" + name + "'");
    }
    std::vector<NodePtr> args;
    if (!eat(')')) {
      args.push_back(parse_expr());
      while (eat(',')) args.push_back(parse_expr());
      if (!eat(')')) fail("expected ')' after arguments of " + name);
    }
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        pos = name_pos;
        fail(name + " expects " + std::to_string(n) + " argument(s)");
      }
    };
    if (name == "log") { arity(1); return make_unary(Op::Log, args[0]); }
    if (name == "exp") { arity(1); return make_unary(Op::Exp, args[0]); }
    if (name == "sqrt") { arity(1); return make_unary(Op::Sqrt, args[0]); }
    if (name == "conj") { arity(1); return make_unary(Op::Conj, args[0]); }
    if (name == "pow") { arity(2); return make_binary(Op::Pow, args[0], args[1]); }
    pos = name_pos;
    fail("unknown function '" + name + "'");
  }
};

cplx eval_node(const Expr::Node& n, const ChartPoint& p) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return p[n.var];
    case Op::ConjVar: return std::conj(p[n.var]);
    case Op::Add: return eval_node(*n.a, p) + eval_node(*n.b, p);
    case Op::Sub: return eval_node(*n.a, p) - eval_node(*n.b, p);
    case Op::Mul: return eval_node(*n.a, p) * eval_node(*n.b, p);
    case Op::Div: return eval_node(*n.a, p) / eval_node(*n.b, p);
    case Op::Pow: return std::pow(eval_node(*n.a, p), eval_node(*n.b, p));
    case Op::Neg: return -eval_node(*n.a, p);
    case Op::Log: return std::log(eval_node(*n.a, p));
    case Op::Exp: return std::exp(eval_node(*n.a, p));
    case Op::Sqrt: return std::sqrt(eval_node(*n.a, p));
    case Op::Conj: return std::conj(eval_node(*n.a, p));
  }
  return cplx(0.0, 0.0);
}

// Wirtinger differentiation; `holo` selects d/dz_k vs d/dzbar_k.
NodePtr diff_node(const NodePtr& n, int k, bool holo) {
  const cplx zero(0.0, 0.0);
  switch (n->op) {
    case Op::Const: return make_const(zero);
    case Op::Var: return make_const(holo && n->var == k ? cplx(1.0, 0.0) : zero);
    case Op::ConjVar:
      return make_const(!holo && n->var == k ? cplx(1.0, 0.0) : zero);
    case Op::Add: return make_binary(Op::Add, diff_node(n->a, k, holo),
                                     diff_node(n->b, k, holo));
    case Op::Sub: return make_binary(Op::Sub, diff_node(n->a, k, holo),
                                     diff_node(n->b, k, holo));
    case Op::Mul:
      return make_binary(Op::Add,
                         make_binary(Op::Mul, diff_node(n->a, k, holo), n->b),
                         make_binary(Op::Mul, n->a, diff_node(n->b, k, holo)));
    case Op::Div:
      // (a/b)' = a'/b - a b'/b^2
      return make_binary(
          Op::Sub, make_binary(Op::Div, diff_node(n->a, k, holo), n->b),
          make_binary(Op::Div, make_binary(Op::Mul, n->a, diff_node(n->b, k, holo)),
                      make_binary(Op::Mul, n->b, n->b)));
    case Op::Pow: {
      // a^b = exp(b log a): (a^b)' = a^b (b' log a + b a'/a)
      NodePtr self = make_binary(Op::Pow, n->a, n->b);
      NodePtr t1 = make_binary(Op::Mul, diff_node(n->b, k, holo),
                               make_unary(Op::Log, n->a));
      NodePtr t2 = make_binary(Op::Div, make_binary(Op::Mul, n->b, diff_node(n->a, k, holo)),
                               n->a);
      return make_binary(Op::Mul, self, make_binary(Op::Add, t1, t2));
    }
    case Op::Neg: return make_unary(Op::Neg, diff_node(n->a, k, holo));
    case Op::Log: return make_binary(Op::Div, diff_node(n->a, k, holo), n->a);
    case Op::Exp:
      return make_binary(Op::Mul, make_unary(Op::Exp, n->a),
                         diff_node(n->a, k, holo));
    case Op::Sqrt:
      return make_binary(
          Op::Div, diff_node(n->a, k, holo),
          make_binary(Op::Mul, make_const(cplx(2.0, 0.0)), make_unary(Op::Sqrt, n->a)));
    case Op::Conj:
      // d/dz conj(u) = conj(d/dzbar u)
      return make_unary(Op::Conj, diff_node(n->a, k, !holo));
  }
  return make_const(zero);
}

std::size_t count_nodes(const NodePtr& n) {
  if (!n) return 0;
  return 1 + count_nodes(n->a) + count_nodes(n->b);
}

}  // namespace

Expr Expr::parse(const std::string& text, int m) {
  Parser p{text, m};
  NodePtr root = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return Expr(std::move(root));
}

Expr Expr::constant(cplx value) { return Expr(make_const(value)); }

cplx Expr::eval(const ChartPoint& p) const {
  if (!node_) throw std::logic_error("Expr: empty expression");
  return eval_node(*node_, p);
}

Expr Expr::d(int k) const { return Expr(diff_node(node_, k, true)); }

Expr Expr::dbar(int k) const { return Expr(diff_node(node_, k, false)); }

std::size_t Expr::node_count() const { return count_nodes(node_); }

}  // namespace kcurv
