#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "kcurv/fd.hpp"
#include "kcurv/tensor.hpp"

namespace kcurv {

struct ExprParseError : std::runtime_error {
  ExprParseError(const std::string& msg, int column)
      : std::runtime_error(msg + " (column " + std::to_string(column + 1) + ")"),
        column(column) {}
  int column;
};

// Arithmetic expressions over chart coordinates z1..zm and conj(z1)..conj(zm)
// with +, -, *, /, ^ and the functions log, exp, pow, sqrt, conj, plus the
// constants i and pi. Expressions are immutable; d()/dbar() return the
// symbolic Wirtinger derivatives (conj(z_k) is independent of z_k).
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expr() = default;

  static Expr parse(const std::string& text, int m);
  static Expr constant(cplx value);

  bool valid() const { return node_ != nullptr; }
  cplx eval(const ChartPoint& p) const;
  Expr d(int k) const;     // d/dz_k
  Expr dbar(int k) const;  // d/dzbar_k
  std::size_t node_count() const;

  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  const NodePtr& node() const { return node_; }

 private:
  NodePtr node_;
};

}  // namespace kcurv
