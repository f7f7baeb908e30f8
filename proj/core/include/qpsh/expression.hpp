#pragma once

// Closed-form real expressions on R^{4n}, evaluated with second-order jets.
// Expressions are immutable trees with shared subtrees.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpsh/jet.hpp"
#include "qpsh/polynomial.hpp"

namespace qpsh {

class ExpressionNode {
 public:
  virtual ~ExpressionNode() = default;
  virtual Jet eval(std::span<const double> x) const = 0;
  /// Number of real variables the node requires, 0 if it adapts to any.
  virtual int required_dim() const { return 0; }
};

class Expression {
 public:
  Expression() = default;
  explicit Expression(std::shared_ptr<const ExpressionNode> node) : node_(std::move(node)) {}

  static Expression constant(double c);
  static Expression variable(int v);
  /// sum_v x_v^2 = sum_a |q_a|^2.
  static Expression norm2();
  /// x^T M x (M is symmetrized).
  static Expression quadratic(const Eigen::MatrixXd& m);
  /// c0 + c . x
  static Expression affine(double c0, const Eigen::VectorXd& c);
  /// A real polynomial (throws InvalidArgument if it is not real).
  static Expression polynomial(const Polynomial& p);
  /// eps * log cosh(|x| / eps), smooth and convex; tends to |x| as eps -> 0.
  static Expression log_cosh_radius(double eps);
  /// prod_v (1 - s_v^2)^3 with s_v the affine map of [lo_v, hi_v] onto [-1, 1]; zero outside.
  static Expression box_bump(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

  Expression sqrt() const;
  Expression exp() const;
  Expression log() const;
  /// x -> f(L x + c).
  Expression compose_linear(const Eigen::MatrixXd& l, const Eigen::VectorXd& c) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(double s, const Expression& a);
  friend Expression operator+(const Expression& a, double c) { return a + constant(c); }

  bool valid() const { return static_cast<bool>(node_); }
  int required_dim() const { return node_ ? node_->required_dim() : 0; }

  Jet jet(std::span<const double> x) const;
  double value(std::span<const double> x) const { return jet(x).value; }

 private:
  std::shared_ptr<const ExpressionNode> node_;
};

}  // namespace qpsh
