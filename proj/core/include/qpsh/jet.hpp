#pragma once

// Second-order forward-mode jets: value, gradient and Hessian with respect
// to up to 16 real variables.

#include <Eigen/Dense>

namespace qpsh {

using JetVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 16, 1>;
using JetMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;

struct Jet {
  double value = 0.0;
  JetVector grad;
  JetMatrix hess;

  static Jet constant(double c, int dim) {
    Jet j;
    j.value = c;
    j.grad = JetVector::Zero(dim);
    j.hess = JetMatrix::Zero(dim, dim);
    return j;
  }
  static Jet variable(int i, double x, int dim) {
    Jet j = constant(x, dim);
    j.grad(i) = 1.0;
    return j;
  }

  int dim() const { return static_cast<int>(grad.size()); }

  Jet& operator+=(const Jet& o) {
    value += o.value;
    grad += o.grad;
    hess += o.hess;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    value -= o.value;
    grad -= o.grad;
    hess -= o.hess;
    return *this;
  }
  Jet& operator*=(double s) {
    value *= s;
    grad *= s;
    hess *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.value = a.value * b.value;
    r.grad = a.grad * b.value + b.grad * a.value;
    r.hess = a.hess * b.value + b.hess * a.value + a.grad * b.grad.transpose() + b.grad * a.grad.transpose();
    return r;
  }
};

/// phi(u) given phi(u), phi'(u), phi''(u).
inline Jet chain(const Jet& u, double f0, double f1, double f2) {
  Jet r;
  r.value = f0;
  r.grad = f1 * u.grad;
  r.hess = f1 * u.hess + f2 * (u.grad * u.grad.transpose());
  return r;
}

}  // namespace qpsh
