#pragma once

// Scalar fields on R^{4n} = H^n with one of three backends.

#include <complex>
#include <span>
#include <variant>

#include "qpsh/expression.hpp"
#include "qpsh/polynomial.hpp"
#include "qpsh/qmatrix.hpp"
#include "qpsh/trig.hpp"

namespace qpsh {

enum class Backend { polynomial, autodiff, trig };

const char* backend_name(Backend b);

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int n, Polynomial p);
  ScalarField(int n, Expression e);
  ScalarField(int n, TrigPolynomial t);

  int n() const { return n_; }
  int real_dim() const { return 4 * n_; }
  Backend backend() const;

  const Polynomial& polynomial() const;
  const Expression& expression() const;
  const TrigPolynomial& trig() const;

  std::complex<double> complex_value(std::span<const double> x) const;
  /// Real part; throws InvalidArgument when the field is not real at x.
  double value(std::span<const double> x) const;
  /// (d^2 f / dx_u dx_v), real coordinates ordered (t, x, y, z) per q_a.
  RealMatrix real_hessian(std::span<const double> x) const;

  bool is_real() const;

  /// x -> f(T x) for T in M_n(H). Polynomial fields are substituted exactly
  /// (entries of T read as exact dyadic rationals); trig fields are not
  /// closed under general T.
  ScalarField compose_linear(const QMatrix& t) const;

  /// c * f (real c).
  ScalarField scaled(double c) const;

 private:
  void check_point(std::span<const double> x) const;

  int n_ = 0;
  std::variant<Polynomial, Expression, TrigPolynomial> repr_;
};

}  // namespace qpsh
