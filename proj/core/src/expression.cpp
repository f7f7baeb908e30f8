#include "qpsh/expression.hpp"

#include <cmath>
#include <numbers>

#include "qpsh/errors.hpp"

namespace qpsh {

namespace {

int merge_dims(int a, int b) {
  if (a != 0 && b != 0 && a != b) throw DimensionMismatch("expression: operands require different dimensions");
  return a != 0 ? a : b;
}

int dim_of(std::span<const double> x) { return static_cast<int>(x.size()); }

class ConstantNode final : public ExpressionNode {
 public:
  explicit ConstantNode(double c) : c_(c) {}
  Jet eval(std::span<const double> x) const override { return Jet::constant(c_, dim_of(x)); }

 private:
  double c_;
};

class VariableNode final : public ExpressionNode {
 public:
  explicit VariableNode(int v) : v_(v) {}
  Jet eval(std::span<const double> x) const override {
    if (v_ >= dim_of(x)) throw DimensionMismatch("expression: variable index beyond the point dimension");
    return Jet::variable(v_, x[static_cast<std::size_t>(v_)], dim_of(x));
  }

 private:
  int v_;
};

class SumNode final : public ExpressionNode {
 public:
  SumNode(Expression a, Expression b, double sb) : a_(std::move(a)), b_(std::move(b)), sb_(sb) {
    dim_ = merge_dims(a_.required_dim(), b_.required_dim());
  }
  Jet eval(std::span<const double> x) const override {
    Jet j = a_.jet(x);
    Jet k = b_.jet(x);
    k *= sb_;
    return j += k;
  }
  int required_dim() const override { return dim_; }

 private:
  Expression a_, b_;
  double sb_;
  int dim_;
};

class ProductNode final : public ExpressionNode {
 public:
  ProductNode(Expression a, Expression b) : a_(std::move(a)), b_(std::move(b)) {
    dim_ = merge_dims(a_.required_dim(), b_.required_dim());
  }
  Jet eval(std::span<const double> x) const override { return a_.jet(x) * b_.jet(x); }
  int required_dim() const override { return dim_; }

 private:
  Expression a_, b_;
  int dim_;
};

class ScaleNode final : public ExpressionNode {
 public:
  ScaleNode(double s, Expression a) : s_(s), a_(std::move(a)) {}
  Jet eval(std::span<const double> x) const override { return a_.jet(x) * s_; }
  int required_dim() const override { return a_.required_dim(); }

 private:
  double s_;
  Expression a_;
};

enum class UnaryKind { sqrt, exp, log };

class UnaryNode final : public ExpressionNode {
 public:
  UnaryNode(UnaryKind k, Expression a) : k_(k), a_(std::move(a)) {}
  Jet eval(std::span<const double> x) const override {
    const Jet u = a_.jet(x);
    const double v = u.value;
    switch (k_) {
      case UnaryKind::sqrt: {
        if (v <= 0.0) throw NumericalDegeneracy("expression: sqrt is not differentiable at a nonpositive argument");
        const double s = std::sqrt(v);
        return chain(u, s, 0.5 / s, -0.25 / (s * v));
      }
      case UnaryKind::exp: {
        const double e = std::exp(v);
        return chain(u, e, e, e);
      }
      case UnaryKind::log:
        if (v <= 0.0) throw NumericalDegeneracy("expression: log of a nonpositive argument");
        return chain(u, std::log(v), 1.0 / v, -1.0 / (v * v));
    }
    return u;
  }
  int required_dim() const override { return a_.required_dim(); }

 private:
  UnaryKind k_;
  Expression a_;
};

class Norm2Node final : public ExpressionNode {
 public:
  Jet eval(std::span<const double> x) const override {
    const int d = dim_of(x);
    Jet j = Jet::constant(0.0, d);
    for (int v = 0; v < d; ++v) {
      const double xv = x[static_cast<std::size_t>(v)];
      j.value += xv * xv;
      j.grad(v) = 2.0 * xv;
      j.hess(v, v) = 2.0;
    }
    return j;
  }
};

class QuadraticNode final : public ExpressionNode {
 public:
  explicit QuadraticNode(const Eigen::MatrixXd& m) : m_(0.5 * (m + m.transpose())) {
    if (m.rows() != m.cols()) throw DimensionMismatch("quadratic: matrix must be square");
  }
  Jet eval(std::span<const double> x) const override {
    check(x);
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), dim_of(x));
    const Eigen::VectorXd mv = m_ * v;
    Jet j;
    j.value = v.dot(mv);
    j.grad = 2.0 * mv;
    j.hess = 2.0 * m_;
    return j;
  }
  int required_dim() const override { return static_cast<int>(m_.rows()); }

 private:
  void check(std::span<const double> x) const {
    if (dim_of(x) != m_.rows()) throw DimensionMismatch("quadratic: point dimension mismatch");
  }
  Eigen::MatrixXd m_;
};

class AffineNode final : public ExpressionNode {
 public:
  AffineNode(double c0, Eigen::VectorXd c) : c0_(c0), c_(std::move(c)) {}
  Jet eval(std::span<const double> x) const override {
    if (dim_of(x) != c_.size()) throw DimensionMismatch("affine: point dimension mismatch");
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), dim_of(x));
    Jet j = Jet::constant(c0_ + c_.dot(v), dim_of(x));
    j.grad = c_;
    return j;
  }
  int required_dim() const override { return static_cast<int>(c_.size()); }

 private:
  double c0_;
  Eigen::VectorXd c_;
};

class PolynomialNode final : public ExpressionNode {
 public:
  explicit PolynomialNode(const Polynomial& p) {
    if (!p.is_real()) throw InvalidArgument("expression: polynomial is not real-valued");
    for (const auto& [e, c] : p.real_terms()) {
      Term t;
      t.coefficient = static_cast<double>(c.re);
      for (int v = 0; v < kMaxRealVars; ++v)
        if (e[static_cast<std::size_t>(v)] > 0) t.factors.push_back({v, e[static_cast<std::size_t>(v)]});
      terms_.push_back(std::move(t));
    }
    const int used = p.complex_coordinates_used();
    dim_ = used == 0 ? 0 : 4 * ((used + 1) / 2);
  }
  Jet eval(std::span<const double> x) const override {
    const int d = dim_of(x);
    if (d < dim_) throw DimensionMismatch("polynomial expression: point has too few coordinates");
    Jet j = Jet::constant(0.0, d);
    for (const Term& t : terms_) {
      const std::size_t m = t.factors.size();
      std::vector<double> p(m), d1(m), d2(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double xv = x[static_cast<std::size_t>(t.factors[i].first)];
        const int e = t.factors[i].second;
        p[i] = std::pow(xv, e);
        d1[i] = e * std::pow(xv, e - 1);
        d2[i] = e > 1 ? e * (e - 1) * std::pow(xv, e - 2) : 0.0;
      }
      auto prod_except = [&](std::size_t a, std::size_t b) {
        double r = t.coefficient;
        for (std::size_t i = 0; i < m; ++i)
          if (i != a && i != b) r *= p[i];
        return r;
      };
      j.value += prod_except(m, m);
      for (std::size_t a = 0; a < m; ++a) {
        const int va = t.factors[a].first;
        j.grad(va) += d1[a] * prod_except(a, m);
        j.hess(va, va) += d2[a] * prod_except(a, m);
        for (std::size_t b = a + 1; b < m; ++b) {
          const int vb = t.factors[b].first;
          const double h = d1[a] * d1[b] * prod_except(a, b);
          j.hess(va, vb) += h;
          j.hess(vb, va) += h;
        }
      }
    }
    return j;
  }

 private:
  struct Term {
    double coefficient = 0.0;
    std::vector<std::pair<int, int>> factors;
  };
  std::vector<Term> terms_;
  int dim_ = 0;
};

class LogCoshRadiusNode final : public ExpressionNode {
 public:
  explicit LogCoshRadiusNode(double eps) : eps_(eps) {
    if (!(eps > 0.0)) throw InvalidArgument("log_cosh_radius: eps must be positive");
  }
  Jet eval(std::span<const double> x) const override {
    const int d = dim_of(x);
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), d);
    const double r = v.norm();
    const double u = r / eps_;
    // Hessian = a I + b x x^T
    double a, b;
    if (u < 1e-3) {
      const double u2 = u * u;
      a = (1.0 - u2 / 3.0 + 2.0 * u2 * u2 / 15.0) / eps_;
      b = (-2.0 / 3.0 + 8.0 * u2 / 15.0) / (eps_ * eps_ * eps_);
    } else {
      const double th = std::tanh(u);
      const double sech2 = 1.0 - th * th;
      a = th / r;
      b = (sech2 / eps_ - a) / (r * r);
    }
    Jet j;
    j.value = eps_ * (u + std::log1p(std::exp(-2.0 * u)) - std::numbers::ln2);
    j.grad = a * v;
    j.hess = b * (v * v.transpose());
    j.hess.diagonal().array() += a;
    return j;
  }

 private:
  double eps_;
};

class BoxBumpNode final : public ExpressionNode {
 public:
  BoxBumpNode(Eigen::VectorXd lo, Eigen::VectorXd hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw DimensionMismatch("box_bump: bounds differ in length");
    for (Eigen::Index v = 0; v < lo_.size(); ++v)
      if (!(hi_(v) > lo_(v))) throw InvalidArgument("box_bump: empty box");
  }
  Jet eval(std::span<const double> x) const override {
    const int d = dim_of(x);
    if (d != lo_.size()) throw DimensionMismatch("box_bump: point dimension mismatch");
    Jet j = Jet::constant(0.0, d);
    JetVector r1(d), r2(d);
    double value = 1.0;
    for (int v = 0; v < d; ++v) {
      const double k = 2.0 / (hi_(v) - lo_(v));
      const double s = (2.0 * x[static_cast<std::size_t>(v)] - lo_(v) - hi_(v)) / (hi_(v) - lo_(v));
      const double w = 1.0 - s * s;
      if (w <= 0.0) return j;
      value *= w * w * w;
      // logarithmic derivatives of (1 - s^2)^3
      r1(v) = -6.0 * s * k / w;
      r2(v) = k * k * (-6.0 * w + 24.0 * s * s) / (w * w);
    }
    j.value = value;
    j.grad = value * r1;
    j.hess = value * (r1 * r1.transpose());
    for (int v = 0; v < d; ++v) j.hess(v, v) = value * r2(v);
    return j;
  }
  int required_dim() const override { return static_cast<int>(lo_.size()); }

 private:
  Eigen::VectorXd lo_, hi_;
};

class ComposeNode final : public ExpressionNode {
 public:
  ComposeNode(Expression f, Eigen::MatrixXd l, Eigen::VectorXd c) : f_(std::move(f)), l_(std::move(l)), c_(std::move(c)) {
    if (l_.rows() != c_.size()) throw DimensionMismatch("compose_linear: L and c disagree");
    if (f_.required_dim() != 0 && f_.required_dim() != l_.rows())
      throw DimensionMismatch("compose_linear: L does not map into the domain of f");
  }
  Jet eval(std::span<const double> x) const override {
    if (dim_of(x) != l_.cols()) throw DimensionMismatch("compose_linear: point dimension mismatch");
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), dim_of(x));
    const Eigen::VectorXd y = l_ * v + c_;
    const Jet inner = f_.jet(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
    Jet j;
    j.value = inner.value;
    j.grad = l_.transpose() * inner.grad;
    j.hess = l_.transpose() * inner.hess * l_;
    return j;
  }
  int required_dim() const override { return static_cast<int>(l_.cols()); }

 private:
  Expression f_;
  Eigen::MatrixXd l_;
  Eigen::VectorXd c_;
};

}  // namespace

Expression Expression::constant(double c) { return Expression(std::make_shared<ConstantNode>(c)); }
Expression Expression::variable(int v) {
  if (v < 0 || v >= kMaxRealVars) throw InvalidArgument("expression: variable index out of range");
  return Expression(std::make_shared<VariableNode>(v));
}
Expression Expression::norm2() { return Expression(std::make_shared<Norm2Node>()); }
Expression Expression::quadratic(const Eigen::MatrixXd& m) { return Expression(std::make_shared<QuadraticNode>(m)); }
Expression Expression::affine(double c0, const Eigen::VectorXd& c) {
  return Expression(std::make_shared<AffineNode>(c0, c));
}
Expression Expression::polynomial(const Polynomial& p) { return Expression(std::make_shared<PolynomialNode>(p)); }
Expression Expression::log_cosh_radius(double eps) { return Expression(std::make_shared<LogCoshRadiusNode>(eps)); }
Expression Expression::box_bump(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  return Expression(std::make_shared<BoxBumpNode>(lo, hi));
}

Expression Expression::sqrt() const { return Expression(std::make_shared<UnaryNode>(UnaryKind::sqrt, *this)); }
Expression Expression::exp() const { return Expression(std::make_shared<UnaryNode>(UnaryKind::exp, *this)); }
Expression Expression::log() const { return Expression(std::make_shared<UnaryNode>(UnaryKind::log, *this)); }

Expression Expression::compose_linear(const Eigen::MatrixXd& l, const Eigen::VectorXd& c) const {
  return Expression(std::make_shared<ComposeNode>(*this, l, c));
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(std::make_shared<SumNode>(a, b, 1.0));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(std::make_shared<SumNode>(a, b, -1.0));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(std::make_shared<ProductNode>(a, b));
}
Expression operator*(double s, const Expression& a) { return Expression(std::make_shared<ScaleNode>(s, a)); }

Jet Expression::jet(std::span<const double> x) const {
  if (!node_) throw InvalidArgument("expression: empty");
  if (x.empty() || x.size() > static_cast<std::size_t>(kMaxRealVars))
    throw DimensionMismatch("expression: point dimension must be in [1, 16]");
  return node_->eval(x);
}

}  // namespace qpsh
