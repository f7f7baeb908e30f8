#include "qpsh/field.hpp"

#include "qpsh/errors.hpp"
#include "qpsh/exterior.hpp"

namespace qpsh {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::polynomial: return "polynomial";
    case Backend::autodiff: return "autodiff";
    case Backend::trig: return "trig";
  }
  return "unknown";
}

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxQuaternionicDim) throw InvalidArgument("field: n must be in [1, 4]");
}

}  // namespace

ScalarField::ScalarField(int n, Polynomial p) : n_(n), repr_(std::move(p)) {
  check_n(n);
  if (std::get<Polynomial>(repr_).complex_coordinates_used() > 2 * n)
    throw DimensionMismatch("field: polynomial uses coordinates beyond H^n");
}

ScalarField::ScalarField(int n, Expression e) : n_(n), repr_(std::move(e)) {
  check_n(n);
  const int d = std::get<Expression>(repr_).required_dim();
  if (d != 0 && d != 4 * n) throw DimensionMismatch("field: expression requires a different dimension");
}

ScalarField::ScalarField(int n, TrigPolynomial t) : n_(n), repr_(std::move(t)) {
  check_n(n);
  for (const auto& [k, c] : std::get<TrigPolynomial>(repr_).terms())
    for (std::size_t v = static_cast<std::size_t>(4 * n); v < k.size(); ++v)
      if (k[v] != 0) throw DimensionMismatch("field: trig mode uses coordinates beyond H^n");
}

Backend ScalarField::backend() const { return static_cast<Backend>(repr_.index()); }

const Polynomial& ScalarField::polynomial() const {
  if (const auto* p = std::get_if<Polynomial>(&repr_)) return *p;
  throw UnsupportedBackend("field: not a polynomial field");
}

const Expression& ScalarField::expression() const {
  if (const auto* p = std::get_if<Expression>(&repr_)) return *p;
  throw UnsupportedBackend("field: not an autodiff field");
}

const TrigPolynomial& ScalarField::trig() const {
  if (const auto* p = std::get_if<TrigPolynomial>(&repr_)) return *p;
  throw UnsupportedBackend("field: not a trig field");
}

void ScalarField::check_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != real_dim()) throw DimensionMismatch("field: point must have 4n coordinates");
}

std::complex<double> ScalarField::complex_value(std::span<const double> x) const {
  check_point(x);
  return std::visit(
      [&](const auto& r) -> std::complex<double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Expression>)
          return r.value(x);
        else
          return r.evaluate(x);
      },
      repr_);
}

double ScalarField::value(std::span<const double> x) const {
  const std::complex<double> v = complex_value(x);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real()))) throw InvalidArgument("field: value is not real");
  return v.real();
}

RealMatrix ScalarField::real_hessian(std::span<const double> x) const {
  check_point(x);
  const int d = real_dim();
  RealMatrix h(d, d);
  if (const auto* e = std::get_if<Expression>(&repr_)) {
    h = e->jet(x).hess;
    return h;
  }
  auto fill = [&](const auto& f) {
    for (int u = 0; u < d; ++u) {
      const auto du = f.d_real(u);
      for (int v = u; v < d; ++v) {
        const std::complex<double> c = du.d_real(v).evaluate(x);
        if (std::abs(c.imag()) > 1e-9 * std::max(1.0, std::abs(c.real())))
          throw InvalidArgument("field: Hessian of a non-real field requested");
        h(u, v) = h(v, u) = c.real();
      }
    }
  };
  if (const auto* p = std::get_if<Polynomial>(&repr_))
    fill(*p);
  else
    fill(std::get<TrigPolynomial>(repr_));
  return h;
}

bool ScalarField::is_real() const {
  if (const auto* p = std::get_if<Polynomial>(&repr_)) return p->is_real();
  if (const auto* t = std::get_if<TrigPolynomial>(&repr_)) return t->is_real();
  return true;
}

ScalarField ScalarField::compose_linear(const QMatrix& t) const {
  if (!t.is_square() || static_cast<int>(t.rows()) != n_) throw DimensionMismatch("compose_linear: T must be n x n");
  if (const auto* e = std::get_if<Expression>(&repr_))
    return ScalarField(n_, e->compose_linear(real_matrix(t), Eigen::VectorXd::Zero(real_dim())));
  if (const auto* p = std::get_if<Polynomial>(&repr_)) {
    const ComplexMatrix m = embed_complex(t);
    std::vector<Polynomial> image(static_cast<std::size_t>(2 * n_));
    for (int c = 0; c < 2 * n_; ++c)
      for (int d = 0; d < 2 * n_; ++d) {
        const GaussRational coef(exact_rational(m(c, d).real()), exact_rational(m(c, d).imag()));
        image[static_cast<std::size_t>(c)] += Polynomial::z(d) * Polynomial(coef);
      }
    Polynomial out;
    for (const auto& [k, coef] : p->terms()) {
      Polynomial term(coef);
      for (int c = 0; c < 2 * n_; ++c) {
        const int e = exponent(k, c);
        const int eb = exponent(k, kMaxComplexCoords + c);
        if (e) term = term * image[static_cast<std::size_t>(c)].pow(e);
        if (eb) term = term * image[static_cast<std::size_t>(c)].conj().pow(eb);
      }
      out += term;
    }
    return ScalarField(n_, out);
  }
  throw UnsupportedBackend("compose_linear: trig fields are only invariant under the torus lattice");
}

ScalarField ScalarField::scaled(double c) const {
  if (const auto* p = std::get_if<Polynomial>(&repr_))
    return ScalarField(n_, *p * GaussRational(exact_rational(c)));
  if (const auto* t = std::get_if<TrigPolynomial>(&repr_)) return ScalarField(n_, *t * std::complex<double>(c));
  return ScalarField(n_, c * std::get<Expression>(repr_));
}

}  // namespace qpsh
