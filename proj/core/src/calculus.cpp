#include "qpsh/calculus.hpp"

namespace qpsh {

namespace {

template <class C>
TwistedForm evaluate_form(const BasicForm<C>& w, std::span<const double> x) {
  TwistedForm out(w.n(), w.degree(), w.twist());
  w.for_each_mask([&](Mask m) {
    if (!is_zero_coeff(w[m])) out.at(m) = w[m].evaluate(x);
  });
  return out;
}

const Quaternion kUnits[4] = {Quaternion(1.0), Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};

/// Rows: d/dz_c as a combination of real partials (d/dconj(z_c) is the conjugate row).
Eigen::MatrixXcd wirtinger_rows(int n) {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * n, 4 * n);
  const std::complex<double> i(0.0, 1.0);
  for (int a = 0; a < n; ++a) {
    w(2 * a, 4 * a) = 0.5;
    w(2 * a, 4 * a + 1) = -0.5 * i;
    w(2 * a + 1, 4 * a + 2) = 0.5;
    w(2 * a + 1, 4 * a + 3) = 0.5 * i;
  }
  return w;
}

}  // namespace

TwistedForm evaluate(const PolyForm& w, std::span<const double> x) { return evaluate_form(w, x); }
TwistedForm evaluate(const TrigForm& w, std::span<const double> x) { return evaluate_form(w, x); }

HermitianQMatrix quaternionic_hessian(const RealMatrix& r) {
  if (r.rows() != r.cols() || r.rows() % 4 != 0) throw DimensionMismatch("quaternionic_hessian: expects a 4n x 4n matrix");
  const std::size_t n = static_cast<std::size_t>(r.rows() / 4);
  QMatrix q(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Quaternion s;
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          const double v = r(static_cast<Eigen::Index>(4 * a) + mu, static_cast<Eigen::Index>(4 * b) + nu);
          if (v != 0.0) s += (kUnits[mu] * kUnits[nu].conj()) * v;
        }
      q(a, b) = s;
    }
  return HermitianQMatrix(q, 1e-9);
}

HermitianQMatrix hessian(const ScalarField& f, std::span<const double> x) {
  if (!f.is_real()) throw InvalidArgument("hessian: field is not real-valued");
  return quaternionic_hessian(f.real_hessian(x));
}

TwistedForm delta_at(const ScalarField& f, std::span<const double> x) {
  const int n = f.n();
  switch (f.backend()) {
    case Backend::polynomial: return evaluate(baston_delta(scalar_form(n, f.polynomial())), x);
    case Backend::trig: return evaluate(baston_delta(scalar_form(n, f.trig())), x);
    case Backend::autodiff: break;
  }
  const Eigen::MatrixXcd w = wirtinger_rows(n);
  const RealMatrix r = f.real_hessian(x);
  // H_{bc} = f_{z_b conj(z_c)}
  const Eigen::MatrixXcd h = w * r.cast<std::complex<double>>() * w.adjoint();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    s(2 * a, 2 * a + 1) = 1.0;
    s(2 * a + 1, 2 * a) = -1.0;
  }
  const Eigen::MatrixXcd hs = h * s;
  TwistedForm out(n, 2, -2);
  for (int b = 0; b < 2 * n; ++b)
    for (int c = b + 1; c < 2 * n; ++c)
      out.at((Mask{1} << b) | (Mask{1} << c)) = kBastonNormalization * (hs(b, c) - hs(c, b));
  return out;
}

double calibrated_baston_normalization() {
  const int n = 2;
  const Polynomial f = Polynomial::z(0) * Polynomial::zbar(0) + Polynomial::z(1) * Polynomial::zbar(1);
  const double origin[8] = {};
  const TwistedForm target = herm_to_form(hessian(ScalarField(n, f), origin));
  const TwistedForm raw = evaluate(del(del_J(scalar_form(n, f))), origin);
  const Mask m = 0b11;
  return (target[m] / raw[m]).real();
}

TrigForm delta_star(const TrigForm& f) {
  if (f.degree() < 2) throw InvalidArgument("delta_star: form degree must be at least 2");
  TrigForm out(f.n(), f.degree() - 2, f.twist() - 1);
  for (int b = 0; b < f.dim(); ++b) {
    const TrigForm ib = interior(f, b);
    if (ib.is_zero()) continue;
    for (int c = 0; c < f.dim(); ++c) {
      if (c == b) continue;
      TrigForm term = interior(ib, c);
      term = term.map_coefficients([&](const TrigPolynomial& g) {
        const TrigPolynomial dj = (c % 2 == 1) ? g.d_zbar(c - 1) : -g.d_zbar(c + 1);
        return dj.d_z(b);
      });
      out += term.with_twist(out.twist());
    }
  }
  out *= TrigPolynomial(kBastonNormalization);
  return out;
}

std::complex<double> torus_pairing(const TrigForm& f, const TrigForm& g) {
  if (f.n() != g.n() || f.degree() != g.degree()) throw DimensionMismatch("torus_pairing: forms differ in shape");
  std::complex<double> s = 0.0;
  f.for_each_mask([&](Mask m) {
    if (!f[m].is_zero() && !g[m].is_zero()) s += (f[m] * g[m]).integral(f.n());
  });
  return s;
}

}  // namespace qpsh
