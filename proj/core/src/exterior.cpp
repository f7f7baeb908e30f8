#include "qpsh/exterior.hpp"

#include <algorithm>
#include <cmath>

namespace qpsh {

double scale(const TwistedForm& f) {
  double s = 0.0;
  f.for_each_mask([&](Mask m) { s = std::max(s, std::abs(f[m])); });
  return s;
}

bool is_real(const TwistedForm& f, double tol) {
  const TwistedForm r = apply_real_structure(f);
  const double s = std::max(1.0, scale(f));
  bool ok = true;
  f.for_each_mask([&](Mask m) { ok = ok && std::abs(r[m] - f[m]) <= tol * s; });
  return ok;
}

TwistedForm omega0(int n) {
  TwistedForm f(n, 2, -2);
  for (int a = 0; a < n; ++a) f.at((Mask{1} << (2 * a)) | (Mask{1} << (2 * a + 1))) = 1.0;
  return f;
}

TwistedForm volume_form(int n) {
  TwistedForm f(n, 2 * n, -2 * n);
  f.at(f.full_mask()) = 1.0;
  return f;
}

namespace {

ComplexMatrix structure_matrix(int n) {
  ComplexMatrix s = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    s(2 * a, 2 * a + 1) = 1.0;
    s(2 * a + 1, 2 * a) = -1.0;
  }
  return s;
}

}  // namespace

TwistedForm herm_to_form(const HermitianQMatrix& a) {
  const int n = static_cast<int>(a.n());
  const ComplexMatrix w = structure_matrix(n) * embed_complex(a);
  TwistedForm f(n, 2, -2);
  for (int b = 0; b < 2 * n; ++b)
    for (int c = b + 1; c < 2 * n; ++c) f.at((Mask{1} << b) | (Mask{1} << c)) = w(b, c);
  return f;
}

HermitianQMatrix form_to_herm(const TwistedForm& f, double tol) {
  if (f.degree() != 2 || f.twist() != -2) throw InvalidArgument("form_to_herm: expects degree 2, twist -2");
  if (!is_real(f, tol)) throw InvalidArgument("form_to_herm: form is not real");
  const int n = f.n();
  ComplexMatrix w = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int b = 0; b < 2 * n; ++b)
    for (int c = b + 1; c < 2 * n; ++c) {
      w(b, c) = f[(Mask{1} << b) | (Mask{1} << c)];
      w(c, b) = -w(b, c);
    }
  // S^{-1} = -S
  const ComplexMatrix e = -structure_matrix(n) * w;
  return HermitianQMatrix(from_complex_embedding(e), std::max(tol, 1e-12) * 10);
}

double top_coefficient(const TwistedForm& f, double tol) {
  if (f.degree() != f.dim()) throw InvalidArgument("top_coefficient: form is not of top degree");
  if (f.twist() != -f.dim()) throw InvalidArgument("top_coefficient: top forms carry twist -2n");
  const std::complex<double> c = f[f.full_mask()];
  if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c)))
    throw InvalidArgument("top_coefficient: form is not real");
  return c.real();
}

TwistedForm pullback(const TwistedForm& f, const QMatrix& t) {
  if (!t.is_square() || static_cast<int>(t.rows()) != f.n())
    throw DimensionMismatch("pullback: T must be n x n");
  const int n = f.n();
  const ComplexMatrix e = embed_complex(t);
  std::vector<TwistedForm> images;
  images.reserve(2 * n);
  for (int c = 0; c < 2 * n; ++c) {
    TwistedForm img(n, 1, 0);
    for (int d = 0; d < 2 * n; ++d) img.at(Mask{1} << d) = e(c, d);
    images.push_back(std::move(img));
  }
  TwistedForm out(n, f.degree(), f.twist());
  f.for_each_mask([&](Mask m) {
    if (f[m] == 0.0) return;
    TwistedForm term = TwistedForm::scalar(n, f[m]);
    for (Mask rest = m; rest; rest &= rest - 1) term = wedge(term, images[std::countr_zero(rest)]);
    out += term.with_twist(f.twist());
  });
  return out;
}

std::vector<std::complex<double>> coefficients(const TwistedForm& f) {
  std::vector<std::complex<double>> v;
  f.for_each_mask([&](Mask m) { v.push_back(f[m]); });
  return v;
}

Eigen::VectorXd real_vectorize(const TwistedForm& f) {
  const auto c = coefficients(f);
  Eigen::VectorXd v(2 * static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    v(2 * static_cast<Eigen::Index>(i)) = c[i].real();
    v(2 * static_cast<Eigen::Index>(i) + 1) = c[i].imag();
  }
  return v;
}

ExactForm to_exact(const TwistedForm& f) {
  ExactForm out(f.n(), f.degree(), f.twist());
  f.for_each_mask([&](Mask m) { out.at(m) = GaussRational(exact_rational(f[m].real()), exact_rational(f[m].imag())); });
  return out;
}

TwistedForm to_double(const ExactForm& f) {
  TwistedForm out(f.n(), f.degree(), f.twist());
  f.for_each_mask([&](Mask m) { out.at(m) = f[m].to_complex(); });
  return out;
}

}  // namespace qpsh
