#pragma once

// Random forms, polynomials and matrices for property checks. Every generator
// takes the caller's Rng so a run is reproducible from its seed alone.

#include <vector>

#include "qpsh/calculus.hpp"
#include "qpsh/sampling.hpp"

namespace qpsh::random {

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Small Gaussian-integer coefficient, never zero.
inline GaussRational small_gauss_integer(Rng& rng) {
  for (;;) {
    const int re = uniform_int(rng, -3, 3), im = uniform_int(rng, -3, 3);
    if (re != 0 || im != 0) return GaussRational(Rational(re), Rational(im));
  }
}

/// Sparse polynomial in z_c, conj(z_c) (c < 2n) with exponents in [0, 2].
inline Polynomial random_polynomial(Rng& rng, int n, int terms, int max_degree) {
  Polynomial p;
  for (int t = 0; t < terms; ++t) {
    Polynomial m(small_gauss_integer(rng));
    const int deg = uniform_int(rng, 0, max_degree);
    for (int d = 0; d < deg; ++d) {
      const int c = uniform_int(rng, 0, 2 * n - 1);
      m = m * (uniform_int(rng, 0, 1) ? Polynomial::z(c) : Polynomial::zbar(c));
    }
    p += m;
  }
  return p;
}

/// Real polynomial in the 4n real coordinates, total degree <= max_degree,
/// small integer coefficients.
inline Polynomial random_real_polynomial(Rng& rng, int n, int terms, int max_degree) {
  Polynomial p;
  for (int t = 0; t < terms; ++t) {
    RealExponents e{};
    const int deg = uniform_int(rng, 0, max_degree);
    for (int d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(uniform_int(rng, 0, 4 * n - 1))];
    int c = 0;
    while (c == 0) c = uniform_int(rng, -4, 4);
    p += Polynomial::real_monomial(e, GaussRational(c));
  }
  return p;
}

/// Degree-p form with `masks` random nonzero coefficients.
inline PolyForm random_poly_form(Rng& rng, int n, int p, int twist, int masks, int terms, int max_degree) {
  PolyForm w(n, p, twist);
  std::vector<Mask> all;
  w.for_each_mask([&](Mask m) { all.push_back(m); });
  for (int i = 0; i < masks; ++i) {
    const Mask m = all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(all.size()) - 1))];
    w.at(m) = w[m] + random_polynomial(rng, n, terms, max_degree);
  }
  return w;
}

/// Trig polynomial with `modes` random modes, |k_v| <= max_frequency on at
/// most three coordinates, complex Gaussian coefficients.
inline TrigPolynomial random_trig(Rng& rng, int n, int modes, int max_frequency) {
  TrigPolynomial t;
  for (int i = 0; i < modes; ++i) {
    Mode k{};
    const int active = uniform_int(rng, 0, 3);
    for (int a = 0; a < active; ++a)
      k[static_cast<std::size_t>(uniform_int(rng, 0, 4 * n - 1))] =
          static_cast<std::int8_t>(uniform_int(rng, -max_frequency, max_frequency));
    t += TrigPolynomial::mode(k, {gaussian(rng), gaussian(rng)});
  }
  return t;
}

inline TrigForm random_trig_form(Rng& rng, int n, int p, int twist, int masks, int modes, int max_frequency) {
  TrigForm w(n, p, twist);
  std::vector<Mask> all;
  w.for_each_mask([&](Mask m) { all.push_back(m); });
  for (int i = 0; i < masks; ++i) {
    const Mask m = all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(all.size()) - 1))];
    w.at(m) = w[m] + random_trig(rng, n, modes, max_frequency);
  }
  return w;
}

/// Random complex coefficient form (double backend).
inline TwistedForm random_form(Rng& rng, int n, int p, int twist) {
  TwistedForm w(n, p, twist);
  w.for_each_mask([&](Mask m) { w.at(m) = {gaussian(rng), gaussian(rng)}; });
  return w;
}

inline std::vector<double> random_point(Rng& rng, int dim, double radius = 1.0) {
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (double& v : x) v = uniform(rng, -radius, radius);
  return x;
}

/// Convex quadratic x^T B^T B x on R^{4n}.
inline Eigen::MatrixXd random_convex_matrix(Rng& rng, int dim) {
  Eigen::MatrixXd b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) b(i, j) = gaussian(rng);
  return b.transpose() * b;
}

/// Invertible quaternionic matrix: I + Gaussian perturbation, rejected when
/// its Dieudonne determinant is small.
inline QMatrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    QMatrix t = QMatrix::identity(n) + random_qmatrix(rng, n, n) * 0.5;
    if (dieudonne_det(t) > 0.1) return t;
  }
}

}  // namespace qpsh::random
