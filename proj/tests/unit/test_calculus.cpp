#include <gtest/gtest.h>

#include "fd_hessian.hpp"
#include "generators.hpp"
#include "literal_j.hpp"
#include "qpsh/calculus.hpp"

namespace qpsh {
namespace {

using testing::random_point;
using testing::random_poly_form;
using testing::random_real_polynomial;

constexpr Mask bit(int i) { return Mask{1} << i; }

PolyForm poly_scalar(int n, const Polynomial& f) { return scalar_form(n, f); }

TEST(FirstOrder, Examples) {
  const Polynomial t = Polynomial::real_variable(0);
  const GaussRational half(Rational(1, 2));
  EXPECT_EQ(del(poly_scalar(2, t)), PolyForm::basis(2, bit(0), -1, Polynomial(half)));
  EXPECT_EQ(del(poly_scalar(2, Polynomial::z(0))), PolyForm::basis(2, bit(0), -1, Polynomial(1)));
  EXPECT_TRUE(del_bar(poly_scalar(2, Polynomial::z(0))).is_zero());
  EXPECT_EQ(del_J(poly_scalar(2, t)), PolyForm::basis(2, bit(1), -1, Polynomial(half)));
  EXPECT_TRUE(del_J(poly_scalar(3, Polynomial(7))).is_zero());
  EXPECT_THROW(del(PolyForm(2, 4, -5)), InvalidArgument);
}

TEST(FirstOrder, ExactnessTriple) {
  Rng rng(71);
  int nontrivial = 0, cases = 0;
  for (int n = 2; n <= 3; ++n)
    for (int p = 0; p + 2 <= 2 * n; ++p)
      for (int trial = 0; trial < 8; ++trial) {
        const PolyForm w = random_poly_form(rng, n, p, -p - 1, 3, 3, 4);
        EXPECT_TRUE(del(del(w)).is_zero());
        EXPECT_TRUE(del_J(del_J(w)).is_zero());
        const PolyForm mixed = del(del_J(w));
        EXPECT_EQ(mixed, -del_J(del(w)));
        ++cases;
        if (!mixed.is_zero()) ++nontrivial;
      }
  EXPECT_GE(2 * nontrivial, cases);
}

TEST(FirstOrder, DelJMatchesTheLiteralPullbackRoute) {
  Rng rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const Polynomial f = testing::random_polynomial(rng, n, 5, 4);
    const std::vector<double> x = random_point(rng, 4 * n);
    bool consistent = false;
    const TwistedForm literal = oracle::literal_del_j(f, n, x, consistent);
    EXPECT_TRUE(consistent);
    EXPECT_LT(scale(evaluate(del_J(poly_scalar(n, f)), x) - literal), 1e-10 * std::max(1.0, scale(literal)));
  }
}

TEST(Delta, Examples) {
  EXPECT_EQ(calibrated_baston_normalization(), kBastonNormalization);
  Polynomial affine = Polynomial(3);
  for (int v = 0; v < 8; ++v) affine += Polynomial(v - 2) * Polynomial::real_variable(v);
  EXPECT_TRUE(baston_delta(poly_scalar(2, affine)).is_zero());

  for (int n = 2; n <= 3; ++n) {
    Polynomial norm2;
    for (int c = 0; c < 2 * n; ++c) norm2 += Polynomial::z(c) * Polynomial::zbar(c);
    const PolyForm d = baston_delta(poly_scalar(n, norm2));
    EXPECT_EQ(d.twist(), -2);
    const TwistedForm at = evaluate(d, std::vector<double>(static_cast<std::size_t>(4 * n), 0.3));
    EXPECT_EQ(at, herm_to_form(HermitianQMatrix::identity(static_cast<std::size_t>(n)) * 8.0));
  }
  EXPECT_THROW(baston_delta(PolyForm(2, 1, -1)), InvalidArgument);
  EXPECT_THROW(baston_delta(PolyForm(2, 3, -4)), InvalidArgument);
}

TEST(Delta, RealityAndLinearityExact) {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const Polynomial f = random_real_polynomial(rng, n, 5, 4), g = random_real_polynomial(rng, n, 5, 4);
    const PolyForm df = baston_delta(poly_scalar(n, f)), dg = baston_delta(poly_scalar(n, g));
    EXPECT_EQ(apply_real_structure(df), df);
    const GaussRational a(Rational(3, 2), Rational(-1)), b(Rational(-2), Rational(1, 3));
    EXPECT_EQ(baston_delta(poly_scalar(n, a * f + b * g)), df * Polynomial(a) + dg * Polynomial(b));
  }
}

TEST(Delta, MultiplicativeExact) {
  Rng rng(74);
  int nontrivial = 0, cases = 0;
  for (int n = 2; n <= 3; ++n)
    for (int k = 2; k <= 2 * n - 2; ++k)
      for (int l = 2; k + l <= 2 * n; ++l) {
        const int p = k - 2, q = l - 2;
        const PolyForm w = random_poly_form(rng, n, p, -p - 1, 3, 4, 4);
        const PolyForm e = random_poly_form(rng, n, q, -q - 1, 3, 4, 4);
        const PolyForm de = baston_delta(e);
        const PolyForm rhs = wedge(baston_delta(w), de);
        EXPECT_EQ(baston_delta(wedge(w, de)), rhs) << "n=" << n << " k=" << k << " l=" << l;
        ++cases;
        if (!rhs.is_zero()) ++nontrivial;
      }
  EXPECT_GE(2 * nontrivial, cases);
}

TEST(Hessian, Examples) {
  const ScalarField norm2(2, Expression::norm2());
  Rng rng(75);
  const std::vector<double> x = random_point(rng, 8);
  const RealMatrix fd = oracle::fd_hessian([&](std::span<const double> y) { return norm2.value(y); }, x, 1e-3);
  const HermitianQMatrix from_fd = quaternionic_hessian(fd);
  EXPECT_LT((from_fd.matrix() - HermitianQMatrix::identity(2).matrix() * 8.0).max_abs(), 1e-6);
  EXPECT_LT((hessian(norm2, x).matrix() - QMatrix::identity(2) * 8.0).max_abs(), 1e-14);
  Eigen::VectorXd c(8);
  c << 1, 2, 3, 4, 5, 6, 7, 8;
  EXPECT_LT(hessian(ScalarField(2, Expression::affine(1.0, c)), x).matrix().max_abs(), 1e-15);
  EXPECT_THROW(hessian(ScalarField(2, Polynomial::z(0)), x), InvalidArgument);
}

TEST(Hessian, DiagonalEntriesAreFourVariableLaplacians) {
  Rng rng(76);
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarField f(2, random_real_polynomial(rng, 2, 6, 4));
    const std::vector<double> x = random_point(rng, 8);
    const RealMatrix r = f.real_hessian(x);
    const HermitianQMatrix h = hessian(f, x);
    for (int a = 0; a < 2; ++a) {
      double lap = 0.0;
      for (int mu = 0; mu < 4; ++mu) lap += r(4 * a + mu, 4 * a + mu);
      EXPECT_NEAR(h(static_cast<std::size_t>(a), static_cast<std::size_t>(a)).t, lap, 1e-10 * std::max(1.0, std::abs(lap)));
    }
  }
}

TEST(Hessian, ConvexQuadraticsArePsdEverywhere) {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    const ScalarField f(n, Expression::quadratic(testing::random_convex_matrix(rng, 4 * n)));
    const HermitianQMatrix h = hessian(f, random_point(rng, 4 * n));
    EXPECT_TRUE(is_psd(h, 1e-10 * h.matrix().max_abs()));
  }
}

TEST(DeltaPrime, HermitianFormOfHessianIsDelta) {
  Rng rng(78);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const Polynomial f = random_real_polynomial(rng, n, 6, 4);
    const ScalarField poly(n, f), ad(n, Expression::polynomial(f));
    for (int k = 0; k < 3; ++k) {
      const std::vector<double> x = random_point(rng, 4 * n);
      const TwistedForm lhs = herm_to_form(hessian(poly, x));
      const TwistedForm symbolic = delta_at(poly, x), wirtinger = delta_at(ad, x);
      const double s = std::max(1.0, scale(symbolic));
      EXPECT_LT(scale(lhs - symbolic), 1e-10 * s);
      EXPECT_LT(scale(wirtinger - symbolic), 1e-10 * s);
    }
  }
}

TEST(Equivariance, HessianTransformsByCongruence) {
  Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2;
    const ScalarField f(n, Expression::log_cosh_radius(0.7) + Expression::variable(1) * Expression::variable(6));
    const QMatrix t = testing::random_invertible(rng, 2);
    const ScalarField g = f.compose_linear(t);
    const std::vector<double> y = random_point(rng, 8);
    std::vector<Quaternion> qy = {{y[0], y[1], y[2], y[3]}, {y[4], y[5], y[6], y[7]}};
    const auto tq = t.apply(qy);
    const std::vector<double> ty = {tq[0].t, tq[0].x, tq[0].y, tq[0].z, tq[1].t, tq[1].x, tq[1].y, tq[1].z};
    const HermitianQMatrix expected = hessian(f, ty).congruence(t);
    EXPECT_LT((hessian(g, y).matrix() - expected.matrix()).max_abs(), 1e-10 * std::max(1.0, expected.matrix().max_abs()));
  }
}

TEST(Equivariance, PshIsPreservedByInvertibleMaps) {
  Rng rng(80);
  int violations = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const ScalarField f(2, Expression::quadratic(testing::random_convex_matrix(rng, 8)) + Expression::log_cosh_radius(0.3));
    const ScalarField g = f.compose_linear(testing::random_invertible(rng, 2));
    const HermitianQMatrix h = hessian(g, random_point(rng, 8));
    if (!is_psd(h, 1e-10 * h.matrix().max_abs())) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(DeltaStar, Examples) {
  EXPECT_TRUE(delta_star(TrigForm(2, 2, -2)).is_zero());
  TrigForm constant(2, 3, -4);
  constant.at(bit(0) | bit(2) | bit(3)) = TrigPolynomial(2.5);
  constant.at(bit(1) | bit(2) | bit(3)) = TrigPolynomial(std::complex<double>(0.0, 1.0));
  const TrigForm ds = delta_star(constant);
  EXPECT_EQ(ds.degree(), 1);
  EXPECT_EQ(ds.twist(), -5);
  EXPECT_TRUE(ds.is_zero());
  EXPECT_THROW(delta_star(TrigForm(2, 1, 0)), InvalidArgument);
}

TEST(DeltaStar, IsTheFormalAdjointOnTheTorus) {
  Rng rng(81);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = trial % 3;
    TrigForm xi = testing::random_trig_form(rng, 2, p, -p - 1, 3, 4, 2);
    while (baston_delta(xi).is_zero()) xi = testing::random_trig_form(rng, 2, p, -p - 1, 3, 4, 2);
    // conjugate modes of Delta xi so the pairing is not trivially zero
    const TrigForm f = baston_delta(xi).map_coefficients([](const TrigPolynomial& c) { return c.conj(); }).with_twist(0) +
                       testing::random_trig_form(rng, 2, p + 2, 0, 3, 3, 2);
    const std::complex<double> lhs = torus_pairing(f, baston_delta(xi));
    const std::complex<double> rhs = torus_pairing(delta_star(f), xi);
    EXPECT_GT(std::abs(lhs), 0.0);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max({std::abs(lhs), std::abs(rhs), 1e-300})) << lhs << " vs " << rhs;
  }
}

}  // namespace
}  // namespace qpsh
