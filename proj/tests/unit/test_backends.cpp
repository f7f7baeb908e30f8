#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fd_hessian.hpp"
#include "generators.hpp"
#include "qpsh/field.hpp"
#include "qpsh/field_language.hpp"

namespace qpsh {
namespace {

using testing::random_point;
using testing::random_polynomial;
using testing::random_real_polynomial;

const std::complex<double> I(0.0, 1.0);

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(Polynomial, CoordinatesInRealTerms) {
  const std::vector<double> x = {0.5, -1.5, 2.0, 3.0, 0.25, 0.75, -1.0, 4.0};
  EXPECT_EQ(Polynomial::z(0).evaluate(x), std::complex<double>(0.5, -1.5));
  EXPECT_EQ(Polynomial::z(1).evaluate(x), std::complex<double>(2.0, -3.0));
  EXPECT_EQ(Polynomial::zbar(2).evaluate(x), std::complex<double>(0.25, -0.75));
  EXPECT_EQ(Polynomial::z(3).evaluate(x), std::complex<double>(-1.0, -4.0));
  for (int v = 0; v < 8; ++v) {
    const Polynomial p = Polynomial::real_variable(v);
    EXPECT_TRUE(p.is_real());
    EXPECT_EQ(p.evaluate(x), std::complex<double>(x[static_cast<std::size_t>(v)]));
  }
  EXPECT_THROW(Polynomial::z(8), InvalidArgument);
  EXPECT_THROW(Polynomial::z(0).pow(16), InvalidArgument);
  EXPECT_THROW(Polynomial::z(3).evaluate(std::vector<double>(4, 0.0)), DimensionMismatch);
}

TEST(Polynomial, WirtingerDerivativesAreExactCombinationsOfRealOnes) {
  Rng rng(51);
  const GaussRational half(Rational(1, 2)), ihalf(Rational(0), Rational(1, 2));
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = random_polynomial(rng, 2, 5, 4);
    for (int a = 0; a < 2; ++a) {
      EXPECT_EQ(p.d_z(2 * a), half * p.d_real(4 * a) - ihalf * p.d_real(4 * a + 1));
      EXPECT_EQ(p.d_zbar(2 * a), half * p.d_real(4 * a) + ihalf * p.d_real(4 * a + 1));
      EXPECT_EQ(p.d_z(2 * a + 1), half * p.d_real(4 * a + 2) + ihalf * p.d_real(4 * a + 3));
      EXPECT_EQ(p.d_zbar(2 * a + 1), half * p.d_real(4 * a + 2) - ihalf * p.d_real(4 * a + 3));
    }
  }
}

TEST(Polynomial, RingAndConjugationLaws) {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = random_polynomial(rng, 2, 4, 3), q = random_polynomial(rng, 2, 4, 3);
    const std::vector<double> x = random_point(rng, 8);
    const auto px = p.evaluate(x), qx = q.evaluate(x);
    EXPECT_LT(std::abs((p * q).evaluate(x) - px * qx), 1e-10 * std::max(1.0, std::abs(px * qx)));
    EXPECT_LT(std::abs(p.conj().evaluate(x) - std::conj(px)), 1e-12 * std::max(1.0, std::abs(px)));
    EXPECT_EQ((p * q).d_zbar(1), p.d_zbar(1) * q + p * q.d_zbar(1));
    EXPECT_EQ((p * q).conj(), p.conj() * q.conj());
    EXPECT_TRUE((p + p.conj()).is_real());
  }
}

TEST(Polynomial, RealTermsReassemble) {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_polynomial(rng, 2, 4, 4);
    Polynomial back;
    for (const auto& [e, c] : p.real_terms()) back += Polynomial::real_monomial(e, c);
    EXPECT_EQ(back, p);
  }
}

TEST(Polynomial, RealDerivativeMatchesDifferenceQuotient) {
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_real_polynomial(rng, 2, 5, 4);
    std::vector<double> x = random_point(rng, 8);
    const int v = trial % 8;
    const double h = 1e-5;
    x[static_cast<std::size_t>(v)] += h;
    const double up = p.evaluate(x).real();
    x[static_cast<std::size_t>(v)] -= 2 * h;
    const double down = p.evaluate(x).real();
    x[static_cast<std::size_t>(v)] += h;
    EXPECT_NEAR(p.d_real(v).evaluate(x).real(), (up - down) / (2 * h), 1e-6);
  }
}

TEST(Trig, ModesDerivativesAndIntegral) {
  Mode k{};
  k[0] = 2;
  k[5] = -1;
  const TrigPolynomial m = TrigPolynomial::mode(k, 3.0);
  const std::vector<double> x = {0.3, 0.1, -0.7, 1.2, 0.4, 0.9, 2.0, -1.0};
  EXPECT_LT(std::abs(m.evaluate(x) - 3.0 * std::exp(I * (2 * 0.3 - 0.9))), 1e-14);
  EXPECT_EQ(m.d_real(0), m * std::complex<double>(0.0, 2.0));
  EXPECT_EQ(m.d_real(5), m * std::complex<double>(0.0, -1.0));
  EXPECT_TRUE(m.d_real(1).is_zero());
  EXPECT_EQ(m.max_frequency(), 2);
  EXPECT_EQ(m.integral(2), 0.0);
  const double vol = std::pow(2 * std::numbers::pi, 8);
  EXPECT_LT(std::abs((m + TrigPolynomial(1.5)).integral(2) - 1.5 * vol), 1e-9 * vol);
  EXPECT_EQ((m * m.conj()), TrigPolynomial(9.0));
  EXPECT_TRUE((m + m.conj()).is_real());
  EXPECT_FALSE(m.is_real());
}

TEST(Trig, WirtingerAndProductRules) {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const TrigPolynomial f = testing::random_trig(rng, 2, 4, 3), g = testing::random_trig(rng, 2, 4, 3);
    const std::vector<double> x = random_point(rng, 8, 3.0);
    const auto lhs = f.d_z(1).evaluate(x);
    const auto rhs = 0.5 * (f.d_real(2).evaluate(x) + I * f.d_real(3).evaluate(x));
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    const auto prod = (f * g).d_zbar(0).evaluate(x);
    const auto leibniz = f.d_zbar(0).evaluate(x) * g.evaluate(x) + f.evaluate(x) * g.d_zbar(0).evaluate(x);
    EXPECT_LT(std::abs(prod - leibniz), 1e-10 * std::max(1.0, std::abs(leibniz)));
  }
}

TEST(Expression, NormSquaredJet) {
  const std::vector<double> x = {1.0, -2.0, 0.5, 3.0, 0.0, 1.0, -1.0, 2.0};
  const Jet j = Expression::norm2().jet(x);
  EXPECT_DOUBLE_EQ(j.value, 20.25);
  for (int v = 0; v < 8; ++v) EXPECT_DOUBLE_EQ(j.grad(v), 2 * x[static_cast<std::size_t>(v)]);
  EXPECT_TRUE(j.hess.isApprox(2.0 * JetMatrix::Identity(8, 8)));
}

TEST(Expression, PolynomialJetsAgreeWithExactDerivatives) {
  Rng rng(56);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = random_real_polynomial(rng, 2, 6, 4);
    const Expression e = Expression::polynomial(p);
    const std::vector<double> x = random_point(rng, 8);
    const Jet j = e.jet(x);
    EXPECT_LE(rel(j.value, p.evaluate(x).real()), 1e-12);
    for (int u = 0; u < 8; ++u) {
      EXPECT_LE(rel(j.grad(u), p.d_real(u).evaluate(x).real()), 1e-12);
      for (int v = 0; v < 8; ++v) EXPECT_LE(rel(j.hess(u, v), p.d_real(u).d_real(v).evaluate(x).real()), 1e-12);
    }
  }
  EXPECT_THROW(Expression::polynomial(Polynomial::z(0)), InvalidArgument);
}

TEST(Expression, ClosedFormsMatchDifferenceQuotients) {
  Rng rng(57);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(8, -1.0), hi = Eigen::VectorXd::Constant(8, 1.0);
  const std::vector<Expression> exprs = {
      (Expression::norm2() + 0.04).sqrt(),
      Expression::log_cosh_radius(0.3),
      (Expression::variable(0) * Expression::variable(3) + 2.0).log(),
      (0.5 * Expression::variable(1) - Expression::variable(6)).exp(),
      Expression::box_bump(lo, hi),
  };
  for (const auto& e : exprs)
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<double> x = random_point(rng, 8, 0.8);
      const Eigen::MatrixXd fd = oracle::fd_hessian([&](std::span<const double> y) { return e.value(y); }, x, 1e-4);
      const Eigen::MatrixXd exact = e.jet(x).hess;
      EXPECT_LT((fd - exact).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, exact.cwiseAbs().maxCoeff()));
    }
}

TEST(Expression, LogCoshRadiusValues) {
  const double eps = 0.2;
  const Expression e = Expression::log_cosh_radius(eps);
  std::vector<double> x(8, 0.0);
  EXPECT_DOUBLE_EQ(e.value(x), 0.0);
  for (double r : {1e-6, 1e-4, 0.01, 0.5, 3.0}) {
    x[2] = r;
    const long double u = static_cast<long double>(r) / eps;
    const double expected = static_cast<double>(eps * std::log(std::cosh(u)));
    EXPECT_NEAR(e.value(x), expected, 1e-15 + 1e-12 * expected);
    // Hessian at radius r along the axis: radial f'' = tanh'(u), tangential f'/r
    const Jet j = e.jet(x);
    const double radial = static_cast<double>(1.0L / (std::cosh(u) * std::cosh(u)) / eps);
    const double tangential = static_cast<double>(std::tanh(u) / r);
    EXPECT_NEAR(j.hess(2, 2), radial, 1e-9 * std::max(1.0, radial));
    EXPECT_NEAR(j.hess(0, 0), tangential, 1e-9 * std::max(1.0, tangential));
  }
  EXPECT_THROW(Expression::log_cosh_radius(0.0), InvalidArgument);
}

TEST(Expression, BoxBumpSupport) {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(4, -1.0), hi = Eigen::VectorXd::Constant(4, 1.0);
  const Expression b = Expression::box_bump(lo, hi);
  EXPECT_DOUBLE_EQ(b.value(std::vector<double>(4, 0.0)), 1.0);
  EXPECT_DOUBLE_EQ(b.value(std::vector<double>{1.5, 0.0, 0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(b.value(std::vector<double>{1.0, 0.0, 0.0, 0.0}), 0.0);
  EXPECT_THROW(Expression::box_bump(hi, lo), InvalidArgument);
}

TEST(Expression, CompositionWithLinearMaps) {
  Rng rng(58);
  const Expression f = Expression::log_cosh_radius(0.5) + Expression::variable(2) * Expression::variable(5);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd l(8, 8);
    for (int i = 0; i < 64; ++i) l(i / 8, i % 8) = gaussian(rng);
    Eigen::VectorXd c(8);
    for (int i = 0; i < 8; ++i) c(i) = gaussian(rng);
    const std::vector<double> x = random_point(rng, 8);
    Eigen::VectorXd y = l * Eigen::Map<const Eigen::VectorXd>(x.data(), 8) + c;
    const Jet outer = f.jet(std::vector<double>(y.data(), y.data() + 8));
    const Jet inner = f.compose_linear(l, c).jet(x);
    EXPECT_NEAR(inner.value, outer.value, 1e-12 * std::max(1.0, std::abs(outer.value)));
    const Eigen::MatrixXd expected = l.transpose() * Eigen::MatrixXd(outer.hess) * l;
    EXPECT_LT((Eigen::MatrixXd(inner.hess) - expected).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}

TEST(Expression, DegenerateArgumentsAreReported) {
  EXPECT_THROW(Expression::norm2().sqrt().jet(std::vector<double>(8, 0.0)), NumericalDegeneracy);
  EXPECT_THROW((Expression::variable(0) + -1.0).log().jet(std::vector<double>(4, 0.5)), NumericalDegeneracy);
  EXPECT_THROW(Expression::variable(7).value(std::vector<double>(4, 0.0)), DimensionMismatch);
}

TEST(Field, BackendsAndAccessors) {
  const ScalarField p(2, Polynomial::z(0) * Polynomial::zbar(0));
  const ScalarField e(2, Expression::norm2());
  const ScalarField t(2, TrigPolynomial(1.0));
  EXPECT_EQ(p.backend(), Backend::polynomial);
  EXPECT_EQ(e.backend(), Backend::autodiff);
  EXPECT_EQ(t.backend(), Backend::trig);
  EXPECT_STREQ(backend_name(Backend::autodiff), "autodiff");
  EXPECT_THROW(p.expression(), UnsupportedBackend);
  EXPECT_THROW(e.trig(), UnsupportedBackend);
  EXPECT_THROW(t.polynomial(), UnsupportedBackend);
  EXPECT_THROW(ScalarField(1, Polynomial::z(2)), DimensionMismatch);
  EXPECT_THROW(ScalarField(5, Expression::norm2()), InvalidArgument);
  EXPECT_THROW(e.value(std::vector<double>(4, 0.0)), DimensionMismatch);
  EXPECT_THROW(ScalarField(2, Polynomial::z(0)).value(std::vector<double>{0.0, 1.0, 0, 0, 0, 0, 0, 0}), InvalidArgument);
  EXPECT_FALSE(ScalarField(2, Polynomial::z(0)).is_real());
  EXPECT_TRUE(p.is_real());
  EXPECT_DOUBLE_EQ(e.scaled(3.0).value(std::vector<double>(8, 1.0)), 24.0);
}

TEST(Field, HessiansAgreeAcrossBackends) {
  Rng rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial poly = random_real_polynomial(rng, 2, 6, 4);
    const ScalarField a(2, poly), b(2, Expression::polynomial(poly));
    const std::vector<double> x = random_point(rng, 8);
    const RealMatrix ha = a.real_hessian(x), hb = b.real_hessian(x);
    EXPECT_LE((ha - hb).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, ha.cwiseAbs().maxCoeff()));
    const RealMatrix fd = oracle::fd_hessian([&](std::span<const double> y) { return a.value(y); }, x, 1e-4);
    EXPECT_LE((ha - fd).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, ha.cwiseAbs().maxCoeff()));
  }
}

TEST(Field, TrigHessianMatchesDifferenceQuotient) {
  Rng rng(60);
  for (int trial = 0; trial < 20; ++trial) {
    TrigPolynomial t = testing::random_trig(rng, 2, 4, 2);
    t += t.conj();
    const ScalarField f(2, t);
    const std::vector<double> x = random_point(rng, 8, 3.0);
    const RealMatrix fd = oracle::fd_hessian([&](std::span<const double> y) { return f.value(y); }, x, 1e-4);
    EXPECT_LE((f.real_hessian(x) - fd).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, fd.cwiseAbs().maxCoeff()));
  }
}

TEST(Field, LinearCompositionAgreesAcrossBackends) {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial poly = random_real_polynomial(rng, 2, 4, 3);
    QMatrix t = random_qmatrix(rng, 2, 2);
    // dyadic entries so the exact substitution sees the same matrix
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        Quaternion& q = t(r, c);
        for (double* v : {&q.t, &q.x, &q.y, &q.z}) *v = std::round(*v * 8.0) / 8.0;
      }
    const ScalarField a = ScalarField(2, poly).compose_linear(t);
    const ScalarField b = ScalarField(2, Expression::polynomial(poly)).compose_linear(t);
    EXPECT_EQ(a.backend(), Backend::polynomial);
    const std::vector<double> x = random_point(rng, 8);
    EXPECT_LE(rel(a.value(x), b.value(x)), 1e-12);
    std::vector<Quaternion> qx(2);
    for (std::size_t i = 0; i < 2; ++i) qx[i] = {x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
    const auto tx = t.apply(qx);
    const std::vector<double> y = {tx[0].t, tx[0].x, tx[0].y, tx[0].z, tx[1].t, tx[1].x, tx[1].y, tx[1].z};
    EXPECT_LE(rel(a.value(x), poly.evaluate(y).real()), 1e-12);
  }
  EXPECT_THROW(ScalarField(2, TrigPolynomial(1.0)).compose_linear(QMatrix::identity(2)), UnsupportedBackend);
}

TEST(FieldLanguage, AtomsEvaluate) {
  const std::vector<double> x = {0.5, -1.0, 0.25, 2.0, 1.0, 0.0, -0.5, 0.75};
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  EXPECT_DOUBLE_EQ(parse_field("norm2", 2).value(x), n2);
  EXPECT_DOUBLE_EQ(parse_field(" 2 * norm2 - x(3) ", 2).value(x), 2 * n2 - 2.0);
  EXPECT_DOUBLE_EQ(parse_field("-x(0) + 0.5*x(7)", 2).value(x), -0.5 + 0.375);
  EXPECT_NEAR(parse_field("sqrt_norm2_eps(0.1)", 2).value(x), std::sqrt(n2 + 0.01), 1e-14);
  EXPECT_NEAR(parse_field("logcosh_norm_eps(0.5)", 2).value(x), 0.5 * std::log(std::cosh(std::sqrt(n2) / 0.5)), 1e-12);
  EXPECT_DOUBLE_EQ(parse_field("affine(1, 0,0,0,1, 0,0,0,0)", 2).value(x), 3.0);
  EXPECT_DOUBLE_EQ(parse_field("poly(3 @ 1,0,0,1,0,0,0,0; -1 @ 0,0,0,0,2,0,0,0)", 2).value(x), 3.0 - 1.0);
  std::string quad = "quadratic(";
  for (int i = 0; i < 64; ++i) quad += (i ? "," : "") + std::string(i % 9 == 0 ? "1" : "0");
  quad += ")";
  EXPECT_DOUBLE_EQ(parse_field(quad, 2).value(x), n2);
}

TEST(FieldLanguage, PolynomialBackendWhenEveryAtomIsPolynomial) {
  const ScalarField a = parse_field("norm2 + 0.5*x(1) - poly(2 @ 2,0,0,0,0,0,0,1)", 2, Backend::polynomial);
  const ScalarField b = parse_field("norm2 + 0.5*x(1) - poly(2 @ 2,0,0,0,0,0,0,1)", 2, Backend::autodiff);
  EXPECT_EQ(a.backend(), Backend::polynomial);
  EXPECT_EQ(b.backend(), Backend::autodiff);
  Rng rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> x = random_point(rng, 8);
    EXPECT_LE(rel(a.value(x), b.value(x)), 1e-12);
    EXPECT_LE((a.real_hessian(x) - b.real_hessian(x)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(parse_field("sqrt_norm2_eps(0.1)", 2, Backend::polynomial), UnsupportedBackend);
  EXPECT_THROW(parse_field("norm2", 2, Backend::trig), UnsupportedBackend);
}

TEST(FieldLanguage, SyntaxErrorsNameThePosition) {
  for (const char* bad : {"", "norm3", "norm2 +", "2 norm2", "x(8)", "x(-1)", "affine(1,2)", "sqrt_norm2_eps(0)",
                          "sqrt_norm2_eps(0.1", "poly(1 @ 1,0)", "norm2 )"}) {
    try {
      parse_field(bad, 2);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const InvalidArgument& e) {
      EXPECT_NE(std::string(e.what()).find("position"), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(parse_field("norm2", 0), InvalidArgument);
}

}  // namespace
}  // namespace qpsh
