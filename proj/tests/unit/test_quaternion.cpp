#include <gtest/gtest.h>

#include "qpsh/quaternion.hpp"
#include "qpsh/sampling.hpp"

namespace qpsh {
namespace {

ExactQuaternion random_exact(Rng& rng) {
  auto r = [&] { return Rational(std::uniform_int_distribution<int>(-9, 9)(rng), std::uniform_int_distribution<int>(1, 5)(rng)); };
  return {r(), r(), r(), r()};
}

TEST(Quaternion, DefiningRelations) {
  const Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j(), k = Quaternion::unit_k();
  EXPECT_EQ(i * j, k);
  EXPECT_EQ(j * k, i);
  EXPECT_EQ(k * i, j);
  EXPECT_EQ(i * i, Quaternion(-1.0));
  EXPECT_EQ(i * j * k, Quaternion(-1.0));
  const Quaternion q(0.3, -1.2, 2.0, 0.7);
  EXPECT_EQ(Quaternion(1.0) * q, q);
  EXPECT_EQ((Quaternion(1.0) + i) * (Quaternion(1.0) + j), Quaternion(1.0, 1.0, 1.0, 1.0));
}

TEST(Quaternion, ExactNormIsMultiplicativeAndConjugationReverses) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const ExactQuaternion p = random_exact(rng), q = random_exact(rng), r = random_exact(rng);
    EXPECT_EQ((p * q).norm2(), p.norm2() * q.norm2());
    EXPECT_EQ((p * q).conj(), q.conj() * p.conj());
    EXPECT_EQ((p * q) * r, p * (q * r));
  }
}

TEST(Quaternion, FloatingNormWithinRelativeTolerance) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
    EXPECT_NEAR(abs(p * q), abs(p) * abs(q), 1e-12 * abs(p) * abs(q));
  }
  EXPECT_EQ(abs(Quaternion()), 0.0);
  EXPECT_THROW(inverse(Quaternion()), InvalidArgument);
}

TEST(ComplexSplit, Examples) {
  using C = std::complex<double>;
  EXPECT_EQ(complex_split(Quaternion(1.0)), (ComplexSplit<double>{C(1, 0), C(0, 0)}));
  EXPECT_EQ(complex_split(Quaternion::unit_j()), (ComplexSplit<double>{C(0, 0), C(1, 0)}));
  // q = z1 + j z2 with k = i j = -j i, so i + k = i + j(-i)
  EXPECT_EQ(complex_split(Quaternion(0, 1, 0, 1)), (ComplexSplit<double>{C(0, 1), C(0, -1)}));
}

TEST(ComplexSplit, ReassemblesExactly) {
  Rng rng(13);
  for (int trial = 0; trial < 10000; ++trial) {
    const Quaternion q = random_quaternion(rng);
    EXPECT_EQ(reassemble(complex_split(q)), q);
  }
  const ExactQuaternion e(Rational(1, 3), Rational(-2, 7), Rational(5), Rational(0));
  EXPECT_EQ(reassemble(complex_split(e)), e);
}

TEST(ComplexSplit, RightComplexScalarsActOnCoordinates) {
  // q * (a + b i) has coordinates (z1 (a+bi), z2 (a+bi)).
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion q = random_quaternion(rng);
    const std::complex<double> lambda(gaussian(rng), gaussian(rng));
    const auto s = complex_split(q * Quaternion(lambda.real(), lambda.imag(), 0, 0));
    const auto t = complex_split(q);
    EXPECT_NEAR(std::abs(s.z1 - t.z1 * lambda), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.z2 - t.z2 * lambda), 0.0, 1e-12);
  }
}

TEST(JMap, IsRightMultiplicationByJ) {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Quaternion> q = {random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)};
    std::vector<Quaternion> qj;
    for (const auto& e : q) qj.push_back(e * Quaternion::unit_j());
    const auto lhs = jmap(to_complex_coordinates(q));
    const auto rhs = to_complex_coordinates(qj);
    for (std::size_t c = 0; c < lhs.size(); ++c) EXPECT_NEAR(std::abs(lhs[c] - rhs[c]), 0.0, 1e-12);
  }
  // n = 1, v = (1, 0): 1 * j = j has coordinates (0, 1)
  const auto e = jmap(std::vector<std::complex<double>>{1.0, 0.0});
  EXPECT_EQ(e[0], std::complex<double>(0.0));
  EXPECT_EQ(e[1], std::complex<double>(1.0));
}

TEST(JMap, AntilinearAndSquaresToMinusOneExactly) {
  Rng rng(16);
  auto gr = [&] { return GaussRational(Rational(std::uniform_int_distribution<int>(-20, 20)(rng), 3), Rational(std::uniform_int_distribution<int>(-20, 20)(rng), 7)); };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<GaussRational> v(6);
    for (auto& c : v) c = gr();
    const GaussRational lambda = gr();
    std::vector<GaussRational> lv;
    for (const auto& c : v) lv.push_back(lambda * c);
    const auto jj = jmap(std::span<const GaussRational>(jmap(std::span<const GaussRational>(v))));
    const auto jl = jmap(std::span<const GaussRational>(lv));
    const auto j = jmap(std::span<const GaussRational>(v));
    for (std::size_t c = 0; c < v.size(); ++c) {
      EXPECT_EQ(jj[c], -v[c]);
      EXPECT_EQ(jl[c], conj(lambda) * j[c]);
    }
  }
}

TEST(JMap, RejectsOddLength) {
  EXPECT_THROW(jmap(std::vector<std::complex<double>>(3)), DimensionMismatch);
}

}  // namespace
}  // namespace qpsh
