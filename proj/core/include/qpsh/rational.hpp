#pragma once

#include <complex>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

namespace qpsh {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with rational parts.
struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit from real
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(int r) : re(r) {}  // NOLINT

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re; }
  const Rational& imag() const { return im; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  GaussRational inverse() const {
    Rational d = re * re + im * im;
    return {re / d, -im / d};
  }

  bool is_zero() const { return re == 0 && im == 0; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& g) {
    return os << '(' << g.re << ", " << g.im << ')';
  }
};

inline GaussRational conj(const GaussRational& g) { return {g.re, -g.im}; }

/// Exact conversion of a finite double (every double is a dyadic rational).
inline Rational exact_rational(double v) { return Rational(v); }

}  // namespace qpsh
