#pragma once

// Finite Fourier series on the torus (R / 2 pi Z)^{4n}:
//   f(x) = sum_k c_k exp(i k . x),  x in the real coordinates (t, x, y, z) of each q_a.
// Derivatives act exactly on the modes and integration keeps the zero mode.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>

namespace qpsh {

using Mode = std::array<std::int8_t, 16>;

class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(int c) : TrigPolynomial(std::complex<double>(c)) {}  // NOLINT
  TrigPolynomial(double c) : TrigPolynomial(std::complex<double>(c)) {}  // NOLINT
  TrigPolynomial(std::complex<double> c);  // NOLINT

  static TrigPolynomial mode(const Mode& k, std::complex<double> c);

  const std::map<Mode, std::complex<double>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |k_v| over all modes.
  int max_frequency() const;

  TrigPolynomial conj() const;
  bool is_real(double tol = 1e-12) const;
  /// Largest |c_k|.
  double max_abs() const;

  TrigPolynomial& operator+=(const TrigPolynomial& o);
  TrigPolynomial& operator-=(const TrigPolynomial& o);
  TrigPolynomial& operator*=(std::complex<double> s);
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a -= b; }
  friend TrigPolynomial operator-(const TrigPolynomial& a) { return a * std::complex<double>(-1.0); }
  friend TrigPolynomial operator*(TrigPolynomial a, std::complex<double> s) { return a *= s; }
  friend TrigPolynomial operator*(std::complex<double> s, TrigPolynomial a) { return a *= s; }
  friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b);
  friend bool operator==(const TrigPolynomial& a, const TrigPolynomial& b) { return a.terms_ == b.terms_; }

  TrigPolynomial d_real(int v) const;
  TrigPolynomial d_z(int c) const;
  TrigPolynomial d_zbar(int c) const;

  std::complex<double> evaluate(std::span<const double> x) const;
  /// Integral over (R / 2 pi Z)^{4n} with Lebesgue measure.
  std::complex<double> integral(int n) const;

 private:
  void add_term(const Mode& k, std::complex<double> c);
  template <class F>
  TrigPolynomial map_modes(F&& factor) const;

  std::map<Mode, std::complex<double>> terms_;
};

inline TrigPolynomial conj_coeff(const TrigPolynomial& p) { return p.conj(); }
inline bool is_zero_coeff(const TrigPolynomial& p) { return p.is_zero(); }

}  // namespace qpsh
