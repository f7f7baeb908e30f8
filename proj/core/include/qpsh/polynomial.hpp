#pragma once

// Exact polynomials on R^{4n} = H^n, written in the independent variables
// z_c and conj(z_c), c = 0..2n-1 (complex coordinates of the splitting).
// This basis spans the same space as polynomials in the 4n real
// coordinates and turns Wirtinger derivatives into exponent shifts.
//
// A monomial packs 16 exponents of 4 bits: slot c for z_c, slot 8 + c for
// conj(z_c). Exponents above 15 are rejected.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "qpsh/rational.hpp"

namespace qpsh {

inline constexpr int kMaxComplexCoords = 8;
inline constexpr int kMaxRealVars = 16;

using MonomialKey = std::uint64_t;
using RealExponents = std::array<std::uint8_t, kMaxRealVars>;

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) { add_term(0, GaussRational(c)); }  // NOLINT: integer constants
  Polynomial(const GaussRational& c) { add_term(0, c); }  // NOLINT
  Polynomial(const Rational& c) { add_term(0, GaussRational(c)); }  // NOLINT

  /// The coordinate z_c (c < 8).
  static Polynomial z(int c);
  static Polynomial zbar(int c);
  /// Real coordinate v = 4a + {0,1,2,3} = t, x, y, z of q_a:
  /// t = (z+zb)/2, x = (z-zb)/(2i) for z = z_{2a}; y = (w+wb)/2, z = i(w-wb)/2 for w = z_{2a+1}.
  static Polynomial real_variable(int v);
  /// coefficient * prod_v x_v^{e_v} in the real coordinates.
  static Polynomial real_monomial(const RealExponents& e, const GaussRational& coefficient);

  const std::map<MonomialKey, GaussRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// Highest complex coordinate index used plus one.
  int complex_coordinates_used() const;

  Polynomial conj() const;
  bool is_real() const { return conj() == *this; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const GaussRational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return a * GaussRational(-1); }
  friend Polynomial operator*(Polynomial a, const GaussRational& s) { return a *= s; }
  friend Polynomial operator*(const GaussRational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(int k) const;

  /// d/dz_c and d/dconj(z_c).
  Polynomial d_z(int c) const;
  Polynomial d_zbar(int c) const;
  /// Derivative in real coordinate v (same numbering as real_variable).
  Polynomial d_real(int v) const;

  /// Value at a point of R^{4n} given in real coordinates.
  std::complex<double> evaluate(std::span<const double> x) const;

  /// Expansion in real monomials (exact).
  std::vector<std::pair<RealExponents, GaussRational>> real_terms() const;

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

 private:
  void add_term(MonomialKey k, const GaussRational& c);
  std::map<MonomialKey, GaussRational> terms_;
};

inline Polynomial conj_coeff(const Polynomial& p) { return p.conj(); }
inline bool is_zero_coeff(const Polynomial& p) { return p.is_zero(); }

inline int exponent(MonomialKey k, int slot) { return static_cast<int>((k >> (4 * slot)) & 0xF); }

}  // namespace qpsh
