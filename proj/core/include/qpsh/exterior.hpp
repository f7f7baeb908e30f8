#pragma once

// Twisted exterior algebra Lambda^p (C^{2n})* [w].
//
// A form stores its coefficients against the basis dz^I, I a subset of
// {0, ..., 2n-1} encoded as a bitmask, ordered increasingly. The twist w is
// integer bookkeeping for the line factor (det H*)^{w}; the flat frame
// trivializes it and the real structure acts on it by plain conjugation.
//
// Real structure on covectors (dual of right multiplication by j):
//   rho*(dz^{2a}) = dz^{2a+1},  rho*(dz^{2a+1}) = -dz^{2a},  antilinear.
// rho = Lambda^p rho* squares to +1 on even degrees and -1 on odd degrees.

#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qpsh/errors.hpp"
#include "qpsh/qmatrix.hpp"
#include "qpsh/rational.hpp"

namespace qpsh {

using Mask = std::uint32_t;

inline constexpr int kMaxQuaternionicDim = 4;

/// Sign of dz^I ^ dz^J relative to dz^{I u J}; 0 when I and J intersect.
constexpr int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = a; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    swaps += std::popcount(b & ((Mask{1} << i) - 1));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

inline std::complex<double> conj_coeff(const std::complex<double>& c) { return std::conj(c); }
inline GaussRational conj_coeff(const GaussRational& c) { return conj(c); }
inline bool is_zero_coeff(const std::complex<double>& c) { return c == 0.0; }
inline bool is_zero_coeff(const GaussRational& c) { return c.is_zero(); }

template <class C>
class BasicForm {
 public:
  using coefficient_type = C;

  BasicForm() = default;
  BasicForm(int n, int degree, int twist) : n_(n), degree_(degree), twist_(twist) {
    if (n < 1 || n > kMaxQuaternionicDim) throw InvalidArgument("form: n must be in [1, 4]");
    if (degree < 0 || degree > 2 * n) throw InvalidArgument("form: degree out of range");
    coeff_.assign(std::size_t{1} << (2 * n), C{});
  }

  static BasicForm zero(int n, int degree, int twist) { return BasicForm(n, degree, twist); }

  static BasicForm scalar(int n, C value, int twist = 0) {
    BasicForm f(n, 0, twist);
    f.coeff_[0] = std::move(value);
    return f;
  }

  /// c * dz^{i_1} ^ ... ^ dz^{i_p} for the indices in `mask`.
  static BasicForm basis(int n, Mask mask, int twist, C value) {
    BasicForm f(n, std::popcount(mask), twist);
    f.at(mask) = std::move(value);
    return f;
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int degree() const { return degree_; }
  int twist() const { return twist_; }
  Mask full_mask() const { return (Mask{1} << dim()) - 1; }

  const C& operator[](Mask m) const { return coeff_[m]; }
  C& at(Mask m) {
    if (std::popcount(m) != degree_ || m > full_mask()) throw InvalidArgument("form: mask does not match degree");
    return coeff_[m];
  }

  /// Visit every basis mask of this degree, in increasing order.
  template <class F>
  void for_each_mask(F&& f) const {
    for (Mask m = 0; m <= full_mask(); ++m)
      if (std::popcount(m) == degree_) f(m);
  }

  template <class F>
  BasicForm map_coefficients(F&& f) const {
    BasicForm out(n_, degree_, twist_);
    for_each_mask([&](Mask m) { out.coeff_[m] = f(coeff_[m]); });
    return out;
  }

  BasicForm with_twist(int w) const {
    BasicForm out = *this;
    out.twist_ = w;
    return out;
  }

  bool is_zero() const {
    bool z = true;
    for_each_mask([&](Mask m) { z = z && is_zero_coeff(coeff_[m]); });
    return z;
  }

  BasicForm& operator+=(const BasicForm& o) {
    check_compatible(o);
    for_each_mask([&](Mask m) { coeff_[m] = coeff_[m] + o.coeff_[m]; });
    return *this;
  }
  BasicForm& operator-=(const BasicForm& o) {
    check_compatible(o);
    for_each_mask([&](Mask m) { coeff_[m] = coeff_[m] - o.coeff_[m]; });
    return *this;
  }
  BasicForm& operator*=(const C& s) {
    for_each_mask([&](Mask m) { coeff_[m] = coeff_[m] * s; });
    return *this;
  }

  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  friend BasicForm operator*(BasicForm a, const C& s) { return a *= s; }
  friend BasicForm operator*(const C& s, BasicForm a) {
    a.for_each_mask([&](Mask m) { a.coeff_[m] = s * a.coeff_[m]; });
    return a;
  }
  friend BasicForm operator-(const BasicForm& a) { return a.map_coefficients([](const C& c) { return -c; }); }

  friend bool operator==(const BasicForm& a, const BasicForm& b) {
    if (a.n_ != b.n_ || a.degree_ != b.degree_ || a.twist_ != b.twist_) return false;
    bool eq = true;
    a.for_each_mask([&](Mask m) { eq = eq && (a.coeff_[m] == b.coeff_[m]); });
    return eq;
  }

  /// omega ^ eta; degrees and twists add.
  friend BasicForm wedge(const BasicForm& a, const BasicForm& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("wedge: forms live over different n");
    if (a.degree_ + b.degree_ > a.dim()) throw InvalidArgument("wedge: degree overflow");
    BasicForm out(a.n_, a.degree_ + b.degree_, a.twist_ + b.twist_);
    a.for_each_mask([&](Mask ma) {
      if (is_zero_coeff(a.coeff_[ma])) return;
      b.for_each_mask([&](Mask mb) {
        const int s = wedge_sign(ma, mb);
        if (s == 0 || is_zero_coeff(b.coeff_[mb])) return;
        C prod = a.coeff_[ma] * b.coeff_[mb];
        if (s > 0)
          out.coeff_[ma | mb] = out.coeff_[ma | mb] + prod;
        else
          out.coeff_[ma | mb] = out.coeff_[ma | mb] - prod;
      });
    });
    return out;
  }

 private:
  void check_compatible(const BasicForm& o) const {
    if (n_ != o.n_ || degree_ != o.degree_) throw DimensionMismatch("form: incompatible operands");
    if (twist_ != o.twist_) throw InvalidArgument("form: twists differ");
  }

  int n_ = 0;
  int degree_ = 0;
  int twist_ = 0;
  std::vector<C> coeff_;
};

using TwistedForm = BasicForm<std::complex<double>>;
using ExactForm = BasicForm<GaussRational>;

/// Image of dz^i under rho*: returns {index, sign}.
constexpr std::pair<int, int> rho_covector(int i) {
  return (i % 2 == 0) ? std::pair{i + 1, 1} : std::pair{i - 1, -1};
}

/// Image mask and sign of dz^I under Lambda^p rho*.
constexpr std::pair<Mask, int> rho_basis(Mask m) {
  Mask out = 0;
  int sign = 1;
  for (Mask rest = m; rest; rest &= rest - 1) {
    const auto [j, s] = rho_covector(std::countr_zero(rest));
    const Mask bit = Mask{1} << j;
    // appending dz^j to the right of the current product
    const int ws = wedge_sign(out, bit);
    if (ws == 0) return {0, 0};
    sign *= s * ws;
    out |= bit;
  }
  return {out, sign};
}

/// rho(omega): antilinear; coefficient conjugation composed with Lambda^p rho*.
template <class C>
BasicForm<C> apply_real_structure(const BasicForm<C>& f) {
  BasicForm<C> out(f.n(), f.degree(), f.twist());
  f.for_each_mask([&](Mask m) {
    const auto [img, sign] = rho_basis(m);
    C c = conj_coeff(f[m]);
    out.at(img) = (sign > 0) ? c : -c;
  });
  return out;
}

/// Max |coefficient| (the scale used for relative tolerances).
double scale(const TwistedForm& f);

bool is_real(const TwistedForm& f, double tol = 1e-12);
inline bool is_real(const ExactForm& f) { return apply_real_structure(f) == f; }

/// Omega_0 = sum_a dz^{2a} ^ dz^{2a+1}, degree 2, twist -2.
TwistedForm omega0(int n);
/// vol = dz^0 ^ ... ^ dz^{2n-1}, degree 2n, twist -2n. top_coefficient(omega0^n) = n!.
TwistedForm volume_form(int n);

/// k-fold wedge power.
template <class C>
BasicForm<C> wedge_power(const BasicForm<C>& f, int k) {
  BasicForm<C> out = BasicForm<C>::scalar(f.n(), C(1), 0);
  for (int i = 0; i < k; ++i) out = wedge(out, f);
  return out;
}

/// Real-linear bijection between quaternionic Hermitian matrices and real
/// twisted 2-forms: coefficient of dz^b ^ dz^c (b < c) is (S * embed(A))_{bc},
/// S = blockdiag([[0, 1], [-1, 0]]). Maps I_n to omega0.
TwistedForm herm_to_form(const HermitianQMatrix& a);
/// Inverse on real forms of degree 2, twist -2; throws InvalidArgument otherwise.
HermitianQMatrix form_to_herm(const TwistedForm& f, double tol = 1e-10);

/// The c with f = c * vol. f must be real, of top degree, twist -2n.
double top_coefficient(const TwistedForm& f, double tol = 1e-9);

/// Pullback along the quaternionic-linear map x -> T x (T is n x n):
/// dz^c -> sum_d embed(T)_{cd} dz^d.
TwistedForm pullback(const TwistedForm& f, const QMatrix& t);

/// Complex coefficient vector in a fixed mask order, and its real
/// vectorization (re, im interleaved).
std::vector<std::complex<double>> coefficients(const TwistedForm& f);
Eigen::VectorXd real_vectorize(const TwistedForm& f);

ExactForm to_exact(const TwistedForm& f);
TwistedForm to_double(const ExactForm& f);

}  // namespace qpsh
