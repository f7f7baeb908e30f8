#pragma once

// Quaternion arithmetic and the complex splitting H = C + jC.
//
// Convention (fixed once for the whole library):
//   q = t + x i + y j + z k  =  z1 + j z2,   z1 = t + i x,   z2 = y - i z.
// Complex scalars act on the right (q * lambda), which is the complex
// structure of H^n viewed as a right H-module. Right multiplication by j then
// reads (z1, z2) -> (-conj(z2), conj(z1)) in these coordinates: antilinear,
// squaring to -1. A vector in H^n is ordered (z1 of q_1, z2 of q_1, z1 of q_2, ...).

#include <cmath>
#include <complex>
#include <ostream>
#include <span>
#include <vector>

#include "qpsh/errors.hpp"
#include "qpsh/rational.hpp"

namespace qpsh {

template <class T>
struct complex_of {
  using type = std::complex<T>;
};
template <>
struct complex_of<Rational> {
  using type = GaussRational;
};
template <class T>
using complex_of_t = typename complex_of<T>::type;

template <class T>
struct BasicQuaternion {
  T t{0};
  T x{0};
  T y{0};
  T z{0};

  BasicQuaternion() = default;
  BasicQuaternion(T t_, T x_, T y_, T z_)
      : t(std::move(t_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
  explicit BasicQuaternion(T real) : t(std::move(real)) {}

  static BasicQuaternion unit_i() { return {T(0), T(1), T(0), T(0)}; }
  static BasicQuaternion unit_j() { return {T(0), T(0), T(1), T(0)}; }
  static BasicQuaternion unit_k() { return {T(0), T(0), T(0), T(1)}; }

  BasicQuaternion conj() const { return {t, -x, -y, -z}; }
  T norm2() const { return t * t + x * x + y * y + z * z; }
  bool is_real() const { return x == T(0) && y == T(0) && z == T(0); }

  BasicQuaternion& operator+=(const BasicQuaternion& o) {
    t += o.t;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  BasicQuaternion& operator-=(const BasicQuaternion& o) {
    t -= o.t;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  BasicQuaternion& operator*=(const T& s) {
    t *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend BasicQuaternion operator+(BasicQuaternion a, const BasicQuaternion& b) { return a += b; }
  friend BasicQuaternion operator-(BasicQuaternion a, const BasicQuaternion& b) { return a -= b; }
  friend BasicQuaternion operator-(const BasicQuaternion& a) { return {-a.t, -a.x, -a.y, -a.z}; }
  friend BasicQuaternion operator*(BasicQuaternion a, const T& s) { return a *= s; }
  friend BasicQuaternion operator*(const T& s, BasicQuaternion a) { return a *= s; }

  // Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
  friend BasicQuaternion operator*(const BasicQuaternion& a, const BasicQuaternion& b) {
    return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
            a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
            a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
            a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
  }

  friend bool operator==(const BasicQuaternion& a, const BasicQuaternion& b) {
    return a.t == b.t && a.x == b.x && a.y == b.y && a.z == b.z;
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicQuaternion& q) {
    return os << '(' << q.t << " + " << q.x << "i + " << q.y << "j + " << q.z << "k)";
  }
};

using Quaternion = BasicQuaternion<double>;
using ExactQuaternion = BasicQuaternion<Rational>;

inline double abs(const Quaternion& q) { return std::sqrt(q.norm2()); }

inline Quaternion inverse(const Quaternion& q) {
  const double n2 = q.norm2();
  if (n2 == 0.0) throw InvalidArgument("inverse of the zero quaternion");
  return q.conj() * (1.0 / n2);
}

template <class T>
struct ComplexSplit {
  complex_of_t<T> z1;
  complex_of_t<T> z2;

  friend bool operator==(const ComplexSplit&, const ComplexSplit&) = default;
};

template <class T>
ComplexSplit<T> complex_split(const BasicQuaternion<T>& q) {
  return {complex_of_t<T>(q.t, q.x), complex_of_t<T>(q.y, -q.z)};
}

template <class T>
BasicQuaternion<T> reassemble(const ComplexSplit<T>& s) {
  return {T(s.z1.real()), T(s.z1.imag()), T(s.z2.real()), T(-s.z2.imag())};
}

inline Quaternion reassemble(const std::complex<double>& z1, const std::complex<double>& z2) {
  return reassemble(ComplexSplit<double>{z1, z2});
}

namespace detail {
template <class C>
C conj_scalar(const C& c) {
  using std::conj;
  using qpsh::conj;
  return conj(c);
}
}  // namespace detail

/// Right multiplication by j on H^n in C^{2n} coordinates.
template <class C>
std::vector<C> jmap(std::span<const C> v) {
  if (v.size() % 2 != 0) {
    throw DimensionMismatch("jmap expects a vector of even length 2n");
  }
  std::vector<C> out(v.size());
  for (std::size_t a = 0; a < v.size(); a += 2) {
    out[a] = -detail::conj_scalar(v[a + 1]);
    out[a + 1] = detail::conj_scalar(v[a]);
  }
  return out;
}

inline std::vector<std::complex<double>> jmap(const std::vector<std::complex<double>>& v) {
  return jmap(std::span<const std::complex<double>>(v));
}

/// C^{2n} coordinates of a column of quaternions.
inline std::vector<std::complex<double>> to_complex_coordinates(std::span<const Quaternion> q) {
  std::vector<std::complex<double>> v;
  v.reserve(2 * q.size());
  for (const auto& e : q) {
    const auto s = complex_split(e);
    v.push_back(s.z1);
    v.push_back(s.z2);
  }
  return v;
}

inline std::vector<Quaternion> from_complex_coordinates(std::span<const std::complex<double>> v) {
  if (v.size() % 2 != 0) throw DimensionMismatch("complex coordinate vector must have even length");
  std::vector<Quaternion> q;
  q.reserve(v.size() / 2);
  for (std::size_t a = 0; a < v.size(); a += 2) q.push_back(reassemble(v[a], v[a + 1]));
  return q;
}

}  // namespace qpsh
