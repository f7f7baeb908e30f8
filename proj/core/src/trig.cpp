#include "qpsh/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpsh/errors.hpp"

namespace qpsh {

namespace {

void check_var(int v) {
  if (v < 0 || v >= 16) throw InvalidArgument("trig: real variable index out of range");
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::complex<double> c) { add_term(Mode{}, c); }

void TrigPolynomial::add_term(const Mode& k, std::complex<double> c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

TrigPolynomial TrigPolynomial::mode(const Mode& k, std::complex<double> c) {
  TrigPolynomial p;
  p.add_term(k, c);
  return p;
}

int TrigPolynomial::max_frequency() const {
  int m = 0;
  for (const auto& [k, c] : terms_)
    for (auto e : k) m = std::max(m, std::abs(static_cast<int>(e)));
  return m;
}

TrigPolynomial TrigPolynomial::conj() const {
  TrigPolynomial p;
  for (const auto& [k, c] : terms_) {
    Mode neg;
    for (std::size_t v = 0; v < k.size(); ++v) neg[v] = static_cast<std::int8_t>(-k[v]);
    p.terms_.emplace(neg, std::conj(c));
  }
  return p;
}

double TrigPolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool TrigPolynomial::is_real(double tol) const {
  const TrigPolynomial d = *this - conj();
  return d.max_abs() <= tol * std::max(1.0, max_abs());
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(std::complex<double> s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b) {
  TrigPolynomial p;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      Mode k;
      for (std::size_t v = 0; v < k.size(); ++v) {
        const int s = ka[v] + kb[v];
        if (s > 127 || s < -127) throw InvalidArgument("trig: frequency overflow");
        k[v] = static_cast<std::int8_t>(s);
      }
      p.add_term(k, ca * cb);
    }
  return p;
}

template <class F>
TrigPolynomial TrigPolynomial::map_modes(F&& factor) const {
  TrigPolynomial p;
  for (const auto& [k, c] : terms_) p.add_term(k, factor(k) * c);
  return p;
}

TrigPolynomial TrigPolynomial::d_real(int v) const {
  check_var(v);
  return map_modes([v](const Mode& k) { return std::complex<double>(0.0, k[static_cast<std::size_t>(v)]); });
}

// d/dz = (d_t - i d_x)/2 on z = t + ix;  d/dw = (d_y + i d_z)/2 on w = y - iz.
TrigPolynomial TrigPolynomial::d_z(int c) const {
  check_var(2 * c + 1);
  const std::size_t base = 4 * static_cast<std::size_t>(c / 2);
  if (c % 2 == 0)
    return map_modes([base](const Mode& k) { return 0.5 * std::complex<double>(k[base + 1], k[base]); });
  return map_modes([base](const Mode& k) { return 0.5 * std::complex<double>(-k[base + 3], k[base + 2]); });
}

TrigPolynomial TrigPolynomial::d_zbar(int c) const {
  check_var(2 * c + 1);
  const std::size_t base = 4 * static_cast<std::size_t>(c / 2);
  if (c % 2 == 0)
    return map_modes([base](const Mode& k) { return 0.5 * std::complex<double>(-k[base + 1], k[base]); });
  return map_modes([base](const Mode& k) { return 0.5 * std::complex<double>(k[base + 3], k[base + 2]); });
}

std::complex<double> TrigPolynomial::evaluate(std::span<const double> x) const {
  std::complex<double> s = 0.0;
  for (const auto& [k, c] : terms_) {
    double phase = 0.0;
    for (std::size_t v = 0; v < k.size(); ++v) {
      if (k[v] == 0) continue;
      if (v >= x.size()) throw DimensionMismatch("trig: point has too few coordinates");
      phase += k[v] * x[v];
    }
    s += c * std::polar(1.0, phase);
  }
  return s;
}

std::complex<double> TrigPolynomial::integral(int n) const {
  const auto it = terms_.find(Mode{});
  if (it == terms_.end()) return 0.0;
  return it->second * std::pow(2.0 * std::numbers::pi, 4 * n);
}

}  // namespace qpsh
