#include "qpsh/polynomial.hpp"

#include <algorithm>

#include "qpsh/errors.hpp"

namespace qpsh {

namespace {

constexpr int kSlots = 16;

MonomialKey slot_unit(int slot) { return MonomialKey{1} << (4 * slot); }

MonomialKey multiply_keys(MonomialKey a, MonomialKey b) {
  for (int s = 0; s < kSlots; ++s)
    if (exponent(a, s) + exponent(b, s) > 15) throw InvalidArgument("polynomial: exponent exceeds 15");
  return a + b;
}

MonomialKey swap_conjugates(MonomialKey k) { return (k >> 32) | (k << 32); }

void check_coord(int c) {
  if (c < 0 || c >= kMaxComplexCoords) throw InvalidArgument("polynomial: complex coordinate index out of range");
}

GaussRational half() { return GaussRational(Rational(1, 2)); }
GaussRational half_i() { return GaussRational(Rational(0), Rational(1, 2)); }

}  // namespace

void Polynomial::add_term(MonomialKey k, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::z(int c) {
  check_coord(c);
  Polynomial p;
  p.add_term(slot_unit(c), GaussRational(1));
  return p;
}

Polynomial Polynomial::zbar(int c) {
  check_coord(c);
  Polynomial p;
  p.add_term(slot_unit(kMaxComplexCoords + c), GaussRational(1));
  return p;
}

Polynomial Polynomial::real_variable(int v) {
  if (v < 0 || v >= kMaxRealVars) throw InvalidArgument("polynomial: real variable index out of range");
  const int a = v / 4;
  switch (v % 4) {
    case 0: return (z(2 * a) + zbar(2 * a)) * half();
    case 1: return (z(2 * a) - zbar(2 * a)) * -half_i();
    case 2: return (z(2 * a + 1) + zbar(2 * a + 1)) * half();
    default: return (z(2 * a + 1) - zbar(2 * a + 1)) * half_i();
  }
}

Polynomial Polynomial::real_monomial(const RealExponents& e, const GaussRational& coefficient) {
  Polynomial p(coefficient);
  for (int v = 0; v < kMaxRealVars; ++v)
    if (e[static_cast<std::size_t>(v)] > 0) p = p * real_variable(v).pow(e[static_cast<std::size_t>(v)]);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) {
    int s = 0;
    for (int i = 0; i < kSlots; ++i) s += exponent(k, i);
    d = std::max(d, s);
  }
  return d;
}

int Polynomial::complex_coordinates_used() const {
  int used = 0;
  for (const auto& [k, c] : terms_)
    for (int i = 0; i < kMaxComplexCoords; ++i)
      if (exponent(k, i) > 0 || exponent(k, kMaxComplexCoords + i) > 0) used = std::max(used, i + 1);
  return used;
}

Polynomial Polynomial::conj() const {
  Polynomial p;
  for (const auto& [k, c] : terms_) p.terms_.emplace(swap_conjugates(k), qpsh::conj(c));
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const GaussRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) p.add_term(multiply_keys(ka, kb), ca * cb);
  return p;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw InvalidArgument("polynomial: negative power");
  Polynomial out(1);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::d_z(int c) const {
  check_coord(c);
  Polynomial p;
  const int slot = c;
  for (const auto& [k, coef] : terms_) {
    const int e = exponent(k, slot);
    if (e > 0) p.add_term(k - slot_unit(slot), coef * GaussRational(e));
  }
  return p;
}

Polynomial Polynomial::d_zbar(int c) const {
  check_coord(c);
  Polynomial p;
  const int slot = kMaxComplexCoords + c;
  for (const auto& [k, coef] : terms_) {
    const int e = exponent(k, slot);
    if (e > 0) p.add_term(k - slot_unit(slot), coef * GaussRational(e));
  }
  return p;
}

Polynomial Polynomial::d_real(int v) const {
  if (v < 0 || v >= kMaxRealVars) throw InvalidArgument("polynomial: real variable index out of range");
  const int a = v / 4;
  const GaussRational i = GaussRational::i();
  switch (v % 4) {
    case 0: return d_z(2 * a) + d_zbar(2 * a);
    case 1: return (d_z(2 * a) - d_zbar(2 * a)) * i;
    case 2: return d_z(2 * a + 1) + d_zbar(2 * a + 1);
    default: return (d_z(2 * a + 1) - d_zbar(2 * a + 1)) * -i;
  }
}

std::complex<double> Polynomial::evaluate(std::span<const double> x) const {
  const int used = complex_coordinates_used();
  if (x.size() < 4 * static_cast<std::size_t>((used + 1) / 2)) throw DimensionMismatch("polynomial: point has too few coordinates");
  std::array<std::array<std::complex<double>, 16>, kSlots> powers{};
  for (int c = 0; c < kMaxComplexCoords; ++c) {
    std::complex<double> zc = 0.0;
    if (c < used) {
      const std::size_t base = 4 * static_cast<std::size_t>(c / 2);
      zc = (c % 2 == 0) ? std::complex<double>(x[base], x[base + 1]) : std::complex<double>(x[base + 2], -x[base + 3]);
    }
    const std::complex<double> vals[2] = {zc, std::conj(zc)};
    for (int h = 0; h < 2; ++h) {
      auto& row = powers[static_cast<std::size_t>(c + h * kMaxComplexCoords)];
      row[0] = 1.0;
      for (int e = 1; e < 16; ++e) row[static_cast<std::size_t>(e)] = row[static_cast<std::size_t>(e - 1)] * vals[h];
    }
  }
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : terms_) {
    std::complex<double> m = c.to_complex();
    for (int s = 0; s < kSlots; ++s) {
      const int e = exponent(k, s);
      if (e) m *= powers[static_cast<std::size_t>(s)][static_cast<std::size_t>(e)];
    }
    sum += m;
  }
  return sum;
}

std::vector<std::pair<RealExponents, GaussRational>> Polynomial::real_terms() const {
  using RealPoly = std::map<RealExponents, GaussRational>;
  auto mul = [](const RealPoly& a, const RealPoly& b) {
    RealPoly out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        RealExponents e{};
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint8_t>(ea[v] + eb[v]);
        auto [it, ins] = out.try_emplace(e, ca * cb);
        if (!ins) it->second += ca * cb;
      }
    return out;
  };
  auto linear = [](int v1, const GaussRational& c1, int v2, const GaussRational& c2) {
    RealPoly p;
    RealExponents e1{}, e2{};
    e1[static_cast<std::size_t>(v1)] = 1;
    e2[static_cast<std::size_t>(v2)] = 1;
    p[e1] = c1;
    p[e2] = c2;
    return p;
  };
  const GaussRational one(1), i = GaussRational::i();
  RealPoly total;
  for (const auto& [k, c] : terms_) {
    RealPoly term;
    term[RealExponents{}] = c;
    for (int s = 0; s < kSlots; ++s) {
      const int e = exponent(k, s);
      if (!e) continue;
      const int cidx = s % kMaxComplexCoords;
      const bool bar = s >= kMaxComplexCoords;
      const int a = cidx / 2;
      RealPoly f = (cidx % 2 == 0) ? linear(4 * a, one, 4 * a + 1, bar ? -i : i)
                                   : linear(4 * a + 2, one, 4 * a + 3, bar ? i : -i);
      for (int r = 0; r < e; ++r) term = mul(term, f);
    }
    for (const auto& [e, v] : term) {
      auto [it, ins] = total.try_emplace(e, v);
      if (!ins) it->second += v;
    }
  }
  std::vector<std::pair<RealExponents, GaussRational>> out;
  for (const auto& [e, v] : total)
    if (!v.is_zero()) out.emplace_back(e, v);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  if (p.terms_.empty()) return os << "0";
  bool first = true;
  for (const auto& [k, c] : p.terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int s = 0; s < kSlots; ++s) {
      const int e = exponent(k, s);
      if (!e) continue;
      os << (s < kMaxComplexCoords ? "*z" : "*zb") << (s % kMaxComplexCoords);
      if (e > 1) os << '^' << e;
    }
  }
  return os;
}

}  // namespace qpsh
