#pragma once

// Flat differential operators on forms with polynomial or trigonometric
// coefficients:
//   del     = sum_c dz^c ^ d/dz_c
//   del_bar = sum_c dz^c ^ d/dconj(z_c)
//   del_J   = J^{-1} del_bar J = sum_c dz^c ^ D_c,
//             D_{2a+1} = d/dconj(z_{2a}),  D_{2a} = -d/dconj(z_{2a+1})
//   Delta   = kBastonNormalization * del del_J
// together with the quaternionic Hessian and the formal adjoint of Delta on
// the torus.

#include <complex>
#include <span>

#include "qpsh/exterior.hpp"
#include "qpsh/field.hpp"

namespace qpsh {

using PolyForm = BasicForm<Polynomial>;
using TrigForm = BasicForm<TrigPolynomial>;

/// Calibrated so that herm_to_form(hessian(f, x)) = Delta f(x).
inline constexpr double kBastonNormalization = 4.0;

/// Recomputes the normalization from the single input |q_1|^2 (n = 2).
double calibrated_baston_normalization();

/// A function as a form of degree 0; functions carry twist -1.
template <class C>
BasicForm<C> scalar_form(int n, C f, int twist = -1) {
  return BasicForm<C>::scalar(n, std::move(f), twist);
}

namespace detail {

template <class C, class D>
BasicForm<C> first_order(const BasicForm<C>& w, D&& derivative) {
  if (w.degree() >= w.dim()) throw InvalidArgument("first-order operator: form already has top degree");
  BasicForm<C> out(w.n(), w.degree() + 1, w.twist());
  w.for_each_mask([&](Mask m) {
    if (is_zero_coeff(w[m])) return;
    for (int c = 0; c < w.dim(); ++c) {
      const Mask bit = Mask{1} << c;
      const int s = wedge_sign(bit, m);
      if (s == 0) continue;
      C d = derivative(w[m], c);
      if (is_zero_coeff(d)) continue;
      if (s > 0)
        out.at(m | bit) = out[m | bit] + d;
      else
        out.at(m | bit) = out[m | bit] - d;
    }
  });
  return out;
}

}  // namespace detail

template <class C>
BasicForm<C> del(const BasicForm<C>& w) {
  return detail::first_order(w, [](const C& f, int c) { return f.d_z(c); });
}

template <class C>
BasicForm<C> del_bar(const BasicForm<C>& w) {
  return detail::first_order(w, [](const C& f, int c) { return f.d_zbar(c); });
}

template <class C>
BasicForm<C> del_J(const BasicForm<C>& w) {
  return detail::first_order(w, [](const C& f, int c) { return (c % 2 == 1) ? f.d_zbar(c - 1) : -f.d_zbar(c + 1); });
}

/// Delta on Lambda^p[-p-1] -> Lambda^{p+2}[-p-2].
template <class C>
BasicForm<C> baston_delta(const BasicForm<C>& w) {
  if (w.twist() != -w.degree() - 1) throw InvalidArgument("baston_delta: a form of degree p must carry twist -p-1");
  if (w.degree() + 2 > w.dim()) throw InvalidArgument("baston_delta: degree p + 2 exceeds 2n");
  BasicForm<C> out = del(del_J(w));
  out *= C(static_cast<int>(kBastonNormalization));
  return out.with_twist(w.twist() - 1);
}

/// Pointwise values of a form with polynomial or trig coefficients.
TwistedForm evaluate(const PolyForm& w, std::span<const double> x);
TwistedForm evaluate(const TrigForm& w, std::span<const double> x);

/// Quaternionic Hessian from the real Hessian R (4n x 4n):
///   Q_ab = sum_{mu,nu} e_mu conj(e_nu) R_{(a,mu),(b,nu)},  e = (1, i, j, k).
HermitianQMatrix quaternionic_hessian(const RealMatrix& r);
/// (d^2 f / d conj(q_a) d q_b)(x); diagonal entries are 4-variable Laplacians.
HermitianQMatrix hessian(const ScalarField& f, std::span<const double> x);

/// Delta f at x. Polynomial and trig fields go through the symbolic
/// operators; autodiff fields through Wirtinger derivatives of the jet Hessian.
TwistedForm delta_at(const ScalarField& f, std::span<const double> x);

/// Interior product: iota_b dz^I = (-1)^{#{i in I : i < b}} dz^{I \ b}.
template <class C>
BasicForm<C> interior(const BasicForm<C>& w, int b) {
  if (w.degree() == 0) throw InvalidArgument("interior: degree-0 form");
  BasicForm<C> out(w.n(), w.degree() - 1, w.twist());
  const Mask bit = Mask{1} << b;
  w.for_each_mask([&](Mask m) {
    if (!(m & bit)) return;
    const int below = std::popcount(m & (bit - 1));
    out.at(m & ~bit) = (below % 2 == 0) ? w[m] : -w[m];
  });
  return out;
}

/// Formal adjoint of baston_delta for the pairing
///   <f, xi> = integral over the torus of sum_I f_I xi_I:
///   Delta* f = kBastonNormalization * sum_{b,c} d/dz_b D_c (iota_c iota_b f).
/// Degree p + 2 -> p; twist w -> w - 1.
TrigForm delta_star(const TrigForm& f);

/// Integral over the torus of sum_I f_I g_I.
std::complex<double> torus_pairing(const TrigForm& f, const TrigForm& g);

}  // namespace qpsh
