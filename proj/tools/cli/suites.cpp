#include <algorithm>
#include <cmath>

#include "commands.hpp"
#include "qpsh/cones.hpp"
#include "qpsh/pluripotential.hpp"
#include "qpsh/random_inputs.hpp"

namespace qpsh::cli {

namespace {

using namespace qpsh::random;

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

double qdist(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

void algebra(const ExperimentConfig& c, Envelope& env, Rng& rng, int trials) {
  double assoc = 0.0, norm = 0.0, conj = 0.0, embed = 0.0, moore = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Quaternion p = random_quaternion(rng), q = random_quaternion(rng), r = random_quaternion(rng);
    const double s = abs(p) * abs(q) * abs(r);
    assoc = std::max(assoc, qdist((p * q) * r, p * (q * r)) / s);
    norm = std::max(norm, rel(abs(p * q), abs(p) * abs(q)));
    conj = std::max(conj, qdist((p * q).conj(), q.conj() * p.conj()) / (abs(p) * abs(q)));
    embed = std::max(embed, (embed_complex(p * q) - embed_complex(p) * embed_complex(q)).norm() / (abs(p) * abs(q)));
    const HermitianQMatrix a = random_hermitian(rng, static_cast<std::size_t>(c.n));
    moore = std::max(moore, rel(moore_det(a), moore_det_by_cycles(a)));
  }
  const double tol = c.tol.value_or(1e-12);
  env.checks.push_back(pass_if("associativity", assoc <= tol, assoc, tol, "max |(pq)r - p(qr)| / |p||q||r|"));
  env.checks.push_back(pass_if("norm_multiplicative", norm <= tol, norm, tol, "max relative error of |pq| = |p||q|"));
  env.checks.push_back(pass_if("conjugation_reverses", conj <= tol, conj, tol, "max |conj(pq) - conj(q)conj(p)|"));
  env.checks.push_back(pass_if("complex_embedding_homomorphism", embed <= tol, embed, tol, "max ||chi(pq) - chi(p)chi(q)||"));
  const double mtol = c.tol.value_or(1e-9);
  env.checks.push_back(pass_if("moore_det_cycles", moore <= mtol, moore, mtol,
                               "max relative difference of the two Moore determinant routes"));
}

void multiplicativity(const ExperimentConfig& c, Envelope& env, Rng& rng, int trials) {
  const int n = c.n;
  int failures = 0, nontrivial = 0;
  double residual = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int k = uniform_int(rng, 2, 2 * n - 2);
    const int l = uniform_int(rng, 2, 2 * n - k);
    const PolyForm w = random_poly_form(rng, n, k - 2, 1 - k, 3, 4, 4);
    const PolyForm e = random_poly_form(rng, n, l - 2, 1 - l, 3, 4, 4);
    const PolyForm de = baston_delta(e);
    const PolyForm rhs = wedge(baston_delta(w), de);
    const PolyForm diff = baston_delta(wedge(w, de)) - rhs;
    if (!diff.is_zero()) {
      ++failures;
      residual = std::max(residual, std::max(1e-300, scale(evaluate(diff, random_point(rng, 4 * n)))));
    }
    if (!rhs.is_zero()) ++nontrivial;
  }
  env.results["nontrivial"] = nontrivial;
  env.results["failures"] = failures;
  env.checks.push_back(pass_if("delta_multiplicative", failures == 0, residual, 0.0,
                               "max residual of Delta(w ^ Delta e) - Delta w ^ Delta e at a random point, exact arithmetic"));
  env.checks.push_back(pass_if("identities_exact", [&] {
    for (int i = 0; i < trials; ++i) {
      const int p = uniform_int(rng, 0, 2 * n - 2);
      const PolyForm w = random_poly_form(rng, n, p, -p - 1, 3, 3, 4);
      if (!del(del(w)).is_zero() || !del_J(del_J(w)).is_zero() || !(del(del_J(w)) == -del_J(del(w)))) return false;
    }
    return true;
  }(), trials, std::nullopt, "del^2 = 0, del_J^2 = 0, del del_J = -del_J del"));
}

void adjoint(const ExperimentConfig& c, Envelope& env, Rng& rng, int trials) {
  const int n = c.n;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int p = uniform_int(rng, 0, std::min(2, 2 * n - 2));
    TrigForm xi = random_trig_form(rng, n, p, -p - 1, 3, 4, 2);
    while (baston_delta(xi).is_zero()) xi = random_trig_form(rng, n, p, -p - 1, 3, 4, 2);
    const TrigForm dxi = baston_delta(xi);
    const TrigForm f = dxi.map_coefficients([](const TrigPolynomial& t) { return t.conj(); }).with_twist(0) +
                       random_trig_form(rng, n, p + 2, 0, 3, 4, 2);
    worst = std::max(worst, std::abs(torus_pairing(f, dxi) - torus_pairing(delta_star(f), xi)) /
                                std::max(std::abs(torus_pairing(f, dxi)), 1e-300));
  }
  const double tol = c.tol.value_or(1e-10);
  env.checks.push_back(pass_if("torus_duality", worst <= tol, worst, tol,
                               "max relative error of <f, Delta xi> = <Delta* f, xi> on the torus"));
}

void cones(const ExperimentConfig& c, Envelope& env, Rng& rng, int trials) {
  const int n = c.n;
  const auto un = static_cast<std::size_t>(n);
  int disagreements = 0, closure = 0;
  double generator = 0.0;
  for (int i = 0; i < trials; ++i) {
    const HermitianQMatrix a = i % 2 == 0 ? random_hermitian(rng, un) : random_psd(rng, un, un);
    const bool psd = is_psd(a, 1e-9 * a.matrix().max_abs());
    if (psd == is_weakly_positive_sampled(herm_to_form(a), 1000, rng()).refuted()) ++disagreements;

    const int k = uniform_int(rng, 1, n - 1), l = uniform_int(rng, 1, n - k);
    const TwistedForm w = wedge(strong_generator(random_generator(rng, n, k)), strong_generator(random_generator(rng, n, l)));
    if (is_weakly_positive_sampled(w, 24, rng()).refuted()) ++closure;

    const ConeGenerator g = random_generator(rng, n, 1);
    const TwistedForm s = strong_generator(g);
    generator = std::max(generator, scale(s - herm_to_form(HermitianQMatrix::identity(1).congruence(g.betas))) /
                                        std::max(scale(s), 1e-300));
  }
  env.checks.push_back(pass_if("degree2_psd_agreement", disagreements == 0, disagreements, 0.0,
                               "matrices where PSD and the weak-cone verdict disagree"));
  env.checks.push_back(pass_if("wedge_closure", closure == 0, closure, 0.0, "refuted wedges of strong generators"));
  const double tol = c.tol.value_or(1e-12);
  env.checks.push_back(pass_if("rank_one_generator", generator <= tol, generator, tol,
                               "strong generator of beta against herm_to_form(beta^dagger beta)"));
}

void delta_consistency(const ExperimentConfig& c, Envelope& env, Rng& rng, int trials) {
  const int n = c.n;
  const double cn = calibrated_baston_normalization();
  double flat = 0.0, density = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Polynomial f = random_real_polynomial(rng, n, 6, 4);
    const ScalarField field(n, f);
    const PolyForm ddj = del(del_J(scalar_form(n, f)));
    const std::vector<double> x = random_point(rng, 4 * n);
    const TwistedForm lhs = herm_to_form(hessian(field, x));
    const TwistedForm rhs = (evaluate(ddj, x) * std::complex<double>(cn)).with_twist(lhs.twist());
    flat = std::max(flat, scale(lhs - rhs) / std::max(1.0, scale(lhs)));
    const ScalarField g(n, Expression::quadratic(random_convex_matrix(rng, 4 * n)) + Expression::log_cosh_radius(0.5));
    density = std::max(density, rel(ma_density(g, x), ma_density_from_forms(g, x)));
  }
  const double tol = c.tol.value_or(1e-10);
  env.results["c_norm"] = cn;
  env.checks.push_back(pass_if("hessian_vs_symbolic", flat <= tol, flat, tol,
                               "herm_to_form(Hess f) against c_norm * del del_J f"));
  env.checks.push_back(pass_if("density_routes", density <= tol, density, tol,
                               "Moore determinant of the Hessian against (Delta f)^n / n!"));
}

}  // namespace

void run_suite(const ExperimentConfig& c, Envelope& env) {
  Rng rng(require_seed(c, "verify"));
  const std::string& s = c.suite.value_or("");
  const int base = s == "algebra" ? 200 : s == "multiplicativity" ? 40 : s == "adjoint" ? 20 : s == "cones" ? 40 : 20;
  const int trials = c.trials.value_or(base);
  env.results["suite"] = s;
  env.results["trials"] = trials;
  if (s == "algebra") return algebra(c, env, rng, trials);
  if (s == "multiplicativity") return multiplicativity(c, env, rng, trials);
  if (s == "adjoint") return adjoint(c, env, rng, trials);
  if (s == "cones") return cones(c, env, rng, trials);
  if (s == "delta-consistency") return delta_consistency(c, env, rng, trials);
  throw ConfigError("unknown suite " + s);
}

}  // namespace qpsh::cli
