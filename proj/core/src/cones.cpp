#include "qpsh/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qpsh/nnls.hpp"

namespace qpsh {

TwistedForm split_covector(const QMatrix& betas, std::size_t row) {
  const int n = static_cast<int>(betas.cols());
  TwistedForm alpha(n, 1, -1);
  for (int a = 0; a < n; ++a) {
    const auto s = complex_split(betas(row, static_cast<std::size_t>(a)));
    alpha.at(Mask{1} << (2 * a)) = s.z1;
    alpha.at(Mask{1} << (2 * a + 1)) = -std::conj(s.z2);
  }
  return alpha;
}

TwistedForm strong_generator(const ConeGenerator& g) {
  const int n = g.n();
  TwistedForm out = TwistedForm::scalar(n, 1.0);
  for (std::size_t i = 0; i < g.betas.rows(); ++i) {
    const TwistedForm alpha = split_covector(g.betas, i);
    out = wedge(out, wedge(alpha, apply_real_structure(alpha)));
  }
  return out;
}

namespace {

void normalize_rows(QMatrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < b.cols(); ++c) s += b(r, c).norm2();
    if (s == 0.0) continue;
    s = 1.0 / std::sqrt(s);
    for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) *= s;
  }
}

void check_real_even(const TwistedForm& omega) {
  if (omega.degree() % 2 != 0) throw InvalidArgument("cone test: form must have even degree");
  if (!is_real(omega, 1e-9)) throw InvalidArgument("cone test: form must be real");
}

/// top_coefficient(omega ^ xi) without building the wedge.
double pair_top(const TwistedForm& omega, const TwistedForm& xi) {
  const Mask full = omega.full_mask();
  std::complex<double> s = 0.0;
  omega.for_each_mask([&](Mask m) {
    if (omega[m] == 0.0) return;
    const Mask c = full & ~m;
    s += static_cast<double>(wedge_sign(m, c)) * omega[m] * xi[c];
  });
  return s.real();
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ConeGenerator random_generator(Rng& rng, int n, int k) {
  ConeGenerator g{random_qmatrix(rng, static_cast<std::size_t>(k), static_cast<std::size_t>(n))};
  normalize_rows(g.betas);
  return g;
}

std::vector<ConeGenerator> coordinate_generators(int n, int k) {
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  subsets(n, k, 0, cur, sets);
  std::vector<ConeGenerator> out;
  for (const auto& s : sets) {
    QMatrix b(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) b(static_cast<std::size_t>(i), static_cast<std::size_t>(s[static_cast<std::size_t>(i)])) = Quaternion(1.0);
    out.push_back({b});
  }
  return out;
}

double default_cone_tolerance(const TwistedForm& omega) { return 1e-9 * std::max(scale(omega), 1e-300); }

WeakPositivityResult is_weakly_positive_sampled(const TwistedForm& omega, int samples, std::uint64_t seed,
                                                double tol) {
  check_real_even(omega);
  if (tol < 0.0) tol = default_cone_tolerance(omega);
  const int n = omega.n();
  const int m = n - omega.degree() / 2;

  WeakPositivityResult r;
  r.min_pairing = std::numeric_limits<double>::infinity();
  auto trial = [&](const ConeGenerator& g) {
    const double v = pair_top(omega, strong_generator(g));
    ++r.pairings;
    if (v < r.min_pairing) r.min_pairing = v;
    if (v < -tol) {
      r.verdict = WeakPositivityResult::Verdict::refuted;
      r.witness = g;
      return true;
    }
    return false;
  };

  for (const auto& g : coordinate_generators(n, m)) {
    if (r.pairings >= samples) return r;
    if (trial(g)) return r;
  }
  if (m == 0) return r;

  Rng rng(seed);
  const int random_budget = std::max(0, samples - r.pairings) / 4;
  ConeGenerator best;
  double best_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < random_budget; ++s) {
    ConeGenerator g = random_generator(rng, n, m);
    const double before = r.min_pairing;
    if (trial(g)) return r;
    if (r.min_pairing < before || s == 0) {
      best = g;
      best_value = r.min_pairing;
    }
  }
  if (best.betas.rows() == 0) return r;

  // Block-coordinate descent: the pairing is a real quadratic form in each
  // row of the generator, so a row is replaced by the lowest eigenvector of
  // that form with the other rows held fixed.
  const std::size_t real_dim = 4 * static_cast<std::size_t>(n);
  std::size_t row = 0;
  int stalled = 0;
  double sweep_start = best_value;
  while (r.pairings < samples) {
    ConeGenerator g = best;
    TwistedForm rest = omega;
    for (std::size_t i = 0; i < g.betas.rows(); ++i)
      if (i != row) {
        const TwistedForm a = split_covector(g.betas, i);
        rest = wedge(rest, wedge(a, apply_real_structure(a)));
      }
    std::vector<TwistedForm> left, right;
    for (std::size_t mu = 0; mu < real_dim; ++mu) {
      QMatrix e(1, static_cast<std::size_t>(n));
      Quaternion& q = e(0, mu / 4);
      (mu % 4 == 0 ? q.t : mu % 4 == 1 ? q.x : mu % 4 == 2 ? q.y : q.z) = 1.0;
      const TwistedForm a = split_covector(e, 0);
      left.push_back(wedge(rest, a));
      right.push_back(apply_real_structure(a));
    }
    Eigen::MatrixXd quad(static_cast<Eigen::Index>(real_dim), static_cast<Eigen::Index>(real_dim));
    const Mask full = omega.full_mask();
    for (std::size_t mu = 0; mu < real_dim; ++mu)
      for (std::size_t nu = 0; nu < real_dim; ++nu)
        quad(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) = wedge(left[mu], right[nu])[full].real();
    quad = 0.5 * (quad + quad.transpose()).eval();
    // restrict to rows orthogonal to the H-span of the others, where the
    // generator cannot degenerate
    Eigen::MatrixXd span(static_cast<Eigen::Index>(real_dim), 4 * static_cast<Eigen::Index>(g.betas.rows() - 1));
    Eigen::Index col = 0;
    const Quaternion units[4] = {Quaternion(1.0), Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};
    for (std::size_t i = 0; i < g.betas.rows(); ++i) {
      if (i == row) continue;
      for (const Quaternion& u : units) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
          const Quaternion q = u * g.betas(i, c);
          const auto b = static_cast<Eigen::Index>(4 * c);
          span(b, col) = q.t;
          span(b + 1, col) = q.x;
          span(b + 2, col) = q.y;
          span(b + 3, col) = q.z;
        }
        ++col;
      }
    }
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(real_dim), static_cast<Eigen::Index>(real_dim));
    if (col > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeFullU);
      const Eigen::Index rank = (svd.singularValues().array() > 1e-12 * svd.singularValues()(0)).count();
      basis = svd.matrixU().rightCols(static_cast<Eigen::Index>(real_dim) - rank);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.transpose() * quad * basis);
    Eigen::VectorXd v = basis * es.eigenvectors().col(0);
    v.normalize();
    for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c)
      g.betas(row, c) = Quaternion(v(static_cast<Eigen::Index>(4 * c)), v(static_cast<Eigen::Index>(4 * c + 1)),
                                   v(static_cast<Eigen::Index>(4 * c + 2)), v(static_cast<Eigen::Index>(4 * c + 3)));
    if (trial(g)) return r;
    if (r.min_pairing < best_value) {
      best = g;
      best_value = r.min_pairing;
    }
    if (++row == g.betas.rows()) {
      row = 0;
      const bool progress = sweep_start - best_value > 1e-12 * std::max(1.0, std::abs(sweep_start));
      stalled = progress ? 0 : stalled + 1;
      if (stalled >= 2) {
        // stuck at a nonnegative local minimum: restart from a fresh sample
        best = random_generator(rng, n, m);
        best_value = std::numeric_limits<double>::infinity();
        if (trial(best)) return r;
        stalled = 0;
      }
      sweep_start = best_value;
    }
  }
  return r;
}

TwistedForm Certificate::evaluate(int n, int k) const {
  TwistedForm sum(n, 2 * k, -2 * k);
  for (std::size_t i = 0; i < weights.size(); ++i) sum += strong_generator(generators[i]) * std::complex<double>(weights[i]);
  return sum;
}

Certificate combine(const Certificate& c1, double a, const Certificate& c2, double b) {
  if (a < 0.0 || b < 0.0) throw InvalidArgument("combine: coefficients must be nonnegative");
  Certificate out;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    out.weights.push_back(a * c1.weights[i]);
    out.generators.push_back(c1.generators[i]);
  }
  for (std::size_t i = 0; i < c2.size(); ++i) {
    out.weights.push_back(b * c2.weights[i]);
    out.generators.push_back(c2.generators[i]);
  }
  return out;
}

double certificate_residual(const TwistedForm& omega, const Certificate& cert) {
  for (double w : cert.weights)
    if (w < 0.0) return std::numeric_limits<double>::infinity();
  return scale(cert.evaluate(omega.n(), omega.degree() / 2) - omega);
}

StrongPositivityResult is_strongly_positive_sampled(const TwistedForm& omega, int basis_samples, std::uint64_t seed,
                                                    double tol, const std::vector<ConeGenerator>& extra) {
  check_real_even(omega);
  if (tol < 0.0) tol = default_cone_tolerance(omega);
  const int n = omega.n();
  const int k = omega.degree() / 2;

  std::vector<ConeGenerator> gens = extra;
  Rng rng(seed);
  for (int s = 0; s < basis_samples; ++s) gens.push_back(random_generator(rng, n, k));

  const Eigen::VectorXd b = real_vectorize(omega);
  Eigen::MatrixXd a(b.size(), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].k() != k || gens[j].n() != n) throw DimensionMismatch("strong positivity: generator shape mismatch");
    a.col(static_cast<Eigen::Index>(j)) = real_vectorize(strong_generator(gens[j]));
  }

  StrongPositivityResult r;
  if (gens.empty()) {
    r.residual = scale(omega);
  } else {
    const NnlsResult sol = nnls(a, b);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const double w = sol.x(static_cast<Eigen::Index>(j));
      if (w > 0.0) {
        r.certificate.weights.push_back(w);
        r.certificate.generators.push_back(gens[j]);
      }
    }
    r.residual = certificate_residual(omega, r.certificate);
  }
  if (r.residual <= tol) r.verdict = StrongPositivityResult::Verdict::certified;
  return r;
}

}  // namespace qpsh
