#pragma once

// Strongly and weakly positive elements of Lambda^{2k} E*[-2k]_R.
//
// Membership is only semi-decided: weak positivity can be refuted by one
// negative pairing, strong positivity can be certified by an explicit
// nonnegative sum of generators.

#include <cstdint>
#include <optional>
#include <vector>

#include "qpsh/exterior.hpp"
#include "qpsh/sampling.hpp"

namespace qpsh {

/// Rows of an H-linear map f: H^n -> H^k; its pullback of the positive
/// generator of H^k is a strongly positive 2k-form.
struct ConeGenerator {
  QMatrix betas;  // k x n

  int k() const { return static_cast<int>(betas.rows()); }
  int n() const { return static_cast<int>(betas.cols()); }
};

/// Complex covector of one quaternionic row functional, degree 1, twist -1.
TwistedForm split_covector(const QMatrix& betas, std::size_t row);

/// wedge_i (alpha_i ^ rho*(alpha_i)); degree 2k, twist -2k.
TwistedForm strong_generator(const ConeGenerator& g);

/// Gaussian rows, each normalized to unit length.
ConeGenerator random_generator(Rng& rng, int n, int k);

/// The generators whose rows are k distinct coordinate functionals.
std::vector<ConeGenerator> coordinate_generators(int n, int k);

/// Default tolerance: 1e-9 * scale(omega).
double default_cone_tolerance(const TwistedForm& omega);

struct WeakPositivityResult {
  enum class Verdict { consistent, refuted };
  Verdict verdict = Verdict::consistent;
  std::optional<ConeGenerator> witness;
  double min_pairing = 0.0;  // smallest top_coefficient(omega ^ xi) seen
  int pairings = 0;

  bool refuted() const { return verdict == Verdict::refuted; }
};

/// Pairs omega (real, degree 2k) against up to `samples` strong generators of
/// the complementary degree: all coordinate generators, seeded random ones,
/// then block-coordinate descent on the rows of the best random sample. Stops at the first
/// pairing below -tol. tol < 0 selects default_cone_tolerance.
WeakPositivityResult is_weakly_positive_sampled(const TwistedForm& omega, int samples, std::uint64_t seed,
                                                double tol = -1.0);

struct Certificate {
  std::vector<double> weights;  // all >= 0
  std::vector<ConeGenerator> generators;

  std::size_t size() const { return weights.size(); }
  TwistedForm evaluate(int n, int k) const;
};

/// Certificate of a*omega + b*eta from certificates of omega and eta (a, b >= 0).
Certificate combine(const Certificate& c1, double a, const Certificate& c2, double b);

/// Max coefficient deviation of the certified sum from omega.
double certificate_residual(const TwistedForm& omega, const Certificate& cert);

struct StrongPositivityResult {
  enum class Verdict { certified, undecided };
  Verdict verdict = Verdict::undecided;
  Certificate certificate;  // nonzero weights only
  double residual = 0.0;    // max coefficient deviation

  bool certified() const { return verdict == Verdict::certified; }
};

/// Nonnegative least squares of omega over `basis_samples` seeded random
/// generators of the same degree plus `extra` (tried first).
StrongPositivityResult is_strongly_positive_sampled(const TwistedForm& omega, int basis_samples, std::uint64_t seed,
                                                    double tol = -1.0, const std::vector<ConeGenerator>& extra = {});

}  // namespace qpsh
