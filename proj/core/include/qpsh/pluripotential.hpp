#pragma once

// Plurisubharmonicity, Monge-Ampere densities and their pairings against
// test weights, the mollified convergence harness and the empirical CLN ratio.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpsh/calculus.hpp"
#include "qpsh/field.hpp"
#include "qpsh/quadrature.hpp"

namespace qpsh {

struct PshResult {
  bool psh = true;
  std::optional<std::vector<double>> witness;  // first node with a negative Hessian direction
  double min_eigenvalue = 0.0;                  // smallest embedded eigenvalue seen
  std::int64_t nodes_checked = 0;
};

/// hessian(f, x) PSD (eigenvalues >= -tol * max(1, |H|)) at every node of d.
PshResult is_psh(const ScalarField& f, const Domain& d, double tol = 1e-9);

/// moore_det(hessian(f, x)).
double ma_density(const ScalarField& f, std::span<const double> x);
/// top_coefficient((Delta f)(x)^n) / n!, the same number through forms.
double ma_density_from_forms(const ScalarField& f, std::span<const double> x);

/// Density of Delta f_1 ^ ... ^ Delta f_k ^ Omega_0^{n-k} against vol, divided
/// by n!: the mixed Moore determinant of (H_1, ..., H_k, I, ..., I).
double mixed_density(std::span<const HermitianQMatrix> hessians, int n);

struct PairingResult {
  double value = 0.0;
  std::int64_t nodes = 0;
  double error_estimate = 0.0;  // |value - value at the next coarser resolution|
  Rule rule = Rule::gauss_legendre;
  int nodes_per_axis = 0;
  std::int64_t qmc_samples = 0;
};

/// Bump weight prod_v (1 - s_v^2)^3 supported in the box of d.
ScalarField bump_weight(int n, const Domain& d);

/// Integral of phi * mixed_density(hessian f_1, ..., hessian f_k) over d
/// (1 <= k <= n). The comparison rule uses two nodes per axis fewer (same
/// parity, so a centred singularity is sampled alike) or half the samples (Sobol).
PairingResult mixed_ma_pairing(std::span<const ScalarField> fields, const ScalarField& phi, const Domain& d,
                               int threads = 1);
/// k = n with all fields equal: integral of phi * ma_density(f).
PairingResult ma_pairing(const ScalarField& f, const ScalarField& phi, const Domain& d, int threads = 1);

/// sqrt(|x|^2 + eps^2) and eps * log cosh(|x| / eps): two smoothings of |x|.
ScalarField sqrt_norm_family(int n, double eps);
ScalarField log_cosh_norm_family(int n, double eps);

/// start, start/2, ..., `count` values.
std::vector<double> halving_schedule(double start, int count);

struct ConvergenceRow {
  double eps = 0.0;
  PairingResult pairing;
  std::optional<double> gap;  // |P(eps_{m-1}) - P(eps_m)|
  bool psh = true;            // checked on a coarse grid; a failure is a warning only
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  bool gaps_monotone() const;
  /// Last gap divided by |last value|.
  double final_gap_ratio() const;
  double limit() const { return rows.empty() ? 0.0 : rows.back().pairing.value; }
};

ConvergenceTable converge_experiment(const std::function<ScalarField(double)>& family, const ScalarField& phi,
                                     const Domain& d, std::span<const double> eps_list, int threads = 1);

struct ClnResult {
  double ratio = 0.0;
  double numerator = 0.0;           // L^1(K) norm of the mixed density
  std::vector<double> sup_norms;    // sup_L |f_i|
  std::int64_t nodes = 0;
};

/// ||Delta f_1 ^ ... ^ Delta f_k||_{L^1(K)} / prod_i sup_L |f_i|. The sup is
/// taken over a uniform grid with `sup_points_per_axis` points (box vertices
/// included). Throws NumericalDegeneracy when some sup is zero.
ClnResult cln_ratio(std::span<const ScalarField> fields, const Domain& k, const Domain& l,
                    int sup_points_per_axis = 5, int threads = 1);

}  // namespace qpsh
