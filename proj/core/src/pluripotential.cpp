#include "qpsh/pluripotential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpsh/errors.hpp"

namespace qpsh {

PshResult is_psh(const ScalarField& f, const Domain& d, double tol) {
  if (d.dim() != f.real_dim()) throw DimensionMismatch("is_psh: domain dimension differs from the field");
  PshResult r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for_each_node(d, [&](std::span<const double> x, double) {
    ++r.nodes_checked;
    const Eigen::VectorXd ev = embedded_eigenvalues(hessian(f, x));
    const double lo = ev.minCoeff();
    r.min_eigenvalue = std::min(r.min_eigenvalue, lo);
    if (r.psh && lo < -tol * std::max(1.0, ev.cwiseAbs().maxCoeff())) {
      r.psh = false;
      r.witness = std::vector<double>(x.begin(), x.end());
    }
  });
  return r;
}

double ma_density(const ScalarField& f, std::span<const double> x) { return moore_det(hessian(f, x)); }

double ma_density_from_forms(const ScalarField& f, std::span<const double> x) {
  const int n = f.n();
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  return top_coefficient(wedge_power(delta_at(f, x), n), 1e-8) / fact;
}

double mixed_density(std::span<const HermitianQMatrix> hessians, int n) {
  if (hessians.empty() || static_cast<int>(hessians.size()) > n)
    throw InvalidArgument("mixed_density: expects between 1 and n matrices");
  if (static_cast<int>(hessians.size()) == 1 && n == 1) return moore_det(hessians[0]);
  std::vector<HermitianQMatrix> args(hessians.begin(), hessians.end());
  while (static_cast<int>(args.size()) < n) args.push_back(HermitianQMatrix::identity(static_cast<std::size_t>(n)));
  return mixed_moore_det(args);
}

ScalarField bump_weight(int n, const Domain& d) {
  if (d.dim() != 4 * n) throw DimensionMismatch("bump_weight: domain dimension must be 4n");
  return ScalarField(n, Expression::box_bump(d.lo, d.hi));
}

namespace {

Domain coarser(const Domain& d) {
  if (d.rule == Rule::sobol) return d.with_qmc(std::max<std::int64_t>(1, d.qmc_samples / 2));
  return d.with_nodes(d.nodes_per_axis >= 3 ? d.nodes_per_axis - 2 : std::max(1, d.nodes_per_axis - 1));
}

PairingResult pair_with_estimate(const Domain& d, const Integrand& density, int threads) {
  PairingResult r;
  r.nodes = d.node_count();
  r.rule = d.rule;
  r.nodes_per_axis = d.rule == Rule::sobol ? 0 : d.nodes_per_axis;
  r.qmc_samples = d.rule == Rule::sobol ? d.qmc_samples : 0;
  r.value = integrate(d, density, threads);
  const Domain c = coarser(d);
  r.error_estimate = std::abs(r.value - integrate(c, density, threads));
  return r;
}

void check_fields(std::span<const ScalarField> fields, const ScalarField& phi, const Domain& d) {
  if (fields.empty()) throw InvalidArgument("pairing: needs at least one field");
  const int n = fields[0].n();
  if (static_cast<int>(fields.size()) > n) throw InvalidArgument("pairing: more fields than n");
  for (const auto& f : fields)
    if (f.n() != n) throw DimensionMismatch("pairing: fields over different n");
  if (phi.n() != n || d.dim() != 4 * n) throw DimensionMismatch("pairing: weight or domain over a different n");
}

}  // namespace

PairingResult mixed_ma_pairing(std::span<const ScalarField> fields, const ScalarField& phi, const Domain& d,
                               int threads) {
  check_fields(fields, phi, d);
  const int n = fields[0].n();
  const Integrand density = [&](std::span<const double> x) {
    const double w = phi.value(x);
    if (w == 0.0) return 0.0;
    std::vector<HermitianQMatrix> hs;
    hs.reserve(fields.size());
    for (const auto& f : fields) hs.push_back(hessian(f, x));
    return w * mixed_density(hs, n);
  };
  return pair_with_estimate(d, density, threads);
}

PairingResult ma_pairing(const ScalarField& f, const ScalarField& phi, const Domain& d, int threads) {
  const ScalarField fs[1] = {f};
  check_fields(std::span<const ScalarField>(fs, 1), phi, d);
  const Integrand density = [&](std::span<const double> x) {
    const double w = phi.value(x);
    return w == 0.0 ? 0.0 : w * ma_density(f, x);
  };
  return pair_with_estimate(d, density, threads);
}

ScalarField sqrt_norm_family(int n, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("sqrt_norm_family: eps must be positive");
  return ScalarField(n, (Expression::norm2() + eps * eps).sqrt());
}

ScalarField log_cosh_norm_family(int n, double eps) { return ScalarField(n, Expression::log_cosh_radius(eps)); }

std::vector<double> halving_schedule(double start, int count) {
  if (!(start > 0.0) || count < 1) throw InvalidArgument("halving_schedule: needs start > 0 and count >= 1");
  std::vector<double> e;
  for (int i = 0; i < count; ++i) e.push_back(start / std::pow(2.0, i));
  return e;
}

bool ConvergenceTable::gaps_monotone() const {
  std::optional<double> prev;
  for (const auto& r : rows) {
    if (!r.gap) continue;
    if (prev && *r.gap > *prev) return false;
    prev = r.gap;
  }
  return true;
}

double ConvergenceTable::final_gap_ratio() const {
  if (rows.size() < 2 || !rows.back().gap) return 0.0;
  return *rows.back().gap / std::abs(rows.back().pairing.value);
}

ConvergenceTable converge_experiment(const std::function<ScalarField(double)>& family, const ScalarField& phi,
                                     const Domain& d, std::span<const double> eps_list, int threads) {
  ConvergenceTable t;
  for (double eps : eps_list) {
    const ScalarField f = family(eps);
    ConvergenceRow row;
    row.eps = eps;
    Domain probe = d.with_nodes(3);
    probe.rule = Rule::gauss_legendre;
    row.psh = is_psh(f, probe).psh;
    row.pairing = ma_pairing(f, phi, d, threads);
    if (!t.rows.empty()) row.gap = std::abs(row.pairing.value - t.rows.back().pairing.value);
    t.rows.push_back(row);
  }
  return t;
}

ClnResult cln_ratio(std::span<const ScalarField> fields, const Domain& k, const Domain& l, int sup_points_per_axis,
                    int threads) {
  if (fields.empty()) throw InvalidArgument("cln_ratio: needs at least one field");
  const int n = fields[0].n();
  if (k.dim() != 4 * n || l.dim() != 4 * n) throw DimensionMismatch("cln_ratio: domains must live in R^{4n}");
  if (!l.contains(k)) throw InvalidArgument("cln_ratio: K must lie inside L");
  if (sup_points_per_axis < 2) throw InvalidArgument("cln_ratio: the sup grid needs at least 2 points per axis");

  ClnResult r;
  const int dim = 4 * n;
  double points = 1.0;
  for (int v = 0; v < dim; ++v) points *= sup_points_per_axis;
  if (points > static_cast<double>(kNodeCap)) throw NodeCapExceeded("cln_ratio: sup grid exceeds the node cap");
  const auto total = static_cast<std::int64_t>(points);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (const auto& f : fields) {
    if (f.n() != n) throw DimensionMismatch("cln_ratio: fields over different n");
    double sup = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
      std::int64_t rest = i;
      for (int v = dim - 1; v >= 0; --v) {
        const auto j = static_cast<double>(rest % sup_points_per_axis);
        rest /= sup_points_per_axis;
        x[static_cast<std::size_t>(v)] = l.lo(v) + (l.hi(v) - l.lo(v)) * j / (sup_points_per_axis - 1);
      }
      sup = std::max(sup, std::abs(f.value(x)));
    }
    if (sup == 0.0) throw NumericalDegeneracy("cln_ratio: a potential vanishes identically on L");
    r.sup_norms.push_back(sup);
  }

  const Integrand density = [&](std::span<const double> y) {
    std::vector<HermitianQMatrix> hs;
    for (const auto& f : fields) hs.push_back(hessian(f, y));
    return std::abs(mixed_density(hs, n));
  };
  r.numerator = integrate(k, density, threads);
  r.nodes = k.node_count();
  double denom = 1.0;
  for (double s : r.sup_norms) denom *= s;
  r.ratio = r.numerator / denom;
  return r;
}

}  // namespace qpsh
