#pragma once

// Tensor-product and quasi-Monte-Carlo quadrature on boxes and tori with a
// deterministic reduction: nodes are summed in fixed chunks and the chunk
// sums combined pairwise, so the result does not depend on the thread count.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpsh {

inline constexpr std::int64_t kNodeCap = 100'000'000;

enum class Rule { gauss_legendre, trapezoid_periodic, sobol };

const char* rule_name(Rule r);

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Rule1d gauss_legendre(int m);

struct Domain {
  enum class Kind { box, torus };

  Kind kind = Kind::box;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  Rule rule = Rule::gauss_legendre;
  int nodes_per_axis = 6;
  std::int64_t qmc_samples = 0;

  /// [lo, hi]^dim.
  static Domain box(int dim, double lo, double hi, int nodes_per_axis = 6);
  /// (R / 2 pi Z)^dim with the periodic trapezoid rule.
  static Domain torus(int dim, int nodes_per_axis);

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  /// Throws NodeCapExceeded above kNodeCap.
  std::int64_t node_count() const;
  /// Same domain, same rule, a different resolution.
  Domain with_nodes(int nodes_per_axis) const;
  Domain with_qmc(std::int64_t samples) const;
  /// Box scaled about its center by `factor`.
  Domain scaled(double factor) const;
  bool contains(const Domain& inner) const;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Integral of f over the domain. threads <= 0 picks the hardware concurrency.
double integrate(const Domain& d, const Integrand& f, int threads = 1);

/// Visit every node (for sup-norm scans); deterministic order, single thread.
void for_each_node(const Domain& d, const std::function<void(std::span<const double>, double)>& visit);

/// Deterministic pairwise sum.
double pairwise_sum(std::span<const double> v);

}  // namespace qpsh
