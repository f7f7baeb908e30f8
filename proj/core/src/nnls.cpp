#include "qpsh/nnls.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "qpsh/errors.hpp"

namespace qpsh {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  if (cols.empty()) return z;
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Eigen::VectorXd s = sub.colPivHouseholderQr().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = s(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations, double tol) {
  if (a.rows() != b.size()) throw DimensionMismatch("nnls: A and b have different row counts");
  const Eigen::Index m = a.cols();
  if (max_iterations <= 0) max_iterations = 3 * static_cast<int>(m) + 30;
  if (tol <= 0.0) tol = 10.0 * std::numeric_limits<double>::epsilon() * std::max<double>(1.0, a.cwiseAbs().maxCoeff()) *
                        static_cast<double>(std::max(a.rows(), m));

  NnlsResult r;
  r.x = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  Eigen::VectorXd w = a.transpose() * (b - a * r.x);

  while (r.iterations < max_iterations) {
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) {
      r.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;

    for (;;) {
      ++r.iterations;
      Eigen::VectorXd z = solve_passive(a, b, passive);
      bool feasible = true;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
      if (feasible) {
        r.x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) alpha = std::min(alpha, r.x(j) / (r.x(j) - z(j)));
      r.x += alpha * (z - r.x);
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && r.x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          r.x(j) = 0.0;
        }
      if (r.iterations >= max_iterations) break;
    }
    w = a.transpose() * (b - a * r.x);
  }
  r.residual = (a * r.x - b).norm();
  return r;
}

}  // namespace qpsh
