#pragma once

#include <Eigen/Dense>

namespace qpsh {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // ||A x - b||_2
  int iterations = 0;
  bool converged = false;
};

/// min ||A x - b||_2 subject to x >= 0 (Lawson-Hanson active set).
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0, double tol = 0.0);

}  // namespace qpsh
