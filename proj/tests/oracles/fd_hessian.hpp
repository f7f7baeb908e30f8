#pragma once

// Central second differences; only ever used to check exact derivatives.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qpsh::oracle {

inline Eigen::MatrixXd fd_hessian(const std::function<double(std::span<const double>)>& f, std::span<const double> x0,
                                  double h = 1e-3) {
  const int d = static_cast<int>(x0.size());
  std::vector<double> x(x0.begin(), x0.end());
  auto at = [&](int u, double du, int v, double dv) {
    x[static_cast<std::size_t>(u)] += du;
    x[static_cast<std::size_t>(v)] += dv;
    const double r = f(x);
    x[static_cast<std::size_t>(u)] -= du;
    x[static_cast<std::size_t>(v)] -= dv;
    return r;
  };
  Eigen::MatrixXd hess(d, d);
  const double f0 = f(x);
  for (int u = 0; u < d; ++u) {
    hess(u, u) = (at(u, h, u, 0.0) - 2.0 * f0 + at(u, -h, u, 0.0)) / (h * h);
    for (int v = u + 1; v < d; ++v)
      hess(u, v) = hess(v, u) = (at(u, h, v, h) - at(u, h, v, -h) - at(u, -h, v, h) + at(u, -h, v, -h)) / (4 * h * h);
  }
  return hess;
}

}  // namespace qpsh::oracle
