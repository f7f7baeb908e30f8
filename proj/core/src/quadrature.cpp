#include "qpsh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/special_functions/legendre.hpp>
#include <boost/random/sobol.hpp>

#include "qpsh/errors.hpp"

namespace qpsh {

namespace {

constexpr std::int64_t kChunk = 4096;

struct Axis {
  std::vector<double> x;
  std::vector<double> w;
};

std::vector<Axis> tensor_axes(const Domain& d) {
  std::vector<Axis> axes(static_cast<std::size_t>(d.dim()));
  if (d.rule == Rule::gauss_legendre) {
    const Rule1d r = gauss_legendre(d.nodes_per_axis);
    for (int v = 0; v < d.dim(); ++v) {
      const double mid = 0.5 * (d.lo(v) + d.hi(v)), half = 0.5 * (d.hi(v) - d.lo(v));
      Axis& a = axes[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        a.x.push_back(mid + half * r.nodes[i]);
        a.w.push_back(half * r.weights[i]);
      }
    }
  } else {
    for (int v = 0; v < d.dim(); ++v) {
      const double len = d.hi(v) - d.lo(v);
      Axis& a = axes[static_cast<std::size_t>(v)];
      for (int i = 0; i < d.nodes_per_axis; ++i) {
        a.x.push_back(d.lo(v) + len * i / d.nodes_per_axis);
        a.w.push_back(len / d.nodes_per_axis);
      }
    }
  }
  return axes;
}

/// Sum of f * w over nodes [begin, end).
class NodeRange {
 public:
  explicit NodeRange(const Domain& d) : d_(d) {
    if (d.rule != Rule::sobol) axes_ = tensor_axes(d);
  }

  template <class F>
  void visit(std::int64_t begin, std::int64_t end, F&& f) const {
    const int dim = d_.dim();
    std::vector<double> x(static_cast<std::size_t>(dim));
    if (d_.rule == Rule::sobol) {
      boost::random::sobol eng(static_cast<std::size_t>(dim));
      eng.discard(static_cast<boost::uintmax_t>(begin) * static_cast<boost::uintmax_t>(dim));
      const double w = d_.volume() / static_cast<double>(d_.qmc_samples);
      for (std::int64_t i = begin; i < end; ++i) {
        for (int v = 0; v < dim; ++v) {
          const double u = std::ldexp(static_cast<double>(eng()), -64);
          x[static_cast<std::size_t>(v)] = d_.lo(v) + (d_.hi(v) - d_.lo(v)) * u;
        }
        f(std::span<const double>(x), w);
      }
      return;
    }
    const std::int64_t m = d_.nodes_per_axis;
    for (std::int64_t i = begin; i < end; ++i) {
      std::int64_t rest = i;
      double w = 1.0;
      for (int v = dim - 1; v >= 0; --v) {
        const auto k = static_cast<std::size_t>(rest % m);
        rest /= m;
        const Axis& a = axes_[static_cast<std::size_t>(v)];
        x[static_cast<std::size_t>(v)] = a.x[k];
        w *= a.w[k];
      }
      f(std::span<const double>(x), w);
    }
  }

 private:
  const Domain& d_;
  std::vector<Axis> axes_;
};

}  // namespace

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::gauss_legendre: return "gauss-legendre";
    case Rule::trapezoid_periodic: return "trapezoid-periodic";
    case Rule::sobol: return "sobol";
  }
  return "unknown";
}

Rule1d gauss_legendre(int m) {
  if (m < 1 || m > 64) throw InvalidArgument("gauss_legendre: nodes per axis must be in [1, 64]");
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(m);
  Rule1d r;
  auto push = [&](double x) {
    const double p = boost::math::legendre_p_prime(m, x);
    r.nodes.push_back(x);
    r.weights.push_back(2.0 / ((1.0 - x * x) * p * p));
  };
  // zeros holds the nonnegative roots in increasing order
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
    if (*it != 0.0) push(-*it);
  for (double z : zeros) push(z);
  return r;
}

Domain Domain::box(int dim, double lo, double hi, int nodes_per_axis) {
  if (dim < 1) throw InvalidArgument("domain: dimension must be positive");
  if (!(hi > lo)) throw InvalidArgument("domain: empty box");
  Domain d;
  d.kind = Kind::box;
  d.lo = Eigen::VectorXd::Constant(dim, lo);
  d.hi = Eigen::VectorXd::Constant(dim, hi);
  d.nodes_per_axis = nodes_per_axis;
  return d;
}

Domain Domain::torus(int dim, int nodes_per_axis) {
  Domain d = box(dim, 0.0, 2.0 * std::numbers::pi, nodes_per_axis);
  d.kind = Kind::torus;
  d.rule = Rule::trapezoid_periodic;
  return d;
}

double Domain::volume() const { return (hi - lo).prod(); }

std::int64_t Domain::node_count() const {
  if (rule == Rule::sobol) {
    if (qmc_samples < 1) throw InvalidArgument("domain: quasi-Monte-Carlo needs a positive sample count");
    if (qmc_samples > kNodeCap) throw NodeCapExceeded("domain: sample count exceeds the node cap");
    return qmc_samples;
  }
  if (nodes_per_axis < 1) throw InvalidArgument("domain: nodes per axis must be positive");
  double total = 1.0;
  for (int v = 0; v < dim(); ++v) total *= nodes_per_axis;
  if (total > static_cast<double>(kNodeCap)) throw NodeCapExceeded("domain: tensor grid exceeds the node cap");
  return static_cast<std::int64_t>(total);
}

Domain Domain::with_nodes(int m) const {
  Domain d = *this;
  d.nodes_per_axis = m;
  return d;
}

Domain Domain::with_qmc(std::int64_t samples) const {
  Domain d = *this;
  d.rule = Rule::sobol;
  d.qmc_samples = samples;
  return d;
}

Domain Domain::scaled(double factor) const {
  Domain d = *this;
  const Eigen::VectorXd mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  d.lo = mid - factor * half;
  d.hi = mid + factor * half;
  return d;
}

bool Domain::contains(const Domain& inner) const {
  if (inner.dim() != dim()) return false;
  return (lo.array() <= inner.lo.array()).all() && (inner.hi.array() <= hi.array()).all();
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

double integrate(const Domain& d, const Integrand& f, int threads) {
  const std::int64_t total = d.node_count();
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0);
  const NodeRange range(d);

  auto work = [&](std::int64_t first, std::int64_t stride) {
    std::vector<double> buf;
    buf.reserve(kChunk);
    for (std::int64_t c = first; c < chunks; c += stride) {
      buf.clear();
      range.visit(c * kChunk, std::min(total, (c + 1) * kChunk),
                  [&](std::span<const double> x, double w) { buf.push_back(w * f(x)); });
      sums[static_cast<std::size_t>(c)] = pairwise_sum(buf);
    }
  };

  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::int64_t>(threads, chunks));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return pairwise_sum(sums);
}

void for_each_node(const Domain& d, const std::function<void(std::span<const double>, double)>& visit) {
  const NodeRange range(d);
  range.visit(0, d.node_count(), visit);
}

}  // namespace qpsh
