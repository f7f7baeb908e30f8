#include "qpsh/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qpsh {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("QMatrix: entry count does not match shape");
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
  return m;
}

QMatrix QMatrix::diagonal(std::span<const double> d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = Quaternion(d[i]);
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("QMatrix +: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("QMatrix -: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("QMatrix *: inner dimensions differ");
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) {
      Quaternion acc;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& q : data_)
    m = std::max({m, std::abs(q.t), std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  return m;
}

std::vector<Quaternion> QMatrix::apply(std::span<const Quaternion> v) const {
  if (v.size() != cols_) throw DimensionMismatch("QMatrix::apply: vector length");
  std::vector<Quaternion> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

HermitianQMatrix::HermitianQMatrix(const QMatrix& m, double tol) : m_(m) {
  if (!m.is_square()) throw InvalidArgument("Hermitian matrix must be square");
  const double scale = std::max(1.0, m.max_abs());
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const Quaternion& d = m(i, i);
    if (std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}) > tol * scale)
      throw InvalidArgument("Hermitian matrix must have a real diagonal");
    m_(i, i) = Quaternion(d.t);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Quaternion diff = m(i, j) - m(j, i).conj();
      if (std::sqrt(diff.norm2()) > tol * scale)
        throw InvalidArgument("matrix is not quaternionic Hermitian");
      const Quaternion avg = (m(i, j) + m(j, i).conj()) * 0.5;
      m_(i, j) = avg;
      m_(j, i) = avg.conj();
    }
  }
}

HermitianQMatrix HermitianQMatrix::identity(std::size_t n) { return HermitianQMatrix(QMatrix::identity(n)); }

HermitianQMatrix HermitianQMatrix::diagonal(std::span<const double> d) {
  return HermitianQMatrix(QMatrix::diagonal(d));
}

HermitianQMatrix HermitianQMatrix::zero(std::size_t n) { return HermitianQMatrix(QMatrix(n, n)); }

HermitianQMatrix& HermitianQMatrix::operator+=(const HermitianQMatrix& o) {
  m_ += o.m_;
  return *this;
}

HermitianQMatrix& HermitianQMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianQMatrix HermitianQMatrix::congruence(const QMatrix& b) const {
  if (b.rows() != n()) throw DimensionMismatch("congruence: B must have n rows");
  return HermitianQMatrix(b.adjoint() * m_ * b, 1e-8);
}

Eigen::Matrix2cd embed_complex(const Quaternion& q) {
  const auto s = complex_split(q);
  Eigen::Matrix2cd m;
  m << s.z1, -std::conj(s.z2), s.z2, std::conj(s.z1);
  return m;
}

ComplexMatrix embed_complex(const QMatrix& a) {
  ComplexMatrix m(2 * a.rows(), 2 * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      m.block<2, 2>(2 * static_cast<Eigen::Index>(r), 2 * static_cast<Eigen::Index>(c)) = embed_complex(a(r, c));
  return m;
}

ComplexMatrix embed_complex(const HermitianQMatrix& a) { return embed_complex(a.matrix()); }

QMatrix from_complex_embedding(const ComplexMatrix& m) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) throw DimensionMismatch("embedding must have even shape");
  const std::size_t rows = static_cast<std::size_t>(m.rows() / 2);
  const std::size_t cols = static_cast<std::size_t>(m.cols() / 2);
  QMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto i = static_cast<Eigen::Index>(2 * r);
      const auto j = static_cast<Eigen::Index>(2 * c);
      // Average the redundant entries so the result is the nearest quaternion.
      const std::complex<double> a1 = 0.5 * (m(i, j) + std::conj(m(i + 1, j + 1)));
      const std::complex<double> a2 = 0.5 * (m(i + 1, j) - std::conj(m(i, j + 1)));
      out(r, c) = reassemble(a1, a2);
    }
  return out;
}

RealMatrix real_matrix(const QMatrix& a) {
  RealMatrix m = RealMatrix::Zero(4 * static_cast<Eigen::Index>(a.rows()), 4 * static_cast<Eigen::Index>(a.cols()));
  const Quaternion basis[4] = {Quaternion(1.0), Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      for (int mu = 0; mu < 4; ++mu) {
        const Quaternion img = a(r, c) * basis[mu];
        const auto row = static_cast<Eigen::Index>(4 * r);
        const auto col = static_cast<Eigen::Index>(4 * c) + mu;
        m(row, col) = img.t;
        m(row + 1, col) = img.x;
        m(row + 2, col) = img.y;
        m(row + 3, col) = img.z;
      }
  return m;
}

Eigen::VectorXd embedded_eigenvalues(const HermitianQMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(embed_complex(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double moore_det(const HermitianQMatrix& a) {
  const std::size_t n = a.n();
  if (n == 0) return 1.0;
  const Eigen::VectorXd ev = embedded_eigenvalues(a);
  const double tol = 1e-8 * a.matrix().max_abs();
  double det = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = ev(static_cast<Eigen::Index>(2 * i));
    const double hi = ev(static_cast<Eigen::Index>(2 * i + 1));
    if (hi - lo > tol) {
      throw NumericalDegeneracy("moore_det: eigenvalues of the complex embedding do not pair (gap " +
                                std::to_string(hi - lo) + ")");
    }
    det *= 0.5 * (lo + hi);
  }
  return det;
}

namespace {

// Sign and cycle decomposition of a permutation given in one-line notation.
struct CycleForm {
  int sign = 1;
  std::vector<std::vector<std::size_t>> cycles;
};

CycleForm decompose(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  CycleForm out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t i = start; !seen[i]; i = perm[i]) {
      seen[i] = true;
      cyc.push_back(i);
    }
    if (cyc.size() % 2 == 0) out.sign = -out.sign;
    out.cycles.push_back(std::move(cyc));
  }
  return out;
}

}  // namespace

double moore_det_by_cycles(const HermitianQMatrix& a) {
  const std::size_t n = a.n();
  if (n > 8) throw InvalidArgument("moore_det_by_cycles: factorial cost, n must be <= 8");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Quaternion total;
  do {
    CycleForm cf = decompose(perm);
    // Each cycle starts at its smallest index (guaranteed by the scan above);
    // cycles are multiplied in decreasing order of their leading index.
    std::sort(cf.cycles.begin(), cf.cycles.end(),
              [](const auto& l, const auto& r) { return l.front() > r.front(); });
    Quaternion term(static_cast<double>(cf.sign));
    for (const auto& cyc : cf.cycles)
      for (std::size_t s = 0; s < cyc.size(); ++s)
        term = term * a(cyc[s], perm[cyc[s]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total.t;
}

double mixed_moore_det(std::span<const HermitianQMatrix> args) {
  const std::size_t n = args.size();
  if (n == 0) throw DimensionMismatch("mixed_moore_det: no arguments");
  for (const auto& m : args)
    if (m.n() != n) throw DimensionMismatch("mixed_moore_det: needs n arguments of size n x n");
  // Multilinearity lets every argument be brought to unit size first, which
  // keeps the inclusion-exclusion sum from cancelling across scales.
  std::vector<HermitianQMatrix> unit(args.begin(), args.end());
  double factor = 1.0;
  for (auto& m : unit) {
    const double s = m.matrix().max_abs();
    if (s == 0.0) return 0.0;
    m *= 1.0 / s;
    factor *= s;
  }
  double acc = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    HermitianQMatrix sum = HermitianQMatrix::zero(n);
    int size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        sum += unit[i];
        ++size;
      }
    const double sign = ((static_cast<int>(n) - size) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * moore_det(sum);
  }
  double fact = 1.0;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<double>(i);
  return factor * acc / fact;
}

double dieudonne_det(const QMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("dieudonne_det: matrix must be square");
  if (a.rows() == 0) return 1.0;
  const std::complex<double> d = embed_complex(a).partialPivLu().determinant();
  return std::sqrt(std::abs(d));
}

bool is_psd(const HermitianQMatrix& a, double tol) {
  if (a.n() == 0) return true;
  return embedded_eigenvalues(a)(0) >= -tol;
}

}  // namespace qpsh
