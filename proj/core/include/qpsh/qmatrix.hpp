#pragma once

// Matrices over the quaternions, their complex embedding, and the
// determinants used by the Monge-Ampere machinery.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpsh/quaternion.hpp"

namespace qpsh {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries);

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
  /// Diagonal matrix with real diagonal.
  static QMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  /// Quaternionic conjugate transpose.
  QMatrix adjoint() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, double s) { return a *= s; }
  friend QMatrix operator*(double s, QMatrix a) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

  /// Largest absolute value of any real component.
  double max_abs() const;

  /// Apply to a column of quaternions.
  std::vector<Quaternion> apply(std::span<const Quaternion> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

/// Quaternionic Hermitian matrix: a_ji = conj(a_ij), real diagonal.
class HermitianQMatrix {
 public:
  HermitianQMatrix() = default;
  /// Validates the Hermitian symmetry to `tol` (scaled by the largest entry)
  /// and symmetrizes. Throws InvalidArgument otherwise.
  explicit HermitianQMatrix(const QMatrix& m, double tol = 1e-10);

  static HermitianQMatrix identity(std::size_t n);
  static HermitianQMatrix diagonal(std::span<const double> d);
  static HermitianQMatrix zero(std::size_t n);

  std::size_t n() const { return m_.rows(); }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const QMatrix& matrix() const { return m_; }

  HermitianQMatrix& operator+=(const HermitianQMatrix& o);
  HermitianQMatrix& operator*=(double s);
  friend HermitianQMatrix operator+(HermitianQMatrix a, const HermitianQMatrix& b) { return a += b; }
  friend HermitianQMatrix operator-(HermitianQMatrix a, const HermitianQMatrix& b) {
    return a += b * -1.0;
  }
  friend HermitianQMatrix operator*(HermitianQMatrix a, double s) { return a *= s; }
  friend HermitianQMatrix operator*(double s, HermitianQMatrix a) { return a *= s; }
  friend bool operator==(const HermitianQMatrix& a, const HermitianQMatrix& b) = default;

  /// B^dagger * A * B; B may be rectangular (rows == n()).
  HermitianQMatrix congruence(const QMatrix& b) const;

 private:
  QMatrix m_;
};

/// 2x2 complex block of a single quaternion a1 + j a2: [[a1, -conj(a2)], [a2, conj(a1)]].
Eigen::Matrix2cd embed_complex(const Quaternion& q);
/// Ring homomorphism M_{r x c}(H) -> M_{2r x 2c}(C).
ComplexMatrix embed_complex(const QMatrix& a);
ComplexMatrix embed_complex(const HermitianQMatrix& a);
/// Inverse of embed_complex on matrices of the right block shape.
QMatrix from_complex_embedding(const ComplexMatrix& m);

/// Real 4r x 4c matrix of x -> A x acting on H^c = R^{4c}, coordinates (t,x,y,z) per entry.
RealMatrix real_matrix(const QMatrix& a);

/// Eigenvalues of the complex embedding, ascending; each appears twice.
Eigen::VectorXd embedded_eigenvalues(const HermitianQMatrix& a);

/// Moore determinant: product over the paired eigenvalues of the embedding.
/// Pairs that differ by more than 1e-8 * ||A|| raise NumericalDegeneracy.
double moore_det(const HermitianQMatrix& a);

/// Moore determinant from its permutation-cycle expansion. Factorial cost;
/// intended as an independent check for n <= 4 (accepts up to n = 8).
double moore_det_by_cycles(const HermitianQMatrix& a);

/// Symmetric multilinear polarization of moore_det (needs exactly n arguments).
double mixed_moore_det(std::span<const HermitianQMatrix> args);

/// Dieudonne determinant: |det(embed_complex(A))|^{1/2}.
double dieudonne_det(const QMatrix& a);

bool is_psd(const HermitianQMatrix& a, double tol = 0.0);

}  // namespace qpsh
