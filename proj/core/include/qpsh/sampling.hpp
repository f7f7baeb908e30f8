#pragma once

// Seeded random inputs shared by the sampled algorithms, the CLI suites and
// the tests. mt19937_64 and boost's normal distribution are both fully
// specified, so a seed reproduces the same stream on every platform.

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "qpsh/qmatrix.hpp"

namespace qpsh {

using Rng = std::mt19937_64;

inline double gaussian(Rng& rng) { return boost::random::normal_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Quaternion random_quaternion(Rng& rng) {
  const double t = gaussian(rng), x = gaussian(rng), y = gaussian(rng), z = gaussian(rng);
  return {t, x, y, z};
}

inline QMatrix random_qmatrix(Rng& rng, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_quaternion(rng);
  return m;
}

/// (G + G^dagger) / 2 with Gaussian G: indefinite with high probability.
inline HermitianQMatrix random_hermitian(Rng& rng, std::size_t n) {
  const QMatrix g = random_qmatrix(rng, n, n);
  return HermitianQMatrix((g + g.adjoint()) * 0.5);
}

/// B^dagger B with Gaussian B (rank min(rows, n)).
inline HermitianQMatrix random_psd(Rng& rng, std::size_t n, std::size_t rank) {
  return HermitianQMatrix::identity(rank).congruence(random_qmatrix(rng, rank, n));
}

}  // namespace qpsh
