#pragma once

#include <cstdint>
#include <random>

#include "weylkit/linalg.hpp"

namespace weylkit {

/// Deterministic generator: mt19937_64 plus an explicit Box-Muller, so the
/// stream of draws is pinned by the seed across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return (eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  cxd complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cxd(re, im) / std::sqrt(2.0);
  }

  Matrix matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
  }

  Matrix hermitian(int n) { return hermitian_part(matrix(n, n)); }

  Matrix psd(int n) {
    const Matrix a = matrix(n, n);
    return a * a.adjoint() / static_cast<double>(n);
  }

  Matrix unitary(int n) {
    const Matrix a = matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      const cxd d = r(i, i);
      q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : cxd(1.0, 0.0);
    }
    return q;
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace weylkit
