#include "weylkit/linalg.hpp"

#include <Eigen/SVD>
#include <cstdio>

namespace weylkit {

std::string format_complex(cxd z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

namespace {

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from_values(const Eigen::VectorXd& sv, double tol) {
  if (sv.size() == 0) return 0;
  const double cutoff = tol * sv(0);
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

}  // namespace

int svd_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return rank_from_values(svd.singularValues(), tol);
}

Matrix orthonormal_basis(const Matrix& span, double tol) {
  if (span.size() == 0 || span.cols() == 0) return Matrix(span.rows(), 0);
  auto svd = full_svd(span);
  const int r = rank_from_values(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, double tol) {
  if (m.size() == 0 || m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  auto svd = full_svd(m);
  const int r = rank_from_values(svd.singularValues(), tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

Matrix complement_basis(const Matrix& on_basis, int ambient) {
  if (on_basis.cols() == 0) return Matrix::Identity(ambient, ambient);
  // Rows of B* are the constraints; the kernel of B* is the complement.
  auto svd = full_svd(on_basis.adjoint());
  return svd.matrixV().rightCols(ambient - on_basis.cols());
}

double smallest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv.size() ? sv(sv.size() - 1) : 0.0;
}

double largest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

bool is_invertible(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(0) > 0.0 && sv(sv.size() - 1) > tol * sv(0);
}

Matrix guarded_inverse(const Matrix& m, double tol, const std::string& what) {
  if (!is_invertible(m, tol))
    throw SingularityError(what + " is singular (smallest singular value " +
                           std::to_string(smallest_singular_value(m)) + ")");
  return m.inverse();
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix imaginary_part(const Matrix& m) {
  return (m - m.adjoint()) / cxd(0.0, 2.0);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, op_norm(m));
  return op_norm(m - m.adjoint()) <= tol * scale;
}

double min_eigenvalue_hermitian(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  const double scale = std::max(1.0, op_norm(m));
  return min_eigenvalue_hermitian(m) >= -tol * scale;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return largest_singular_value(m);
}

}  // namespace weylkit
