#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace weylkit {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Single global knob for every rank / singularity decision: a singular
/// value counts as nonzero iff it exceeds tol times the largest one.
inline constexpr double kDefaultTol = 1e-10;

/// Raised when a pencil that must be inverted is numerically singular.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

std::string format_complex(cxd z);

int svd_rank(const Matrix& m, double tol);

/// Orthonormal basis of the column span (rank decided by svd_rank).
Matrix orthonormal_basis(const Matrix& span, double tol);

/// Orthonormal basis of ker(m).
Matrix null_space(const Matrix& m, double tol);

/// Orthonormal basis of the orthogonal complement of the span of
/// `on_basis` (columns assumed orthonormal) inside C^ambient.
Matrix complement_basis(const Matrix& on_basis, int ambient);

double smallest_singular_value(const Matrix& m);
double largest_singular_value(const Matrix& m);
bool is_invertible(const Matrix& m, double tol);

/// Inverse with a singularity guard; `what` names the pencil in the error.
Matrix guarded_inverse(const Matrix& m, double tol, const std::string& what);

Matrix hermitian_part(const Matrix& m);        // (M + M*)/2
Matrix imaginary_part(const Matrix& m);        // (M - M*)/(2i), Hermitian
bool is_hermitian(const Matrix& m, double tol);
bool is_psd(const Matrix& m, double tol);
double min_eigenvalue_hermitian(const Matrix& m);

double op_norm(const Matrix& m);               // spectral norm

inline double fro_norm(const Matrix& m) { return m.norm(); }

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

}  // namespace weylkit
