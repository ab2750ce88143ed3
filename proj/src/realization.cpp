#include "weylkit/realization.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "weylkit/random.hpp"

namespace weylkit {

PqsSystem::PqsSystem(Matrix a, Matrix k, Matrix f, double tol)
    : a_(std::move(a)), k_(std::move(k)), f_(std::move(f)) {
  if (a_.rows() != a_.cols()) throw std::invalid_argument("A must be square");
  n_ = static_cast<int>(a_.rows());
  m_ = static_cast<int>(k_.cols());
  if (k_.rows() != n_ || m_ < 1 || m_ > n_)
    throw std::invalid_argument("K must be n x k with 1 <= k <= n");
  if (f_.rows() != m_ || f_.cols() != m_)
    throw std::invalid_argument("F must be k x k");
  if (svd_rank(k_, tol) < m_) throw std::invalid_argument("K must be injective");
  // ran(A - A*) inside ran K
  const Matrix skew = a_ - a_.adjoint();
  const Matrix basis = orthonormal_basis(k_, tol);
  const double leak = op_norm(skew - basis * (basis.adjoint() * skew));
  if (leak > tol * std::max(1.0, op_norm(a_)))
    throw std::invalid_argument("ran(A - A*) is not contained in ran K");
}

Matrix PqsSystem::transfer_function(cxd z, double tol) const {
  const Matrix res = guarded_inverse(a_ - z * Matrix::Identity(n_, n_), tol,
                                     "A - z at z = " + format_complex(z));
  return f_ + k_.adjoint() * res * k_;
}

bool PqsSystem::is_simple(double tol) const {
  return svd_rank(controllability(n_), tol) == n_;
}

std::vector<Matrix> PqsSystem::markov_parameters(int count) const {
  if (count < 1) throw std::invalid_argument("markov_parameters needs count >= 1");
  std::vector<Matrix> out;
  out.reserve(count + 1);
  out.push_back(f_);
  Matrix power = k_;  // A^j K
  for (int j = 0; j < count; ++j) {
    out.push_back(k_.adjoint() * power);
    power = a_ * power;
  }
  return out;
}

Matrix PqsSystem::controllability(int powers) const {
  Matrix c(n_, static_cast<Eigen::Index>(powers) * m_);
  Matrix block = k_;
  for (int j = 0; j < powers; ++j) {
    c.middleCols(static_cast<Eigen::Index>(j) * m_, m_) = block;
    block = a_ * block;
  }
  return c;
}

PqsSystem PqsSystem::conjugated(const Matrix& u, double tol) const {
  if (u.rows() != n_ || u.cols() != n_)
    throw std::invalid_argument("conjugation matrix must be n x n");
  return PqsSystem(u * a_ * u.adjoint(), u * k_, f_, tol);
}

SimilarityResiduals verify_similarity(const PqsSystem& s1, const PqsSystem& s2,
                                      const Matrix& u) {
  if (u.rows() != s2.state_dim() || u.cols() != s1.state_dim())
    throw std::invalid_argument("U has the wrong shape");
  SimilarityResiduals r{};
  r.unitarity = op_norm(u.adjoint() * u -
                        Matrix::Identity(s1.state_dim(), s1.state_dim()));
  r.k_intertwine = op_norm(u * s1.k() - s2.k());
  r.a_intertwine = op_norm(u * s1.a() - s2.a() * u);
  r.f_gap = op_norm(s1.f() - s2.f());
  return r;
}

namespace {

// Modified Gram-Schmidt over a fixed column order with the pivot decisions
// taken from the `driver` matrix and replayed on `follower`; equal Gram
// matrices make the two orthonormal bases related by the sought unitary.
struct PairedBasis {
  Matrix q1, q2;
  bool consistent;
};

PairedBasis paired_orthonormalization(const Matrix& driver, const Matrix& follower,
                                      int target_rank, double tol) {
  const int n = static_cast<int>(driver.rows());
  Matrix q1(n, target_rank), q2(n, target_rank);
  int kept = 0;
  const double scale = std::max(1.0, largest_singular_value(driver));
  const double threshold = tol * scale;
  for (Eigen::Index col = 0; col < driver.cols() && kept < target_rank; ++col) {
    Vector v1 = driver.col(col);
    Vector v2 = follower.col(col);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < kept; ++j) {
        v1 -= q1.col(j) * (q1.col(j).dot(v1));
        v2 -= q2.col(j) * (q2.col(j).dot(v2));
      }
    }
    const double n1 = v1.norm();
    if (n1 <= threshold) continue;  // pivot decision driven by system 1
    const double n2 = v2.norm();
    if (n2 <= 0.5 * threshold) return {q1, q2, false};
    q1.col(kept) = v1 / n1;
    q2.col(kept) = v2 / n2;
    ++kept;
  }
  return {q1, q2, kept == target_rank};
}

}  // namespace

std::optional<Matrix> decide_unitary_similarity(const PqsSystem& s1,
                                                const PqsSystem& s2, double tol) {
  if (s1.input_dim() != s2.input_dim())
    throw std::invalid_argument("systems have different parameter space dimensions");
  if (!s1.is_simple(tol) || !s2.is_simple(tol))
    throw std::invalid_argument("decide_unitary_similarity requires simple systems");

  if (s1.state_dim() != s2.state_dim()) return std::nullopt;
  const int n = s1.state_dim();
  const int depth = 2 * n;

  const auto m1 = s1.markov_parameters(depth);
  const auto m2 = s2.markov_parameters(depth);
  for (size_t j = 0; j < m1.size(); ++j) {
    const double gap = op_norm(m1[j] - m2[j]);
    const double scale = std::max({1.0, op_norm(m1[j]), op_norm(m2[j])});
    if (gap > 100.0 * tol * scale) return std::nullopt;
  }

  // One extra power so the kept basis also witnesses the A-intertwining.
  const Matrix c1 = s1.controllability(n + 1);
  const Matrix c2 = s2.controllability(n + 1);
  const PairedBasis basis = paired_orthonormalization(c1, c2, n, tol);
  if (!basis.consistent) return std::nullopt;
  const Matrix u = basis.q2 * basis.q1.adjoint();

  const SimilarityResiduals res = verify_similarity(s1, s2, u);
  const double scale = std::max({1.0, op_norm(s1.a()), op_norm(s1.k())});
  const double bound = 1e4 * tol * scale;
  if (res.unitarity > bound || res.k_intertwine > bound || res.a_intertwine > bound)
    return std::nullopt;
  return u;
}

PqsSystem random_system(int n, int k, double spectral_radius, std::uint64_t seed,
                        bool hermitian) {
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  if (spectral_radius <= 0.0) throw std::invalid_argument("spectral radius must be positive");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix kmat = rng.matrix(n, k);
    for (int j = 0; j < k; ++j) kmat.col(j).normalize();
    Matrix a = rng.hermitian(n);
    if (!hermitian) {
      const Matrix s = rng.hermitian(k);
      a += cxd(0.0, 0.5) * kmat * s * kmat.adjoint();
    }
    Eigen::ComplexEigenSolver<Matrix> es(a, false);
    const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    if (radius > 0.0) a *= spectral_radius / radius;
    const Matrix f = rng.matrix(k, k);
    try {
      PqsSystem sys(a, kmat, f, kDefaultTol);
      if (sys.is_simple(kDefaultTol)) return sys;
    } catch (const std::invalid_argument&) {
      // resample
    }
  }
  throw std::runtime_error("random_system failed to produce a simple system");
}

}  // namespace weylkit
