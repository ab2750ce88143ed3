#pragma once

// Test-only oracles, independent of the library code paths they check:
// brute-force subspace arithmetic, dense rank counts, instance generators.

#include <vector>

#include "weylkit/herglotz.hpp"
#include "weylkit/random.hpp"
#include "weylkit/relations.hpp"
#include "weylkit/triplets.hpp"

namespace oracles {

using weylkit::cxd;
using weylkit::Matrix;
using weylkit::Vector;

// Orthogonal complement of the column span via projector subtraction and
// eigen-decomposition (no shared code with Subspace).
inline Matrix complement_by_projector(const Matrix& span, int ambient) {
  Matrix p = Matrix::Zero(ambient, ambient);
  if (span.cols() > 0) {
    // projector from the normal equations
    const Matrix g = span.adjoint() * span;
    p = span * g.completeOrthogonalDecomposition().pseudoInverse() * span.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(ambient, ambient) - p);
  std::vector<int> keep;
  for (int i = 0; i < ambient; ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  Matrix out(ambient, keep.size());
  for (size_t i = 0; i < keep.size(); ++i) out.col(i) = es.eigenvectors().col(keep[i]);
  return out;
}

// Adjoint of a relation straight from the defining pairing: the kernel of
// the matrix whose rows are the constraints <(g,g'), (f',-f)> = 0.
inline Matrix adjoint_span_by_complement(const Matrix& graph_span, int dim_in,
                                         int dim_out) {
  Matrix flipped(graph_span.cols(), dim_in + dim_out);
  for (Eigen::Index c = 0; c < graph_span.cols(); ++c) {
    flipped.row(c).head(dim_out) = graph_span.col(c).tail(dim_out).adjoint();
    flipped.row(c).tail(dim_in) = -graph_span.col(c).head(dim_in).adjoint();
  }
  Eigen::JacobiSVD<Matrix> svd(flipped, Eigen::ComputeFullV);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
  return svd.matrixV().rightCols(dim_in + dim_out - rank);
}

inline double subspace_gap(const Matrix& a, const Matrix& b) {
  const auto proj = [](const Matrix& m) -> Matrix {
    if (m.cols() == 0) return Matrix::Zero(m.rows(), m.rows());
    const Matrix g = m.adjoint() * m;
    return m * g.completeOrthogonalDecomposition().pseudoInverse() * m.adjoint();
  };
  return (proj(a) - proj(b)).norm();
}

// Random ordinary triplet model with modest norms (keeps the Weyl-at-
// infinity checks inside their tolerances).
inline weylkit::OrdinaryTripletModel random_model(weylkit::Rng& rng, int d, int k,
                                                  bool zero_b0 = false) {
  Matrix a00 = rng.hermitian(d);
  a00 *= 1.5 / std::max(1.0, weylkit::op_norm(a00));
  Matrix a10 = rng.matrix(k, d);
  a10 *= 1.0 / std::max(1.0, weylkit::op_norm(a10));
  Matrix gamma;
  do {
    gamma = rng.matrix(k, k);
  } while (weylkit::smallest_singular_value(gamma) < 0.3);
  gamma *= 1.0 / std::max(1.0, weylkit::op_norm(gamma));
  Matrix b0 = Matrix::Zero(k, k);
  if (!zero_b0) {
    b0 = rng.hermitian(k);
    b0 *= 1.0 / std::max(1.0, weylkit::op_norm(b0));
  }
  return weylkit::OrdinaryTripletModel(weylkit::NondenseSymmetric(a00, a10, 1e-10),
                                       gamma, b0, 1e-10);
}

inline Matrix random_invertible(weylkit::Rng& rng, int k, double min_sv = 0.3) {
  Matrix m;
  do {
    m = rng.matrix(k, k);
  } while (weylkit::smallest_singular_value(m) < min_sv);
  return m;
}

// Shared-tilde instance: two (F_j, spec_j) pairs built so that the
// transforms K_j*(B_j - F_j(z))^{-1}K_j agree identically on the upper
// half-plane; the free parts are the K_j and the B_j components.
struct SharedTildePair {
  weylkit::HerglotzMatrixFunction f1, f2;
  weylkit::WeylTransformSpec spec1, spec2;
};

inline SharedTildePair shared_tilde_instance(weylkit::Rng& rng, int k, int max_atoms,
                                             int max_pieces) {
  const double tol = 1e-10;
  // shared tilde-level data
  std::vector<weylkit::Atom> atoms;
  const int n_atoms = 1 + static_cast<int>(rng.uniform(0.0, max_atoms));
  for (int i = 0; i < n_atoms; ++i)
    atoms.push_back({rng.uniform(-3.0, 3.0), rng.psd(k)});
  std::vector<weylkit::DensityPiece> pieces;
  const int n_pieces = static_cast<int>(rng.uniform(0.0, max_pieces + 0.999));
  double cursor = -4.0;
  for (int i = 0; i < n_pieces; ++i) {
    const double lo = cursor + rng.uniform(0.1, 1.0);
    const double hi = lo + rng.uniform(0.3, 1.5);
    pieces.push_back({lo, hi, rng.psd(k)});
    cursor = hi;
  }
  const weylkit::MatrixMeasure sigma_shared =
      weylkit::MatrixMeasure::from_parts(k, atoms, pieces, tol);
  const Matrix d_shared = rng.psd(k);
  const Matrix c_hat = rng.hermitian(k);  // shared C-tilde minus Re B-tilde
  Matrix s0 = rng.psd(k) + 0.1 * Matrix::Identity(k, k);

  const auto make_side = [&](const Matrix& k_j) {
    const Matrix re_b_tilde = rng.hermitian(k);
    // Im B-tilde >= -S0 keeps the half-plane term PSD.
    const Matrix im_b_tilde = rng.hermitian(k) * 0.2;
    const Matrix s_j = s0 + im_b_tilde;  // may fail PSD for wild draws; rejected below
    const Matrix c_full = c_hat + re_b_tilde;
    const Matrix b_tilde = re_b_tilde + cxd(0.0, 1.0) * im_b_tilde;
    // un-tilde by congruence with K_j
    weylkit::HerglotzMatrixFunction f(
        Matrix(k_j * c_full * k_j.adjoint()), Matrix(k_j * d_shared * k_j.adjoint()),
        sigma_shared.congruence(k_j), Matrix(k_j * s_j * k_j.adjoint()), tol);
    weylkit::WeylTransformSpec spec(Matrix(k_j * b_tilde * k_j.adjoint()), k_j, tol);
    return std::make_pair(f, spec);
  };

  for (;;) {
    try {
      const Matrix k1 = random_invertible(rng, k);
      const Matrix k2 = random_invertible(rng, k);
      auto [f1, s1] = make_side(k1);
      auto [f2, s2] = make_side(k2);
      return SharedTildePair{f1, f2, s1, s2};
    } catch (const std::invalid_argument&) {
      // resample until the PSD constraints hold
    }
  }
}

}  // namespace oracles
