#pragma once

#include <utility>

#include "weylkit/herglotz.hpp"
#include "weylkit/relations.hpp"

namespace weylkit {

/// Bounded symmetric operator with nondense closed domain, stored in an
/// orthonormal basis adapted to D (+) N: the domain D is the span of the
/// first d coordinates, the defect space N of the remaining k = n - d, and
/// the operator acts as the column block [A00; A10] on D.
class NondenseSymmetric {
 public:
  NondenseSymmetric(Matrix a00, Matrix a10, double tol);

  int ambient_dim() const { return n_; }
  int domain_dim() const { return d_; }
  int deficiency() const { return k_; }
  const Matrix& a00() const { return a00_; }
  const Matrix& a10() const { return a10_; }

  /// [A00; A10] as an n x d block.
  Matrix domain_block() const;
  /// n x n bounded extension [[A00, A10*], [A10, B0]].
  Matrix extension_matrix(const Matrix& b0) const;
  bool is_extension(const Matrix& full, double tol) const;

  LinearRelation as_relation(double tol) const;
  Subspace domain_subspace() const;
  Subspace defect_subspace() const;

  /// Orthonormal basis of ker(A* - z), an n x k matrix for z off sigma(A00).
  Matrix defect_space_at(cxd z, double tol) const;

 private:
  int n_, d_, k_;
  Matrix a00_, a10_;
};

/// A* = (any bounded extension) (+) ({0} x N), as a linear relation of
/// dimension n + k. Must coincide with the relation adjoint of the graph.
LinearRelation adjoint_decomposition(const NondenseSymmetric& s, const Matrix& extension,
                                     double tol);

struct DualBoundaryValues {
  Vector g0, g1, g0t, g1t;
};

struct OrdinaryBoundaryValues {
  Vector g0, g1;
};

/// Boundary triplet for the dual pair {A, A} whose reference extension
/// A0 = ker G0 is the bounded matrix extension with block B0, with gamma
/// field gamma (column span = the defect space) and forbidden operator F:
///   G0 {f,f'} = gamma^{-1}(f' - A0 f),
///   G1 {f,f'} = -gamma* P_N f + F gamma^{-1}(f' - A0 f),
/// and the transposed maps with A0*, F*. G0 and G0^T agree on {0} x N.
class BTInfTriplet {
 public:
  BTInfTriplet(NondenseSymmetric base, Matrix b0, Matrix gamma_g, Matrix forbidden,
               double tol);

  const NondenseSymmetric& base() const { return base_; }
  const Matrix& b0() const { return b0_; }
  const Matrix& gamma_g() const { return gamma_g_; }
  const Matrix& forbidden() const { return forbidden_; }

  Matrix a0() const;          // n x n reference extension
  Matrix gamma_full() const;  // n x k, [0; gamma_g]

  bool in_adjoint(const Vector& f, const Vector& fprime, double tol) const;
  DualBoundaryValues boundary_maps(const Vector& f, const Vector& fprime,
                                   double tol) const;

  /// F + gamma*(A0 - z)^{-1} gamma for z off sigma(A0).
  Matrix weyl_function(cxd z, double tol) const;

  /// ker(G1 - Theta G0): an n-dimensional relation between A and A*.
  LinearRelation extension_from_boundary(const Matrix& theta, double tol) const;

  double green_identity_residual() const;

 private:
  NondenseSymmetric base_;
  Matrix b0_, gamma_g_, forbidden_;
};

/// Ordinary boundary triplet for A* built from a selfadjoint reference
/// matrix (block B0 Hermitian, zero in the plain construction):
///   G0 {f,f'} = gamma* P_N f,   G1 {f,f'} = gamma^{-1}(f' - ref f).
/// Its reference extension ker G0 is the selfadjoint relation
/// graph(A) (+) ({0} x N).
class OrdinaryTripletModel {
 public:
  OrdinaryTripletModel(NondenseSymmetric base, Matrix gamma_g, double tol);
  OrdinaryTripletModel(NondenseSymmetric base, Matrix gamma_g, Matrix b0, double tol);

  const NondenseSymmetric& base() const { return base_; }
  const Matrix& gamma_g() const { return gamma_g_; }
  const Matrix& b0() const { return b0_; }

  Matrix reference_matrix() const;  // Hermitian extension with block B0
  Matrix gamma_full() const;

  bool in_adjoint(const Vector& f, const Vector& fprime, double tol) const;
  OrdinaryBoundaryValues boundary_maps(const Vector& f, const Vector& fprime,
                                       double tol) const;

  /// gamma^{-1}(zI - B0 + A10 (A00 - z)^{-1} A10*) gamma^{-*},
  /// defined for z off sigma(A00).
  Matrix weyl_function(cxd z, double tol) const;

  /// Exact representation of the Weyl function: atoms at the eigenvalues
  /// of A00, linear coefficient gamma^{-1}gamma^{-*}.
  HerglotzMatrixFunction to_herglotz(double tol) const;

  /// A_Theta = graph(ref + gamma Theta gamma*).
  Matrix extension_operator(const Matrix& theta) const;
  LinearRelation extension_from_boundary(const Matrix& theta, double tol) const;

  /// ker G0 = graph(A) (+) ({0} x N), the selfadjoint reference relation.
  LinearRelation reference_relation(double tol) const;

  double green_identity_residual() const;

 private:
  NondenseSymmetric base_;
  Matrix gamma_g_, b0_;
};

/// New ordinary triplet with maps K* G0 and K^{-1}(G1 - Re(B) G0): same
/// reference extension, gamma field gamma K, reference block shifted by
/// gamma Re(B) gamma*. Its Weyl function is K^{-1}(M - Re B)K^{-*}.
OrdinaryTripletModel hat_transform(const OrdinaryTripletModel& model, const Matrix& k,
                                   const Matrix& b, double tol);

/// Coordinate of an extension in the hat triplet: K^{-1}(T - Re B)K^{-*}.
Matrix hat_coordinate(const Matrix& t, const Matrix& k, const Matrix& b, double tol);

/// Dual-pair triplet with maps K^{-1}(B G0 - G1), K* G0 and the starred
/// variants: reference extension ker(G1 - B G0), gamma field -gamma K,
/// forbidden operator 0. Its Weyl function is K*(B - M(z))^{-1}K.
BTInfTriplet dual_pair_triplet(const OrdinaryTripletModel& model, const Matrix& k,
                               const Matrix& b, double tol);

/// Transport of a triplet with real regular point lambda0 to a triplet for
/// S = (A - lambda0)^{-1} through {f,f'} -> {f', f + lambda0 f'}; the Weyl
/// functions satisfy M_out(z) = -M_in(lambda0 + 1/z). Requires a
/// selfadjoint reference extension (Hermitian B0).
BTInfTriplet mobius_transform(const BTInfTriplet& triplet, double lambda0, double tol);

/// Compression of the resolvent to the defect space, evaluated two ways:
/// the (N,N) block of (A0 - z)^{-1} directly, and the Schur-complement
/// expression (B0 - z - A10 (A00 - z)^{-1} A10*)^{-1}.
std::pair<Matrix, Matrix> schur_compression(const BTInfTriplet& triplet, cxd z,
                                            double tol);

struct ExtensionPointCheck {
  PointClass via_extension;
  PointClass via_weyl;
  bool agree;
};

ExtensionPointCheck classify_extension_point(const OrdinaryTripletModel& model,
                                             const Matrix& theta, cxd lambda,
                                             double tol);
ExtensionPointCheck classify_extension_point(const BTInfTriplet& triplet,
                                             const Matrix& theta, cxd lambda,
                                             double tol);

}  // namespace weylkit
