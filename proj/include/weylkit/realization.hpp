#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weylkit/linalg.hpp"

namespace weylkit {

/// State-space system (A, K, F) with transfer function F + K*(A - z)^{-1}K,
/// subject to ker K = {0} and ran(A - A*) contained in ran K.
class PqsSystem {
 public:
  PqsSystem(Matrix a, Matrix k, Matrix f, double tol);

  int state_dim() const { return n_; }
  int input_dim() const { return m_; }
  const Matrix& a() const { return a_; }
  const Matrix& k() const { return k_; }
  const Matrix& f() const { return f_; }

  Matrix transfer_function(cxd z, double tol) const;

  /// Krylov span of ran K under A fills the state space.
  bool is_simple(double tol) const;

  /// [F, K*K, K*AK, ..., K*A^{m-1}K]: the z^{-j-1} expansion coefficient
  /// of the transfer function at infinity is -K*A^jK.
  std::vector<Matrix> markov_parameters(int count) const;

  /// [K, AK, ..., A^{powers-1}K].
  Matrix controllability(int powers) const;

  PqsSystem conjugated(const Matrix& u, double tol) const;

 private:
  int n_, m_;
  Matrix a_, k_, f_;
};

struct SimilarityResiduals {
  double unitarity;      // ||U*U - I||
  double k_intertwine;   // ||U K1 - K2||
  double a_intertwine;   // ||U A1 - A2 U||
  double f_gap;          // ||F1 - F2||
};

SimilarityResiduals verify_similarity(const PqsSystem& s1, const PqsSystem& s2,
                                      const Matrix& u);

/// Decides whether two simple systems are unitarily similar. Returns the
/// intertwining unitary built by orthonormalizing both controllability
/// matrices with pivot decisions driven by the first system (equal Gram
/// matrices make the basis-matching map unitary), or nullopt when the
/// state dimensions, the F blocks, or any Markov parameter up to index
/// 2*max(n1,n2)-1 disagree. On success the residuals of verify_similarity
/// are below 1e4 * tol * scale (scale = the larger of 1 and the data
/// norms); the result is rejected otherwise. Non-simple inputs are
/// reported by exception, never compressed.
std::optional<Matrix> decide_unitary_similarity(const PqsSystem& s1,
                                                const PqsSystem& s2, double tol);

/// Deterministic generator honoring both system invariants; resamples the
/// seed stream until the system is simple. The Hermitian variant drops the
/// skew part of A.
PqsSystem random_system(int n, int k, double spectral_radius, std::uint64_t seed,
                        bool hermitian = false);

}  // namespace weylkit
