#pragma once

#include <functional>
#include <span>
#include <vector>

#include "weylkit/measures.hpp"
#include "weylkit/report.hpp"

namespace weylkit {

/// Matrix Herglotz function F(z) = C + Dz + int (1/(t-z) - t/(1+t^2)) dSigma,
/// plus a half-plane-constant term contributing +iS on the upper half-plane
/// and -iS on the lower one. The S term stands for the absolutely
/// continuous measure with density S/pi on the whole line, which keeps the
/// constant-imaginary-shift constructions inside the representable class.
class HerglotzMatrixFunction {
 public:
  HerglotzMatrixFunction(Matrix c, Matrix d, MatrixMeasure sigma, Matrix s, double tol);
  static HerglotzMatrixFunction constant(const Matrix& c, double tol);
  static HerglotzMatrixFunction zero(int dim);

  int dim() const { return dim_; }
  const Matrix& c() const { return c_; }
  const Matrix& d() const { return d_; }
  const MatrixMeasure& sigma() const { return sigma_; }
  const Matrix& s() const { return s_; }

  Matrix evaluate(cxd z) const;

 private:
  int dim_;
  Matrix c_, d_;
  MatrixMeasure sigma_;
  Matrix s_;
};

/// Data (B, K) of the transform K*(B - F(z))^{-1}K; K must be invertible.
struct WeylTransformSpec {
  WeylTransformSpec(Matrix b_in, Matrix k_in, double tol);
  Matrix b, k;
  int dim() const { return static_cast<int>(b.rows()); }
};

Matrix weyl_transform(const HerglotzMatrixFunction& f, const WeylTransformSpec& spec,
                      cxd z, double tol);

/// Congruences by K^{-1}: the measure, the parameters and B, with the
/// half-plane term carried as `shift` (its ac density is shift/pi per unit
/// length, folded in whenever a bounded window is evaluated).
struct TildeData {
  MatrixMeasure sigma;
  Matrix shift;
  Matrix c, d, b;
  Matrix ac_mass(double lo, double hi) const;
};

TildeData tilde_data(const HerglotzMatrixFunction& f, const WeylTransformSpec& spec,
                     double tol);

/// Residuals of the five conclusions drawn from transform equality on an
/// upper half-plane probe set: (a) the transform mismatch itself,
/// (b) equality of singular parts, (c) the ac-density relation against
/// Im B tilde, (d) the real-parameter relation, (e) equality of the linear
/// coefficients.
ScenarioReport basic_lemma_check(const HerglotzMatrixFunction& f1,
                                 const WeylTransformSpec& s1,
                                 const HerglotzMatrixFunction& f2,
                                 const WeylTransformSpec& s2,
                                 std::span<const cxd> probes_upper, double tol);

/// Stronger conclusions available when the transforms agree on probe sets
/// in both half-planes: full equality of the tilde measures and of Im B.
ScenarioReport full_equality_check(const HerglotzMatrixFunction& f1,
                                   const WeylTransformSpec& s1,
                                   const HerglotzMatrixFunction& f2,
                                   const WeylTransformSpec& s2,
                                   std::span<const cxd> probes_upper,
                                   std::span<const cxd> probes_lower, double tol);

/// Compares the weak derivatives of the two spectral measures at t0: the
/// pointwise Poisson limit (1/pi) Im F(t0+iy), y -> 0, against the
/// represented densities, and the two functions against each other.
ScenarioReport weak_derivative_check(const HerglotzMatrixFunction& f1,
                                     const HerglotzMatrixFunction& f2, double t0,
                                     const std::vector<double>& y_sequence, double tol);

struct RecoveredParameters {
  Matrix c, d;
  MatrixMeasure sigma{1};
  double symmetry_residual = 0.0;
  bool converged = false;
  std::string note;
};

/// Recovers (C, D, Sigma) of a Herglotz function from an evaluator:
/// D from F(iY)/(iY) along the grid, Sigma by Stieltjes inversion over the
/// window, C from F(i) minus the recovered integral term.
RecoveredParameters recover_parameters(const std::function<Matrix(cxd)>& evaluator,
                                       double window_lo, double window_hi,
                                       const std::vector<double>& y_sequence,
                                       double tol);

struct LftBlocks {
  Matrix x1, x2, x3, x4;  // k x k blocks of a 2k x 2k invertible matrix
};

/// (X3 + X4 F(z)) (X1 + X2 F(z))^{-1}.
Matrix lft_weyl(const HerglotzMatrixFunction& f, const LftBlocks& x, cxd z, double tol);

/// I + 2i K*(B* - F(z))^{-1} K J with a signature matrix J.
Matrix characteristic_function(const HerglotzMatrixFunction& f, const Matrix& b,
                               const Matrix& k, const Matrix& j, cxd z, double tol);

}  // namespace weylkit
