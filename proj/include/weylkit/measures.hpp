#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/linalg.hpp"

namespace weylkit {

/// Finite union of half-open intervals [a,b) plus isolated points,
/// kept in normalized (sorted, disjoint) form.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet interval(double a, double b);
  static IntervalSet point(double t);

  IntervalSet& add_interval(double a, double b);
  IntervalSet& add_point(double t);

  bool contains_point(double t) const;
  /// Lebesgue measure of the overlap with [lo, hi).
  double overlap_length(double lo, double hi) const;
  double total_length() const;

  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  const std::vector<double>& points() const { return points_; }

 private:
  void normalize();
  std::vector<std::pair<double, double>> intervals_;
  std::vector<double> points_;
};

struct Atom {
  double point;
  Matrix weight;  // Hermitian PSD
};

struct DensityPiece {
  double lo, hi;   // [lo, hi), lo < hi
  Matrix density;  // Hermitian PSD
};

/// Operator-valued measure on R restricted to the computable class:
/// finitely many atoms plus piecewise-constant densities. Singular part =
/// the atoms, absolutely continuous part = the pieces, so the Lebesgue
/// decomposition is an exact set split.
class MatrixMeasure {
 public:
  explicit MatrixMeasure(int value_dim);
  static MatrixMeasure from_parts(int value_dim, std::vector<Atom> atoms,
                                  std::vector<DensityPiece> pieces, double tol);

  int value_dim() const { return value_dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& ac_pieces() const { return pieces_; }
  bool is_zero() const { return atoms_.empty() && pieces_.empty(); }

  Matrix apply(const IntervalSet& set) const;
  std::pair<MatrixMeasure, MatrixMeasure> lebesgue_decompose() const;  // (ac, singular)

  /// Integral of (1/(t-z) - t/(1+t^2)) dSigma, in closed form per piece.
  Matrix cauchy_transform(cxd z) const;
  /// Integral of y/((t-x)^2+y^2) dSigma, y > 0.
  Matrix poisson_transform(double x, double y) const;

  /// Density value at t (zero off the pieces); ignores atoms.
  Matrix density_at(double t) const;
  bool atom_at(double t, double tol) const;
  bool on_support(double t, double tol) const;
  double support_radius() const;

  MatrixMeasure congruence(const Matrix& k_inv) const;  // K^{-1} Sigma K^{-1*}
  MatrixMeasure scaled(double c) const;
  MatrixMeasure plus(const MatrixMeasure& other, double tol) const;

  /// Window-relative Lebesgue-equivalence proxy: the pieces cover
  /// [-window, window] with strictly positive-definite densities.
  bool window_equivalent_to_lebesgue(double window, double tol) const;

 private:
  int value_dim_;
  std::vector<Atom> atoms_;         // strictly increasing points
  std::vector<DensityPiece> pieces_;  // disjoint, sorted
};

/// Purely atomic spectral measure of a Hermitian matrix: atoms at the
/// eigenvalues with orthoprojection weights summing to the identity.
MatrixMeasure spectral_measure(const Matrix& hermitian, double tol);

/// Piecewise-linear scalar function given by breakpoints (x, value),
/// constant extension outside the breakpoint range.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> breakpoints);
  static PiecewiseLinear constant(double v);
  double operator()(double t) const;
  double average(double a, double b) const;  // mean value over [a,b]
  bool nonnegative() const;
  const std::vector<std::pair<double, double>>& breakpoints() const { return pts_; }

 private:
  std::vector<std::pair<double, double>> pts_;
};

/// Atoms scaled by phi(t); each density piece is split at the breakpoints
/// of phi and multiplied by the per-subpiece average of phi (exact when
/// phi is constant on the piece).
MatrixMeasure weight_measure(const MatrixMeasure& sigma, const PiecewiseLinear& phi,
                             double tol);

struct StieltjesOptions {
  int density_cells = 16;       // pieces used for the recovered ac part
  double atom_mass_floor = 1e-4;  // minimum trace mass for an atom candidate
};

struct StieltjesResult {
  MatrixMeasure estimate;
  Matrix window_mass;       // extrapolated Sigma(window)
  bool converged = false;
  double extrapolation_residual = 0.0;
  std::string note;
};

/// Recovers Sigma restricted to [window_lo, window_hi) from samples of
/// Im F(x+iy). Mass integrals are extrapolated to y -> 0 over the given
/// decreasing y sequence (Richardson); atoms are detected by mass
/// concentration under interval halving; the remainder is returned as a
/// piecewise-constant density from pointwise Poisson limits.
StieltjesResult stieltjes_invert(const std::function<Matrix(double, double)>& im_f,
                                 double window_lo, double window_hi,
                                 const std::vector<double>& y_sequence, double tol,
                                 const StieltjesOptions& options = {});

}  // namespace weylkit
